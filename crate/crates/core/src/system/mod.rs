//! Hyperbolic systems `u_t + f(u)_x = 0` equipped with a convex entropy pair.

use std::fmt::Debug;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::Tensor3;
use crate::numdiff;
use crate::quadrature::gauss_legendre_unit;

pub mod builtin;
pub mod eigen;

pub use builtin::{builtin, Burgers, Example3x3, Mhd2d, PSystem, SystemSpec};
pub use eigen::{eigenstructure, eigenstructure_oriented, EigenOptions, EigenStructure};

pub type State = DVector<f64>;

/// How the higher derivative tensors of a system are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    FiniteDifference,
}

/// A 1-D system of conservation laws with a strictly convex entropy `η` and
/// entropy flux `q` satisfying `η' f' = q'`.
///
/// The evaluators below do not validate their argument; use
/// [`HyperbolicSystem::check_domain`] (or the checked free functions such as
/// [`flux_jacobian`]) at API boundaries.
///
/// Implementors must provide `f`, `f'`, `η`, `η'` and `η''`. The default
/// `f''` and `η'''` are central differences of `f'` and `η''`, and the default
/// `q` integrates `η' f'` along the segment from [`HyperbolicSystem::anchor`].
pub trait HyperbolicSystem: Debug + Send + Sync {
    fn name(&self) -> String;

    fn dim(&self) -> usize;

    /// Open axis-aligned box containing the phase-space domain.
    fn domain_box(&self) -> Vec<(f64, f64)> {
        vec![(f64::NEG_INFINITY, f64::INFINITY); self.dim()]
    }

    fn check_domain(&self, u: &State) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::DomainViolation {
                state: u.as_slice().to_vec(),
                reason: format!("expected {} components", self.dim()),
            });
        }
        for (k, (&x, &(lo, hi))) in u.iter().zip(self.domain_box().iter()).enumerate() {
            if !x.is_finite() || x <= lo || x >= hi {
                return Err(Error::DomainViolation {
                    state: u.as_slice().to_vec(),
                    reason: format!("component {k} = {x} not in ({lo}, {hi})"),
                });
            }
        }
        Ok(())
    }

    fn flux(&self, u: &State) -> DVector<f64>;
    fn jacobian(&self, u: &State) -> DMatrix<f64>;
    fn entropy(&self, u: &State) -> f64;
    fn entropy_gradient(&self, u: &State) -> DVector<f64>;
    fn entropy_hessian(&self, u: &State) -> DMatrix<f64>;

    /// `slices[p]` is the Hessian of `f_p`.
    fn flux_hessian(&self, u: &State) -> Tensor3 {
        numdiff::flux_hessian_from_jacobian(|w| Ok::<_, ()>(self.jacobian(w)), u)
            .expect("infallible")
    }

    /// `slices[a]` is `∂_a ∇²η`.
    fn entropy_third(&self, u: &State) -> Tensor3 {
        let slices =
            numdiff::matrix_derivative(|w| Ok::<_, ()>(self.entropy_hessian(w)), u, numdiff::step_second())
                .expect("infallible");
        Tensor3 { slices }
    }

    /// Reference state for the path-integrated entropy flux.
    fn anchor(&self) -> State {
        DVector::zeros(self.dim())
    }

    fn entropy_flux(&self, u: &State) -> f64 {
        integrated_entropy_flux(self, &self.anchor(), u)
    }

    fn derivative_mode(&self) -> DerivativeMode {
        DerivativeMode::FiniteDifference
    }

    /// Lower and upper bounds on the characteristic speeds at `u`.
    fn speed_bounds(&self, u: &State) -> (f64, f64) {
        let ev = self.jacobian(u).complex_eigenvalues();
        ev.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
            (lo.min(z.re), hi.max(z.re))
        })
    }
}

/// `q(u) - q(anchor) = ∫₀¹ η'(γ) f'(γ) (u - anchor) dt` along the straight segment.
pub fn integrated_entropy_flux<S: HyperbolicSystem + ?Sized>(system: &S, anchor: &State, u: &State) -> f64 {
    let d = u - anchor;
    let panels = ((d.norm() / 0.25).ceil() as usize).max(1);
    let nodes = gauss_legendre_unit();
    let mut total = 0.0;
    for k in 0..panels {
        let (a, b) = (k as f64 / panels as f64, (k + 1) as f64 / panels as f64);
        for &(x, w) in nodes.iter() {
            let g = anchor + &d * (a + (b - a) * x);
            let qprime = system.jacobian(&g).tr_mul(&system.entropy_gradient(&g));
            total += w * (b - a) * qprime.dot(&d);
        }
    }
    total
}

/// Forces finite-difference `f''` and `η'''` on top of another system.
#[derive(Debug, Clone)]
pub struct FiniteDifference<S>(pub S);

impl<S: HyperbolicSystem> HyperbolicSystem for FiniteDifference<S> {
    fn name(&self) -> String {
        format!("{}[fd]", self.0.name())
    }
    fn dim(&self) -> usize {
        self.0.dim()
    }
    fn domain_box(&self) -> Vec<(f64, f64)> {
        self.0.domain_box()
    }
    fn check_domain(&self, u: &State) -> Result<()> {
        self.0.check_domain(u)
    }
    fn flux(&self, u: &State) -> DVector<f64> {
        self.0.flux(u)
    }
    fn jacobian(&self, u: &State) -> DMatrix<f64> {
        self.0.jacobian(u)
    }
    fn entropy(&self, u: &State) -> f64 {
        self.0.entropy(u)
    }
    fn entropy_gradient(&self, u: &State) -> DVector<f64> {
        self.0.entropy_gradient(u)
    }
    fn entropy_hessian(&self, u: &State) -> DMatrix<f64> {
        self.0.entropy_hessian(u)
    }
    fn anchor(&self) -> State {
        self.0.anchor()
    }
    fn entropy_flux(&self, u: &State) -> f64 {
        self.0.entropy_flux(u)
    }
}

/// `f'(u)` with a domain check.
pub fn flux_jacobian(system: &dyn HyperbolicSystem, u: &State) -> Result<DMatrix<f64>> {
    system.check_domain(u)?;
    Ok(system.jacobian(u))
}

/// Composite Gauss–Legendre rule on `[0, 1]` for a segment of length `len`.
fn segment_rule(len: f64) -> Vec<(f64, f64)> {
    let panels = ((len / 0.25).ceil() as usize).clamp(1, 64);
    let h = 1.0 / panels as f64;
    let mut out = Vec::with_capacity(8 * panels);
    for k in 0..panels {
        for &(t, w) in gauss_legendre_unit().iter() {
            out.push(((k as f64 + t) * h, w * h));
        }
    }
    out
}

/// `η(u|v) = η(u) - η(v) - ∇η(v)(u - v)`, evaluated as
/// `∫₀¹ (1 - t) dᵀ∇²η(v + td) d dt` with `d = u - v` so that no cancellation
/// occurs for nearby states.
pub fn relative_entropy(system: &dyn HyperbolicSystem, u: &State, v: &State) -> f64 {
    let d = u - v;
    let mut total = 0.0;
    for (t, w) in segment_rule(d.norm()) {
        let g = v + &d * t;
        total += w * (1.0 - t) * d.dot(&(system.entropy_hessian(&g) * &d));
    }
    total
}

/// `q(u;v) = q(u) - q(v) - ∇η(v)(f(u) - f(v))`, evaluated as
/// `∫₀¹ (∇η(γ_t) - ∇η(v)) f'(γ_t) d dt` along `γ_t = v + td`, with the
/// gradient difference itself integrated from `∇²η`.
pub fn relative_flux(system: &dyn HyperbolicSystem, u: &State, v: &State) -> f64 {
    let d = u - v;
    let rule = segment_rule(d.norm());
    let mut total = 0.0;
    for &(t, w) in &rule {
        let g = v + &d * t;
        let mut avg = DMatrix::zeros(d.len(), d.len());
        for &(tau, wt) in &rule {
            avg += system.entropy_hessian(&(v + &d * (tau * t))) * (wt * t);
        }
        let dgrad = avg * &d;
        total += w * dgrad.dot(&(system.jacobian(&g) * &d));
    }
    total
}

/// `η(u) - η(v) - ∇η(v)(u - v)` straight from the definition.
pub fn relative_entropy_direct(system: &dyn HyperbolicSystem, u: &State, v: &State) -> f64 {
    system.entropy(u) - system.entropy(v) - system.entropy_gradient(v).dot(&(u - v))
}

/// `q(u) - q(v) - ∇η(v)(f(u) - f(v))` straight from the definition.
pub fn relative_flux_direct(system: &dyn HyperbolicSystem, u: &State, v: &State) -> f64 {
    system.entropy_flux(u)
        - system.entropy_flux(v)
        - system.entropy_gradient(v).dot(&(system.flux(u) - system.flux(v)))
}

/// Checked variants of [`relative_entropy`] and [`relative_flux`].
pub fn relative_entropy_checked(system: &dyn HyperbolicSystem, u: &State, v: &State) -> Result<f64> {
    system.check_domain(u)?;
    system.check_domain(v)?;
    Ok(relative_entropy(system, u, v))
}

pub fn relative_flux_checked(system: &dyn HyperbolicSystem, u: &State, v: &State) -> Result<f64> {
    system.check_domain(u)?;
    system.check_domain(v)?;
    Ok(relative_flux(system, u, v))
}

/// `|η'f' - q'|∞` with `q'` from central differences of `q`.
pub fn entropy_compatibility_residual(system: &dyn HyperbolicSystem, u: &State) -> f64 {
    let dq = numdiff::gradient(|w| Ok::<_, ()>(system.entropy_flux(w)), u, numdiff::step_first())
        .expect("infallible");
    let lhs = system.jacobian(u).tr_mul(&system.entropy_gradient(u));
    (lhs - dq).amax()
}
