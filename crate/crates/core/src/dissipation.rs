//! Relative-entropy dissipation functionals for a fixed shock `(u_L, u_R, σ_LR)`
//! with weight `a = 1 + C·s`.
//!
//! * `η̃(u) = a η(u|u_L) - η(u|u_R)`, `q̃(u) = a q(u;u_L) - q(u;u_R)`,
//!   `Π = {η̃ < 0}`;
//! * `D_cont(u) = -q̃(u) + λ_i(u) η̃(u)`;
//! * `D_RH(u₋, u₊, σ) = [q(u₊;u_R) - σ η(u₊|u_R)] - a [q(u₋;u_L) - σ η(u₋|u_L)]`;
//! * `D_max(u) = D_RH(u, u⁺(u), σ±)` where `u⁺(u) = S_u^i(s*)` solves
//!   `η(u|u⁺) = -η̃(u)`.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numdiff;
use crate::quadrature::adaptive_simpson;
use crate::shock::{rh_residual, ContinuationOptions, HugoniotSolver, ShockPoint};
use crate::system::eigen::grad_lambda;
use crate::system::{eigenstructure, relative_entropy, relative_flux, EigenStructure, HyperbolicSystem, State};

/// Solver settings for the maximal shock.
#[derive(Debug, Clone, Copy)]
pub struct DissipationOptions {
    /// Upper end of the search window for `s*`; `None` selects
    /// `max(4s, 10⁻²)`.
    pub s_bar: Option<f64>,
    /// Relative tolerance on `s*`.
    pub s_star_tol: f64,
    pub max_iter: usize,
    /// Admissible RH residual of the reference shock, relative to `|f|`.
    pub rh_tol: f64,
    pub continuation: ContinuationOptions,
}

impl Default for DissipationOptions {
    fn default() -> Self {
        DissipationOptions {
            s_bar: None,
            s_star_tol: 1e-14,
            max_iter: 100,
            rh_tol: 1e-10,
            continuation: ContinuationOptions::default(),
        }
    }
}

/// A fixed `i`-shock of size `s` from `u_L` together with the weight `a`.
#[derive(Debug, Clone)]
pub struct ContractionContext {
    system: Arc<dyn HyperbolicSystem>,
    family: usize,
    u_l: State,
    s: f64,
    u_r: State,
    sigma_lr: f64,
    slope: f64,
    a: f64,
    eig_l: EigenStructure,
    linearly_degenerate: bool,
    opts: DissipationOptions,
}

impl ContractionContext {
    /// Shock `(u_L, S_{u_L}^i(s), σ(s))` with weight `a = 1 + C s`.
    pub fn new(system: Arc<dyn HyperbolicSystem>, u_l: State, family: usize, s: f64, slope: f64) -> Result<Self> {
        Self::with_options(system, u_l, family, s, slope, DissipationOptions::default())
    }

    pub fn with_options(
        system: Arc<dyn HyperbolicSystem>,
        u_l: State,
        family: usize,
        s: f64,
        slope: f64,
        opts: DissipationOptions,
    ) -> Result<Self> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::BadParameter {
                name: "s",
                reason: format!("shock size must be positive, got {s}"),
            });
        }
        if !slope.is_finite() {
            return Err(Error::BadParameter {
                name: "C",
                reason: "weight slope must be finite".into(),
            });
        }
        let a = 1.0 + slope * s;
        if a <= 0.0 {
            return Err(Error::BadParameter {
                name: "C",
                reason: format!("weight a = 1 + C s = {a} must be positive"),
            });
        }
        let eig_l = eigenstructure(system.as_ref(), &u_l)?;
        if family >= eig_l.dim() {
            return Err(Error::BadFamily {
                family,
                dim: eig_l.dim(),
            });
        }
        let p = HugoniotSolver::from_eigen(system.as_ref(), &eig_l, family)?
            .with_options(opts.continuation)
            .point(s)?;
        let residual = p.rh_residual(system.as_ref());
        let tol = opts.rh_tol * system.flux(&u_l).amax().max(1.0);
        if residual > tol {
            return Err(Error::NotAShock { residual, tol });
        }
        let linearly_degenerate = !eig_l.gnl_oriented[family];
        if !p.is_admissible(system.as_ref(), 1e-8 * eig_l.eigenvalues.amax().max(1.0))? {
            return Err(Error::NotAShock { residual, tol });
        }
        Ok(ContractionContext {
            system,
            family,
            u_l,
            s,
            u_r: p.u_plus,
            sigma_lr: p.sigma,
            slope,
            a,
            eig_l,
            linearly_degenerate,
            opts,
        })
    }

    pub fn system(&self) -> &dyn HyperbolicSystem {
        self.system.as_ref()
    }

    pub fn system_arc(&self) -> Arc<dyn HyperbolicSystem> {
        Arc::clone(&self.system)
    }

    pub fn family(&self) -> usize {
        self.family
    }

    pub fn u_l(&self) -> &State {
        &self.u_l
    }

    pub fn u_r(&self) -> &State {
        &self.u_r
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn sigma_lr(&self) -> f64 {
        self.sigma_lr
    }

    /// Weight slope `C = a'(0)`.
    pub fn slope(&self) -> f64 {
        self.slope
    }

    /// Weight `a = 1 + C s`.
    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn eigen_l(&self) -> &EigenStructure {
        &self.eig_l
    }

    pub fn is_linearly_degenerate(&self) -> bool {
        self.linearly_degenerate
    }

    pub fn options(&self) -> &DissipationOptions {
        &self.opts
    }

    pub fn s_bar(&self) -> f64 {
        self.opts.s_bar.unwrap_or((4.0 * self.s).max(1e-2))
    }

    /// Hugoniot solver for the `i`-curve of `u`, oriented continuously with
    /// the reference eigenvector at `u_L`.
    pub fn solver_at(&self, u: &State) -> Result<HugoniotSolver<'_>> {
        let eig = eigenstructure(self.system(), u)?;
        let mut d = -eig.r(self.family);
        if d.dot(&self.eig_l.r(self.family)) > 0.0 {
            d = -d;
        }
        Ok(HugoniotSolver::from_eigen(self.system(), &eig, self.family)?
            .with_direction(d)
            .with_options(self.opts.continuation))
    }

    pub fn tilde_eta(&self, u: &State) -> f64 {
        let sys = self.system();
        self.a * relative_entropy(sys, u, &self.u_l) - relative_entropy(sys, u, &self.u_r)
    }

    pub fn tilde_q(&self, u: &State) -> f64 {
        let sys = self.system();
        self.a * relative_flux(sys, u, &self.u_l) - relative_flux(sys, u, &self.u_r)
    }

    pub fn grad_tilde_eta(&self, u: &State) -> DVector<f64> {
        let sys = self.system();
        let gu = sys.entropy_gradient(u);
        (&gu - sys.entropy_gradient(&self.u_l)) * self.a - (gu - sys.entropy_gradient(&self.u_r))
    }

    pub fn in_pi(&self, u: &State) -> bool {
        self.tilde_eta(u) < 0.0
    }

    pub fn d_cont(&self, u: &State) -> Result<f64> {
        self.system.check_domain(u)?;
        let lam = eigenstructure(self.system(), u)?.lambda(self.family);
        Ok(-self.tilde_q(u) + lam * self.tilde_eta(u))
    }

    pub fn d_rh(&self, u_minus: &State, u_plus: &State, sigma: f64) -> f64 {
        let sys = self.system();
        (relative_flux(sys, u_plus, &self.u_r) - sigma * relative_entropy(sys, u_plus, &self.u_r))
            - self.a * (relative_flux(sys, u_minus, &self.u_l) - sigma * relative_entropy(sys, u_minus, &self.u_l))
    }

    /// `D_cont(u) + ∫₀ˢ σ̇ (η̃(u) + η(u|S_u(t))) dt` along the curve of `u`,
    /// which equals `D_RH(u, S_u(s), σ(s))`.
    pub fn d_rh_via_d_cont(&self, u: &State, s: f64, tol: f64) -> Result<f64> {
        let solver = self.solver_at(u)?;
        let curve = solver.trace(s)?;
        let te = self.tilde_eta(u);
        let sys = self.system();
        let integral = adaptive_simpson(
            |t| {
                let p = curve.point_at(&solver, t)?;
                Ok::<_, Error>(p.dsigma * (te + relative_entropy(sys, u, &p.u_plus)))
            },
            0.0,
            s,
            tol,
        )?;
        Ok(self.d_cont(u)? + integral)
    }

    /// `s*(u)` by safeguarded Newton on `h(t) = η(u|S_u(t)) + η̃(u)`.
    pub fn solve_s_star(&self, u: &State) -> Result<SStar> {
        self.s_star_impl(u, false)
    }

    /// Bisection oracle for `s*(u)`, sharing only the bracketing scan.
    pub fn solve_s_star_bisection(&self, u: &State) -> Result<SStar> {
        self.s_star_impl(u, true)
    }

    fn s_star_impl(&self, u: &State, bisection_only: bool) -> Result<SStar> {
        self.system.check_domain(u)?;
        let te = self.tilde_eta(u);
        if te > 0.0 {
            return Err(Error::OutsideRegion { tilde_eta: te });
        }
        if u == &self.u_l {
            let p = self.reference_point();
            return Ok(SStar {
                s_star: self.s,
                bracket: (self.s, self.s),
                residual: 0.0,
                iterations: 0,
                point: p,
            });
        }
        let solver = self.solver_at(u)?;
        if te == 0.0 {
            let p = solver.point(0.0)?;
            return Ok(SStar {
                s_star: 0.0,
                bracket: (0.0, 0.0),
                residual: 0.0,
                iterations: 0,
                point: p,
            });
        }
        let target = -te;
        let sys = self.system();
        let h = |p: &ShockPoint| relative_entropy(sys, u, &p.u_plus) - target;
        let dh = |p: &ShockPoint| (&p.u_plus - u).dot(&(sys.entropy_hessian(&p.u_plus) * &p.tangent));

        let s_bar = self.s_bar();
        let mut prev = solver.point(0.0)?;
        let mut last_h = f64::NAN;
        let hit = solver.walk(s_bar, |p| {
            if p.s == 0.0 {
                return Ok(false);
            }
            if dh(p) <= 0.0 {
                return Err(Error::NonMonotone { t: p.s });
            }
            last_h = h(p);
            if last_h >= 0.0 {
                return Ok(true);
            }
            prev = p.clone();
            Ok(false)
        })?;
        let hi = match hit {
            Some(p) => p,
            None => {
                return Err(Error::NoBracket {
                    target,
                    reach: last_h + target,
                    s_bar,
                })
            }
        };
        let lo = prev;

        let (mut a, mut b) = (lo, hi);
        let (mut ha, mut hb) = (h(&a), h(&b));
        if hb == 0.0 {
            return Ok(SStar {
                s_star: b.s,
                bracket: (a.s, b.s),
                residual: 0.0,
                iterations: 0,
                point: b,
            });
        }
        let mut cur = b.clone();
        let mut hc = hb;
        let mut iterations = 0;
        while iterations < self.opts.max_iter {
            iterations += 1;
            let width = b.s - a.s;
            if width <= self.opts.s_star_tol * b.s.abs().max(1e-300) {
                break;
            }
            let mut t = 0.5 * (a.s + b.s);
            if !bisection_only {
                let slope = dh(&cur);
                if slope > 0.0 {
                    let newton = cur.s - hc / slope;
                    if newton > a.s && newton < b.s {
                        t = newton;
                    }
                }
            }
            let near = if (t - a.s).abs() < (t - b.s).abs() { &a } else { &b };
            let p = solver.point_from(t, near)?;
            let hp = h(&p);
            if !bisection_only && (p.s - cur.s).abs() <= self.opts.s_star_tol * p.s.abs() {
                cur = p;
                hc = hp;
                break;
            }
            if hp == 0.0 {
                cur = p;
                hc = hp;
                break;
            }
            if hp < 0.0 {
                a = p.clone();
                ha = hp;
            } else {
                b = p.clone();
                hb = hp;
            }
            cur = p;
            hc = hp;
        }
        if bisection_only {
            // best endpoint of the final bracket
            cur = if ha.abs() < hb.abs() { a.clone() } else { b.clone() };
            hc = h(&cur);
        }
        Ok(SStar {
            s_star: cur.s,
            bracket: (a.s, b.s),
            residual: hc,
            iterations,
            point: cur,
        })
    }

    fn reference_point(&self) -> ShockPoint {
        ShockPoint {
            u_minus: self.u_l.clone(),
            u_plus: self.u_r.clone(),
            sigma: self.sigma_lr,
            family: self.family,
            s: self.s,
            tangent: DVector::zeros(self.u_l.len()),
            dsigma: 0.0,
        }
    }

    /// `u⁺(u)`, `σ±` and their derivatives.
    pub fn maximal_shock(&self, u: &State) -> Result<MaximalShock> {
        let sys = self.system();
        let n = sys.dim();
        if self.linearly_degenerate {
            let te = self.tilde_eta(u);
            if te > 0.0 {
                return Err(Error::OutsideRegion { tilde_eta: te });
            }
            let eig = eigenstructure(sys, u)?;
            return Ok(MaximalShock {
                u: u.clone(),
                s_star: 0.0,
                u_plus: u.clone(),
                sigma_pm: eig.lambda(self.family),
                grad_u_plus: DMatrix::identity(n, n),
                grad_sigma: grad_lambda(sys, &eig, self.family),
            });
        }
        let star = self.solve_s_star(u)?;
        let u_plus = star.point.u_plus.clone();
        let sigma = star.point.sigma;
        let (grad_u_plus, grad_sigma) = self.differentiate(u, &u_plus, sigma)?;
        Ok(MaximalShock {
            u: u.clone(),
            s_star: star.s_star,
            u_plus,
            sigma_pm: sigma,
            grad_u_plus,
            grad_sigma,
        })
    }

    /// Solve the differentiated RH and distance relations for `(∇u⁺, ∇σ±)`.
    fn differentiate(&self, u: &State, u_plus: &State, sigma: f64) -> Result<(DMatrix<f64>, DVector<f64>)> {
        let sys = self.system();
        let n = sys.dim();
        let jump = u_plus - u;
        let hp = sys.entropy_hessian(u_plus);
        let mut j = DMatrix::zeros(n + 1, n + 1);
        j.view_mut((0, 0), (n, n))
            .copy_from(&(sys.jacobian(u_plus) - DMatrix::identity(n, n) * sigma));
        let row = -(hp * &jump);
        for p in 0..n {
            j[(p, n)] = -jump[p];
            j[(n, p)] = row[p];
        }
        let mut rhs = DMatrix::zeros(n + 1, n);
        rhs.view_mut((0, 0), (n, n))
            .copy_from(&(sys.jacobian(u) - DMatrix::identity(n, n) * sigma));
        let w = sys.entropy_gradient(&self.u_r) - sys.entropy_gradient(u_plus)
            + (sys.entropy_gradient(u) - sys.entropy_gradient(&self.u_l)) * self.a;
        for m in 0..n {
            rhs[(n, m)] = w[m];
        }
        let x = linalg::solve(&j, &rhs, "maximal-shock derivative")?;
        let grad_u_plus = x.view((0, 0), (n, n)).into_owned();
        let grad_sigma = x.row(n).transpose();
        Ok((grad_u_plus, grad_sigma))
    }

    /// `w = ∇η(u⁺) - ∇η(u_R) - a(∇η(u) - ∇η(u_L))`.
    fn weight_vector(&self, u: &State, u_plus: &State) -> DVector<f64> {
        let sys = self.system();
        sys.entropy_gradient(u_plus)
            - sys.entropy_gradient(&self.u_r)
            - (sys.entropy_gradient(u) - sys.entropy_gradient(&self.u_l)) * self.a
    }

    pub fn d_max(&self, u: &State) -> Result<f64> {
        let ms = self.maximal_shock(u)?;
        Ok(self.d_max_of(&ms))
    }

    pub fn d_max_of(&self, ms: &MaximalShock) -> f64 {
        if u_is(&ms.u, &self.u_l) && !self.linearly_degenerate {
            return 0.0;
        }
        self.d_rh(&ms.u, &ms.u_plus, ms.sigma_pm)
    }

    pub fn grad_d_max(&self, u: &State) -> Result<DVector<f64>> {
        let ms = self.maximal_shock(u)?;
        self.grad_d_max_of(&ms)
    }

    pub fn grad_d_max_of(&self, ms: &MaximalShock) -> Result<DVector<f64>> {
        let sys = self.system();
        let n = sys.dim();
        if self.linearly_degenerate {
            // D_max = D_cont: ∇D_cont = -∇η̃ (f' - λI) + η̃ ∇λ
            let gte = self.grad_tilde_eta(&ms.u);
            let shifted = sys.jacobian(&ms.u) - DMatrix::identity(n, n) * ms.sigma_pm;
            return Ok(-shifted.tr_mul(&gte) + &ms.grad_sigma * self.tilde_eta(&ms.u));
        }
        if u_is(&ms.u, &self.u_l) {
            return Ok(DVector::zeros(n));
        }
        let w = self.weight_vector(&ms.u, &ms.u_plus);
        let shifted = sys.jacobian(&ms.u) - DMatrix::identity(n, n) * ms.sigma_pm;
        Ok(shifted.tr_mul(&w))
    }

    pub fn hess_d_max(&self, u: &State) -> Result<DMatrix<f64>> {
        let ms = self.maximal_shock(u)?;
        self.hess_d_max_of(&ms)
    }

    /// `[∇²η(u⁺)∇u⁺ - a∇²η(u)]ᵀ-contracted with (f'(u) - σI)` plus
    /// `w·(f''(u) - I⊗∇σ)`, returned as `H_{mk} = ∂_k ∂_m D_max`.
    pub fn hess_d_max_of(&self, ms: &MaximalShock) -> Result<DMatrix<f64>> {
        let sys = self.system();
        let n = sys.dim();
        if self.linearly_degenerate {
            let u = ms.u.clone();
            let cols = numdiff::matrix_derivative(
                |v| {
                    let m = self.maximal_shock(v)?;
                    Ok::<_, Error>(DMatrix::from_column_slice(n, 1, self.grad_d_max_of(&m)?.as_slice()))
                },
                &u,
                numdiff::step_first(),
            )?;
            let h = DMatrix::from_fn(n, n, |m, k| cols[k][(m, 0)]);
            return Ok(linalg::sym(&h));
        }
        let u = &ms.u;
        let w = self.weight_vector(u, &ms.u_plus);
        let shifted = sys.jacobian(u) - DMatrix::identity(n, n) * ms.sigma_pm;
        let dw = sys.entropy_hessian(&ms.u_plus) * &ms.grad_u_plus - sys.entropy_hessian(u) * self.a;
        let mut h = shifted.tr_mul(&dw);
        h += sys.flux_hessian(u).weighted_sum(&w);
        h -= &w * ms.grad_sigma.transpose();
        Ok(h)
    }

    /// `∇σ(u, u⁺(u))` through the averaged matrix.
    pub fn averaged_speed_gradient(&self, u: &State) -> Result<DVector<f64>> {
        let ms = self.maximal_shock(u)?;
        crate::shock::averaged_speed_gradient(self.system(), u, &ms.u_plus, ms.sigma_pm, &ms.grad_u_plus)
    }

    /// `½∇λ_i(u_L)(I + ∇u⁺(u_L))`, the small-shock form of `∇σ(u_L, u⁺(u_L))`.
    pub fn speed_gradient_limit_form(&self) -> Result<DVector<f64>> {
        let ms = self.maximal_shock(&self.u_l)?;
        let n = self.system.dim();
        let gl = grad_lambda(self.system(), &self.eig_l, self.family);
        Ok((DMatrix::identity(n, n) + &ms.grad_u_plus).tr_mul(&gl) * 0.5)
    }

    /// RH residual of the reference shock.
    pub fn reference_residual(&self) -> f64 {
        rh_residual(self.system(), &self.u_l, &self.u_r, self.sigma_lr)
    }
}

fn u_is(a: &State, b: &State) -> bool {
    a == b
}

/// Result of the `s*` solve with its bracket.
#[derive(Debug, Clone)]
pub struct SStar {
    pub s_star: f64,
    /// `h < 0` at the left end and `h ≥ 0` at the right end, with `h`
    /// increasing along the scanned part of the curve.
    pub bracket: (f64, f64),
    /// `η(u|S(s*)) + η̃(u)`.
    pub residual: f64,
    pub iterations: usize,
    pub point: ShockPoint,
}

/// The maximal shock `(u, u⁺(u), σ±)` and its derivatives.
#[derive(Debug, Clone)]
pub struct MaximalShock {
    pub u: State,
    pub s_star: f64,
    pub u_plus: State,
    pub sigma_pm: f64,
    /// `(∇u⁺)_{pm} = ∂_m u⁺_p`.
    pub grad_u_plus: DMatrix<f64>,
    pub grad_sigma: DVector<f64>,
}

impl MaximalShock {
    /// Residual of `η(u|u⁺) = -η̃(u)`.
    pub fn distance_residual(&self, ctx: &ContractionContext) -> f64 {
        relative_entropy(ctx.system(), &self.u, &self.u_plus) + ctx.tilde_eta(&self.u)
    }

    pub fn rh_residual(&self, ctx: &ContractionContext) -> f64 {
        rh_residual(ctx.system(), &self.u, &self.u_plus, self.sigma_pm)
    }
}
