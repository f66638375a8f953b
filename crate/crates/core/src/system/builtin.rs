//! Built-in systems: Burgers, the isentropic p-system, a 3×3 family with an
//! intermediate field that can satisfy the local-attractor criterion, and the
//! 2-D isentropic MHD system in conservative variables `(v, q = vB, u, w)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{DerivativeMode, HyperbolicSystem, State};
use crate::error::{Error, Result};
use crate::linalg::Tensor3;

/// Power-law pressure `p(v) = v^(-γ)` and its primitive `∫_v^∞ p`.
#[derive(Debug, Clone, Copy)]
struct PowerLaw {
    gamma: f64,
}

impl PowerLaw {
    fn p(&self, v: f64) -> f64 {
        v.powf(-self.gamma)
    }
    fn dp(&self, v: f64) -> f64 {
        -self.gamma * v.powf(-self.gamma - 1.0)
    }
    fn ddp(&self, v: f64) -> f64 {
        self.gamma * (self.gamma + 1.0) * v.powf(-self.gamma - 2.0)
    }
    fn tail(&self, v: f64) -> f64 {
        v.powf(1.0 - self.gamma) / (self.gamma - 1.0)
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(Error::BadParameter {
            name: "gamma",
            reason: format!("need gamma > 1, got {gamma}"),
        });
    }
    Ok(())
}

/// Scalar Burgers equation `u_t + (u²/2)_x = 0` with `η = u²/2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Burgers;

impl HyperbolicSystem for Burgers {
    fn name(&self) -> String {
        "burgers".into()
    }
    fn dim(&self) -> usize {
        1
    }
    fn flux(&self, u: &State) -> DVector<f64> {
        DVector::from_element(1, 0.5 * u[0] * u[0])
    }
    fn jacobian(&self, u: &State) -> DMatrix<f64> {
        DMatrix::from_element(1, 1, u[0])
    }
    fn flux_hessian(&self, _u: &State) -> Tensor3 {
        Tensor3 {
            slices: vec![DMatrix::from_element(1, 1, 1.0)],
        }
    }
    fn entropy(&self, u: &State) -> f64 {
        0.5 * u[0] * u[0]
    }
    fn entropy_gradient(&self, u: &State) -> DVector<f64> {
        u.clone()
    }
    fn entropy_hessian(&self, _u: &State) -> DMatrix<f64> {
        DMatrix::identity(1, 1)
    }
    fn entropy_third(&self, _u: &State) -> Tensor3 {
        Tensor3::zeros(1)
    }
    fn entropy_flux(&self, u: &State) -> f64 {
        u[0].powi(3) / 3.0
    }
    fn derivative_mode(&self) -> DerivativeMode {
        DerivativeMode::Analytic
    }
    fn speed_bounds(&self, u: &State) -> (f64, f64) {
        (u[0], u[0])
    }
}

/// Isentropic p-system in Lagrangian coordinates, state `(v, m)`:
/// `v_t - m_x = 0`, `m_t + p(v)_x = 0`, `p(v) = v^(-γ)`.
#[derive(Debug, Clone, Copy)]
pub struct PSystem {
    law: PowerLaw,
}

impl PSystem {
    pub fn new(gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        Ok(PSystem {
            law: PowerLaw { gamma },
        })
    }
    pub fn gamma(&self) -> f64 {
        self.law.gamma
    }
}

impl HyperbolicSystem for PSystem {
    fn name(&self) -> String {
        "p_system".into()
    }
    fn dim(&self) -> usize {
        2
    }
    fn domain_box(&self) -> Vec<(f64, f64)> {
        vec![(0.0, f64::INFINITY), (f64::NEG_INFINITY, f64::INFINITY)]
    }
    fn flux(&self, u: &State) -> DVector<f64> {
        DVector::from_vec(vec![-u[1], self.law.p(u[0])])
    }
    fn jacobian(&self, u: &State) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[0.0, -1.0, self.law.dp(u[0]), 0.0])
    }
    fn flux_hessian(&self, u: &State) -> Tensor3 {
        let mut t = Tensor3::zeros(2);
        t.slices[1][(0, 0)] = self.law.ddp(u[0]);
        t
    }
    fn entropy(&self, u: &State) -> f64 {
        self.law.tail(u[0]) + 0.5 * u[1] * u[1]
    }
    fn entropy_gradient(&self, u: &State) -> DVector<f64> {
        DVector::from_vec(vec![-self.law.p(u[0]), u[1]])
    }
    fn entropy_hessian(&self, u: &State) -> DMatrix<f64> {
        DMatrix::from_row_slice(2, 2, &[-self.law.dp(u[0]), 0.0, 0.0, 1.0])
    }
    fn entropy_third(&self, u: &State) -> Tensor3 {
        let mut t = Tensor3::zeros(2);
        t.slices[0][(0, 0)] = -self.law.ddp(u[0]);
        t
    }
    fn entropy_flux(&self, u: &State) -> f64 {
        u[1] * self.law.p(u[0])
    }
    fn anchor(&self) -> State {
        DVector::from_vec(vec![1.0, 0.0])
    }
    fn derivative_mode(&self) -> DerivativeMode {
        DerivativeMode::Analytic
    }
    fn speed_bounds(&self, u: &State) -> (f64, f64) {
        let c = (-self.law.dp(u[0])).sqrt();
        (-c, c)
    }
}

/// The 3×3 family with symmetric Jacobian, state `(u, v, w)`:
///
/// ```text
/// f₁ = (u+1)² + v(2αw - 2u)
/// f₂ = v² - u² - 3w² + 2αuw
/// f₃ = (w-1)² + v(2αu - 6w)
/// ```
///
/// `f = ∇φ` for a cubic potential `φ`, so `η = |U|²/2` with `q = U·f - φ`.
#[derive(Debug, Clone, Copy)]
pub struct Example3x3 {
    pub alpha: f64,
}

impl Example3x3 {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::BadParameter {
                name: "alpha",
                reason: format!("need a finite value, got {alpha}"),
            });
        }
        Ok(Example3x3 { alpha })
    }

    fn potential(&self, s: &State) -> f64 {
        let (u, v, w) = (s[0], s[1], s[2]);
        (u + 1.0).powi(3) / 3.0
            + v.powi(3) / 3.0
            + (w - 1.0).powi(3) / 3.0
            + v * (2.0 * self.alpha * u * w - u * u - 3.0 * w * w)
    }
}

impl HyperbolicSystem for Example3x3 {
    fn name(&self) -> String {
        "example3x3".into()
    }
    fn dim(&self) -> usize {
        3
    }
    fn domain_box(&self) -> Vec<(f64, f64)> {
        vec![(-0.5, 0.5); 3]
    }
    fn flux(&self, s: &State) -> DVector<f64> {
        let (u, v, w, a) = (s[0], s[1], s[2], self.alpha);
        DVector::from_vec(vec![
            (u + 1.0).powi(2) + v * (2.0 * a * w - 2.0 * u),
            v * v - u * u - 3.0 * w * w + 2.0 * a * u * w,
            (w - 1.0).powi(2) + v * (2.0 * a * u - 6.0 * w),
        ])
    }
    fn jacobian(&self, s: &State) -> DMatrix<f64> {
        let (u, v, w, a) = (s[0], s[1], s[2], self.alpha);
        DMatrix::from_row_slice(
            3,
            3,
            &[
                2.0 * (u + 1.0) - 2.0 * v,
                -2.0 * u + 2.0 * a * w,
                2.0 * a * v,
                -2.0 * u + 2.0 * a * w,
                2.0 * v,
                -6.0 * w + 2.0 * a * u,
                2.0 * a * v,
                -6.0 * w + 2.0 * a * u,
                2.0 * (w - 1.0) - 6.0 * v,
            ],
        )
    }
    fn flux_hessian(&self, _s: &State) -> Tensor3 {
        let a = self.alpha;
        Tensor3 {
            slices: vec![
                DMatrix::from_row_slice(3, 3, &[2.0, -2.0, 0.0, -2.0, 0.0, 2.0 * a, 0.0, 2.0 * a, 0.0]),
                DMatrix::from_row_slice(3, 3, &[-2.0, 0.0, 2.0 * a, 0.0, 2.0, 0.0, 2.0 * a, 0.0, -6.0]),
                DMatrix::from_row_slice(3, 3, &[0.0, 2.0 * a, 0.0, 2.0 * a, 0.0, -6.0, 0.0, -6.0, 2.0]),
            ],
        }
    }
    fn entropy(&self, s: &State) -> f64 {
        0.5 * s.norm_squared()
    }
    fn entropy_gradient(&self, s: &State) -> DVector<f64> {
        s.clone()
    }
    fn entropy_hessian(&self, _s: &State) -> DMatrix<f64> {
        DMatrix::identity(3, 3)
    }
    fn entropy_third(&self, _s: &State) -> Tensor3 {
        Tensor3::zeros(3)
    }
    fn entropy_flux(&self, s: &State) -> f64 {
        s.dot(&self.flux(s)) - self.potential(s)
    }
    fn derivative_mode(&self) -> DerivativeMode {
        DerivativeMode::Analytic
    }
    // the Jacobian is a Hessian, hence symmetric
    fn speed_bounds(&self, s: &State) -> (f64, f64) {
        let ev = self.jacobian(s).symmetric_eigenvalues();
        (ev.min(), ev.max())
    }
}

/// 2-D isentropic MHD in conservative variables `U = (v, q, u, w)`, `q = vB`:
///
/// ```text
/// v_t - u_x = 0
/// q_t - β w_x = 0
/// u_t + (p(v) + B²/2)_x = 0
/// w_t - β B_x = 0
/// ```
///
/// with `p(v) = v^(-γ)` and entropy `η = ∫_v^∞ p + (u² + w²)/2 + vB²/2`.
/// States with `q = 0` are excluded from the domain.
#[derive(Debug, Clone, Copy)]
pub struct Mhd2d {
    pub beta: f64,
    law: PowerLaw,
}

impl Mhd2d {
    pub fn new(beta: f64, gamma: f64) -> Result<Self> {
        check_gamma(gamma)?;
        if !beta.is_finite() || beta == 0.0 {
            return Err(Error::BadParameter {
                name: "beta",
                reason: format!("need a finite nonzero value, got {beta}"),
            });
        }
        Ok(Mhd2d {
            beta,
            law: PowerLaw { gamma },
        })
    }

    pub fn gamma(&self) -> f64 {
        self.law.gamma
    }

    /// Squared sound speed `c² = -p'(v)`.
    pub fn sound_speed_sq(&self, v: f64) -> f64 {
        -self.law.dp(v)
    }

    /// `(α₊, α₋)`, the squared fast and slow speeds.
    pub fn alpha_pm(&self, s: &State) -> (f64, f64) {
        let (v, q) = (s[0], s[1]);
        let c2 = self.sound_speed_sq(v);
        let b2 = self.beta * self.beta;
        let t = q * q / v.powi(3) + b2 / v + c2;
        let disc = (t * t - 4.0 * b2 * c2 / v).max(0.0).sqrt();
        (0.5 * (t + disc), 0.5 * (t - disc))
    }

    /// `(-√α₊, -√α₋, √α₋, √α₊)`.
    pub fn wave_speeds(&self, s: &State) -> [f64; 4] {
        let (ap, am) = self.alpha_pm(s);
        [-ap.sqrt(), -am.sqrt(), am.sqrt(), ap.sqrt()]
    }

    /// Closed-form right eigenvectors with first component `±1`, in the
    /// orientation for which `∇λ_k · r_k > 0`.
    pub fn closed_form_eigenvectors(&self, s: &State) -> [DVector<f64>; 4] {
        let (v, q) = (s[0], s[1]);
        let c2 = self.sound_speed_sq(v);
        let (ap, am) = self.alpha_pm(s);
        let vec = |al: f64, sign: f64| {
            DVector::from_vec(vec![
                sign,
                sign * (q / v - (al - c2) / q * v * v),
                al.sqrt(),
                -self.beta * v * (al - c2) / (q * al.sqrt()),
            ])
        };
        [vec(ap, 1.0), vec(am, 1.0), vec(am, -1.0), vec(ap, -1.0)]
    }

    /// `λ⁴ - (q²/v³ + β²/v + c²) λ² + β² c²/v`.
    pub fn characteristic_polynomial(&self, s: &State, lambda: f64) -> f64 {
        let (v, q) = (s[0], s[1]);
        let c2 = self.sound_speed_sq(v);
        let b2 = self.beta * self.beta;
        let l2 = lambda * lambda;
        l2 * l2 - (q * q / v.powi(3) + b2 / v + c2) * l2 + b2 * c2 / v
    }
}

impl HyperbolicSystem for Mhd2d {
    fn name(&self) -> String {
        "mhd2d".into()
    }
    fn dim(&self) -> usize {
        4
    }
    fn domain_box(&self) -> Vec<(f64, f64)> {
        let all = (f64::NEG_INFINITY, f64::INFINITY);
        vec![(0.0, f64::INFINITY), all, all, all]
    }
    fn check_domain(&self, u: &State) -> Result<()> {
        if u.len() != 4 {
            return Err(Error::DomainViolation {
                state: u.as_slice().to_vec(),
                reason: "expected 4 components".into(),
            });
        }
        if !u.iter().all(|x| x.is_finite()) || u[0] <= 0.0 {
            return Err(Error::DomainViolation {
                state: u.as_slice().to_vec(),
                reason: "need finite components and v > 0".into(),
            });
        }
        if u[1] == 0.0 {
            return Err(Error::DomainViolation {
                state: u.as_slice().to_vec(),
                reason: "states with q = 0 are excluded".into(),
            });
        }
        Ok(())
    }
    fn flux(&self, s: &State) -> DVector<f64> {
        let (v, q, u, w, b) = (s[0], s[1], s[2], s[3], self.beta);
        DVector::from_vec(vec![
            -u,
            -b * w,
            self.law.p(v) + 0.5 * q * q / (v * v),
            -b * q / v,
        ])
    }
    fn jacobian(&self, s: &State) -> DMatrix<f64> {
        let (v, q, b) = (s[0], s[1], self.beta);
        let v2 = v * v;
        DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0,
                0.0,
                -1.0,
                0.0,
                0.0,
                0.0,
                0.0,
                -b,
                self.law.dp(v) - q * q / (v2 * v),
                q / v2,
                0.0,
                0.0,
                b * q / v2,
                -b / v,
                0.0,
                0.0,
            ],
        )
    }
    fn flux_hessian(&self, s: &State) -> Tensor3 {
        let (v, q, b) = (s[0], s[1], self.beta);
        let mut t = Tensor3::zeros(4);
        let m = &mut t.slices[2];
        m[(0, 0)] = self.law.ddp(v) + 3.0 * q * q / v.powi(4);
        m[(0, 1)] = -2.0 * q / v.powi(3);
        m[(1, 0)] = m[(0, 1)];
        m[(1, 1)] = 1.0 / (v * v);
        let m = &mut t.slices[3];
        m[(0, 0)] = -2.0 * b * q / v.powi(3);
        m[(0, 1)] = b / (v * v);
        m[(1, 0)] = m[(0, 1)];
        t
    }
    fn entropy(&self, s: &State) -> f64 {
        let (v, q, u, w) = (s[0], s[1], s[2], s[3]);
        self.law.tail(v) + 0.5 * (u * u + w * w) + 0.5 * q * q / v
    }
    fn entropy_gradient(&self, s: &State) -> DVector<f64> {
        let (v, q, u, w) = (s[0], s[1], s[2], s[3]);
        DVector::from_vec(vec![-self.law.p(v) - 0.5 * q * q / (v * v), q / v, u, w])
    }
    fn entropy_hessian(&self, s: &State) -> DMatrix<f64> {
        let (v, q) = (s[0], s[1]);
        let mut m = DMatrix::identity(4, 4);
        m[(0, 0)] = -self.law.dp(v) + q * q / v.powi(3);
        m[(0, 1)] = -q / (v * v);
        m[(1, 0)] = m[(0, 1)];
        m[(1, 1)] = 1.0 / v;
        m
    }
    fn entropy_third(&self, s: &State) -> Tensor3 {
        let (v, q) = (s[0], s[1]);
        let mut t = Tensor3::zeros(4);
        let m = &mut t.slices[0];
        m[(0, 0)] = -self.law.ddp(v) - 3.0 * q * q / v.powi(4);
        m[(0, 1)] = 2.0 * q / v.powi(3);
        m[(1, 0)] = m[(0, 1)];
        m[(1, 1)] = -1.0 / (v * v);
        let m = &mut t.slices[1];
        m[(0, 0)] = 2.0 * q / v.powi(3);
        m[(0, 1)] = -1.0 / (v * v);
        m[(1, 0)] = m[(0, 1)];
        t
    }
    fn entropy_flux(&self, s: &State) -> f64 {
        let (v, q, u, w) = (s[0], s[1], s[2], s[3]);
        u * (self.law.p(v) + 0.5 * q * q / (v * v)) - self.beta * w * q / v
    }
    fn anchor(&self) -> State {
        DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0])
    }
    fn derivative_mode(&self) -> DerivativeMode {
        DerivativeMode::Analytic
    }
    fn speed_bounds(&self, s: &State) -> (f64, f64) {
        let fast = self.alpha_pm(s).0.sqrt();
        (-fast, fast)
    }
}

/// Structured-text system selection, e.g.
/// `{"system": "example3x3", "params": {"alpha": 1.0}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub system: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl SystemSpec {
    pub fn new(system: &str) -> Self {
        SystemSpec {
            system: system.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn build(&self) -> Result<Arc<dyn HyperbolicSystem>> {
        builtin(&self.system, &self.params)
    }
}

/// Construct a built-in system by name.
///
/// Names: `burgers`, `p_system` (`gamma`, default 1.4), `example3x3`
/// (`alpha`, default 1), `mhd2d` (`beta` default 1, `gamma` default 5/3).
pub fn builtin(name: &str, params: &BTreeMap<String, f64>) -> Result<Arc<dyn HyperbolicSystem>> {
    let allowed: &[&str] = match name {
        "burgers" => &[],
        "p_system" => &["gamma"],
        "example3x3" => &["alpha"],
        "mhd2d" => &["beta", "gamma"],
        other => return Err(Error::Config(format!("unknown system `{other}`"))),
    };
    if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::Config(format!("system `{name}` has no parameter `{k}`")));
    }
    let get = |k: &str, default: f64| params.get(k).copied().unwrap_or(default);
    Ok(match name {
        "burgers" => Arc::new(Burgers),
        "p_system" => Arc::new(PSystem::new(get("gamma", 1.4))?),
        "example3x3" => Arc::new(Example3x3::new(get("alpha", 1.0))?),
        _ => Arc::new(Mhd2d::new(get("beta", 1.0), get("gamma", 5.0 / 3.0))?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(v: &[f64]) -> State {
        DVector::from_vec(v.to_vec())
    }

    #[test]
    fn burgers_jacobian_is_u() {
        assert_eq!(Burgers.jacobian(&st(&[3.0]))[(0, 0)], 3.0);
    }

    #[test]
    fn example3x3_jacobian_at_origin() {
        let sys = Example3x3::new(0.0).unwrap();
        let j = sys.jacobian(&st(&[0.0, 0.0, 0.0]));
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 0.0, -2.0]));
        assert_eq!(j, expect);
        // the constant part of the flux does not enter f'
        assert_eq!(sys.flux(&st(&[0.0, 0.0, 0.0])), st(&[1.0, 0.0, 1.0]));
    }

    #[test]
    fn example3x3_entropy_hessian_is_identity() {
        let sys = Example3x3::new(1.0).unwrap();
        assert_eq!(sys.entropy_hessian(&st(&[0.1, -0.2, 0.3])), DMatrix::identity(3, 3));
    }

    #[test]
    fn mhd_jacobian_rows() {
        let sys = Mhd2d::new(1.0, 5.0 / 3.0).unwrap();
        let (v, q) = (2.0, 0.5);
        let j = sys.jacobian(&st(&[v, q, 0.3, -0.1]));
        let dp = -(5.0 / 3.0) * v.powf(-8.0 / 3.0);
        assert_eq!(j.row(0).iter().cloned().collect::<Vec<_>>(), vec![0.0, 0.0, -1.0, 0.0]);
        assert_eq!(j.row(1).iter().cloned().collect::<Vec<_>>(), vec![0.0, 0.0, 0.0, -1.0]);
        assert!((j[(2, 0)] - (dp - q * q / v.powi(3))).abs() < 1e-15);
        assert!((j[(2, 1)] - q / (v * v)).abs() < 1e-15);
        assert!((j[(3, 0)] - q / (v * v)).abs() < 1e-15);
        assert!((j[(3, 1)] + 1.0 / v).abs() < 1e-15);
    }

    #[test]
    fn mhd_entropy_hessian_at_unit_state() {
        let g = 5.0 / 3.0;
        let sys = Mhd2d::new(1.0, g).unwrap();
        let h = sys.entropy_hessian(&st(&[1.0, 1.0, 0.0, 0.0]));
        assert!((h[(0, 0)] - (g + 1.0)).abs() < 1e-14);
        assert_eq!(h[(0, 1)], -1.0);
        assert_eq!(h[(1, 1)], 1.0);
        assert_eq!(h.view((2, 2), (2, 2)).into_owned(), DMatrix::identity(2, 2));
    }

    #[test]
    fn mhd_rejects_q_zero_and_bad_gamma() {
        let sys = Mhd2d::new(1.0, 5.0 / 3.0).unwrap();
        assert!(sys.check_domain(&st(&[1.0, 0.0, 0.0, 0.0])).is_err());
        assert!(sys.check_domain(&st(&[-1.0, 1.0, 0.0, 0.0])).is_err());
        assert!(matches!(Mhd2d::new(1.0, 1.0), Err(Error::BadParameter { .. })));
        assert!(matches!(PSystem::new(0.5), Err(Error::BadParameter { .. })));
    }

    #[test]
    fn spec_validation() {
        let spec = SystemSpec::new("example3x3").with("alpha", 2.0);
        assert!(spec.build().is_ok());
        assert!(SystemSpec::new("example3x3").with("beta", 1.0).build().is_err());
        assert!(SystemSpec::new("euler").build().is_err());
    }
}
