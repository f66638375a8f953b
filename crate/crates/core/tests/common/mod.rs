//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shock_contract::dissipation::ContractionContext;
use shock_contract::system::{Burgers, Example3x3, HyperbolicSystem, Mhd2d, PSystem, State};

/// Reference shocks used across the suites: (label, context).
pub fn reference_contexts() -> Vec<(&'static str, ContractionContext)> {
    let mk = |sys: Arc<dyn HyperbolicSystem>, ul: &[f64], fam: usize, s: f64, c: f64| {
        ContractionContext::new(sys, DVector::from_column_slice(ul), fam, s, c).unwrap()
    };
    vec![
        ("burgers", mk(Arc::new(Burgers), &[1.0], 0, 0.1, 1.0)),
        ("p_system/1", mk(Arc::new(PSystem::new(1.4).unwrap()), &[1.0, 0.0], 0, 0.1, 1.0)),
        ("p_system/2", mk(Arc::new(PSystem::new(1.4).unwrap()), &[1.0, 0.0], 1, 0.1, 1.0)),
        ("example3x3", mk(Arc::new(Example3x3::new(1.0).unwrap()), &[0.0, 0.0, 0.0], 1, 0.05, 1.0)),
        ("mhd2d/unit", mk(Arc::new(Mhd2d::new(1.0, 5.0 / 3.0).unwrap()), &[1.0, 1.0, 0.0, 0.0], 1, 1e-2, 1.0)),
        ("mhd2d/large-v", mk(Arc::new(Mhd2d::new(1.0, 5.0 / 3.0).unwrap()), &[100.0, 1.0, 0.0, 0.0], 1, 1e-2, 1.0)),
    ]
}

/// Eigenvectors at `u_L` rescaled to the entropy length of `r_i`, so that
/// the shock itself is roughly `s·d_i` in every direction's natural units.
pub fn entropy_basis(ctx: &ContractionContext) -> Vec<DVector<f64>> {
    let e = ctx.eigen_l();
    let h = ctx.system().entropy_hessian(ctx.u_l());
    let norm = |v: &DVector<f64>| v.dot(&(&h * v)).sqrt();
    let ri = norm(&e.r(ctx.family()));
    (0..e.dim()).map(|k| e.r(k) * (ri / norm(&e.r(k)))).collect()
}

/// Random state `u_L + κ s Σ ξ_k d_k` with `ξ ∈ [-1, 1]ⁿ`, retried until it
/// lies in Π.
pub fn sample_near(ctx: &ContractionContext, rng: &mut ChaCha8Rng, kappa: f64) -> State {
    let basis = entropy_basis(ctx);
    loop {
        let mut u = ctx.u_l().clone();
        for d in &basis {
            u += d * (kappa * ctx.s() * rng.gen_range(-1.0..1.0));
        }
        if ctx.in_pi(&u) {
            return u;
        }
    }
}

/// Central difference of `f` along `d`.
pub fn directional<F, T>(mut f: F, u: &State, d: &DVector<f64>, h: f64) -> T
where
    F: FnMut(&State) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T>,
{
    (f(&(u + d * h)) - f(&(u - d * h))) / (2.0 * h)
}

/// Richardson-extrapolated central difference from steps `h` and `h/2`
/// (fourth order).
pub fn richardson<F, T>(mut f: F, u: &State, d: &DVector<f64>, h: f64) -> T
where
    F: FnMut(&State) -> T,
    T: std::ops::Sub<Output = T> + std::ops::Div<f64, Output = T> + std::ops::Mul<f64, Output = T>,
{
    let coarse = directional(&mut f, u, d, h);
    let fine = directional(&mut f, u, d, 0.5 * h);
    (fine * 4.0 - coarse) / 3.0
}

pub fn rel_err(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax() / a.amax().max(b.amax()).max(1e-300)
}

pub fn rel_err_vec(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    (a - b).amax() / a.amax().max(b.amax()).max(1e-300)
}

/// Analytic and finite-difference derivatives of `D_max`, `∇D_max` and `u⁺`
/// expressed in the entropy basis. Returns the three relative errors.
pub fn derivative_errors(ctx: &ContractionContext, u: &State) -> (f64, f64, f64) {
    let basis = entropy_basis(ctx);
    let n = basis.len();
    let p = DMatrix::from_columns(&basis);
    let h = 1e-3 * ctx.s();
    let ms = ctx.maximal_shock(u).unwrap();
    let g = p.tr_mul(&ctx.grad_d_max_of(&ms).unwrap());
    let hess = ctx.hess_d_max_of(&ms).unwrap() * &p;
    let du = &ms.grad_u_plus * &p;

    let mut g_fd = DVector::zeros(n);
    let mut h_fd = DMatrix::zeros(n, n);
    let mut du_fd = DMatrix::zeros(n, n);
    for (k, d) in basis.iter().enumerate() {
        g_fd[k] = richardson(|v| ctx.d_max(v).unwrap(), u, d, h);
        h_fd.set_column(k, &richardson(|v| ctx.grad_d_max(v).unwrap(), u, d, h));
        du_fd.set_column(k, &richardson(|v| ctx.maximal_shock(v).unwrap().u_plus, u, d, h));
    }
    (
        rel_err_vec(&g, &g_fd),
        rel_err(&hess, &h_fd),
        rel_err(&du, &du_fd),
    )
}
