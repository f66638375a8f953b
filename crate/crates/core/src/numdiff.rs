//! Central finite differences.
//!
//! Steps are scaled per coordinate as `h_k = c · max(1, |u_k|)` where `c` is
//! `ε^(1/3)` when differencing a function once and `ε^(1/4)` when a second
//! difference is taken.

use nalgebra::{DMatrix, DVector};

use crate::linalg::Tensor3;

pub fn step_first() -> f64 {
    f64::EPSILON.cbrt()
}

pub fn step_second() -> f64 {
    f64::EPSILON.powf(0.25)
}

fn scaled(u: &DVector<f64>, k: usize, c: f64) -> f64 {
    c * u[k].abs().max(1.0)
}

/// Gradient of a scalar function.
pub fn gradient<F, E>(mut f: F, u: &DVector<f64>, c: f64) -> Result<DVector<f64>, E>
where
    F: FnMut(&DVector<f64>) -> Result<f64, E>,
{
    let n = u.len();
    let mut g = DVector::zeros(n);
    for k in 0..n {
        let h = scaled(u, k, c);
        let mut up = u.clone();
        up[k] += h;
        let mut dn = u.clone();
        dn[k] -= h;
        g[k] = (f(&up)? - f(&dn)?) / (2.0 * h);
    }
    Ok(g)
}

/// Jacobian `J_{pk} = ∂_k F_p` of a vector function.
pub fn jacobian<F, E>(mut f: F, u: &DVector<f64>, c: f64) -> Result<DMatrix<f64>, E>
where
    F: FnMut(&DVector<f64>) -> Result<DVector<f64>, E>,
{
    let n = u.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let h = scaled(u, k, c);
        let mut up = u.clone();
        up[k] += h;
        let mut dn = u.clone();
        dn[k] -= h;
        cols.push((f(&up)? - f(&dn)?) / (2.0 * h));
    }
    let m = cols[0].len();
    Ok(DMatrix::from_fn(m, n, |p, k| cols[k][p]))
}

/// Derivative of a matrix-valued function: slice `k` is `∂_k M`.
pub fn matrix_derivative<F, E>(mut f: F, u: &DVector<f64>, c: f64) -> Result<Vec<DMatrix<f64>>, E>
where
    F: FnMut(&DVector<f64>) -> Result<DMatrix<f64>, E>,
{
    let n = u.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let h = scaled(u, k, c);
        let mut up = u.clone();
        up[k] += h;
        let mut dn = u.clone();
        dn[k] -= h;
        out.push((f(&up)? - f(&dn)?) / (2.0 * h));
    }
    Ok(out)
}

/// Hessian of a scalar function from second differences, symmetrized.
pub fn hessian<F, E>(mut f: F, u: &DVector<f64>, c: f64) -> Result<DMatrix<f64>, E>
where
    F: FnMut(&DVector<f64>) -> Result<f64, E>,
{
    let n = u.len();
    let mut h = DMatrix::zeros(n, n);
    let f0 = f(u)?;
    for a in 0..n {
        let ha = scaled(u, a, c);
        for b in a..n {
            let hb = scaled(u, b, c);
            let val = if a == b {
                let mut up = u.clone();
                up[a] += ha;
                let mut dn = u.clone();
                dn[a] -= ha;
                (f(&up)? - 2.0 * f0 + f(&dn)?) / (ha * ha)
            } else {
                let eval = |sa: f64, sb: f64, f: &mut F| {
                    let mut w = u.clone();
                    w[a] += sa * ha;
                    w[b] += sb * hb;
                    f(&w)
                };
                (eval(1.0, 1.0, &mut f)? - eval(1.0, -1.0, &mut f)? - eval(-1.0, 1.0, &mut f)?
                    + eval(-1.0, -1.0, &mut f)?)
                    / (4.0 * ha * hb)
            };
            h[(a, b)] = val;
            h[(b, a)] = val;
        }
    }
    Ok(h)
}

/// Flux Hessian tensor from differences of the Jacobian:
/// `slices[p][(a, b)] = ∂_b (f')_{pa}`, symmetrized in `(a, b)`.
pub fn flux_hessian_from_jacobian<F, E>(f: F, u: &DVector<f64>) -> Result<Tensor3, E>
where
    F: FnMut(&DVector<f64>) -> Result<DMatrix<f64>, E>,
{
    let n = u.len();
    let dj = matrix_derivative(f, u, step_first())?;
    let mut t = Tensor3::zeros(n);
    for p in 0..n {
        for a in 0..n {
            for b in 0..n {
                t.slices[p][(a, b)] = 0.5 * (dj[b][(p, a)] + dj[a][(p, b)]);
            }
        }
    }
    Ok(t)
}
