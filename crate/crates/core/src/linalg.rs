//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};

/// Third-order tensor stored as `n` square slices.
///
/// For a flux Hessian, `slices[p]` is the Hessian of the component `f_p`.
/// For an entropy third derivative, `slices[a]` is `∂_a ∇²η`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor3 {
    pub slices: Vec<DMatrix<f64>>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 {
            slices: vec![DMatrix::zeros(n, n); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.slices.len()
    }

    /// `out_p = xᵀ T_p y`.
    pub fn contract(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(self.dim(), self.slices.iter().map(|t| x.dot(&(t * y))))
    }

    /// `Σ_p w_p T_p`.
    pub fn weighted_sum(&self, w: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (p, t) in self.slices.iter().enumerate() {
            out += t * w[p];
        }
        out
    }

    /// `M_{pa} = Σ_b (T_p)_{ab} v_b`; for a flux Hessian this is the
    /// directional derivative of the Jacobian along `v`.
    pub fn apply_last(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let n = self.dim();
        let mut out = DMatrix::zeros(n, n);
        for (p, t) in self.slices.iter().enumerate() {
            let row = t * v;
            for a in 0..n {
                out[(p, a)] = row[a];
            }
        }
        out
    }

    /// Largest absolute deviation from symmetry over all slices.
    pub fn asymmetry(&self) -> f64 {
        self.slices
            .iter()
            .map(|t| (t - t.transpose()).amax())
            .fold(0.0, f64::max)
    }
}

pub fn sym(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Largest eigenvalue of the symmetric part of `m` with a unit eigenvector.
pub fn lambda_max(m: &DMatrix<f64>) -> (f64, DVector<f64>) {
    let eig = SymmetricEigen::new(sym(m));
    let (k, val) = eig
        .eigenvalues
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, &v)| if v > acc.1 { (k, v) } else { acc });
    (val, eig.eigenvectors.column(k).into_owned())
}

pub fn lambda_min(m: &DMatrix<f64>) -> f64 {
    SymmetricEigen::new(sym(m))
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min)
}

/// Solve `a x = b` by LU, refusing numerically singular systems.
pub fn solve(a: &DMatrix<f64>, b: &DMatrix<f64>, what: &str) -> Result<DMatrix<f64>> {
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let lu = a.clone().lu();
    let x = lu
        .solve(b)
        .ok_or_else(|| Error::SingularLinearSystem(what.to_string()))?;
    if !x.iter().all(|v| v.is_finite()) {
        return Err(Error::SingularLinearSystem(what.to_string()));
    }
    // reject pivots at round-off level
    let u = lu.u();
    let min_pivot = (0..u.nrows()).map(|k| u[(k, k)].abs()).fold(f64::INFINITY, f64::min);
    if min_pivot <= 1e-14 * scale {
        return Err(Error::SingularLinearSystem(format!(
            "{what} (pivot {min_pivot:e}, scale {scale:e})"
        )));
    }
    Ok(x)
}

pub fn solve_vec(a: &DMatrix<f64>, b: &DVector<f64>, what: &str) -> Result<DVector<f64>> {
    let x = solve(a, &DMatrix::from_column_slice(b.len(), 1, b.as_slice()), what)?;
    Ok(x.column(0).into_owned())
}

pub fn inf_norm(v: &DVector<f64>) -> f64 {
    v.amax()
}

/// Relative entry-wise distance `max|a-b| / max(1, max|b|)`.
pub fn rel_dist(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax() / b.amax().max(1.0)
}
