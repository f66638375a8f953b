//! Sorted, biorthonormal, orientation-fixed eigenstructure of `f'(u)`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{HyperbolicSystem, State};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct EigenOptions {
    /// Minimal eigenvalue gap relative to `max |λ|`.
    pub hyperbolicity_floor_rel: f64,
    /// Imaginary parts above this (relative to `max |λ|`) are rejected.
    pub complex_tol_rel: f64,
    /// Families with `|∇λ·r| ≤ gnl_tol_rel · max|f''|` are treated as
    /// linearly degenerate for orientation purposes.
    pub gnl_tol_rel: f64,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            hyperbolicity_floor_rel: 1e-8,
            complex_tol_rel: 1e-9,
            gnl_tol_rel: 1e-6,
        }
    }
}

/// Eigen-decomposition of the flux Jacobian at a state.
///
/// `right` holds unit right eigenvectors as columns, `left` the dual left
/// eigenvectors as rows (`left * right = I`), eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenStructure {
    pub state: State,
    pub eigenvalues: DVector<f64>,
    pub right: DMatrix<f64>,
    pub left: DMatrix<f64>,
    /// `g_k = ∇λ_k · r_k`.
    pub gnl: DVector<f64>,
    /// `true` where the family was oriented by `g_k > 0`.
    pub gnl_oriented: Vec<bool>,
}

impl EigenStructure {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda(&self, k: usize) -> f64 {
        self.eigenvalues[k]
    }

    pub fn r(&self, k: usize) -> DVector<f64> {
        self.right.column(k).into_owned()
    }

    pub fn l(&self, k: usize) -> DVector<f64> {
        self.left.row(k).transpose()
    }

    /// Smallest gap between consecutive eigenvalues (infinite for `n = 1`).
    pub fn min_gap(&self) -> f64 {
        self.eigenvalues
            .as_slice()
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min)
    }

    /// Right eigenvectors of all families except `i`, as columns.
    pub fn complement_basis(&self, i: usize) -> DMatrix<f64> {
        let cols: Vec<DVector<f64>> = (0..self.dim()).filter(|&k| k != i).map(|k| self.r(k)).collect();
        DMatrix::from_columns(&cols)
    }

    fn flip(&mut self, k: usize) {
        self.right.column_mut(k).neg_mut();
        self.left.row_mut(k).neg_mut();
        self.gnl[k] = -self.gnl[k];
    }
}

/// `∇λ_k` as a vector: `(∇λ_k)_m = Σ_p l_p (f''_p r_k)_m`.
pub fn grad_lambda(system: &dyn HyperbolicSystem, eig: &EigenStructure, k: usize) -> DVector<f64> {
    let fpp = system.flux_hessian(&eig.state);
    fpp.weighted_sum(&eig.l(k)) * eig.r(k)
}

/// Eigenstructure at `u`, GNL families oriented so that `∇λ·r > 0` and
/// linearly degenerate ones so that their largest component is positive.
pub fn eigenstructure(system: &dyn HyperbolicSystem, u: &State) -> Result<EigenStructure> {
    eigenstructure_oriented(system, u, None, EigenOptions::default())
}

/// As [`eigenstructure`], orienting linearly degenerate families by
/// continuity against `reference` when given.
pub fn eigenstructure_oriented(
    system: &dyn HyperbolicSystem,
    u: &State,
    reference: Option<&EigenStructure>,
    opts: EigenOptions,
) -> Result<EigenStructure> {
    system.check_domain(u)?;
    let n = system.dim();
    let a = system.jacobian(u);
    let h = system.entropy_hessian(u);

    let (eigenvalues, mut right, mut left) = match symmetrized(&a, &h) {
        Some(x) => x,
        None => general(&a, opts)?,
    };

    let scale = eigenvalues.amax().max(f64::MIN_POSITIVE);
    let floor = opts.hyperbolicity_floor_rel * scale.max(1e-300);
    for w in eigenvalues.as_slice().windows(2) {
        if w[1] - w[0] <= floor {
            return Err(Error::StrictHyperbolicityViolation {
                gap: w[1] - w[0],
                floor,
            });
        }
    }

    for k in 0..n {
        let norm = right.column(k).norm();
        right.column_mut(k).scale_mut(1.0 / norm);
        left.row_mut(k).scale_mut(norm);
    }

    let fpp = system.flux_hessian(u);
    let fpp_scale = fpp.slices.iter().map(|m| m.amax()).fold(0.0, f64::max);
    let gnl = DVector::from_iterator(
        n,
        (0..n).map(|k| {
            let r = right.column(k).into_owned();
            let l = left.row(k).transpose();
            l.dot(&fpp.contract(&r, &r))
        }),
    );
    let mut eig = EigenStructure {
        state: u.clone(),
        eigenvalues,
        right,
        left,
        gnl,
        gnl_oriented: vec![false; n],
    };
    for k in 0..n {
        if eig.gnl[k].abs() > opts.gnl_tol_rel * fpp_scale && fpp_scale > 0.0 {
            eig.gnl_oriented[k] = true;
            if eig.gnl[k] < 0.0 {
                eig.flip(k);
            }
        } else {
            let r = eig.r(k);
            let sign = match reference {
                Some(re) if re.dim() == n => r.dot(&re.r(k)),
                _ => {
                    let big = r.iamax();
                    r[big]
                }
            };
            if sign < 0.0 {
                eig.flip(k);
            }
        }
    }
    Ok(eig)
}

/// Entropy symmetrization: with `∇²η = L Lᵀ`, `Lᵀ f' L⁻ᵀ` is symmetric.
fn symmetrized(a: &DMatrix<f64>, h: &DMatrix<f64>) -> Option<(DVector<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let chol = h.clone().cholesky()?;
    let l = chol.l();
    let lt = l.transpose();
    let lt_inv = lt.clone().try_inverse()?;
    let m = &lt * a * &lt_inv;
    let asym = (&m - m.transpose()).amax();
    if asym > 1e-8 * m.amax().max(1e-300) {
        return None;
    }
    let eig = SymmetricEigen::new((&m + m.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..a.nrows()).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let vals = DVector::from_iterator(order.len(), order.iter().map(|&k| eig.eigenvalues[k]));
    let w = DMatrix::from_columns(&order.iter().map(|&k| eig.eigenvectors.column(k)).collect::<Vec<_>>());
    let right = &lt_inv * &w;
    let left = w.transpose() * &lt;
    Some((vals, right, left))
}

/// Fallback for Jacobians not symmetrized by the entropy Hessian: real Schur
/// eigenvalues, null vectors by SVD, left vectors by inversion.
fn general(a: &DMatrix<f64>, opts: EigenOptions) -> Result<(DVector<f64>, DMatrix<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let ev = a.complex_eigenvalues();
    let scale = ev.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1e-300);
    let imag = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if imag > opts.complex_tol_rel * scale {
        return Err(Error::ComplexSpectrum { imag });
    }
    let mut vals: Vec<f64> = ev.iter().map(|z| z.re).collect();
    vals.sort_by(f64::total_cmp);
    let mut cols = Vec::with_capacity(n);
    for &lam in &vals {
        let shifted = a - DMatrix::identity(n, n) * lam;
        let svd = shifted.svd(false, true);
        let vt = svd.v_t.ok_or_else(|| Error::SingularLinearSystem("SVD failed".into()))?;
        let k = svd
            .singular_values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (k, &s)| if s < acc.1 { (k, s) } else { acc })
            .0;
        cols.push(vt.row(k).transpose());
    }
    let right = DMatrix::from_columns(&cols);
    let left = right
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::SingularLinearSystem("eigenvector matrix".into()))?;
    Ok((DVector::from_vec(vals), right, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Example3x3, Mhd2d};

    #[test]
    fn example3x3_at_origin_has_unit_vectors() {
        let sys = Example3x3::new(1.0).unwrap();
        let eig = eigenstructure(&sys, &DVector::zeros(3)).unwrap();
        assert_eq!(eig.eigenvalues.as_slice(), &[-2.0, 0.0, 2.0]);
        // ascending order: λ = -2 ↔ e3, 0 ↔ e2, 2 ↔ e1, all GNL with g = 2
        for (k, axis) in [(0, 2), (1, 1), (2, 0)] {
            assert!((eig.r(k)[axis] - 1.0).abs() < 1e-14);
            assert!((eig.l(k)[axis] - 1.0).abs() < 1e-14);
            assert!((eig.gnl[k] - 2.0).abs() < 1e-13);
        }
    }

    #[test]
    fn mhd_unit_state_speeds() {
        let sys = Mhd2d::new(1.0, 5.0 / 3.0).unwrap();
        let u = DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]);
        let eig = eigenstructure(&sys, &u).unwrap();
        let expect = sys.wave_speeds(&u);
        for k in 0..4 {
            assert!((eig.lambda(k) - expect[k]).abs() < 1e-12);
        }
        let ap = 0.5 * (11.0 / 3.0 + 61f64.sqrt() / 3.0);
        assert!((expect[3] - ap.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn coincident_speeds_are_rejected() {
        use crate::system::Burgers;
        #[derive(Debug)]
        struct Doubled;
        impl HyperbolicSystem for Doubled {
            fn name(&self) -> String {
                "doubled".into()
            }
            fn dim(&self) -> usize {
                2
            }
            fn flux(&self, u: &State) -> DVector<f64> {
                u.map(|x| 0.5 * x * x)
            }
            fn jacobian(&self, u: &State) -> DMatrix<f64> {
                DMatrix::from_diagonal(u)
            }
            fn entropy(&self, u: &State) -> f64 {
                0.5 * u.norm_squared()
            }
            fn entropy_gradient(&self, u: &State) -> DVector<f64> {
                u.clone()
            }
            fn entropy_hessian(&self, _u: &State) -> DMatrix<f64> {
                DMatrix::identity(2, 2)
            }
        }
        let u = DVector::from_vec(vec![1.0, 1.0]);
        assert!(matches!(
            eigenstructure(&Doubled, &u),
            Err(Error::StrictHyperbolicityViolation { .. })
        ));
        assert!(eigenstructure(&Burgers, &DVector::from_element(1, 0.0)).is_ok());
    }

    #[test]
    fn complex_spectrum_is_rejected() {
        #[derive(Debug)]
        struct Rotation;
        impl HyperbolicSystem for Rotation {
            fn name(&self) -> String {
                "rotation".into()
            }
            fn dim(&self) -> usize {
                2
            }
            fn flux(&self, u: &State) -> DVector<f64> {
                DVector::from_vec(vec![-u[1], u[0]])
            }
            fn jacobian(&self, _u: &State) -> DMatrix<f64> {
                DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0])
            }
            fn entropy(&self, u: &State) -> f64 {
                0.5 * u.norm_squared()
            }
            fn entropy_gradient(&self, u: &State) -> DVector<f64> {
                u.clone()
            }
            fn entropy_hessian(&self, _u: &State) -> DMatrix<f64> {
                DMatrix::identity(2, 2)
            }
        }
        let u = DVector::from_vec(vec![0.3, 0.1]);
        assert!(matches!(
            eigenstructure(&Rotation, &u),
            Err(Error::ComplexSpectrum { .. })
        ));
    }
}
