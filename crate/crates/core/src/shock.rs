//! Hugoniot curves `s ↦ S_u^i(s)` by predictor–corrector continuation.
//!
//! Parametrization: `S(s) = u + s·z(s)` with `dᵀz = 1`, where the unit
//! tangent `d = -r_i(u)` uses the GNL orientation `∇λ_i·r_i > 0`. Hence
//! `σ(s) = λ_i(u) - s g_i/2 + O(s²)` and `s > 0` is the Lax-admissible
//! branch. The corrector works in `(z, σ)`, so every point lies on the
//! hyperplane `dᵀ(S - u) = s` orthogonal to the initial tangent.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, Tensor3};
use crate::quadrature::{adaptive_simpson, gauss_legendre_unit};
use crate::system::{eigenstructure, relative_entropy, relative_flux, EigenStructure, HyperbolicSystem, State};

#[derive(Debug, Clone, Copy)]
pub struct ContinuationOptions {
    pub initial_step: f64,
    pub max_step: f64,
    pub min_step: f64,
    /// Relative Newton tolerance on the desingularized RH residual.
    pub rh_tol: f64,
    pub max_iter: usize,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            initial_step: 1e-3,
            max_step: 2e-2,
            min_step: 1e-12,
            rh_tol: 1e-12,
            max_iter: 50,
        }
    }
}

/// A Rankine–Hugoniot triple on the `family`-th curve of `u_minus`.
#[derive(Debug, Clone)]
pub struct ShockPoint {
    pub u_minus: State,
    pub u_plus: State,
    pub sigma: f64,
    pub family: usize,
    pub s: f64,
    /// `dS/ds` at this point.
    pub tangent: DVector<f64>,
    /// `dσ/ds` at this point.
    pub dsigma: f64,
}

impl ShockPoint {
    /// `|f(u₊) - f(u₋) - σ(u₊ - u₋)|∞`.
    pub fn rh_residual(&self, system: &dyn HyperbolicSystem) -> f64 {
        rh_residual(system, &self.u_minus, &self.u_plus, self.sigma)
    }

    /// `min(σ - λ_i(u₊), λ_i(u₋) - σ)`; positive for a Lax shock.
    pub fn lax_margin(&self, system: &dyn HyperbolicSystem) -> Result<f64> {
        let lm = eigenstructure(system, &self.u_minus)?.lambda(self.family);
        let lp = eigenstructure(system, &self.u_plus)?.lambda(self.family);
        Ok((self.sigma - lp).min(lm - self.sigma))
    }

    /// Lax inequalities for GNL families; `σ = λ_i(u₋) = λ_i(u₊)` within
    /// `ld_tol` for linearly degenerate ones.
    pub fn is_admissible(&self, system: &dyn HyperbolicSystem, ld_tol: f64) -> Result<bool> {
        let em = eigenstructure(system, &self.u_minus)?;
        if em.gnl_oriented[self.family] {
            Ok(self.lax_margin(system)? > 0.0)
        } else {
            let lp = eigenstructure(system, &self.u_plus)?.lambda(self.family);
            Ok((self.sigma - em.lambda(self.family)).abs() <= ld_tol && (self.sigma - lp).abs() <= ld_tol)
        }
    }
}

pub fn rh_residual(system: &dyn HyperbolicSystem, u_minus: &State, u_plus: &State, sigma: f64) -> f64 {
    (system.flux(u_plus) - system.flux(u_minus) - (u_plus - u_minus) * sigma).amax()
}

/// Least-squares RH speed of two states.
pub fn rh_speed(system: &dyn HyperbolicSystem, u_minus: &State, u_plus: &State) -> Option<f64> {
    let du = u_plus - u_minus;
    let d2 = du.norm_squared();
    if d2 == 0.0 {
        return None;
    }
    Some(du.dot(&(system.flux(u_plus) - system.flux(u_minus))) / d2)
}

/// Composite Gauss–Legendre nodes on `[0, 1]` with panels no longer than
/// `0.25` in state space for a segment of length `len`.
fn segment_nodes(len: f64) -> Vec<(f64, f64)> {
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

/// `A(u, v) = ∫₀¹ f'(u + t(v - u)) dt`.
pub fn averaged_matrix(system: &dyn HyperbolicSystem, u: &State, v: &State) -> DMatrix<f64> {
    let n = system.dim();
    let d = v - u;
    let mut a = DMatrix::zeros(n, n);
    for (t, w) in segment_nodes(d.norm()) {
        a += system.jacobian(&(u + &d * t)) * w;
    }
    a
}

/// Newton/continuation solver for one Hugoniot curve.
#[derive(Debug, Clone)]
pub struct HugoniotSolver<'a> {
    system: &'a dyn HyperbolicSystem,
    base: State,
    family: usize,
    direction: DVector<f64>,
    lambda0: f64,
    opts: ContinuationOptions,
}

/// Corrector state `(z, σ)` at parameter `s`.
#[derive(Debug, Clone)]
struct Node {
    s: f64,
    z: DVector<f64>,
    sigma: f64,
    dz: DVector<f64>,
    dsigma: f64,
}

impl<'a> HugoniotSolver<'a> {
    /// Solver for `S_u^i` with the default tangent `-r_i(u)`.
    pub fn new(system: &'a dyn HyperbolicSystem, u: &State, family: usize) -> Result<Self> {
        let eig = eigenstructure(system, u)?;
        Self::from_eigen(system, &eig, family)
    }

    pub fn from_eigen(system: &'a dyn HyperbolicSystem, eig: &EigenStructure, family: usize) -> Result<Self> {
        if family >= eig.dim() {
            return Err(Error::BadFamily {
                family,
                dim: eig.dim(),
            });
        }
        Ok(HugoniotSolver {
            system,
            base: eig.state.clone(),
            family,
            direction: -eig.r(family),
            lambda0: eig.lambda(family),
            opts: ContinuationOptions::default(),
        })
    }

    /// Replace the unit tangent at `s = 0`; it must be an eigenvector of
    /// family `i` (up to sign and scale).
    pub fn with_direction(mut self, d: DVector<f64>) -> Self {
        self.direction = d.normalize();
        self
    }

    pub fn with_options(mut self, opts: ContinuationOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn base(&self) -> &State {
        &self.base
    }

    pub fn family(&self) -> usize {
        self.family
    }

    pub fn direction(&self) -> &DVector<f64> {
        &self.direction
    }

    pub fn system(&self) -> &'a dyn HyperbolicSystem {
        self.system
    }

    fn start(&self) -> Node {
        let mut node = Node {
            s: 0.0,
            z: self.direction.clone(),
            sigma: self.lambda0,
            dz: DVector::zeros(self.base.len()),
            dsigma: 0.0,
        };
        // the tangent at s = 0 never fails for a simple eigenvalue
        if let Ok((dz, ds)) = self.node_tangent(0.0, &node.z, node.sigma) {
            node.dz = dz;
            node.dsigma = ds;
        }
        node
    }

    /// `Q(s, z) = (f(u + sz) - f(u))/s = A(u, u + sz) z`, evaluated by
    /// quadrature to avoid cancellation at small `s`.
    fn secant(&self, s: f64, z: &DVector<f64>) -> DVector<f64> {
        let u = &self.base;
        averaged_matrix(self.system, u, &(u + z * s)) * z
    }

    /// `∂Q/∂s = ∫₀¹ t f''(u + tsz):(z, z) dt`.
    fn secant_ds(&self, s: f64, z: &DVector<f64>) -> DVector<f64> {
        let u = &self.base;
        let mut acc = DVector::zeros(u.len());
        for (t, wt) in segment_nodes((z * s).norm()) {
            let fpp: Tensor3 = self.system.flux_hessian(&(u + z * (t * s)));
            acc += fpp.contract(z, z) * (t * wt);
        }
        acc
    }

    fn bordered(&self, s: f64, z: &DVector<f64>, sigma: f64) -> DMatrix<f64> {
        let n = self.base.len();
        let mut j = DMatrix::zeros(n + 1, n + 1);
        let fp = self.system.jacobian(&(&self.base + z * s));
        j.view_mut((0, 0), (n, n)).copy_from(&(fp - DMatrix::identity(n, n) * sigma));
        for p in 0..n {
            j[(p, n)] = -z[p];
            j[(n, p)] = self.direction[p];
        }
        j
    }

    fn node_tangent(&self, s: f64, z: &DVector<f64>, sigma: f64) -> Result<(DVector<f64>, f64)> {
        let n = self.base.len();
        let j = self.bordered(s, z, sigma);
        let mut rhs = DVector::zeros(n + 1);
        rhs.rows_mut(0, n).copy_from(&(-self.secant_ds(s, z)));
        let x = linalg::solve_vec(&j, &rhs, "Hugoniot tangent")?;
        Ok((x.rows(0, n).into_owned(), x[n]))
    }

    fn newton(&self, s: f64, mut z: DVector<f64>, mut sigma: f64) -> Result<(DVector<f64>, f64)> {
        let n = self.base.len();
        for _ in 0..self.opts.max_iter {
            let q = self.secant(s, &z);
            let mut g = DVector::zeros(n + 1);
            g.rows_mut(0, n).copy_from(&(&q - &z * sigma));
            g[n] = self.direction.dot(&z) - 1.0;
            let scale = (q.amax() + sigma.abs() * z.amax()).max(1e-300);
            if g.rows(0, n).amax() <= self.opts.rh_tol * scale && g[n].abs() <= 1e-14 {
                return Ok((z, sigma));
            }
            let j = self.bordered(s, &z, sigma);
            let dx = linalg::solve_vec(&j, &(-g), "Hugoniot corrector").map_err(|e| {
                Error::ContinuationFailure {
                    s,
                    reason: e.to_string(),
                }
            })?;
            z += dx.rows(0, n);
            sigma += dx[n];
            if !z.iter().all(|x| x.is_finite()) || !sigma.is_finite() {
                break;
            }
            let step = dx.amax() / (z.amax() + sigma.abs()).max(1e-300);
            if step <= 1e-15 {
                return Ok((z, sigma));
            }
        }
        Err(Error::ContinuationFailure {
            s,
            reason: "Newton did not converge".into(),
        })
    }

    fn solve_node(&self, s: f64, guess: &Node) -> Result<Node> {
        let ds = s - guess.s;
        let z0 = &guess.z + &guess.dz * ds;
        let sig0 = guess.sigma + guess.dsigma * ds;
        let (z, sigma) = self.newton(s, z0, sig0)?;
        let w = &self.base + &z * s;
        if self.system.check_domain(&w).is_err() {
            return Err(Error::DomainExit { s });
        }
        let (dz, dsigma) = self.node_tangent(s, &z, sigma).map_err(|e| Error::ContinuationFailure {
            s,
            reason: e.to_string(),
        })?;
        Ok(Node {
            s,
            z,
            sigma,
            dz,
            dsigma,
        })
    }

    /// March from `from` to `target` with adaptive steps, calling `visit` on
    /// every accepted node; stops early when `visit` returns `true`.
    fn march(&self, from: Node, target: f64, mut visit: impl FnMut(&Node) -> bool) -> Result<Node> {
        let mut cur = from;
        let dir = (target - cur.s).signum();
        let mut h = self.opts.initial_step.min((target - cur.s).abs());
        while (target - cur.s).abs() > 0.0 {
            let next_s = if (target - cur.s).abs() <= h { target } else { cur.s + dir * h };
            match self.solve_node(next_s, &cur) {
                Ok(node) => {
                    let stop = visit(&node);
                    cur = node;
                    if stop {
                        break;
                    }
                    h = (h * 1.5).min(self.opts.max_step);
                }
                Err(Error::DomainExit { s }) => return Err(Error::DomainExit { s }),
                Err(e) => {
                    h *= 0.5;
                    if h < self.opts.min_step {
                        return Err(match e {
                            Error::ContinuationFailure { .. } => e,
                            other => Error::ContinuationFailure {
                                s: next_s,
                                reason: other.to_string(),
                            },
                        });
                    }
                }
            }
        }
        Ok(cur)
    }

    fn to_point(&self, node: &Node) -> ShockPoint {
        ShockPoint {
            u_minus: self.base.clone(),
            u_plus: &self.base + &node.z * node.s,
            sigma: node.sigma,
            family: self.family,
            s: node.s,
            tangent: &node.z + &node.dz * node.s,
            dsigma: node.dsigma,
        }
    }

    fn node_from_point(&self, p: &ShockPoint) -> Node {
        let z = if p.s == 0.0 {
            self.direction.clone()
        } else {
            (&p.u_plus - &self.base) / p.s
        };
        let dz = if p.s == 0.0 {
            DVector::zeros(z.len())
        } else {
            (&p.tangent - &z) / p.s
        };
        Node {
            s: p.s,
            z,
            sigma: p.sigma,
            dz,
            dsigma: p.dsigma,
        }
    }

    /// The point `S(s)` by continuation from `s = 0`.
    pub fn point(&self, s: f64) -> Result<ShockPoint> {
        if !s.is_finite() {
            return Err(Error::ContinuationFailure {
                s,
                reason: "non-finite parameter".into(),
            });
        }
        let node = self.march(self.start(), s, |_| false)?;
        Ok(self.to_point(&node))
    }

    /// The point `S(s)` warm-started from a nearby point of the same curve,
    /// falling back to continuation from it.
    pub fn point_from(&self, s: f64, near: &ShockPoint) -> Result<ShockPoint> {
        let guess = self.node_from_point(near);
        match self.solve_node(s, &guess) {
            Ok(node) => Ok(self.to_point(&node)),
            Err(Error::DomainExit { s }) => Err(Error::DomainExit { s }),
            Err(_) => Ok(self.to_point(&self.march(guess, s, |_| false)?)),
        }
    }

    /// Walk along the curve from `s = 0` towards `s_max`, handing each
    /// accepted point to `visit`; returns the point at which `visit` first
    /// returned `true`, or `None` when `s_max` was reached.
    pub fn walk(&self, s_max: f64, mut visit: impl FnMut(&ShockPoint) -> Result<bool>) -> Result<Option<ShockPoint>> {
        let mut err = None;
        let mut hit = None;
        self.march(self.start(), s_max, |node| {
            let p = self.to_point(node);
            match visit(&p) {
                Ok(false) => false,
                Ok(true) => {
                    hit = Some(p);
                    true
                }
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(hit),
        }
    }

    /// Sample the curve on `[0, s_max]` (or `[s_max, 0]`) at the accepted
    /// continuation steps.
    pub fn trace(&self, s_max: f64) -> Result<HugoniotCurve> {
        let start = self.start();
        let mut samples = vec![self.to_point(&start)];
        self.march(start, s_max, |node| {
            samples.push(self.to_point(node));
            false
        })?;
        if s_max < 0.0 {
            samples.reverse();
        }
        Ok(HugoniotCurve {
            base: self.base.clone(),
            family: self.family,
            samples,
            max_s: s_max,
        })
    }
}

/// Ordered samples of one Hugoniot curve.
#[derive(Debug, Clone)]
pub struct HugoniotCurve {
    pub base: State,
    pub family: usize,
    pub samples: Vec<ShockPoint>,
    pub max_s: f64,
}

impl HugoniotCurve {
    /// Stored sample nearest to parameter `s`.
    pub fn nearest(&self, s: f64) -> &ShockPoint {
        let k = self.samples.partition_point(|p| p.s < s);
        let candidates = [k.saturating_sub(1), k.min(self.samples.len() - 1)];
        let best = candidates
            .iter()
            .min_by(|&&a, &&b| (self.samples[a].s - s).abs().total_cmp(&(self.samples[b].s - s).abs()))
            .copied()
            .unwrap_or(0);
        &self.samples[best]
    }

    /// Re-solve the curve at `s`, warm-started from the nearest sample.
    pub fn point_at(&self, solver: &HugoniotSolver<'_>, s: f64) -> Result<ShockPoint> {
        solver.point_from(s, self.nearest(s))
    }

    pub fn is_ordered(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].s < w[1].s)
    }

    /// Residual of the entropy-loss identity at `s` for the anchor `v`:
    ///
    /// `q(S(s);v) - σ(s)η(S(s)|v) - [q(u;v) - σ(s)η(u|v)] - ∫₀ˢ σ̇(t)η(u|S(t)) dt`,
    ///
    /// with the integral by adaptive Simpson to absolute `tol` along the curve.
    pub fn entropy_loss_residual(&self, solver: &HugoniotSolver<'_>, v: &State, s: f64, tol: f64) -> Result<f64> {
        let sys = solver.system();
        let u = &self.base;
        let end = self.point_at(solver, s)?;
        let integral = adaptive_simpson(
            |t| {
                let p = self.point_at(solver, t)?;
                Ok::<_, Error>(p.dsigma * relative_entropy(sys, u, &p.u_plus))
            },
            0.0,
            s,
            tol,
        )?;
        let lhs = relative_flux(sys, &end.u_plus, v) - end.sigma * relative_entropy(sys, &end.u_plus, v);
        let rhs = relative_flux(sys, u, v) - end.sigma * relative_entropy(sys, u, v);
        Ok(lhs - rhs - integral)
    }
}

/// Convenience wrapper: `S_u^i(s)` with the default orientation.
pub fn hugoniot_point(system: &dyn HyperbolicSystem, u: &State, family: usize, s: f64) -> Result<ShockPoint> {
    HugoniotSolver::new(system, u, family)?.point(s)
}

/// `∇_u σ(u, u⁺(u))` through the averaged matrix:
/// `∇σ = l · [∫₀¹ f''(γ_t):((1-t)I + t∇u⁺) dt] · r`, with `γ_t = u + t(u⁺ - u)`,
/// `r = (u⁺ - u)/|u⁺ - u|` and `l` the dual left eigenvector of `A(u, u⁺)`.
pub fn averaged_speed_gradient(
    system: &dyn HyperbolicSystem,
    u: &State,
    u_plus: &State,
    sigma: f64,
    grad_u_plus: &DMatrix<f64>,
) -> Result<DVector<f64>> {
    let n = system.dim();
    let jump = u_plus - u;
    let len = jump.norm();
    if len == 0.0 {
        return Err(Error::SingularLinearSystem("zero-strength shock has no averaged direction".into()));
    }
    let r = jump / len;
    let a = averaged_matrix(system, u, u_plus);
    let shifted_t = (a - DMatrix::identity(n, n) * sigma).transpose();
    let svd = shifted_t.svd(false, true);
    let vt = svd.v_t.ok_or_else(|| Error::SingularLinearSystem("SVD failed".into()))?;
    let k = svd
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (k, &s)| if s < acc.1 { (k, s) } else { acc })
        .0;
    let mut l = vt.row(k).transpose();
    let lr = l.dot(&r);
    if lr.abs() < 1e-12 {
        return Err(Error::SingularLinearSystem("left and right vectors orthogonal".into()));
    }
    l /= lr;

    let mut grad = DVector::zeros(n);
    for &(t, w) in gauss_legendre_unit().iter() {
        let fpp = system.flux_hessian(&(u + (u_plus - u) * t));
        // row vector (l f'' r) contracted in its last slot
        let lfr = fpp.weighted_sum(&l) * &r;
        let mix = DMatrix::identity(n, n) * (1.0 - t) + grad_u_plus * t;
        grad += mix.tr_mul(&lfr) * w;
    }
    Ok(grad)
}

/// Family of a candidate discontinuity near a reference shock.
///
/// Each family `k` gets the speed band spanned by `λ_k` at the four states;
/// `σ` is attributed to the band containing it, or to the nearest band when
/// it lies within half the gap separating that band from its neighbours.
pub fn identify_family(
    system: &dyn HyperbolicSystem,
    u_minus: &State,
    u_plus: &State,
    sigma: f64,
    reference: &ShockPoint,
    rh_tol: f64,
) -> Result<usize> {
    let residual = rh_residual(system, u_minus, u_plus, sigma);
    let scale = system.flux(u_minus).amax().max(system.flux(u_plus).amax()).max(1.0);
    if residual > rh_tol * scale {
        return Err(Error::NotAShock {
            residual,
            tol: rh_tol * scale,
        });
    }
    let states = [u_minus, u_plus, &reference.u_minus, &reference.u_plus];
    let eigs: Vec<EigenStructure> = states
        .iter()
        .map(|u| eigenstructure(system, u))
        .collect::<Result<_>>()?;
    let n = system.dim();
    let bands: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            eigs.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), e| {
                (lo.min(e.lambda(k)), hi.max(e.lambda(k)))
            })
        })
        .collect();
    let containing: Vec<usize> = (0..n).filter(|&k| bands[k].0 <= sigma && sigma <= bands[k].1).collect();
    match containing.len() {
        1 => return Ok(containing[0]),
        0 => {}
        _ => {
            return Err(Error::AmbiguousFamily {
                sigma,
                families: containing,
            })
        }
    }
    for k in 0..n.saturating_sub(1) {
        if bands[k].1 >= bands[k + 1].0 {
            return Err(Error::AmbiguousFamily {
                sigma,
                families: vec![k, k + 1],
            });
        }
    }
    let dist = |k: usize| (bands[k].0 - sigma).max(sigma - bands[k].1).max(0.0);
    let k = (0..n).min_by(|&a, &b| dist(a).total_cmp(&dist(b))).unwrap_or(0);
    let gap_below = if k > 0 { bands[k].0 - bands[k - 1].1 } else { f64::INFINITY };
    let gap_above = if k + 1 < n { bands[k + 1].0 - bands[k].1 } else { f64::INFINITY };
    let allowed = if sigma < bands[k].0 { 0.5 * gap_below } else { 0.5 * gap_above };
    let allowed = if allowed.is_finite() {
        allowed
    } else {
        bands.iter().map(|b| b.1 - b.0).fold(0.0, f64::max).max(1e-12)
    };
    if dist(k) <= allowed {
        Ok(k)
    } else {
        Err(Error::NotAShock { residual, tol: rh_tol })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{Burgers, Example3x3};

    fn st(v: &[f64]) -> State {
        DVector::from_vec(v.to_vec())
    }

    #[test]
    fn zero_size_shock_is_trivial() {
        let sys = Example3x3::new(1.0).unwrap();
        let p = hugoniot_point(&sys, &st(&[0.0, 0.0, 0.0]), 1, 0.0).unwrap();
        assert_eq!(p.u_plus, p.u_minus);
        assert_eq!(p.sigma, 0.0);
    }

    #[test]
    fn burgers_closed_form() {
        // tangent -r = -1: S(s) = u - s, σ = u - s/2
        for &s in &[0.3, 0.05, -0.2] {
            let p = hugoniot_point(&Burgers, &st(&[1.0]), 0, s).unwrap();
            assert!((p.u_plus[0] - (1.0 - s)).abs() < 1e-13);
            assert!((p.sigma - (1.0 - 0.5 * s)).abs() < 1e-13);
            assert!((p.dsigma + 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn burgers_admissible_for_positive_s() {
        let p = hugoniot_point(&Burgers, &st(&[1.0]), 0, 0.5).unwrap();
        assert!(p.is_admissible(&Burgers, 1e-12).unwrap());
        let q = hugoniot_point(&Burgers, &st(&[1.0]), 0, -0.5).unwrap();
        assert!(!q.is_admissible(&Burgers, 1e-12).unwrap());
    }

    #[test]
    fn trace_is_ordered_with_small_residuals() {
        let sys = Example3x3::new(1.0).unwrap();
        let solver = HugoniotSolver::new(&sys, &st(&[0.0, 0.0, 0.0]), 1).unwrap();
        let curve = solver.trace(0.1).unwrap();
        assert!(curve.is_ordered());
        assert!(curve.samples.len() > 5);
        for p in &curve.samples {
            assert!(p.rh_residual(&sys) < 1e-12);
        }
        let neg = solver.trace(-0.05).unwrap();
        assert!(neg.is_ordered());
        assert_eq!(neg.samples.last().unwrap().s, 0.0);
    }
}
