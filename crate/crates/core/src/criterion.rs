//! The small-shock criterion: the limit of `∇²D_max(u_L)/s` on the subspace
//! `V = span{r_k}_{k≠i}` is `M(C) = -C A + B` with
//! `A = ∇²η(u_L)(f'(u_L) - λ_i I)` and `B = Σ_p (∇²η r_i)_p f_p''(u_L)`.
//!
//! The shock is a local attractor for some weight slope `C` when the
//! restricted form `M̂(C) = sym(Pᵀ M(C) P)` is negative definite, and cannot be
//! one for slope `C` when `M̂(C)` has a positive direction.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::dissipation::{ContractionContext, DissipationOptions};
use crate::error::{Error, Result};
use crate::linalg::{lambda_max, sym};
use crate::shock::{identify_family, rh_residual, ShockPoint};
use crate::system::eigen::grad_lambda;
use crate::system::{eigenstructure, EigenStructure, HyperbolicSystem, State};

/// The affine pencil `C ↦ -C Â + B̂` of symmetric matrices on `V`.
#[derive(Debug, Clone)]
pub struct Pencil {
    pub a_hat: DMatrix<f64>,
    pub b_hat: DMatrix<f64>,
}

impl Pencil {
    /// Restrict `-C A + B` to the columns of `p` and symmetrize.
    pub fn restrict(a: &DMatrix<f64>, b: &DMatrix<f64>, p: &DMatrix<f64>) -> Self {
        Pencil {
            a_hat: sym(&(p.transpose() * a * p)),
            b_hat: sym(&(p.transpose() * b * p)),
        }
    }

    pub fn at(&self, c: f64) -> DMatrix<f64> {
        &self.b_hat - &self.a_hat * c
    }

    pub fn lambda_max(&self, c: f64) -> f64 {
        lambda_max(&self.at(c)).0
    }

    /// `(Âv·v, B̂v·v)`, so that `M̂(C):v⊗v = -C·a + b`.
    pub fn forms(&self, v: &DVector<f64>) -> (f64, f64) {
        (v.dot(&(&self.a_hat * v)), v.dot(&(&self.b_hat * v)))
    }

    /// Bracket scale `‖Â‖ / ‖B̂‖` (1 when either vanishes).
    pub fn scale(&self) -> f64 {
        let na = self.a_hat.norm();
        let nb = self.b_hat.norm();
        if na > 0.0 && nb > 0.0 {
            nb / na
        } else {
            1.0
        }
    }

    /// Minimize the convex `λ_max(M̂(C))` over `[lo, hi]` by golden section.
    pub fn minimize(&self, lo: f64, hi: f64) -> (f64, f64) {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (lo, hi);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let mut f1 = self.lambda_max(x1);
        let mut f2 = self.lambda_max(x2);
        let tol = 1e-12 * (hi - lo).abs().max(1.0);
        while b - a > tol {
            if f1 <= f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = self.lambda_max(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = self.lambda_max(x2);
            }
        }
        let c = 0.5 * (a + b);
        let mut best = (c, self.lambda_max(c));
        for &end in &[lo, hi] {
            let v = self.lambda_max(end);
            if v < best.1 {
                best = (end, v);
            }
        }
        best
    }

    /// Root of `λ_max` between a feasible point and an infeasible one.
    fn boundary(&self, mut inside: f64, mut outside: f64, tol: f64) -> f64 {
        while (outside - inside).abs() > tol {
            let mid = 0.5 * (inside + outside);
            if self.lambda_max(mid) < 0.0 {
                inside = mid;
            } else {
                outside = mid;
            }
        }
        0.5 * (inside + outside)
    }

    /// `{C ∈ [lo, hi] : λ_max(M̂(C)) < 0}`, with infinite ends when the set
    /// reaches the bracket edge.
    pub fn feasible_interval(&self, lo: f64, hi: f64, tol: f64) -> (f64, f64, Option<(f64, f64)>) {
        let (c_star, m) = self.minimize(lo, hi);
        if m >= 0.0 {
            return (c_star, m, None);
        }
        let left = if self.lambda_max(lo) < 0.0 {
            f64::NEG_INFINITY
        } else {
            self.boundary(c_star, lo, tol)
        };
        let right = if self.lambda_max(hi) < 0.0 {
            f64::INFINITY
        } else {
            self.boundary(c_star, hi, tol)
        };
        (c_star, m, Some((left, right)))
    }

    /// Try to cover the whole real line with the positivity sets of the
    /// affine forms `C ↦ -C a_k + b_k` of a few directions.
    pub fn certificate(&self, c_star: f64, lo: f64, hi: f64) -> Certificate {
        let delta = 1e-3 * c_star.abs().max(self.scale());
        let mut probes = vec![c_star - delta, c_star, c_star + delta, lo, hi];
        for k in 1..=8 {
            let t = k as f64 / 9.0;
            probes.push(lo + t * (hi - lo));
        }
        let mut directions: Vec<DVector<f64>> = Vec::new();
        for c in probes {
            let v = lambda_max(&self.at(c)).1;
            if directions.iter().all(|w| (w.dot(&v)).abs() < 1.0 - 1e-9) {
                directions.push(v);
            }
        }
        let tol = 1e-10 * self.a_hat.norm().max(self.b_hat.norm());
        let forms: Vec<(f64, f64)> = directions.iter().map(|v| self.forms(v)).collect();
        Certificate {
            covers_nonnegative: covers(&forms, -tol),
            covers_positive: covers(&forms, tol),
            forms,
            directions,
        }
    }
}

/// Does the union over `k` of `{C : -C a_k + b_k > thr}` contain ℝ?
fn covers(forms: &[(f64, f64)], thr: f64) -> bool {
    // each set is a half-line, the line, or empty
    let mut everywhere = false;
    let mut left_reach = f64::NEG_INFINITY; // sets (-∞, x)
    let mut right_reach = f64::INFINITY; // sets (x, ∞)
    for &(a, b) in forms {
        let b = b - thr;
        if a == 0.0 {
            if b > 0.0 {
                everywhere = true;
            }
        } else if a > 0.0 {
            left_reach = left_reach.max(b / a);
        } else {
            right_reach = right_reach.min(b / a);
        }
    }
    everywhere || right_reach < left_reach
}

/// Directions `v ∈ V` (in `V`-coordinates) with the affine forms
/// `(Â:v⊗v, B̂:v⊗v)`. When the positivity sets cover ℝ no weight slope can
/// make the restricted form negative (semi)definite.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    #[serde(skip)]
    pub directions: Vec<DVector<f64>>,
    pub forms: Vec<(f64, f64)>,
    /// Some direction has `M̂(C):v⊗v ≥ 0` for every `C`.
    pub covers_nonnegative: bool,
    /// Some direction has `M̂(C):v⊗v > 0` for every `C`.
    pub covers_positive: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct CriterionOptions {
    /// Search bracket for `C`; `None` uses `±10³·scale`.
    pub c_range: Option<(f64, f64)>,
    pub root_tol: f64,
    /// Relative tolerance of the semidefinite verdict.
    pub semidef_tol: f64,
}

impl Default for CriterionOptions {
    fn default() -> Self {
        CriterionOptions {
            c_range: None,
            root_tol: 1e-8,
            semidef_tol: 1e-8,
        }
    }
}

/// The criterion data at `(u_L, i)`.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub u_l: State,
    pub family: usize,
    pub eigen: EigenStructure,
    /// `∇²η(f' - λ_i I)` in state coordinates.
    pub a: DMatrix<f64>,
    /// `Σ_p (∇²η r_i)_p f_p''` in state coordinates.
    pub b: DMatrix<f64>,
    /// Columns `r_k`, `k ≠ i`.
    pub basis: DMatrix<f64>,
    pub pencil: Pencil,
    pub c_range: (f64, f64),
    /// Minimizer and minimum of `λ_max(M̂(C))` on the bracket.
    pub c_star: f64,
    pub min_lambda_max: f64,
    pub feasible_interval: Option<(f64, f64)>,
    /// Top eigenvector of `M̂(c_star)` in `V`-coordinates.
    pub witness: DVector<f64>,
    pub certificate: Option<Certificate>,
    /// `-½ (∇λ_i·r_i)(r_iᵀ∇²η r_i)`.
    pub ii_limit: f64,
    pub gnl: f64,
}

impl CriterionReport {
    pub fn restricted(&self, c: f64) -> DMatrix<f64> {
        self.pencil.at(c)
    }

    /// `-C A + B` in state coordinates.
    pub fn full(&self, c: f64) -> DMatrix<f64> {
        &self.b - &self.a * c
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_interval.is_some()
    }

    /// Witness in state coordinates.
    pub fn witness_state(&self) -> DVector<f64> {
        &self.basis * &self.witness
    }
}

/// `A` and `B` at `u_L` for family `i`.
pub fn criterion_matrices(
    system: &dyn HyperbolicSystem,
    eig: &EigenStructure,
    family: usize,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let u = &eig.state;
    let n = eig.dim();
    let h = system.entropy_hessian(u);
    let a = &h * (system.jacobian(u) - DMatrix::identity(n, n) * eig.lambda(family));
    let b = system.flux_hessian(u).weighted_sum(&(&h * eig.r(family)));
    (sym(&a), sym(&b))
}

/// `M(C) = -C A + B` and its restriction `M̂(C)`.
pub fn limit_matrix(
    system: &dyn HyperbolicSystem,
    u_l: &State,
    family: usize,
    c: f64,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    let eig = eigenstructure(system, u_l)?;
    check_family(&eig, family)?;
    let (a, b) = criterion_matrices(system, &eig, family);
    let p = eig.complement_basis(family);
    let pencil = Pencil::restrict(&a, &b, &p);
    Ok((&b - &a * c, pencil.at(c)))
}

fn check_family(eig: &EigenStructure, family: usize) -> Result<()> {
    if family >= eig.dim() {
        return Err(Error::BadFamily {
            family,
            dim: eig.dim(),
        });
    }
    if eig.dim() < 2 {
        return Err(Error::BadFamily {
            family,
            dim: eig.dim(),
        });
    }
    Ok(())
}

/// The limit matrix assembled entrywise from the three pieces of the
/// small-shock expansion, with entries `(j, k)` over all `j, k ≠ i`:
/// `-(λ_k - λ_i) C r_jᵀ∇²η r_k - (λ_k - λ_i) ∇³η:r_k⊗r_j⊗r_i + r_kᵀ∇²η f'':r_i⊗r_j`.
pub fn decomposed_limit(
    system: &dyn HyperbolicSystem,
    u_l: &State,
    family: usize,
    c: f64,
) -> Result<DMatrix<f64>> {
    let eig = eigenstructure(system, u_l)?;
    check_family(&eig, family)?;
    let n = eig.dim();
    let h = system.entropy_hessian(u_l);
    let t3 = system.entropy_third(u_l);
    let fpp = system.flux_hessian(u_l);
    let ri = eig.r(family);
    let others: Vec<usize> = (0..n).filter(|&k| k != family).collect();
    let m = others.len();
    let mut out = DMatrix::zeros(m, m);
    for (jj, &j) in others.iter().enumerate() {
        for (kk, &k) in others.iter().enumerate() {
            let (rj, rk) = (eig.r(j), eig.r(k));
            let dl = eig.lambda(k) - eig.lambda(family);
            let d = -dl * c * rj.dot(&(&h * &rk));
            let third: f64 = (0..n).map(|a| rk[a] * rj.dot(&(&t3.slices[a] * &ri))).sum();
            let e = -dl * third;
            let f = (fpp.weighted_sum(&(&h * &rk)) * &rj).dot(&ri);
            out[(jj, kk)] = d + e + f;
        }
    }
    Ok(out)
}

/// Feasibility of the criterion in `C`.
pub fn feasibility(system: &dyn HyperbolicSystem, u_l: &State, family: usize) -> Result<CriterionReport> {
    feasibility_with(system, u_l, family, CriterionOptions::default())
}

pub fn feasibility_with(
    system: &dyn HyperbolicSystem,
    u_l: &State,
    family: usize,
    opts: CriterionOptions,
) -> Result<CriterionReport> {
    let eig = eigenstructure(system, u_l)?;
    check_family(&eig, family)?;
    let (a, b) = criterion_matrices(system, &eig, family);
    let basis = eig.complement_basis(family);
    report_from_parts(system, eig, family, a, b, basis, opts)
}

/// As [`feasibility_with`] but on an arbitrary basis of `V` (columns of
/// `basis`), used to check basis independence of the verdict.
pub fn feasibility_in_basis(
    system: &dyn HyperbolicSystem,
    u_l: &State,
    family: usize,
    basis: DMatrix<f64>,
    opts: CriterionOptions,
) -> Result<CriterionReport> {
    let eig = eigenstructure(system, u_l)?;
    check_family(&eig, family)?;
    let (a, b) = criterion_matrices(system, &eig, family);
    report_from_parts(system, eig, family, a, b, basis, opts)
}

fn report_from_parts(
    system: &dyn HyperbolicSystem,
    eig: EigenStructure,
    family: usize,
    a: DMatrix<f64>,
    b: DMatrix<f64>,
    basis: DMatrix<f64>,
    opts: CriterionOptions,
) -> Result<CriterionReport> {
    let pencil = Pencil::restrict(&a, &b, &basis);
    let c_range = opts.c_range.unwrap_or_else(|| {
        let s = pencil.scale();
        (-1e3 * s, 1e3 * s)
    });
    if !(c_range.0 < c_range.1) || !c_range.0.is_finite() || !c_range.1.is_finite() {
        return Err(Error::BadParameter {
            name: "c_range",
            reason: format!("invalid bracket {c_range:?}"),
        });
    }
    let (c_star, min_lambda_max, feasible_interval) =
        pencil.feasible_interval(c_range.0, c_range.1, opts.root_tol);
    let witness = lambda_max(&pencil.at(c_star)).1;
    let certificate = if feasible_interval.is_none() {
        Some(pencil.certificate(c_star, c_range.0, c_range.1))
    } else {
        None
    };
    let h = system.entropy_hessian(&eig.state);
    let ri = eig.r(family);
    let gnl = grad_lambda(system, &eig, family).dot(&ri);
    let ii_limit = -0.5 * gnl * ri.dot(&(&h * &ri));
    Ok(CriterionReport {
        u_l: eig.state.clone(),
        family,
        eigen: eig,
        a,
        b,
        basis,
        pencil,
        c_range,
        c_star,
        min_lambda_max,
        feasible_interval,
        witness,
        certificate,
        ii_limit,
        gnl,
    })
}

/// Verdict of the semidefiniteness test at a fixed slope.
#[derive(Debug, Clone)]
pub struct NecessaryVerdict {
    pub c: f64,
    pub lambda_max: f64,
    pub tol: f64,
    pub pass: bool,
    /// Top eigenvector of `M̂(C)` in state coordinates.
    pub witness: DVector<f64>,
}

/// `λ_max(M̂(C)) ≤ tol` with `tol = semidef_tol · max(‖Â‖|C|, ‖B̂‖, 1e-300)`.
pub fn necessary_check(
    system: &dyn HyperbolicSystem,
    u_l: &State,
    family: usize,
    c: f64,
    opts: CriterionOptions,
) -> Result<NecessaryVerdict> {
    let eig = eigenstructure(system, u_l)?;
    check_family(&eig, family)?;
    let (a, b) = criterion_matrices(system, &eig, family);
    let p = eig.complement_basis(family);
    let pencil = Pencil::restrict(&a, &b, &p);
    let (lm, v) = lambda_max(&pencil.at(c));
    let tol = opts.semidef_tol * (pencil.a_hat.norm() * c.abs()).max(pencil.b_hat.norm()).max(1e-300);
    Ok(NecessaryVerdict {
        c,
        lambda_max: lm,
        tol,
        pass: lm <= tol,
        witness: p * v,
    })
}

/// One row of the `s → 0` convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceRow {
    pub s: f64,
    /// max entry of `|sym(Pᵀ∇²D_max P)/s - M̂(C)|`.
    pub offi_error: f64,
    /// `r_iᵀ∇²D_max r_i / s`.
    pub ii_value: f64,
    pub ii_error: f64,
    /// max over `k ≠ i` of `|r_iᵀ sym(∇²D_max) r_k| / s`.
    pub mixed: f64,
}

/// Ratios `err(s_k)/err(s_{k+1})` of successive rows.
pub fn error_ratios(rows: &[ConvergenceRow], pick: impl Fn(&ConvergenceRow) -> f64) -> Vec<f64> {
    rows.windows(2).map(|w| pick(&w[0]) / pick(&w[1])).collect()
}

/// `(1/s) rⱼᵀ∇²D_max(u_L) r_k` against the limit for each `s` in `s_list`.
pub fn limit_convergence_check(
    system: Arc<dyn HyperbolicSystem>,
    u_l: &State,
    family: usize,
    c: f64,
    s_list: &[f64],
    opts: DissipationOptions,
) -> Result<Vec<ConvergenceRow>> {
    let eig = eigenstructure(system.as_ref(), u_l)?;
    check_family(&eig, family)?;
    let (a, b) = criterion_matrices(system.as_ref(), &eig, family);
    let p = eig.complement_basis(family);
    let limit = Pencil::restrict(&a, &b, &p).at(c);
    let h = system.entropy_hessian(u_l);
    let ri = eig.r(family);
    let gnl = grad_lambda(system.as_ref(), &eig, family).dot(&ri);
    let ii_limit = -0.5 * gnl * ri.dot(&(&h * &ri));
    let mut rows = Vec::with_capacity(s_list.len());
    for &s in s_list {
        let ctx = ContractionContext::with_options(Arc::clone(&system), u_l.clone(), family, s, c, opts)?;
        let hess = sym(&ctx.hess_d_max(u_l)?) / s;
        let restricted = p.transpose() * &hess * &p;
        let offi_error = (&restricted - &limit).amax();
        let ii_value = ri.dot(&(&hess * &ri));
        let mixed = p.tr_mul(&(&hess * &ri)).amax();
        rows.push(ConvergenceRow {
            s,
            offi_error,
            ii_value,
            ii_error: (ii_value - ii_limit).abs(),
            mixed,
        });
    }
    Ok(rows)
}

/// A shock near the reference with positive dissipation.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub u_minus: State,
    pub u_plus: State,
    pub sigma: f64,
    pub d_rh: f64,
    pub t: f64,
    /// Unit direction of `u₋ - u_L`.
    pub direction: DVector<f64>,
    /// `½ vᵀ∇²D_max(u_L) v`, the small-`t` limit of `D_RH/t²`.
    pub quadratic_model: f64,
    pub rh_residual: f64,
    /// `|u₋ - u_L| + |u₊ - u_R|`.
    pub distance: f64,
    pub family_check: Option<usize>,
}

impl Counterexample {
    pub fn ratio(&self) -> f64 {
        self.d_rh / (self.t * self.t)
    }
}

/// Search directions for positive dissipation: the top eigenvector of the
/// restricted Hessian of `D_max` at `u_L`, the criterion witness, and the
/// basis vectors of `V` with both signs.
fn candidate_directions(ctx: &ContractionContext, hess: &DMatrix<f64>) -> Result<Vec<DVector<f64>>> {
    let eig = ctx.eigen_l();
    let p = eig.complement_basis(ctx.family());
    let mut dirs = Vec::new();
    let restricted = sym(&(p.transpose() * hess * &p));
    dirs.push((&p * lambda_max(&restricted).1).normalize());
    let report = feasibility(ctx.system(), ctx.u_l(), ctx.family())?;
    let necessary = necessary_check(ctx.system(), ctx.u_l(), ctx.family(), ctx.slope(), CriterionOptions::default())?;
    dirs.push(necessary.witness.normalize());
    dirs.push(report.witness_state().normalize());
    for k in 0..p.ncols() {
        dirs.push(p.column(k).normalize());
    }
    let mut out: Vec<DVector<f64>> = Vec::new();
    for d in dirs {
        for sign in [1.0, -1.0] {
            let v = &d * sign;
            if out.iter().all(|w| (w - &v).norm() > 1e-9) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// States `(u₋, u⁺(u₋))` with `|u₋ - u_L| + |u₊ - u_R| < delta` and
/// `D_RH > 0`, found by backtracking `t` from `delta/(|∇u⁺(u_L)| + 1)`
/// along candidate directions.
pub fn find_counterexample(ctx: &ContractionContext, delta: f64) -> Result<Counterexample> {
    if !(delta > 0.0) {
        return Err(Error::BadParameter {
            name: "delta",
            reason: format!("must be positive, got {delta}"),
        });
    }
    let ms_l = ctx.maximal_shock(ctx.u_l())?;
    let hess = ctx.hess_d_max_of(&ms_l)?;
    let hs = sym(&hess);
    let c_lip = ms_l.grad_u_plus.norm();
    let t0 = delta / (c_lip + 1.0);
    let reference = ShockPoint {
        u_minus: ctx.u_l().clone(),
        u_plus: ctx.u_r().clone(),
        sigma: ctx.sigma_lr(),
        family: ctx.family(),
        s: ctx.s(),
        tangent: DVector::zeros(ctx.u_l().len()),
        dsigma: 0.0,
    };
    let mut best_model = f64::NEG_INFINITY;
    for v in candidate_directions(ctx, &hess)? {
        let model = 0.5 * v.dot(&(&hs * &v));
        best_model = best_model.max(model);
        if model <= 0.0 {
            continue;
        }
        let mut t = t0;
        for _ in 0..=40 {
            let u = ctx.u_l() + &v * t;
            if let Ok(ms) = ctx.maximal_shock(&u) {
                let d = ctx.d_rh(&u, &ms.u_plus, ms.sigma_pm);
                let distance = (&u - ctx.u_l()).norm() + (&ms.u_plus - ctx.u_r()).norm();
                if d > 0.5 * model * t * t && distance < delta {
                    let family_check = identify_family(ctx.system(), &u, &ms.u_plus, ms.sigma_pm, &reference, 1e-10).ok();
                    return Ok(Counterexample {
                        rh_residual: rh_residual(ctx.system(), &u, &ms.u_plus, ms.sigma_pm),
                        u_minus: u,
                        u_plus: ms.u_plus,
                        sigma: ms.sigma_pm,
                        d_rh: d,
                        t,
                        direction: v,
                        quadratic_model: model,
                        distance,
                        family_check,
                    });
                }
            }
            t *= 0.5;
        }
    }
    Err(Error::NoPositiveDirection(format!(
        "largest quadratic model ½vᵀ∇²D_max(u_L)v over sampled directions is {best_model:.3e}"
    )))
}

/// `D_RH(u_L + tv, u⁺)/t²` for `t, t/2, t/4, …` (`count` values).
pub fn ratio_sequence(ctx: &ContractionContext, ce: &Counterexample, count: usize) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::with_capacity(count);
    let mut t = ce.t;
    for _ in 0..count {
        let u = ctx.u_l() + &ce.direction * t;
        let d = ctx.d_max(&u)?;
        out.push((t, d / (t * t)));
        t *= 0.5;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::Example3x3;

    #[test]
    fn covers_logic() {
        // -C·1 + 0 ≥ 0 for C ≤ 0, and -C·(-1) + 1 > 0 for C > -1
        assert!(covers(&[(1.0, 0.0), (-1.0, 1.0)], 0.0 - 1e-12));
        assert!(!covers(&[(1.0, 0.0), (-1.0, -1.0)], 0.0));
        assert!(covers(&[(0.0, 1.0)], 0.0));
    }

    #[test]
    fn example3x3_full_matrix() {
        let sys = Example3x3::new(1.0).unwrap();
        let (full, restricted) = limit_matrix(&sys, &DVector::zeros(3), 1, 1.0).unwrap();
        let expect = DMatrix::from_row_slice(3, 3, &[-4.0, 0.0, 2.0, 0.0, 2.0, 0.0, 2.0, 0.0, -4.0]);
        assert!((full - expect).amax() < 1e-12);
        assert_eq!(restricted.nrows(), 2);
    }

    #[test]
    fn golden_section_finds_minimum() {
        let p = Pencil {
            a_hat: DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]),
            b_hat: DMatrix::from_row_slice(2, 2, &[-1.0, 0.0, 0.0, -3.0]),
        };
        // λ_max = max(-C - 1, C - 3): minimum -2 at C = 1
        let (c, m) = p.minimize(-100.0, 100.0);
        assert!((c - 1.0).abs() < 1e-8 && (m + 2.0).abs() < 1e-8);
        let (_, _, iv) = p.feasible_interval(-100.0, 100.0, 1e-10);
        let (lo, hi) = iv.unwrap();
        assert!((lo + 1.0).abs() < 1e-9 && (hi - 3.0).abs() < 1e-9);
    }
}
