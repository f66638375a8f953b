use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use shock_contract::criterion::*;
use shock_contract::dissipation::{ContractionContext, DissipationOptions};
use shock_contract::system::*;
use shock_contract::Error;

fn mhd() -> Mhd2d {
    Mhd2d::new(1.0, 5.0 / 3.0).unwrap()
}

fn large_v() -> State {
    DVector::from_vec(vec![100.0, 1.0, 0.0, 0.0])
}

fn e(k: usize) -> DVector<f64> {
    let mut v = DVector::zeros(3);
    v[k] = 1.0;
    v
}

/// The exact feasible set of the 2×2 pencil for example3x3: both diagonal
/// entries negative and `(C+1)(3-C) > α²`, i.e. `C ∈ 1 ± √(4 - α²)`.
fn exact_interval(alpha: f64) -> Option<(f64, f64)> {
    let d = 4.0 - alpha * alpha;
    (d > 0.0).then(|| (1.0 - d.sqrt(), 1.0 + d.sqrt()))
}

#[test]
fn example3x3_quadratic_form() {
    for alpha in [0.0, 1.0, 2.0, 3.9] {
        let sys = Example3x3::new(alpha).unwrap();
        let u = DVector::zeros(3);
        // v₁ along e₁ and v₃ along -e₃ gives the cross term -4α v₁v₃
        let basis = DMatrix::from_columns(&[e(0), -e(2)]);
        let report = feasibility_in_basis(&sys, &u, 1, basis, CriterionOptions::default()).unwrap();
        for c in [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 7.0] {
            let m = report.restricted(c);
            let expect = DMatrix::from_row_slice(2, 2, &[-2.0 * c - 2.0, -2.0 * alpha, -2.0 * alpha, 2.0 * c - 6.0]);
            assert!((&m - &expect).amax() < 1e-12, "α = {alpha}, C = {c}: {m}");
            let (v1, v3) = (0.3, -1.7);
            let form = DVector::from_vec(vec![v1, v3]);
            let q = form.dot(&(&m * &form));
            let paper = (-2.0 * c - 2.0) * v1 * v1 + (2.0 * c - 6.0) * v3 * v3 - 4.0 * alpha * v1 * v3;
            assert!((q - paper).abs() < 1e-12 * paper.abs().max(1.0));
        }
        // full matrix in state coordinates
        let c = 1.5;
        let full = report.full(c);
        let expect = DMatrix::from_row_slice(
            3,
            3,
            &[-2.0 * c - 2.0, 0.0, 2.0 * alpha, 0.0, 2.0, 0.0, 2.0 * alpha, 0.0, 2.0 * c - 6.0],
        );
        assert!((full - expect).amax() < 1e-12);
        assert!((report.ii_limit + 1.0).abs() < 1e-12);
        assert!((report.gnl - 2.0).abs() < 1e-12);
    }
}

#[test]
fn example3x3_feasible_intervals() {
    let opts = CriterionOptions::default();
    for alpha in [0.0, 0.5, 1.0, 1.5, 2.0, 3.9] {
        let sys = Example3x3::new(alpha).unwrap();
        let report = feasibility(&sys, &DVector::zeros(3), 1).unwrap();
        match (exact_interval(alpha), report.feasible_interval) {
            (Some((lo, hi)), Some((a, b))) => {
                assert!((a - lo).abs() < 1e-6 && (b - hi).abs() < 1e-6, "α = {alpha}: ({a}, {b})");
                // the sufficient interval (|α| - 1, 3 - |α|), up to the root tolerance
                let (plo, phi) = (alpha.abs() - 1.0, 3.0 - alpha.abs());
                if plo < phi {
                    assert!(a <= plo + opts.root_tol && b >= phi - opts.root_tol, "α = {alpha}");
                }
            }
            (None, None) => {
                assert!(report.min_lambda_max >= 0.0);
                // the sufficient interval is empty too
                assert!(alpha.abs() - 1.0 >= 3.0 - alpha.abs());
            }
            (want, got) => panic!("α = {alpha}: expected {want:?}, got {got:?}"),
        }
    }
    let sys = Example3x3::new(1.0).unwrap();
    let (lo, hi) = feasibility(&sys, &DVector::zeros(3), 1).unwrap().feasible_interval.unwrap();
    assert!((lo - (1.0 - 3f64.sqrt())).abs() < 1e-6);
    assert!((hi - (1.0 + 3f64.sqrt())).abs() < 1e-6);
    assert!(lo < 0.0 && hi > 2.0);
}

#[test]
fn necessary_condition_verdicts() {
    let sys = Example3x3::new(1.0).unwrap();
    let u = DVector::zeros(3);
    let opts = CriterionOptions::default();
    assert!(necessary_check(&sys, &u, 1, 1.0, opts).unwrap().pass);
    let fail = necessary_check(&sys, &u, 1, 4.0, opts).unwrap();
    assert!(!fail.pass);
    // the witness lies in V and has positive form
    assert!(fail.witness[1].abs() < 1e-12);
    let (full, _) = limit_matrix(&sys, &u, 1, 4.0).unwrap();
    assert!(fail.witness.dot(&(&full * &fail.witness)) > 0.0);
    // (C + 1)(3 - C) = 1 at the boundary: semidefinite there
    let edge = necessary_check(&sys, &u, 1, 1.0 + 3f64.sqrt(), opts).unwrap();
    assert!(edge.pass && edge.lambda_max.abs() < 1e-12);

    let m = mhd();
    for k in 0..=200 {
        let c = -1e3 + 10.0 * k as f64;
        let v = necessary_check(&m, &large_v(), 1, c, opts).unwrap();
        assert!(!v.pass, "C = {c}: λ_max = {:e}, tol = {:e}", v.lambda_max, v.tol);
    }
}

#[test]
fn mhd_large_v_is_infeasible_with_witnesses() {
    let m = mhd();
    let u = large_v();
    let report = feasibility_with(&m, &u, 1, CriterionOptions { c_range: Some((-1e3, 1e3)), ..Default::default() }).unwrap();
    assert!(!report.is_feasible());
    assert!(report.min_lambda_max > 0.0);
    let cert = report.certificate.as_ref().unwrap();
    assert!(cert.covers_positive && cert.covers_nonnegative);

    let r = m.closed_form_eigenvectors(&u);
    let (ap, am) = m.alpha_pm(&u);
    let lam = m.wave_speeds(&u);
    let h = m.entropy_hessian(&u);
    let a = &h * (m.jacobian(&u) - DMatrix::identity(4, 4) * lam[1]);
    let b = m.flux_hessian(&u).weighted_sum(&(&h * &r[1]));
    let v1 = &r[0] + &r[3];
    let v2 = &r[0] + &r[2];
    let scale = b.amax() * v1.norm_squared();
    assert!(v1.dot(&(&b * &v1)).abs() < 1e-12 * scale);
    assert!(v1.dot(&(&a * &v1)) > 0.0);
    let b2 = v2.dot(&(&b * &v2));
    let expect = u[0] * u[0] * am.sqrt() * ((am - ap) / u[1]).powi(2);
    assert!((b2 - expect).abs() < 1e-6 * expect, "{b2:e} vs {expect:e}");
    assert!(v2.dot(&(&a * &v2)) <= 0.0);

    // the same witnesses through the report's own (normalized) basis
    let p = report.basis.clone();
    let coords = |v: &DVector<f64>| p.clone().svd(true, true).solve(v, 1e-14).unwrap();
    let (fa, fb) = report.pencil.forms(&coords(&v1));
    assert!(fa > 0.0 && fb.abs() < 1e-10 * report.pencil.b_hat.norm());
    let (fa, fb) = report.pencil.forms(&coords(&v2));
    assert!(fa <= 0.0 && fb > 0.0);
}

#[test]
fn decomposed_limit_matches_direct_formula() {
    let cases: Vec<(Arc<dyn HyperbolicSystem>, State, usize)> = vec![
        (Arc::new(PSystem::new(1.4).unwrap()), DVector::from_vec(vec![1.0, 0.2]), 0),
        (Arc::new(PSystem::new(1.4).unwrap()), DVector::from_vec(vec![0.8, -0.1]), 1),
        (Arc::new(Example3x3::new(1.3).unwrap()), DVector::from_vec(vec![0.05, -0.02, 0.01]), 1),
        (Arc::new(Example3x3::new(0.7).unwrap()), DVector::from_vec(vec![0.0, 0.0, 0.0]), 2),
        (Arc::new(mhd()), DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]), 1),
        (Arc::new(mhd()), DVector::from_vec(vec![1.2, 0.8, 0.1, -0.2]), 2),
        (Arc::new(mhd()), large_v(), 1),
    ];
    for (sys, u, i) in cases {
        for c in [-2.0, 0.0, 1.0, 5.0] {
            let eig = eigenstructure(sys.as_ref(), &u).unwrap();
            let p = eig.complement_basis(i);
            let (full, restricted) = limit_matrix(sys.as_ref(), &u, i, c).unwrap();
            let direct = p.transpose() * &full * &p;
            let pieces = decomposed_limit(sys.as_ref(), &u, i, c).unwrap();
            let err = (&direct - &pieces).amax() / direct.amax().max(1e-300);
            assert!(err < 1e-6, "{sys:?} i = {i}, C = {c}: {err:e}");
            assert!((&restricted - &restricted.transpose()).amax() == 0.0);
        }
    }
}

#[test]
fn verdict_is_basis_independent() {
    let cases: Vec<(Arc<dyn HyperbolicSystem>, State, usize)> = vec![
        (Arc::new(Example3x3::new(1.0).unwrap()), DVector::zeros(3), 1),
        (Arc::new(Example3x3::new(0.4).unwrap()), DVector::from_vec(vec![0.1, 0.0, -0.1]), 1),
        (Arc::new(mhd()), DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]), 1),
        (Arc::new(mhd()), large_v(), 1),
    ];
    for (sys, u, i) in cases {
        let reference = feasibility(sys.as_ref(), &u, i).unwrap();
        let eig = eigenstructure(sys.as_ref(), &u).unwrap();
        let mut p = eig.complement_basis(i);
        for (k, f) in [3.0, -0.25, 7.0].iter().enumerate().take(p.ncols()) {
            p.column_mut(k).scale_mut(*f);
        }
        let opts = CriterionOptions { c_range: Some(reference.c_range), ..Default::default() };
        let scaled = feasibility_in_basis(sys.as_ref(), &u, i, p, opts).unwrap();
        match (reference.feasible_interval, scaled.feasible_interval) {
            (Some((a, b)), Some((c, d))) => {
                let close = |x: f64, y: f64| (x.is_infinite() && x == y) || (x - y).abs() < 1e-6 * x.abs().max(1.0);
                assert!(close(a, c) && close(b, d), "({a}, {b}) vs ({c}, {d})");
            }
            (None, None) => {}
            (x, y) => panic!("{x:?} vs {y:?}"),
        }
    }
}

#[test]
fn extremal_families_are_always_feasible() {
    let cases: Vec<(Arc<dyn HyperbolicSystem>, State)> = vec![
        (Arc::new(PSystem::new(1.4).unwrap()), DVector::from_vec(vec![1.0, 0.0])),
        (Arc::new(PSystem::new(3.0).unwrap()), DVector::from_vec(vec![0.5, 1.0])),
        (Arc::new(Example3x3::new(1.0).unwrap()), DVector::zeros(3)),
        (Arc::new(Example3x3::new(3.9).unwrap()), DVector::from_vec(vec![0.1, 0.1, 0.1])),
        (Arc::new(mhd()), DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0])),
        (Arc::new(mhd()), large_v()),
    ];
    for (sys, u) in cases {
        let n = u.len();
        let first = feasibility(sys.as_ref(), &u, 0).unwrap();
        let (_, hi) = first.feasible_interval.unwrap_or_else(|| panic!("{sys:?}: family 1 infeasible"));
        assert!(hi == f64::INFINITY, "{sys:?}");
        let last = feasibility(sys.as_ref(), &u, n - 1).unwrap();
        let (lo, _) = last.feasible_interval.unwrap_or_else(|| panic!("{sys:?}: family n infeasible"));
        assert!(lo == f64::NEG_INFINITY, "{sys:?}");
        // Â is definite on V for the extremal families
        assert!(linalg_min_eig(&first.pencil.a_hat) > 0.0);
        assert!(linalg_min_eig(&(-&last.pencil.a_hat)) > 0.0);
    }
}

fn linalg_min_eig(m: &DMatrix<f64>) -> f64 {
    m.clone().symmetric_eigenvalues().min()
}

#[test]
fn ii_limit_is_negative_for_genuinely_nonlinear_families() {
    let cases: Vec<(Arc<dyn HyperbolicSystem>, State, usize)> = vec![
        (Arc::new(PSystem::new(1.4).unwrap()), DVector::from_vec(vec![1.0, 0.0]), 0),
        (Arc::new(PSystem::new(1.4).unwrap()), DVector::from_vec(vec![1.0, 0.0]), 1),
        (Arc::new(Example3x3::new(1.0).unwrap()), DVector::zeros(3), 1),
        (Arc::new(mhd()), DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]), 0),
        (Arc::new(mhd()), large_v(), 1),
    ];
    for (sys, u, i) in cases {
        let report = feasibility(sys.as_ref(), &u, i).unwrap();
        assert!(report.gnl > 0.0 && report.ii_limit < 0.0, "{sys:?} family {i}");
    }
}

#[test]
fn invalid_requests() {
    let u = DVector::from_vec(vec![1.0]);
    assert!(matches!(feasibility(&Burgers, &u, 0), Err(Error::BadFamily { .. })));
    let sys = Example3x3::new(1.0).unwrap();
    assert!(matches!(feasibility(&sys, &DVector::zeros(3), 3), Err(Error::BadFamily { .. })));
    let bad = CriterionOptions { c_range: Some((1.0, -1.0)), ..Default::default() };
    assert!(matches!(feasibility_with(&sys, &DVector::zeros(3), 1, bad), Err(Error::BadParameter { .. })));
}

#[test]
fn hessian_limit_converges_at_first_order() {
    let sys: Arc<dyn HyperbolicSystem> = Arc::new(Example3x3::new(1.0).unwrap());
    let u = DVector::zeros(3);
    let rows = limit_convergence_check(sys, &u, 1, 1.0, &[1e-2, 5e-3, 2.5e-3], DissipationOptions::default()).unwrap();
    for ratio in error_ratios(&rows, |r| r.offi_error) {
        assert!((1.5..=2.5).contains(&ratio), "off-i ratio {ratio}");
    }
    for ratio in error_ratios(&rows, |r| r.ii_error) {
        assert!((1.5..=2.5).contains(&ratio), "ii ratio {ratio}");
    }
    let last = rows.last().unwrap();
    assert!((last.ii_value + 1.0).abs() < 0.05, "{}", last.ii_value);
    // mixed entries vanish with s
    // mixed entries vanish (identically here, by the reflection symmetry)
    assert!(rows.iter().all(|r| r.mixed < 1e-8));
}

#[test]
fn mhd_hessian_limit_converges() {
    let sys: Arc<dyn HyperbolicSystem> = Arc::new(mhd());
    let u = DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]);
    let rows = limit_convergence_check(sys, &u, 1, 1.0, &[1e-2, 5e-3, 2.5e-3], DissipationOptions::default()).unwrap();
    for ratio in error_ratios(&rows, |r| r.offi_error) {
        assert!((1.5..=2.5).contains(&ratio), "off-i ratio {ratio}");
    }
    for ratio in error_ratios(&rows, |r| r.mixed) {
        assert!((1.5..=2.5).contains(&ratio), "mixed ratio {ratio}");
    }
}

#[test]
fn counterexample_for_mhd() {
    let ctx = ContractionContext::new(Arc::new(mhd()), large_v(), 1, 1e-2, 1.0).unwrap();
    let ce = find_counterexample(&ctx, 1e-2).unwrap();
    assert!(ce.d_rh > 0.0);
    assert!(ce.rh_residual < 1e-10);
    assert!(ce.distance < 1e-2);
    assert!(ce.quadratic_model > 0.0);
    assert_eq!(ce.family_check, Some(1));
    // D_RH/t² approaches the quadratic model
    let seq = ratio_sequence(&ctx, &ce, 3).unwrap();
    let last = seq.last().unwrap().1;
    assert!((last - ce.quadratic_model).abs() < 0.25 * ce.quadratic_model, "{seq:?} vs {:e}", ce.quadratic_model);
}

#[test]
fn feasible_slope_has_no_counterexample() {
    let ctx = ContractionContext::new(Arc::new(Example3x3::new(1.0).unwrap()), DVector::zeros(3), 1, 0.05, 1.0).unwrap();
    assert!(matches!(find_counterexample(&ctx, 1e-2), Err(Error::NoPositiveDirection(_))));
    assert!(matches!(find_counterexample(&ctx, 0.0), Err(Error::BadParameter { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lambda_max_is_convex(alpha in 0.0f64..4.0, c1 in -20.0f64..20.0, c2 in -20.0f64..20.0, t in 0.0f64..1.0) {
        let sys = Example3x3::new(alpha).unwrap();
        let report = feasibility(&sys, &DVector::zeros(3), 1).unwrap();
        let mid = t * c1 + (1.0 - t) * c2;
        let f = |c: f64| report.pencil.lambda_max(c);
        prop_assert!(f(mid) <= t * f(c1) + (1.0 - t) * f(c2) + 1e-10 * (1.0 + c1.abs() + c2.abs()));
    }

    #[test]
    fn mhd_lambda_max_is_convex(v in 0.5f64..3.0, q in 0.3f64..2.0, c1 in -50.0f64..50.0, c2 in -50.0f64..50.0, t in 0.0f64..1.0) {
        let m = mhd();
        let u = DVector::from_vec(vec![v, q, 0.0, 0.0]);
        let report = feasibility(&m, &u, 1).unwrap();
        let mid = t * c1 + (1.0 - t) * c2;
        let f = |c: f64| report.pencil.lambda_max(c);
        let scale = report.pencil.a_hat.norm() * (c1.abs() + c2.abs()) + report.pencil.b_hat.norm();
        prop_assert!(f(mid) <= t * f(c1) + (1.0 - t) * f(c2) + 1e-12 * scale);
    }
}
