use std::sync::Arc;

use approx::assert_relative_eq;
use nalgebra::DVector;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shock_contract::shock::*;
use shock_contract::system::*;
use shock_contract::Error;

/// (label, system, base state, family, largest s used)
fn families() -> Vec<(&'static str, Arc<dyn HyperbolicSystem>, State, usize, f64)> {
    let p: Arc<dyn HyperbolicSystem> = Arc::new(PSystem::new(1.4).unwrap());
    let ex: Arc<dyn HyperbolicSystem> = Arc::new(Example3x3::new(1.0).unwrap());
    let mhd: Arc<dyn HyperbolicSystem> = Arc::new(Mhd2d::new(1.0, 5.0 / 3.0).unwrap());
    let v = |x: &[f64]| DVector::from_column_slice(x);
    vec![
        ("burgers", Arc::new(Burgers), v(&[1.0]), 0, 0.5),
        ("p_system/1", p.clone(), v(&[1.0, 0.0]), 0, 0.2),
        ("p_system/2", p, v(&[1.0, 0.0]), 1, 0.2),
        ("example3x3/1", ex.clone(), v(&[0.0, 0.0, 0.0]), 0, 0.1),
        ("example3x3/2", ex.clone(), v(&[0.0, 0.0, 0.0]), 1, 0.1),
        ("example3x3/3", ex, v(&[0.0, 0.0, 0.0]), 2, 0.1),
        ("mhd2d/1", mhd.clone(), v(&[1.0, 1.0, 0.0, 0.0]), 0, 0.1),
        ("mhd2d/2", mhd.clone(), v(&[1.0, 1.0, 0.0, 0.0]), 1, 0.1),
        ("mhd2d/large-v", mhd, v(&[100.0, 1.0, 0.0, 0.0]), 1, 0.02),
    ]
}

#[test]
fn zero_size_shock_is_trivial() {
    for (label, sys, u, i, _) in families() {
        let p = hugoniot_point(sys.as_ref(), &u, i, 0.0).unwrap();
        assert_eq!(p.u_plus, u, "{label}");
        let lam = eigenstructure(sys.as_ref(), &u).unwrap().lambda(i);
        assert_relative_eq!(p.sigma, lam, epsilon = 1e-14);
    }
}

#[test]
fn burgers_closed_form() {
    let u = DVector::from_vec(vec![1.0]);
    for s in [0.05, 0.1, 0.5] {
        let p = hugoniot_point(&Burgers, &u, 0, s).unwrap();
        assert_relative_eq!(p.u_plus[0], 1.0 - s, epsilon = 1e-13);
        assert_relative_eq!(p.sigma, 1.0 - 0.5 * s, epsilon = 1e-13);
    }
    // with the tangent flipped to +r the admissible branch is s < 0 and u₊ = 1 + s
    let solver = HugoniotSolver::new(&Burgers, &u, 0).unwrap().with_direction(DVector::from_vec(vec![1.0]));
    let p = solver.point(-0.1).unwrap();
    assert_relative_eq!(p.u_plus[0], 0.9, epsilon = 1e-13);
    assert_relative_eq!(p.sigma, 0.95, epsilon = 1e-13);
}

#[test]
fn curves_satisfy_rankine_hugoniot_and_lax() {
    for (label, sys, u, i, smax) in families() {
        let solver = HugoniotSolver::new(sys.as_ref(), &u, i).unwrap();
        let curve = solver.trace(smax).unwrap();
        assert!(curve.is_ordered(), "{label}");
        assert!(curve.samples.len() > 5);
        let scale = sys.flux(&u).amax().max(1.0);
        for p in &curve.samples {
            assert!(p.rh_residual(sys.as_ref()) < 1e-11 * scale, "{label} at s = {}", p.s);
            if p.s > 0.0 {
                assert!(p.is_admissible(sys.as_ref(), 0.0).unwrap(), "{label} at s = {}", p.s);
            }
        }
        // σ is the i-th eigenvalue of the averaged matrix with eigenvector u₊ - u
        let end = curve.samples.last().unwrap();
        let a = averaged_matrix(sys.as_ref(), &u, &end.u_plus);
        let d = &end.u_plus - &u;
        assert!((&a * &d - &d * end.sigma).amax() < 1e-10 * d.amax() * scale, "{label}");
    }
}

#[test]
fn tangent_at_origin_is_minus_r() {
    for (label, sys, u, i, _) in families() {
        let e = eigenstructure(sys.as_ref(), &u).unwrap();
        let solver = HugoniotSolver::new(sys.as_ref(), &u, i).unwrap();
        let h = 1e-4;
        let fwd = solver.point(h).unwrap();
        let bwd = solver.point(-h).unwrap();
        let slope = (&fwd.u_plus - &bwd.u_plus) / (2.0 * h);
        assert!((&slope + e.r(i)).amax() < 1e-6, "{label}: {slope}");
    }
}

#[test]
fn speed_expansion_is_second_order() {
    // σ(s) = λ_i - s g_i / 2 + O(s²): the remainder quarters when s halves
    for (label, sys, u, i, smax) in families() {
        let e = eigenstructure(sys.as_ref(), &u).unwrap();
        if !e.gnl_oriented[i] {
            continue;
        }
        let solver = HugoniotSolver::new(sys.as_ref(), &u, i).unwrap();
        let rem = |s: f64| solver.point(s).unwrap().sigma - e.lambda(i) + 0.5 * s * e.gnl[i];
        let s0 = smax;
        if rem(s0).abs() < 1e-13 {
            // linear speed (Burgers): nothing to extrapolate
            continue;
        }
        let ratio = rem(s0) / rem(0.5 * s0);
        assert!((3.0..5.0).contains(&ratio), "{label}: remainder ratio {ratio}");
    }
    let ex = Example3x3::new(1.0).unwrap();
    let e = eigenstructure(&ex, &DVector::zeros(3)).unwrap();
    assert_relative_eq!(e.gnl[1], 2.0, epsilon = 1e-12);
}

#[test]
fn reversed_orientation_flips_the_parameter() {
    for (label, sys, u, i, smax) in families() {
        let solver = HugoniotSolver::new(sys.as_ref(), &u, i).unwrap();
        let flipped = HugoniotSolver::new(sys.as_ref(), &u, i)
            .unwrap()
            .with_direction(-solver.direction().clone());
        for s in [0.3 * smax, smax] {
            let a = solver.point(s).unwrap();
            let b = flipped.point(-s).unwrap();
            assert!((&a.u_plus - &b.u_plus).amax() < 1e-10, "{label}");
            assert!((a.sigma - b.sigma).abs() < 1e-10);
        }
    }
}

#[test]
fn entropy_loss_identity_along_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (label, sys, base, i, smax) in families() {
        for _ in 0..5 {
            let u = &base + DVector::from_fn(base.len(), |_, _| rng.gen_range(-0.02..0.02)) * smax.max(0.1);
            let v = &base + DVector::from_fn(base.len(), |_, _| rng.gen_range(-0.05..0.05));
            let s = rng.gen_range(0.2..1.0) * smax;
            let solver = HugoniotSolver::new(sys.as_ref(), &u, i).unwrap();
            let curve = solver.trace(s).unwrap();
            let r = curve.entropy_loss_residual(&solver, &v, s, 1e-12).unwrap();
            assert!(r.abs() < 1e-7 * s.powi(3).max(1.0), "{label}: residual {r:e}");
        }
    }
}

#[test]
fn nearest_sample_and_warm_restart() {
    let sys = Example3x3::new(1.0).unwrap();
    let u = DVector::zeros(3);
    let solver = HugoniotSolver::new(&sys, &u, 1).unwrap();
    let curve = solver.trace(0.1).unwrap();
    let p = curve.point_at(&solver, 0.0731).unwrap();
    let q = solver.point(0.0731).unwrap();
    assert!((&p.u_plus - &q.u_plus).amax() < 1e-12);
    assert!((curve.nearest(0.0731).s - 0.0731).abs() <= 0.02);
}

#[test]
fn family_identification() {
    let sys = Example3x3::new(1.0).unwrap();
    let u = DVector::zeros(3);
    let reference = hugoniot_point(&sys, &u, 1, 0.05).unwrap();
    assert_eq!(
        identify_family(&sys, &reference.u_minus, &reference.u_plus, reference.sigma, &reference, 1e-10).unwrap(),
        1
    );
    let near = DVector::from_vec(vec![0.002, -0.001, 0.001]);
    let p = hugoniot_point(&sys, &near, 1, 0.04).unwrap();
    assert_eq!(identify_family(&sys, &p.u_minus, &p.u_plus, p.sigma, &reference, 1e-10).unwrap(), 1);

    // a 3-shock is separated from the 2-band and is not reported as family 2
    let other = hugoniot_point(&sys, &near, 2, 0.04).unwrap();
    match identify_family(&sys, &other.u_minus, &other.u_plus, other.sigma, &reference, 1e-10) {
        Ok(k) => assert_eq!(k, 2),
        Err(e) => assert!(matches!(e, Error::NotAShock { .. }), "{e}"),
    }
    // perturbed speed breaks Rankine–Hugoniot
    assert!(matches!(
        identify_family(&sys, &p.u_minus, &p.u_plus, p.sigma + 1e-3, &reference, 1e-10),
        Err(Error::NotAShock { .. })
    ));
}

#[test]
fn leaving_the_domain_is_reported() {
    let sys = Example3x3::new(1.0).unwrap();
    let solver = HugoniotSolver::new(&sys, &DVector::zeros(3), 1).unwrap();
    assert!(matches!(solver.point(2.0), Err(Error::DomainExit { .. })));
    assert!(matches!(HugoniotSolver::new(&sys, &DVector::zeros(3), 3), Err(Error::BadFamily { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn p_system_points_are_rankine_hugoniot(s in 0.0f64..0.3, v in 0.7f64..1.5, w in -0.3f64..0.3, fam in 0usize..2) {
        let sys = PSystem::new(1.4).unwrap();
        let u = DVector::from_vec(vec![v, w]);
        let p = hugoniot_point(&sys, &u, fam, s).unwrap();
        prop_assert!(p.rh_residual(&sys) < 1e-11);
        prop_assert!((rh_speed(&sys, &u, &p.u_plus).unwrap_or(p.sigma) - p.sigma).abs() < 1e-9);
    }
}
