//! Subcommand implementations. Each returns the verdict that decides the exit
//! code; errors propagate.

use std::sync::Arc;
use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use shock_contract::criterion::{self, CriterionOptions};
use shock_contract::dissipation::{ContractionContext, DissipationOptions};
use shock_contract::shock::HugoniotSolver;
use shock_contract::simulator::{self, InitialData, PairLayout, SimConfig, SimResult};
use shock_contract::system::{eigenstructure, Example3x3, HyperbolicSystem, Mhd2d, State};

use crate::config::{field_error, join, InitialKind, RunConfig};
use crate::output::{write_atomic, Table};
use crate::{CliError, Verdict};

type Out = Result<Verdict, CliError>;

fn system(cfg: &RunConfig) -> Result<Arc<dyn HyperbolicSystem>, CliError> {
    Ok(cfg.system_spec()?.build()?)
}

fn left_state(cfg: &RunConfig, sys: &dyn HyperbolicSystem) -> Result<State, CliError> {
    let u = cfg.state_or_default()?;
    if u.len() != sys.dim() {
        return Err(field_error("state", format!("expected {} components, got {}", sys.dim(), u.len())).into());
    }
    Ok(DVector::from_vec(u))
}

fn family(cfg: &RunConfig, sys: &dyn HyperbolicSystem) -> Result<usize, CliError> {
    let i = cfg.family_index()?;
    if i >= sys.dim() {
        return Err(field_error("family", format!("must be between 1 and {}", sys.dim())).into());
    }
    Ok(i)
}

fn context(cfg: &RunConfig) -> Result<ContractionContext, CliError> {
    let sys = system(cfg)?;
    let u = left_state(cfg, sys.as_ref())?;
    let i = family(cfg, sys.as_ref())?;
    Ok(ContractionContext::new(sys, u, i, cfg.require_s()?, cfg.require_c()?)?)
}

fn vec_str(v: &DVector<f64>) -> String {
    join(v.as_slice())
}

fn columns(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

pub fn eigen(cfg: &RunConfig) -> Out {
    let sys = system(cfg)?;
    let u = left_state(cfg, sys.as_ref())?;
    let e = eigenstructure(sys.as_ref(), &u)?;
    let n = e.dim();
    let mut header = vec!["k".to_string(), "lambda".to_string(), "gnl".to_string()];
    header.extend(columns("r", n));
    let mut table = Table::with_header(cfg.metadata(), header);
    println!("state {}", vec_str(&u));
    for k in 0..n {
        println!(
            "lambda_{} = {:.12e}  g = {:.6e}  r = [{}]",
            k + 1,
            e.lambda(k),
            e.gnl[k],
            vec_str(&e.r(k))
        );
        let mut row = vec![(k + 1) as f64, e.lambda(k), e.gnl[k]];
        row.extend(e.r(k).iter());
        table.push(row);
    }
    let path = table.write(&cfg.output_dir(), "eigen.csv")?;
    println!("wrote {}", path.display());
    Ok(Verdict::Pass)
}

pub fn hugoniot(cfg: &RunConfig, s_max: Option<f64>) -> Out {
    let sys = system(cfg)?;
    let u = left_state(cfg, sys.as_ref())?;
    let i = family(cfg, sys.as_ref())?;
    let s_max = match s_max {
        Some(s) => s,
        None => cfg.require_s()?,
    };
    let solver = HugoniotSolver::new(sys.as_ref(), &u, i)?;
    let curve = solver.trace(s_max)?;
    let n = sys.dim();
    let mut header: Vec<String> = ["s", "sigma", "dsigma_ds"].iter().map(|s| s.to_string()).collect();
    header.extend(columns("u_plus_", n));
    header.push("rh_residual".to_string());
    let mut table = Table::with_header(cfg.metadata(), header);
    for p in &curve.samples {
        let mut row = vec![p.s, p.sigma, p.dsigma];
        row.extend(p.u_plus.iter());
        row.push(p.rh_residual(sys.as_ref()));
        table.push(row);
    }
    let end = curve.samples.last().expect("a traced curve has samples");
    println!(
        "{} samples up to s = {:e}; sigma = {:.12e}, u+ = [{}]",
        curve.samples.len(),
        end.s,
        end.sigma,
        vec_str(&end.u_plus)
    );
    let path = table.write(&cfg.output_dir(), "hugoniot.csv")?;
    println!("wrote {}", path.display());
    Ok(Verdict::Pass)
}

pub fn dmax(cfg: &RunConfig, at: Option<&[f64]>, samples: Option<usize>, grid: Option<usize>, radius: f64) -> Out {
    let ctx = context(cfg)?;
    let n = ctx.system().dim();
    let u = match at {
        Some(v) if v.len() == n => DVector::from_column_slice(v),
        Some(v) => return Err(field_error("at", format!("expected {n} components, got {}", v.len())).into()),
        None => ctx.u_l().clone(),
    };
    let ms = ctx.maximal_shock(&u)?;
    println!("u = [{}]", vec_str(&u));
    println!("s* = {:.12e}", ms.s_star);
    println!("u+ = [{}]", vec_str(&ms.u_plus));
    println!("sigma = {:.12e}", ms.sigma_pm);
    println!("D_max = {:.12e}", ctx.d_max_of(&ms));
    println!("grad D_max = [{}]", vec_str(&ctx.grad_d_max_of(&ms)?));
    println!("hess D_max = {}", ctx.hess_d_max_of(&ms)?);

    if samples.is_none() && grid.is_none() {
        return Ok(Verdict::Pass);
    }
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(field_error("radius", format!("must be positive, got {radius}")).into());
    }
    let mut offsets: Vec<DVector<f64>> = Vec::new();
    if let Some(k) = grid {
        if k < 2 {
            return Err(field_error("grid", "need at least 2 points per axis").into());
        }
        let total = k.checked_pow(n as u32).filter(|&t| t <= 10_000_000).ok_or_else(|| field_error("grid", "too many points"))?;
        for idx in 0..total {
            let mut rest = idx;
            let d = DVector::from_fn(n, |_, _| {
                let m = rest % k;
                rest /= k;
                -radius + 2.0 * radius * m as f64 / (k - 1) as f64
            });
            if d.norm() <= radius * (1.0 + 1e-12) {
                offsets.push(d);
            }
        }
    }
    if let Some(m) = samples {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
        for _ in 0..m {
            offsets.push(DVector::from_fn(n, |_, _| rng.gen_range(-radius..=radius)));
        }
    }
    let results: Vec<(f64, f64)> = offsets
        .par_iter()
        .map(|d| match ctx.maximal_shock(&(ctx.u_l() + d)) {
            Ok(ms) => (ms.s_star, ctx.d_max_of(&ms)),
            Err(_) => (f64::NAN, f64::NAN),
        })
        .collect();
    let mut header = vec!["index".to_string()];
    header.extend(columns("u", n));
    header.extend(["distance", "s_star", "d_max", "d_max_over_dist2"].iter().map(|s| s.to_string()));
    let mut meta = cfg.metadata();
    meta.push(("radius".into(), radius.to_string()));
    meta.push(("seed".into(), cfg.seed().to_string()));
    let mut table = Table::with_header(meta, header);
    let mut worst = f64::NEG_INFINITY;
    let mut failed = 0usize;
    for (k, (d, (s_star, dm))) in offsets.iter().zip(&results).enumerate() {
        let r2 = d.norm_squared();
        let ratio = if r2 > 0.0 { dm / r2 } else { f64::NAN };
        if dm.is_nan() {
            failed += 1;
        } else if r2 > 0.0 {
            worst = worst.max(ratio);
        }
        let mut row = vec![k as f64];
        row.extend((ctx.u_l() + d).iter());
        row.extend([r2.sqrt(), *s_star, *dm, ratio]);
        table.push(row);
    }
    let path = table.write(&cfg.output_dir(), "dmax_sweep.csv")?;
    println!("{} sweep points, {failed} failed; max D_max/|u - u_L|^2 = {worst:.6e}", offsets.len());
    println!("wrote {}", path.display());
    Ok(if failed == 0 && worst < 0.0 {
        println!("verdict: PASS (D_max <= -{:.4e} |u - u_L|^2 on the sweep)", -worst);
        Verdict::Pass
    } else {
        println!("verdict: FAIL");
        Verdict::Fail
    })
}

pub fn criterion(cfg: &RunConfig, scan: bool) -> Out {
    let sys = system(cfg)?;
    let u = left_state(cfg, sys.as_ref())?;
    let i = family(cfg, sys.as_ref())?;
    let opts = CriterionOptions::default();
    let report = criterion::feasibility_with(sys.as_ref(), &u, i, opts)?;
    println!("family {} at u_L = [{}]", i + 1, vec_str(&u));
    println!("restricted A = {}", report.pencil.a_hat);
    println!("restricted B = {}", report.pencil.b_hat);
    println!("search bracket C in [{:e}, {:e}]", report.c_range.0, report.c_range.1);
    println!("min lambda_max = {:.12e} at C = {:.12e}", report.min_lambda_max, report.c_star);
    println!("(i,i) limit = {:.12e}", report.ii_limit);
    match report.feasible_interval {
        Some((lo, hi)) => println!("feasible interval: ({lo:.10}, {hi:.10})"),
        None => {
            println!("feasible interval: empty");
            println!("witness = [{}]", vec_str(&report.witness_state()));
            if let Some(cert) = &report.certificate {
                println!("certificate covers R: {}", cert.covers_positive);
            }
        }
    }
    if scan {
        let c = cfg.c_scan.unwrap_or(crate::config::CScan {
            lo: -10.0,
            hi: 10.0,
            points: 201,
        });
        let cs: Vec<f64> = (0..c.points)
            .map(|k| c.lo + (c.hi - c.lo) * k as f64 / (c.points - 1) as f64)
            .collect();
        let values: Vec<f64> = cs.par_iter().map(|&x| report.pencil.lambda_max(x)).collect();
        let mut meta = cfg.metadata();
        meta.push((
            "feasible_interval".into(),
            report.feasible_interval.map_or("empty".to_string(), |(a, b)| format!("{a},{b}")),
        ));
        let mut table = Table::new(meta, &["C", "lambda_max"]);
        for (x, v) in cs.iter().zip(values) {
            table.push(vec![*x, v]);
        }
        let path = table.write(&cfg.output_dir(), "criterion_scan.csv")?;
        println!("wrote {}", path.display());
    }
    if let Some(c) = cfg.c {
        let v = criterion::necessary_check(sys.as_ref(), &u, i, c, opts)?;
        println!(
            "semidefinite check at C = {c}: lambda_max = {:.6e} (tol {:.1e}) -> {}",
            v.lambda_max,
            v.tol,
            if v.pass { "PASS" } else { "FAIL" }
        );
        if !v.pass {
            println!("witness = [{}]", vec_str(&v.witness));
        }
        return Ok(if v.pass { Verdict::Pass } else { Verdict::Fail });
    }
    Ok(if report.is_feasible() { Verdict::Pass } else { Verdict::Fail })
}

pub fn limit_check(cfg: &RunConfig) -> Out {
    let sys = system(cfg)?;
    let u = left_state(cfg, sys.as_ref())?;
    let i = family(cfg, sys.as_ref())?;
    let c = cfg.require_c()?;
    let s_list = cfg.s_list.clone().unwrap_or_else(|| vec![1e-2, 5e-3, 2.5e-3]);
    let rows = s_list
        .par_iter()
        .map(|&s| {
            criterion::limit_convergence_check(Arc::clone(&sys), &u, i, c, &[s], DissipationOptions::default())
                .map(|mut r| r.remove(0))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut table = Table::new(cfg.metadata(), &["s", "offi_error", "ii_value", "ii_error", "mixed"]);
    for r in &rows {
        println!(
            "s = {:.3e}: off-i error {:.6e}, (i,i) {:.8} (error {:.3e}), mixed {:.3e}",
            r.s, r.offi_error, r.ii_value, r.ii_error, r.mixed
        );
        table.push(vec![r.s, r.offi_error, r.ii_value, r.ii_error, r.mixed]);
    }
    let ratios = criterion::error_ratios(&rows, |r| r.offi_error);
    println!("error ratios: {ratios:.4?}");
    let path = table.write(&cfg.output_dir(), "limit_check.csv")?;
    println!("wrote {}", path.display());
    let ok = !ratios.is_empty() && ratios.iter().all(|q| (1.5..=2.5).contains(q));
    println!("verdict: {}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { Verdict::Pass } else { Verdict::Fail })
}

pub fn counterexample(cfg: &RunConfig) -> Out {
    let ctx = context(cfg)?;
    let delta = cfg.delta.unwrap_or(1e-2);
    let ce = match criterion::find_counterexample(&ctx, delta) {
        Ok(ce) => ce,
        Err(e @ shock_contract::Error::NoPositiveDirection(_)) => {
            println!("{e}");
            println!("verdict: FAIL (no counterexample)");
            return Ok(Verdict::Fail);
        }
        Err(e) => return Err(e.into()),
    };
    println!("u- = [{}]", vec_str(&ce.u_minus));
    println!("u+ = [{}]", vec_str(&ce.u_plus));
    println!("sigma = {:.12e}", ce.sigma);
    println!("D_RH = {:.12e} at t = {:.6e}", ce.d_rh, ce.t);
    println!("RH residual = {:.3e}, distance = {:.3e}", ce.rh_residual, ce.distance);
    let seq = criterion::ratio_sequence(&ctx, &ce, 3)?;
    let mut meta = cfg.metadata();
    meta.push(("delta".into(), delta.to_string()));
    meta.push(("u_minus".into(), vec_str(&ce.u_minus)));
    meta.push(("u_plus".into(), vec_str(&ce.u_plus)));
    meta.push(("sigma".into(), ce.sigma.to_string()));
    meta.push(("d_rh".into(), ce.d_rh.to_string()));
    let mut table = Table::new(meta, &["t", "d_rh_over_t2", "quadratic_model"]);
    for (t, r) in &seq {
        println!("t = {t:.4e}: D_RH/t^2 = {r:.6e} (model {:.6e})", ce.quadratic_model);
        table.push(vec![*t, *r, ce.quadratic_model]);
    }
    let path = table.write(&cfg.output_dir(), "counterexample.csv")?;
    println!("wrote {}", path.display());
    Ok(Verdict::Pass)
}

fn sim_config(cfg: &RunConfig, ctx: &ContractionContext) -> Result<SimConfig, CliError> {
    let sim = &cfg.sim;
    let mut sc = SimConfig::new(
        ctx.clone(),
        sim.cells.unwrap_or(1000),
        sim.domain.unwrap_or((-4.0, 4.0)),
        sim.t_end.unwrap_or(1.0),
    );
    if let Some(c) = sim.cfl {
        sc.cfl = c;
    }
    if let Some(o) = sim.trace_offset {
        sc.trace_offset = o;
    }
    sc.record_stride = sim.record_stride.unwrap_or(1);
    sc.snapshot_times = sim.snapshot_times.clone();
    let layout = sim.layout.unwrap_or_default();
    sc.initial_data = match sim.initial.unwrap_or(InitialKind::ExactShock) {
        InitialKind::ExactShock => InitialData::ExactShock,
        InitialKind::Counterexample => {
            let ce = criterion::find_counterexample(ctx, cfg.delta.unwrap_or(1e-2))?;
            InitialData::PerturbedPair {
                u_minus: ce.u_minus,
                u_plus: ce.u_plus,
                layout,
            }
        }
        InitialKind::Pair => {
            let um = sim.u_minus.clone().ok_or_else(|| field_error("sim.u_minus", "required for `pair` data"))?;
            if um.len() != ctx.system().dim() {
                return Err(field_error("sim.u_minus", "wrong number of components").into());
            }
            let um = DVector::from_vec(um);
            let up = ctx.maximal_shock(&um)?.u_plus;
            InitialData::PerturbedPair {
                u_minus: um,
                u_plus: up,
                layout,
            }
        }
    };
    Ok(sc)
}

pub fn simulate(cfg: &RunConfig) -> Out {
    let ctx = context(cfg)?;
    let sc = sim_config(cfg, &ctx)?;
    let perturbed = !matches!(sc.initial_data, InitialData::ExactShock);
    let want_baseline = cfg.sim.baseline.unwrap_or(false) && perturbed;
    let (res, baseline) = if want_baseline {
        let mut base = sc.clone();
        base.initial_data = InitialData::ExactShock;
        base.snapshot_times.clear();
        let (a, b) = rayon::join(|| simulator::run(&sc), || simulator::run(&base));
        (a?, Some(b?))
    } else {
        (simulator::run(&sc)?, None)
    };

    let mut header: Vec<String> = ["t", "E", "h", "dE_dt", "dist_minus", "dist_plus", "D_RH"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    if baseline.is_some() {
        header.push("E_corrected".to_string());
    }
    let mut meta = cfg.metadata();
    meta.push(("cells".into(), sc.cells.to_string()));
    meta.push(("domain".into(), format!("{},{}", sc.domain.0, sc.domain.1)));
    meta.push(("cfl".into(), sc.cfl.to_string()));
    meta.push(("dx".into(), res.dx.to_string()));
    let mut table = Table::with_header(meta.clone(), header);
    let rates = res.de_dt();
    let corrected = baseline.as_ref().map(|b| res.corrected_e(b));
    for (k, r) in res.records.iter().enumerate() {
        let rate = rates.get(k).or(rates.last()).copied().unwrap_or(0.0);
        let mut row = vec![r.t, r.e, r.h, rate, r.dist_minus, r.dist_plus, r.d_rh];
        if let Some(c) = &corrected {
            row.push(c[k]);
        }
        table.push(row);
    }
    let dir = cfg.output_dir();
    let path = table.write(&dir, "simulate.csv")?;
    println!("wrote {}", path.display());

    let n = ctx.system().dim();
    for (k, (t, cells)) in res.snapshots.iter().enumerate() {
        let mut header = vec!["x".to_string()];
        header.extend(columns("u", n));
        let mut m = meta.clone();
        m.push(("t".into(), t.to_string()));
        let mut snap = Table::with_header(m, header);
        for (j, u) in cells.iter().enumerate() {
            let mut row = vec![sc.domain.0 + (j as f64 + 0.5) * res.dx];
            row.extend(u.iter());
            snap.push(row);
        }
        let p = snap.write(&dir, &format!("snapshot_{k}.csv"))?;
        println!("wrote {}", p.display());
    }

    let e = res.e_values();
    println!(
        "{} steps; E(0) = {:.6e}, E(end) = {:.6e}, max rise {:.3e}",
        res.steps,
        e[0],
        e[e.len() - 1],
        SimResult::max_rise(&e)
    );
    println!(
        "conservation defect {:.1e}, entropy violation {:.1e}",
        res.conservation_defect, res.entropy_violation
    );
    if let Some(c) = &corrected {
        println!(
            "drift-corrected: max rise {:.3e}, dE/dt(0+) = {:.6e}, D_RH(0) = {:.6e}",
            SimResult::max_rise(c),
            res.initial_rate(baseline.as_ref()).unwrap_or(f64::NAN),
            res.records[0].d_rh
        );
    }
    Ok(Verdict::Pass)
}

/// One row of the regression table.
struct Row {
    name: &'static str,
    pass: bool,
    detail: String,
    seconds: f64,
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(bool, String), CliError>) -> Row {
    let start = Instant::now();
    let (pass, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    Row {
        name,
        pass,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn check_example_feasibility() -> Result<(bool, String), CliError> {
    let mut ok = true;
    let mut parts = Vec::new();
    for alpha in [0.0, 1.0, 2.0, 3.9] {
        let sys = Example3x3::new(alpha)?;
        let u = DVector::zeros(3);
        let report = criterion::feasibility(&sys, &u, 1)?;
        // the restricted form in coordinates along e₁ and -e₃
        let basis = DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, -1.0]);
        let fixed = criterion::feasibility_in_basis(&sys, &u, 1, basis, CriterionOptions::default())?;
        for c in [-1.0, 0.0, 1.0, 2.5] {
            let expect = DMatrix::from_row_slice(2, 2, &[-2.0 * c - 2.0, -2.0 * alpha, -2.0 * alpha, 2.0 * c - 6.0]);
            ok &= (fixed.restricted(c) - expect).amax() < 1e-12;
        }
        let d = 4.0 - alpha * alpha;
        ok &= match report.feasible_interval {
            Some((lo, hi)) => d > 0.0 && (lo - (1.0 - d.sqrt())).abs() < 1e-6 && (hi - (1.0 + d.sqrt())).abs() < 1e-6,
            None => d <= 0.0,
        };
        parts.push(match report.feasible_interval {
            Some((lo, hi)) => format!("α={alpha}: ({lo:.6}, {hi:.6})"),
            None => format!("α={alpha}: empty"),
        });
    }
    Ok((ok, parts.join("; ")))
}

fn check_mhd_infeasibility() -> Result<(bool, String), CliError> {
    let m = Mhd2d::new(1.0, 5.0 / 3.0)?;
    let u = DVector::from_vec(vec![100.0, 1.0, 0.0, 0.0]);
    let opts = CriterionOptions {
        c_range: Some((-1e3, 1e3)),
        ..Default::default()
    };
    let report = criterion::feasibility_with(&m, &u, 1, opts)?;
    let covered = report.certificate.as_ref().is_some_and(|c| c.covers_positive);
    let speeds = m.wave_speeds(&u);
    Ok((
        !report.is_feasible() && covered,
        format!("speeds {speeds:.6?}; min lambda_max {:.3e}", report.min_lambda_max),
    ))
}

fn check_convergence() -> Result<(bool, String), CliError> {
    let sys: Arc<dyn HyperbolicSystem> = Arc::new(Example3x3::new(1.0)?);
    let rows = criterion::limit_convergence_check(sys, &DVector::zeros(3), 1, 1.0, &[1e-2, 5e-3, 2.5e-3], DissipationOptions::default())?;
    let ratios = criterion::error_ratios(&rows, |r| r.offi_error);
    let ii = rows[rows.len() - 1].ii_value;
    Ok((
        ratios.iter().all(|q| (1.5..=2.5).contains(q)) && (ii + 1.0).abs() <= 0.05,
        format!("ratios {ratios:.3?}; (i,i) {ii:.5}"),
    ))
}

fn mhd_context() -> Result<ContractionContext, CliError> {
    Ok(ContractionContext::new(
        Arc::new(Mhd2d::new(1.0, 5.0 / 3.0)?),
        DVector::from_vec(vec![100.0, 1.0, 0.0, 0.0]),
        1,
        1e-2,
        1.0,
    )?)
}

fn check_counterexample() -> Result<(bool, String), CliError> {
    let ctx = mhd_context()?;
    let ce = criterion::find_counterexample(&ctx, 1e-2)?;
    let seq = criterion::ratio_sequence(&ctx, &ce, 3)?;
    let last = seq[seq.len() - 1].1;
    let ok = ce.d_rh > 0.0
        && ce.rh_residual < 1e-10
        && ce.distance < 1e-2
        && (last - ce.quadratic_model).abs() < 0.25 * ce.quadratic_model;
    Ok((ok, format!("D_RH = {:.3e}, D_RH/t^2 -> {last:.4e} vs {:.4e}", ce.d_rh, ce.quadratic_model)))
}

fn check_attractor() -> Result<(bool, String), CliError> {
    let ctx = ContractionContext::new(Arc::new(Example3x3::new(1.0)?), DVector::zeros(3), 1, 0.05, 1.0)?;
    let (k, r) = (21usize, 0.02);
    let offsets: Vec<DVector<f64>> = (0..k * k * k)
        .map(|idx| DVector::from_fn(3, |j, _| -r + 2.0 * r * ((idx / k.pow(j as u32)) % k) as f64 / (k - 1) as f64))
        .filter(|d| d.norm() > 0.0 && d.norm() <= r * (1.0 + 1e-12))
        .collect();
    let worst = offsets
        .par_iter()
        .map(|d| ctx.d_max(&(ctx.u_l() + d)).map(|v| v / d.norm_squared()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((worst < 0.0, format!("{} points; D_max <= {worst:.4e} |u - u_L|^2", offsets.len())))
}

fn check_simulation() -> Result<(bool, String), CliError> {
    // exact shock drift under refinement
    let ctx = ContractionContext::new(Arc::new(Example3x3::new(1.0)?), DVector::zeros(3), 1, 0.05, 1.0)?;
    let devs = [1000usize, 2000]
        .par_iter()
        .map(|&n| {
            let mut sc = SimConfig::new(ctx.clone(), n, (-1.0, 1.0), 1.0);
            sc.record_stride = 10;
            simulator::run(&sc).map(|r| r.max_deviation_from_initial())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ratio = devs[0] / devs[1];
    // counterexample data on the MHD shock
    let mctx = mhd_context()?;
    let ce = criterion::find_counterexample(&mctx, 1e-2)?;
    let base = SimConfig::new(mctx.clone(), 4000, (-3.0, 3.0), 0.2);
    let mut pert = base.clone();
    pert.initial_data = InitialData::PerturbedPair {
        u_minus: ce.u_minus.clone(),
        u_plus: ce.u_plus.clone(),
        layout: PairLayout::default(),
    };
    let (b, p) = rayon::join(|| simulator::run(&base), || simulator::run(&pert));
    let rate = p?.initial_rate(Some(&b?)).unwrap_or(f64::NAN);
    let rel = (rate - ce.d_rh).abs() / ce.d_rh;
    Ok((
        (1.5..=2.5).contains(&ratio) && rate > 0.0 && rel < 0.2,
        format!("drift ratio {ratio:.2}; dE/dt(0+) {rate:.3e} vs D_RH {:.3e}", ce.d_rh),
    ))
}

pub fn reproduce(cfg: &RunConfig, with_simulation: bool) -> Out {
    type Check = (&'static str, fn() -> Result<(bool, String), CliError>);
    let mut checks: Vec<Check> = vec![
        ("example3x3 feasibility", check_example_feasibility),
        ("mhd2d large-v infeasibility", check_mhd_infeasibility),
        ("Hessian limit convergence", check_convergence),
        ("mhd2d counterexample", check_counterexample),
        ("local attractor certificate", check_attractor),
    ];
    if with_simulation {
        checks.push(("simulator diagnostics", check_simulation));
    }
    let rows: Vec<Row> = checks.par_iter().map(|(name, f)| timed(name, f)).collect();
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut text = String::new();
    for r in &rows {
        let line = format!(
            "{:<width$}  {}  {:>7.2} s  {}",
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.seconds,
            r.detail
        );
        println!("{line}");
        text.push_str(&line);
        text.push('\n');
    }
    let path = write_atomic(&cfg.output_dir(), "reproduce.txt", &text)?;
    println!("wrote {}", path.display());
    Ok(if rows.iter().all(|r| r.pass) { Verdict::Pass } else { Verdict::Fail })
}
