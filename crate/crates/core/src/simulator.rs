//! First-order finite-volume harness for the weighted pseudo-distance
//!
//! `E(t) = ∫_{x<h(t)} a η(u|u_L) dx + ∫_{x>h(t)} η(u|u_R) dx`
//!
//! along a shift `h` advanced with the Rankine–Hugoniot speed of the traces
//! `trace_offset` cells either side of it. The scheme is explicit Euler with
//! the two-wave (HLL) flux and constant extrapolation at both ends.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::dissipation::ContractionContext;
use crate::error::{Error, Result};
use crate::quadrature::gauss3;
use crate::shock::rh_speed;
use crate::system::{relative_entropy, HyperbolicSystem, State};

/// Positions of the perturbation `u_L | smooth | u₋ | u₊ | smooth | u_R`:
/// plateaus on `[-inner, 0)` and `(0, inner]`, cubic joins on
/// `[-outer, -inner]` and `[inner, outer]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairLayout {
    pub inner: f64,
    pub outer: f64,
}

impl Default for PairLayout {
    fn default() -> Self {
        PairLayout { inner: 1.0, outer: 2.0 }
    }
}

#[derive(Debug, Clone)]
pub enum InitialData {
    /// Riemann data `u_L | u_R` at `x = 0`.
    ExactShock,
    /// The perturbation built around a shock `(u₋, u₊)`.
    PerturbedPair {
        u_minus: State,
        u_plus: State,
        layout: PairLayout,
    },
    /// Cell averages supplied directly; the shift starts at `x = 0`.
    Custom(Vec<State>),
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub context: ContractionContext,
    pub cells: usize,
    pub domain: (f64, f64),
    pub cfl: f64,
    pub t_end: f64,
    pub initial_data: InitialData,
    pub trace_offset: usize,
    /// Fail with `TraceAmbiguity` when a trace sits on a non-settled profile.
    pub strict_traces: bool,
    /// Record every `record_stride`-th step (the first and last are always kept).
    pub record_stride: usize,
    pub snapshot_times: Vec<f64>,
}

impl SimConfig {
    pub fn new(context: ContractionContext, cells: usize, domain: (f64, f64), t_end: f64) -> Self {
        SimConfig {
            context,
            cells,
            domain,
            cfl: 0.45,
            t_end,
            initial_data: InitialData::ExactShock,
            trace_offset: 3,
            strict_traces: false,
            record_stride: 1,
            snapshot_times: Vec::new(),
        }
    }

    pub fn dx(&self) -> f64 {
        (self.domain.1 - self.domain.0) / self.cells as f64
    }

    fn validate(&self) -> Result<()> {
        if self.cells < 100 {
            return Err(Error::BadLayout(format!("need at least 100 cells, got {}", self.cells)));
        }
        if !(self.domain.0 < 0.0 && self.domain.1 > 0.0) {
            return Err(Error::BadLayout(format!("domain {:?} must contain x = 0", self.domain)));
        }
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::CflViolation { cfl: self.cfl });
        }
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("t_end = {} must be finite and nonnegative", self.t_end)));
        }
        if self.trace_offset == 0 || 2 * self.trace_offset + 2 >= self.cells {
            return Err(Error::BadLayout(format!("trace offset {} unusable", self.trace_offset)));
        }
        match &self.initial_data {
            InitialData::PerturbedPair { layout, u_minus, u_plus } => {
                let sys = self.context.system();
                sys.check_domain(u_minus)?;
                sys.check_domain(u_plus)?;
                if !(layout.inner > 0.0 && layout.outer > layout.inner) {
                    return Err(Error::BadLayout(format!(
                        "plateaus overlap: need 0 < inner < outer, got {layout:?}"
                    )));
                }
                if -layout.outer <= self.domain.0 || layout.outer >= self.domain.1 {
                    return Err(Error::BadLayout(format!(
                        "perturbation [-{o}, {o}] does not fit in {:?}",
                        self.domain,
                        o = layout.outer
                    )));
                }
            }
            InitialData::Custom(cells) => {
                if cells.len() != self.cells {
                    return Err(Error::BadLayout(format!(
                        "custom data has {} cells, expected {}",
                        cells.len(),
                        self.cells
                    )));
                }
            }
            InitialData::ExactShock => {}
        }
        Ok(())
    }
}

fn smoothstep(xi: f64) -> f64 {
    let x = xi.clamp(0.0, 1.0);
    x * x * (3.0 - 2.0 * x)
}

/// Pointwise initial profile and its breakpoints.
fn profile(config: &SimConfig) -> (Box<dyn Fn(f64) -> State + '_>, Vec<f64>) {
    let ctx = &config.context;
    let (ul, ur) = (ctx.u_l().clone(), ctx.u_r().clone());
    match &config.initial_data {
        InitialData::ExactShock | InitialData::Custom(_) => {
            (Box::new(move |x| if x < 0.0 { ul.clone() } else { ur.clone() }), vec![0.0])
        }
        InitialData::PerturbedPair { u_minus, u_plus, layout } => {
            let (um, up, l) = (u_minus.clone(), u_plus.clone(), *layout);
            let w = l.outer - l.inner;
            let f = move |x: f64| -> State {
                if x < -l.outer {
                    ul.clone()
                } else if x < -l.inner {
                    &ul + (&um - &ul) * smoothstep((x + l.outer) / w)
                } else if x < 0.0 {
                    um.clone()
                } else if x <= l.inner {
                    up.clone()
                } else if x <= l.outer {
                    &up + (&ur - &up) * smoothstep((x - l.inner) / w)
                } else {
                    ur.clone()
                }
            };
            (Box::new(f), vec![-l.outer, -l.inner, 0.0, l.inner, l.outer])
        }
    }
}

/// Cell averages of the initial profile, 3-point Gauss on each smooth piece
/// of every cell.
pub fn build_initial_data(config: &SimConfig) -> Result<Vec<State>> {
    config.validate()?;
    if let InitialData::Custom(cells) = &config.initial_data {
        return Ok(cells.clone());
    }
    let (f, breaks) = profile(config);
    let n = config.context.system().dim();
    let dx = config.dx();
    let mut out = Vec::with_capacity(config.cells);
    for j in 0..config.cells {
        let a = config.domain.0 + j as f64 * dx;
        let b = a + dx;
        let mut pts = vec![a];
        pts.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
        pts.push(b);
        let mut acc = DVector::zeros(n);
        for w in pts.windows(2) {
            for k in 0..n {
                acc[k] += gauss3(|x| f(x)[k], w[0], w[1]);
            }
        }
        out.push(acc / dx);
    }
    Ok(out)
}

/// One recorded time level.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub t: f64,
    pub e: f64,
    pub h: f64,
    pub u_minus: Vec<f64>,
    pub u_plus: Vec<f64>,
    /// `D_RH` of the traces with their RH speed.
    pub d_rh: f64,
    pub dist_minus: f64,
    pub dist_plus: f64,
}

#[derive(Debug, Clone)]
pub struct SimResult {
    pub dx: f64,
    pub records: Vec<Record>,
    /// Largest per-step conservation defect (interior balance minus
    /// boundary fluxes), infinity norm.
    pub conservation_defect: f64,
    /// Largest per-step increase of the total entropy beyond the boundary
    /// entropy fluxes.
    pub entropy_violation: f64,
    pub snapshots: Vec<(f64, Vec<State>)>,
    pub final_cells: Vec<State>,
    pub steps: usize,
}

impl SimResult {
    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.t).collect()
    }

    pub fn e_values(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.e).collect()
    }

    /// Forward differences of `E` between consecutive records.
    pub fn de_dt(&self) -> Vec<f64> {
        self.records
            .windows(2)
            .map(|w| (w[1].e - w[0].e) / (w[1].t - w[0].t))
            .collect()
    }

    /// Largest increase of `E` between consecutive records.
    pub fn max_upward_jump(&self) -> f64 {
        self.records
            .windows(2)
            .map(|w| w[1].e - w[0].e)
            .fold(0.0, f64::max)
    }

    /// `E` is non-increasing up to `tol` per recorded step.
    pub fn is_non_increasing(&self, tol: f64) -> bool {
        self.max_upward_jump() <= tol
    }

    pub fn max_deviation_from_initial(&self) -> f64 {
        let e0 = self.records[0].e;
        self.records.iter().map(|r| (r.e - e0).abs()).fold(0.0, f64::max)
    }

    /// `E(t) - E(0)` of `self`, linearly interpolated at `t`.
    pub fn drift_at(&self, t: f64) -> f64 {
        let e0 = self.records[0].e;
        let k = self.records.partition_point(|r| r.t < t);
        if k == 0 {
            return 0.0;
        }
        if k >= self.records.len() {
            return self.records.last().map_or(0.0, |r| r.e - e0);
        }
        let (a, b) = (&self.records[k - 1], &self.records[k]);
        let w = (t - a.t) / (b.t - a.t);
        (1.0 - w) * a.e + w * b.e - e0
    }

    /// `E(t)` with the drift of a reference run removed. The reference is
    /// normally the unperturbed shock on the same grid, whose exact `E` is
    /// constant, so its drift is pure scheme error.
    pub fn corrected_e(&self, baseline: &SimResult) -> Vec<f64> {
        self.records.iter().map(|r| r.e - baseline.drift_at(r.t)).collect()
    }

    /// Largest increase between consecutive values.
    pub fn max_rise(values: &[f64]) -> f64 {
        values.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }

    /// One-sided `dE/dt` at `t = 0⁺` from the first recorded step, optionally
    /// with the baseline drift removed.
    pub fn initial_rate(&self, baseline: Option<&SimResult>) -> Option<f64> {
        let (a, b) = (self.records.first()?, self.records.get(1)?);
        let drift = baseline.map_or(0.0, |base| base.drift_at(b.t));
        Some((b.e - a.e - drift) / (b.t - a.t))
    }

    /// Least-squares slope of `E(t)` over records with `t ∈ [t0, t1]`.
    pub fn slope(&self, t0: f64, t1: f64) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .records
            .iter()
            .filter(|r| r.t >= t0 && r.t <= t1)
            .map(|r| (r.t, r.e))
            .collect();
        if pts.len() < 2 {
            return None;
        }
        let m = pts.len() as f64;
        let tm = pts.iter().map(|p| p.0).sum::<f64>() / m;
        let em = pts.iter().map(|p| p.1).sum::<f64>() / m;
        let num: f64 = pts.iter().map(|p| (p.0 - tm) * (p.1 - em)).sum();
        let den: f64 = pts.iter().map(|p| (p.0 - tm).powi(2)).sum();
        if den == 0.0 {
            None
        } else {
            Some(num / den)
        }
    }
}

/// Two-wave flux with speeds bounding both cells' characteristic speeds.
fn hll(system: &dyn HyperbolicSystem, ul: &State, ur: &State, bl: (f64, f64), br: (f64, f64)) -> DVector<f64> {
    let sl = bl.0.min(br.0);
    let sr = bl.1.max(br.1);
    if sl >= 0.0 {
        system.flux(ul)
    } else if sr <= 0.0 {
        system.flux(ur)
    } else {
        (system.flux(ul) * sr - system.flux(ur) * sl + (ur - ul) * (sl * sr)) / (sr - sl)
    }
}

struct Grid<'a> {
    config: &'a SimConfig,
    dx: f64,
    x0: f64,
}

impl Grid<'_> {
    fn cell_of(&self, x: f64) -> usize {
        (((x - self.x0) / self.dx).floor().max(0.0) as usize).min(self.config.cells - 1)
    }

    /// `E` with the cell containing `h` split by a linear reconstruction.
    fn e_value(&self, cells: &[State], h: f64) -> f64 {
        let ctx = &self.config.context;
        let sys = ctx.system();
        let a = ctx.a();
        let (ul, ur) = (ctx.u_l(), ctx.u_r());
        let jh = self.cell_of(h);
        let mut total = 0.0;
        for (j, u) in cells.iter().enumerate() {
            if j == jh {
                continue;
            }
            let x = self.x0 + (j as f64 + 0.5) * self.dx;
            total += self.dx
                * if x < h {
                    a * relative_entropy(sys, u, ul)
                } else {
                    relative_entropy(sys, u, ur)
                };
        }
        let slope = {
            let u = &cells[jh];
            let left = if jh > 0 { u - &cells[jh - 1] } else { u * 0.0 };
            let right = if jh + 1 < cells.len() { &cells[jh + 1] - u } else { u * 0.0 };
            left.zip_map(&right, minmod) / self.dx
        };
        let xc = self.x0 + (jh as f64 + 0.5) * self.dx;
        let (xa, xb) = (xc - 0.5 * self.dx, xc + 0.5 * self.dx);
        let hh = h.clamp(xa, xb);
        let rec = |x: f64| &cells[jh] + &slope * (x - xc);
        total += a * gauss3(|x| relative_entropy(sys, &rec(x), ul), xa, hh);
        total += gauss3(|x| relative_entropy(sys, &rec(x), ur), hh, xb);
        total
    }

    fn traces(&self, cells: &[State], h: f64, t: f64) -> Result<(State, State)> {
        let off = self.config.trace_offset;
        let jh = self.cell_of(h);
        let jm = jh.saturating_sub(off);
        let jp = (jh + off).min(cells.len() - 1);
        let (um, up) = (cells[jm].clone(), cells[jp].clone());
        if self.config.strict_traces {
            let jump = (&up - &um).amax();
            let settled = |j: usize, k: usize| (&cells[j] - &cells[k]).amax() <= 0.05 * jump;
            if jm == 0 || jp + 1 >= cells.len() || !settled(jm, jm - 1) || !settled(jp, jp + 1) {
                return Err(Error::TraceAmbiguity { t, offset: off });
            }
        }
        Ok((um, up))
    }
}

fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

/// Evolve the configured data to `t_end`.
pub fn run(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let ctx = &config.context;
    let sys = ctx.system();
    let n = sys.dim();
    let dx = config.dx();
    let grid = Grid {
        config,
        dx,
        x0: config.domain.0,
    };
    let mut cells = build_initial_data(config)?;
    let ncell = cells.len();
    let mut t = 0.0;
    let mut h = 0.0;
    let mut records = Vec::new();
    let mut snapshots = Vec::new();
    let mut pending_snaps: Vec<f64> = config.snapshot_times.iter().copied().filter(|&s| s >= 0.0).collect();
    pending_snaps.sort_by(f64::total_cmp);
    pending_snaps.dedup();

    let record = |cells: &[State], t: f64, h: f64| -> Result<Record> {
        let (um, up) = grid.traces(cells, h, t)?;
        let sigma = rh_speed(sys, &um, &up).unwrap_or(ctx.sigma_lr());
        Ok(Record {
            t,
            e: grid.e_value(cells, h),
            h,
            d_rh: ctx.d_rh(&um, &up, sigma),
            dist_minus: (&um - ctx.u_l()).norm(),
            dist_plus: (&up - ctx.u_r()).norm(),
            u_minus: um.as_slice().to_vec(),
            u_plus: up.as_slice().to_vec(),
        })
    };

    records.push(record(&cells, t, h)?);
    while pending_snaps.first().is_some_and(|&s| s <= 0.0) {
        snapshots.push((0.0, cells.clone()));
        pending_snaps.remove(0);
    }

    let mut conservation_defect: f64 = 0.0;
    let mut entropy_violation: f64 = 0.0;
    let mut steps = 0usize;
    let mut flux = vec![DVector::zeros(n); ncell + 1];
    while t < config.t_end {
        let bounds: Vec<(f64, f64)> = cells.iter().map(|u| sys.speed_bounds(u)).collect();
        let smax = bounds.iter().map(|b| b.0.abs().max(b.1.abs())).fold(0.0, f64::max);
        if !(smax > 0.0 && smax.is_finite()) {
            return Err(Error::Config(format!("degenerate wave-speed bound {smax}")));
        }
        let mut dt = config.cfl * dx / smax;
        let mut stop = config.t_end;
        if let Some(&s) = pending_snaps.first() {
            stop = stop.min(s);
        }
        if t + dt >= stop {
            dt = stop - t;
        }

        for k in 0..=ncell {
            let (l, r) = (k.saturating_sub(1), k.min(ncell - 1));
            flux[k] = hll(sys, &cells[l], &cells[r], bounds[l], bounds[r]);
        }
        let (um, up) = grid.traces(&cells, h, t)?;
        let sigma = rh_speed(sys, &um, &up).unwrap_or(ctx.sigma_lr());

        let mass_before: DVector<f64> = cells.iter().fold(DVector::zeros(n), |acc, u| acc + u) * dx;
        let entropy_before: f64 = cells.iter().map(|u| sys.entropy(u)).sum::<f64>() * dx;
        let mut next = Vec::with_capacity(ncell);
        for j in 0..ncell {
            let u = &cells[j] - (&flux[j + 1] - &flux[j]) * (dt / dx);
            sys.check_domain(&u)?;
            next.push(u);
        }
        let mass_after: DVector<f64> = next.iter().fold(DVector::zeros(n), |acc, u| acc + u) * dx;
        let balance = mass_after - mass_before + (&flux[ncell] - &flux[0]) * dt;
        let scale = cells.iter().map(|u| u.amax()).fold(0.0, f64::max).max(1.0) * (config.domain.1 - config.domain.0);
        conservation_defect = conservation_defect.max(balance.amax() / scale);
        let entropy_after: f64 = next.iter().map(|u| sys.entropy(u)).sum::<f64>() * dx;
        let q_out = sys.entropy_flux(&cells[ncell - 1]) - sys.entropy_flux(&cells[0]);
        entropy_violation = entropy_violation.max(entropy_after - entropy_before + dt * q_out);

        cells = next;
        t += dt;
        h += dt * sigma;
        steps += 1;
        let lo = config.domain.0 + (config.trace_offset + 1) as f64 * dx;
        let hi = config.domain.1 - (config.trace_offset + 1) as f64 * dx;
        if h <= lo || h >= hi {
            return Err(Error::BadLayout(format!("shift h = {h} reached the boundary at t = {t}")));
        }

        let snap_now = pending_snaps.first().is_some_and(|&s| (s - t).abs() <= 1e-12 * t.max(1.0));
        if snap_now {
            snapshots.push((t, cells.clone()));
            pending_snaps.remove(0);
        }
        if steps % config.record_stride.max(1) == 0 || t >= config.t_end || snap_now {
            records.push(record(&cells, t, h)?);
        }
    }
    Ok(SimResult {
        dx,
        records,
        conservation_defect,
        entropy_violation,
        snapshots,
        final_cells: cells,
        steps,
    })
}
