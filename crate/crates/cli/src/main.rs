//! `shockcontract`: command-line front end for the small-shock contraction
//! analyses.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use config::{ConfigError, InitialKind, RunConfig, CONFIG_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Analysis(#[from] shock_contract::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Other(String),
}

/// Outcome of a subcommand that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Parser)]
#[command(name = "shockcontract", version, about = "Local contraction analysis of small shocks")]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// JSON run configuration; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, env = "SHOCKCONTRACT_JOBS")]
    jobs: Option<usize>,
    /// Directory for all output files.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Seed for randomized sweeps.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Built-in system: burgers, p_system, example3x3, mhd2d.
    #[arg(long, global = true)]
    system: Option<String>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    gamma: Option<f64>,
    /// Left state u_L, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    state: Option<Vec<f64>>,
    /// Shock family, numbered from 1.
    #[arg(long, global = true)]
    family: Option<usize>,
    /// Shock size.
    #[arg(long, global = true)]
    s: Option<f64>,
    /// Weight slope C in a(s) = 1 + C s.
    #[arg(long = "C", global = true, allow_hyphen_values = true)]
    c: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues, eigenvectors and nonlinearity coefficients at u_L.
    Eigen,
    /// Trace the Hugoniot curve of u_L.
    Hugoniot {
        /// Largest curve parameter (defaults to s).
        #[arg(long, allow_hyphen_values = true)]
        s_max: Option<f64>,
    },
    /// The maximal shock and D_max at a state, optionally over a sweep.
    Dmax {
        /// Evaluation state (defaults to u_L).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        at: Option<Vec<f64>>,
        /// Random states in the cube of half-width `radius` around u_L.
        #[arg(long)]
        samples: Option<usize>,
        /// Points per axis of a tensor grid in the ball of radius `radius`.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 0.02)]
        radius: f64,
    },
    /// Feasibility of the weight slope and the semidefinite check.
    Criterion {
        /// Write λ_max of the restricted matrix over a C grid.
        #[arg(long)]
        scan: bool,
        #[arg(long, allow_hyphen_values = true)]
        c_lo: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        c_hi: Option<f64>,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Convergence of the scaled Hessian of D_max to its limit.
    LimitCheck {
        /// Decreasing shock sizes, comma separated.
        #[arg(long, value_delimiter = ',')]
        s_list: Option<Vec<f64>>,
    },
    /// A nearby shock with positive dissipation.
    Counterexample {
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Finite-volume run measuring the weighted pseudo-distance.
    Simulate {
        #[arg(long)]
        cells: Option<usize>,
        #[arg(long)]
        t_end: Option<f64>,
        #[arg(long)]
        cfl: Option<f64>,
        /// Domain as `lo,hi`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        domain: Option<Vec<f64>>,
        #[arg(long, value_enum)]
        initial: Option<InitialKind>,
        #[arg(long)]
        baseline: bool,
    },
    /// Regression table of the closed-form results.
    ReproducePaper {
        /// Include the finite-volume diagnostics (slow).
        #[arg(long)]
        with_simulation: bool,
    },
}

fn resolve(common: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig {
            version: Some(CONFIG_VERSION),
            ..Default::default()
        },
    };
    if let Some(name) = &common.system {
        let same = cfg.system.as_ref().is_some_and(|s| &s.system == name);
        if !same {
            cfg.system = Some(shock_contract::system::SystemSpec::new(name));
        }
    }
    for (key, value) in [("alpha", common.alpha), ("beta", common.beta), ("gamma", common.gamma)] {
        if let Some(v) = value {
            cfg.set_param(key, v)?;
        }
    }
    if let Some(s) = &common.state {
        cfg.state = Some(s.clone());
    }
    cfg.family = common.family.or(cfg.family);
    cfg.s = common.s.or(cfg.s);
    cfg.c = common.c.or(cfg.c);
    cfg.seed = common.seed.or(cfg.seed);
    if let Some(d) = &common.out_dir {
        cfg.output_dir = Some(d.clone());
    }
    Ok(cfg)
}

fn apply_command_overrides(cfg: &mut RunConfig, command: &Command) -> Result<(), CliError> {
    match command {
        Command::LimitCheck { s_list: Some(list) } => cfg.s_list = Some(list.clone()),
        Command::Counterexample { delta: Some(d) } => cfg.delta = Some(*d),
        Command::Criterion { c_lo, c_hi, points, .. } => {
            if c_lo.is_some() || c_hi.is_some() || points.is_some() {
                let mut scan = cfg.c_scan.unwrap_or(config::CScan {
                    lo: -10.0,
                    hi: 10.0,
                    points: 201,
                });
                scan.lo = c_lo.unwrap_or(scan.lo);
                scan.hi = c_hi.unwrap_or(scan.hi);
                scan.points = points.unwrap_or(scan.points);
                cfg.c_scan = Some(scan);
            }
        }
        Command::Simulate {
            cells,
            t_end,
            cfl,
            domain,
            initial,
            baseline,
        } => {
            let sim = &mut cfg.sim;
            sim.cells = cells.or(sim.cells);
            sim.t_end = t_end.or(sim.t_end);
            sim.cfl = cfl.or(sim.cfl);
            sim.initial = initial.or(sim.initial);
            if *baseline {
                sim.baseline = Some(true);
            }
            if let Some(d) = domain {
                if d.len() != 2 {
                    return Err(config::field_error("sim.domain", "expected `lo,hi`").into());
                }
                sim.domain = Some((d[0], d[1]));
            }
        }
        _ => {}
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<Verdict, CliError> {
    let mut cfg = resolve(&cli.common)?;
    apply_command_overrides(&mut cfg, &cli.command)?;
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.common.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Other(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Eigen => commands::eigen(&cfg),
        Command::Hugoniot { s_max } => commands::hugoniot(&cfg, *s_max),
        Command::Dmax {
            at,
            samples,
            grid,
            radius,
        } => commands::dmax(&cfg, at.as_deref(), *samples, *grid, *radius),
        Command::Criterion { scan, .. } => commands::criterion(&cfg, *scan),
        Command::LimitCheck { .. } => commands::limit_check(&cfg),
        Command::Counterexample { .. } => commands::counterexample(&cfg),
        Command::Simulate { .. } => commands::simulate(&cfg),
        Command::ReproducePaper { with_simulation } => commands::reproduce(&cfg, *with_simulation),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
