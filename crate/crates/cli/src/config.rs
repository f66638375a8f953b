//! The run configuration: a JSON document with a `version` field, overridden
//! field by field from the command line.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use shock_contract::simulator::PairLayout;
use shock_contract::system::SystemSpec;
use thiserror::Error;

pub const CONFIG_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: line {line}, column {column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("field `{field}`: {reason}")]
    Field { field: &'static str, reason: String },
}

pub fn field_error(field: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Field {
        field,
        reason: reason.into(),
    }
}

/// Bracket and resolution of a `C` scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CScan {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum InitialKind {
    /// Riemann data `u_L | u_R`.
    ExactShock,
    /// Perturbation built from the counterexample pair.
    Counterexample,
    /// Perturbation built from `u_minus` and its maximal shock.
    Pair,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimBlock {
    pub cells: Option<usize>,
    pub domain: Option<(f64, f64)>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub initial: Option<InitialKind>,
    /// Left state of the perturbed pair (`pair` data).
    pub u_minus: Option<Vec<f64>>,
    pub layout: Option<PairLayout>,
    pub trace_offset: Option<usize>,
    pub record_stride: Option<usize>,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    /// Also run the unperturbed shock on the same grid and report `E` with
    /// its drift removed.
    pub baseline: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub version: Option<u32>,
    pub system: Option<SystemSpec>,
    pub state: Option<Vec<f64>>,
    /// One-based family index.
    pub family: Option<usize>,
    pub s: Option<f64>,
    pub s_list: Option<Vec<f64>>,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    #[serde(rename = "C_scan")]
    pub c_scan: Option<CScan>,
    pub delta: Option<f64>,
    #[serde(default)]
    pub sim: SimBlock,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self, ConfigError> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        match cfg.version {
            Some(CONFIG_VERSION) => Ok(cfg),
            Some(v) => Err(field_error("version", format!("unsupported version {v}, expected {CONFIG_VERSION}"))),
            None => Err(field_error("version", "missing")),
        }
    }

    /// Fill the system parameters given on the command line.
    pub fn set_param(&mut self, key: &str, value: f64) -> Result<(), ConfigError> {
        let spec = self
            .system
            .as_mut()
            .ok_or_else(|| field_error("system", format!("`--{key}` given without a system")))?;
        spec.params.insert(key.to_string(), value);
        Ok(())
    }

    /// Check every field that is present, independent of the subcommand.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Some(spec) = &self.system {
            if let Err(e) = spec.build() {
                let msg = e.to_string();
                let msg = msg.strip_prefix("configuration error: ").unwrap_or(&msg).to_string();
                return Err(field_error("system", msg));
            }
        }
        if let Some(state) = &self.state {
            finite_all("state", state)?;
        }
        if self.family == Some(0) {
            return Err(field_error("family", "families are numbered from 1"));
        }
        if let Some(s) = self.s {
            positive("s", s)?;
        }
        if let Some(list) = &self.s_list {
            if list.is_empty() {
                return Err(field_error("s_list", "must not be empty"));
            }
            for &s in list {
                positive("s_list", s)?;
            }
            if list.windows(2).any(|w| w[1] >= w[0]) {
                return Err(field_error("s_list", "must be strictly decreasing"));
            }
        }
        if let Some(c) = self.c {
            finite("C", c)?;
        }
        if let Some(scan) = &self.c_scan {
            finite("C_scan", scan.lo)?;
            finite("C_scan", scan.hi)?;
            if !(scan.lo < scan.hi) || scan.points < 2 {
                return Err(field_error("C_scan", "need lo < hi and at least 2 points"));
            }
        }
        if let Some(d) = self.delta {
            positive("delta", d)?;
        }
        let sim = &self.sim;
        if let Some(t) = sim.t_end {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(field_error("sim.t_end", format!("must be finite and nonnegative, got {t}")));
            }
        }
        if let Some(c) = sim.cfl {
            finite("sim.cfl", c)?;
        }
        if let Some((a, b)) = sim.domain {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(field_error("sim.domain", format!("invalid interval ({a}, {b})")));
            }
        }
        if let Some(u) = &sim.u_minus {
            finite_all("sim.u_minus", u)?;
        }
        finite_all("sim.snapshot_times", &sim.snapshot_times)?;
        if sim.record_stride == Some(0) {
            return Err(field_error("sim.record_stride", "must be at least 1"));
        }
        Ok(())
    }

    pub fn system_spec(&self) -> Result<&SystemSpec, ConfigError> {
        self.system.as_ref().ok_or_else(|| field_error("system", "required"))
    }

    /// `u_L`, with a per-system default.
    pub fn state_or_default(&self) -> Result<Vec<f64>, ConfigError> {
        if let Some(s) = &self.state {
            return Ok(s.clone());
        }
        Ok(match self.system_spec()?.system.as_str() {
            "burgers" => vec![1.0],
            "p_system" => vec![1.0, 0.0],
            "example3x3" => vec![0.0, 0.0, 0.0],
            _ => vec![1.0, 1.0, 0.0, 0.0],
        })
    }

    /// Zero-based family index.
    pub fn family_index(&self) -> Result<usize, ConfigError> {
        self.family.map(|f| f - 1).ok_or_else(|| field_error("family", "required"))
    }

    pub fn require_s(&self) -> Result<f64, ConfigError> {
        self.s.ok_or_else(|| field_error("s", "required"))
    }

    pub fn require_c(&self) -> Result<f64, ConfigError> {
        self.c.ok_or_else(|| field_error("C", "required"))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output_dir.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    /// `(key, value)` lines for CSV headers.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        if let Some(spec) = &self.system {
            out.push(("system".to_string(), spec.system.clone()));
            let params: BTreeMap<_, _> = spec.params.iter().collect();
            for (k, v) in params {
                out.push((k.clone(), v.to_string()));
            }
        }
        if let Ok(state) = self.state_or_default() {
            out.push(("state".to_string(), join(&state)));
        }
        if let Some(f) = self.family {
            out.push(("family".to_string(), f.to_string()));
        }
        if let Some(s) = self.s {
            out.push(("s".to_string(), s.to_string()));
        }
        if let Some(c) = self.c {
            out.push(("C".to_string(), c.to_string()));
        }
        out
    }
}

pub fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn finite(field: &'static str, x: f64) -> Result<(), ConfigError> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(field_error(field, format!("must be finite, got {x}")))
    }
}

fn finite_all(field: &'static str, xs: &[f64]) -> Result<(), ConfigError> {
    xs.iter().try_for_each(|&x| finite(field, x))
}

fn positive(field: &'static str, x: f64) -> Result<(), ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(field_error(field, format!("must be positive and finite, got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_carry_positions() {
        let err = RunConfig::parse("{\n  \"version\": 1,\n  \"s\": oops\n}", "cfg.json").unwrap_err();
        match err {
            ConfigError::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn version_is_required() {
        assert!(matches!(RunConfig::parse("{}", "x"), Err(ConfigError::Field { field: "version", .. })));
        assert!(matches!(
            RunConfig::parse("{\"version\": 7}", "x"),
            Err(ConfigError::Field { field: "version", .. })
        ));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(matches!(RunConfig::parse("{\"version\": 1, \"sigma\": 2}", "x"), Err(ConfigError::Parse { .. })));
    }

    #[test]
    fn validation_names_the_field() {
        let mut cfg = RunConfig::parse(
            r#"{"version": 1, "system": {"system": "example3x3", "params": {"alpha": 1}}, "s_list": [0.01, 0.02]}"#,
            "x",
        )
        .unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Field { field: "s_list", .. })));
        cfg.s_list = None;
        cfg.family = Some(0);
        assert!(matches!(cfg.validate(), Err(ConfigError::Field { field: "family", .. })));
        cfg.family = Some(2);
        cfg.set_param("beta", 1.0).unwrap();
        assert!(matches!(cfg.validate(), Err(ConfigError::Field { field: "system", .. })));
    }
}
