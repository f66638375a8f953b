use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state {state:?} lies outside the phase-space domain: {reason}")]
    DomainViolation { state: Vec<f64>, reason: String },

    #[error("strict hyperbolicity violated: eigenvalue gap {gap:e} below floor {floor:e}")]
    StrictHyperbolicityViolation { gap: f64, floor: f64 },

    #[error("flux Jacobian has complex spectrum (imaginary part {imag:e})")]
    ComplexSpectrum { imag: f64 },

    #[error("bad parameter `{name}`: {reason}")]
    BadParameter { name: &'static str, reason: String },

    #[error("family index {family} out of range for a system of dimension {dim}")]
    BadFamily { family: usize, dim: usize },

    #[error("continuation failed at s = {s:e}: {reason}")]
    ContinuationFailure { s: f64, reason: String },

    #[error("Hugoniot curve left the domain at s = {s:e}")]
    DomainExit { s: f64 },

    #[error("not a shock: Rankine-Hugoniot residual {residual:e} exceeds {tol:e}")]
    NotAShock { residual: f64, tol: f64 },

    #[error("ambiguous family: speed {sigma} lies in overlapping bands of families {families:?}")]
    AmbiguousFamily { sigma: f64, families: Vec<usize> },

    #[error("state lies outside the region where the weighted entropy is negative (value {tilde_eta:e})")]
    OutsideRegion { tilde_eta: f64 },

    #[error("no bracket for s*: target {target:e} exceeds entropy distance {reach:e} at s_bar = {s_bar:e}")]
    NoBracket { target: f64, reach: f64, s_bar: f64 },

    #[error("entropy distance along the shock curve is not increasing near t = {t:e}")]
    NonMonotone { t: f64 },

    #[error("singular linear system: {0}")]
    SingularLinearSystem(String),

    #[error("no direction with positive Rankine-Hugoniot dissipation found: {0}")]
    NoPositiveDirection(String),

    #[error("bad simulator layout: {0}")]
    BadLayout(String),

    #[error("CFL violation: cfl = {cfl} must lie in (0, 1)")]
    CflViolation { cfl: f64 },

    #[error("trace ambiguity at t = {t}: traces did not settle within {offset} cells")]
    TraceAmbiguity { t: f64, offset: usize },

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
