//! Numerical analysis of local a-contraction with shifts for small shocks of
//! one-dimensional hyperbolic systems of conservation laws.
//!
//! The crate is organised bottom-up:
//!
//! * [`system`]: flux/entropy evaluators, derivative tensors, eigenstructure
//!   and the built-in systems.
//! * [`shock`]: Hugoniot curves by continuation, shock-speed gradients and
//!   family identification.
//! * [`dissipation`]: relative entropy functionals for a fixed shock, the
//!   maximal shock `u⁺(u)` and `D_max` with its gradient and Hessian.
//! * [`criterion`]: the limiting matrix of `∇²D_max(u_L)/s`, feasibility of
//!   the weight slope, and counterexample construction.
//! * [`simulator`]: a first-order finite-volume harness measuring the weighted
//!   pseudo-distance `E(t)` along a tracked shift.

pub mod criterion;
pub mod dissipation;
pub mod error;
pub mod linalg;
pub mod numdiff;
pub mod quadrature;
pub mod shock;
pub mod simulator;
pub mod system;

pub use error::{Error, Result};
pub use system::{HyperbolicSystem, State};
