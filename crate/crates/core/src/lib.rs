//! Lead-lag controller tuning by closed-loop damping maximization.
//!
//! The crate is split into four layers:
//!
//! - [`numerics`]: dense real matrices and a nonsymmetric eigenvalue solver.
//! - [`control`]: plant description, closed-loop assembly and the damping objective.
//! - [`optim`]: butterfly optimization plus GA and DE baselines over a box.
//! - [`harness`]: seeded multi-run experiments, reports and table checks.

pub mod control;
pub mod harness;
pub mod numerics;
pub mod optim;
mod space;

pub use control::{LeadLagParams, StateSpacePlant};
pub use numerics::{Complex, Matrix, Spectrum};
pub use space::{SearchSpace, SpaceError};
