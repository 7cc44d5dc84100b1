//! The extremal upper bound on `J`, hypothesis checking, admissible
//! configuration generators, and the randomized verification harness.

mod bound;
mod generate;
mod verify;

pub use bound::{extremal_bound, BoundParams, BoundValue, HypothesisMode};
pub use generate::{generate_disk_config, generate_sector_config};
pub use verify::{
    planar_inequality_check, randomized_verification_sweep, verify_configuration, HypothesisFlags,
    SweepResult, VerificationReport,
};
