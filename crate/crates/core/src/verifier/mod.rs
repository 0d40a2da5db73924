//! Inequality verification engines.
//!
//! Every check produces a [`BoundReport`] comparing a quantum side `lhs`
//! against `constant · rhs`. A violated inequality is a result, not an error.

mod bounds;
mod convexity;
mod counterexample;
mod sweep;

use serde::{Deserialize, Serialize};

pub use bounds::{
    general_constant_3d, sharp_constant_3d, sharp_constant_osc1d, verify_main_2d, verify_main_3d,
    verify_mainequiv, verify_osc1d, GENERAL_CONSTANT_2D,
};
pub use convexity::{
    check_lemma_mean, check_lemma_mono, linear_hat_failure, midpoint_scaled_sum, ConvexComponent,
    ConvexProfile, LinearHatFailure, MeanReport, MonoReport,
};
pub use counterexample::{
    counterexample_at, find_counterexample, reduced_x, CounterexampleResult, BRACKET_T,
    GAMMA_ZERO_OFFSET,
};
pub use sweep::{sweep, SweepGrid, SweepRow, SweepSummary, Target};

/// Relative slack used by every `holds` decision.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Absolute floor added to the right side.
pub const ABSOLUTE_FLOOR: f64 = 1e-15;

/// Outcome of one inequality instance `lhs ≤ constant · rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    /// `lhs / (constant · rhs)`, with `0/0 := 0`.
    pub ratio: f64,
    pub holds: bool,
    pub tolerance: f64,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64, constant: f64, tolerance: f64) -> Self {
        let scaled = constant * rhs;
        let ratio = if lhs == 0.0 {
            0.0
        } else if scaled == 0.0 {
            f64::INFINITY
        } else {
            lhs / scaled
        };
        let holds = lhs <= scaled * (1.0 + tolerance) + ABSOLUTE_FLOOR;
        Self {
            lhs,
            rhs,
            constant,
            ratio,
            holds,
            tolerance,
        }
    }

    pub(crate) fn with_default_tolerance(lhs: f64, rhs: f64, constant: f64) -> Self {
        Self::new(lhs, rhs, constant, DEFAULT_TOLERANCE)
    }
}
