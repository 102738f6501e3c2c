//! Admissible step sizes for belief updates on the probability simplex.
//!
//! The central quantity is the closed-form cross-entropy step endpoint
//! `2·min(p)² / max(p)`, read off the current belief, together with the
//! entropy backoff that retreats from it as the belief becomes diffuse.
//! Around it sit the geometric pieces that justify the formula (KL as a
//! Bregman divergence, local curvature constants, contraction of the
//! projected update) and a harness that reproduces a distribution-shift
//! tracking run where steps below the endpoint track and steps above it
//! collapse to the boundary.

pub mod admissibility;
pub mod divergence;
pub mod dynamics;
pub mod energy;
pub mod error;
pub mod harness;
pub mod simplex;

pub use admissibility::{BarrierConfig, StepAdmissibility};
pub use dynamics::{ContractionConfig, StepMap, Trajectory};
pub use energy::{CurvaturePair, Target};
pub use error::{Error, Result};
pub use harness::{
    ExperimentConfig, MetricsRow, RunSummary, StepKind, StrategyRun, StrategySpec, SweepRow,
};
pub use simplex::{Belief, Logits, INTERIOR_EPS};
