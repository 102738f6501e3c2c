//! Distribution-shift tracking experiment and the binary-slice sweep of the
//! step bound.
//!
//! The experiment runs a 3-class belief through mirror-descent updates
//! toward a target that switches mid-run, once per step-size strategy, and
//! records one metrics row per step. The sweep evaluates the bound, the
//! normalized entropy, and the entropy-aware step along beliefs
//! `(x, 1 − x)`.

use serde::{Deserialize, Serialize};

use crate::admissibility::{backoff, ce_step_bound, normalized_entropy, BarrierConfig};
use crate::divergence::kl;
use crate::dynamics::mirror_descent_step;
use crate::energy::Target;
use crate::error::{Error, Result};
use crate::simplex::Belief;

/// KL threshold treated as "converged" in summaries.
pub const CONVERGENCE_KL: f64 = 1e-3;
/// A belief whose smallest coordinate ever drops below this counts as
/// collapsed to the boundary.
pub const COLLAPSE_MIN: f64 = 1e-6;

/// Step-size rule. `FixedStep` ignores the belief; `BoundClipped` caps a
/// base step at the admissible bound; `AdsAware` additionally multiplies by
/// the entropy backoff, both evaluated at the current belief.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum StepKind {
    FixedStep(f64),
    BoundClipped(f64),
    AdsAware(f64),
}

impl StepKind {
    fn base(&self) -> f64 {
        match *self {
            StepKind::FixedStep(eta) | StepKind::BoundClipped(eta) | StepKind::AdsAware(eta) => eta,
        }
    }
}

/// A step-size rule plus the barrier configuration its backoff uses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategySpec {
    pub kind: StepKind,
    #[serde(default)]
    pub barrier: BarrierConfig,
}

impl StrategySpec {
    pub fn fixed(eta: f64) -> Self {
        Self {
            kind: StepKind::FixedStep(eta),
            barrier: BarrierConfig::default(),
        }
    }

    pub fn bound_clipped(eta_base: f64) -> Self {
        Self {
            kind: StepKind::BoundClipped(eta_base),
            barrier: BarrierConfig::default(),
        }
    }

    pub fn ads_aware(eta_base: f64) -> Self {
        Self {
            kind: StepKind::AdsAware(eta_base),
            barrier: BarrierConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let base_ok = self.kind.base() > 0.0 && self.kind.base().is_finite();
        if !base_ok {
            return Err(Error::OutOfRange {
                what: "step parameter",
                got: self.kind.base(),
                lo: f64::MIN_POSITIVE,
                hi: f64::INFINITY,
            });
        }
        self.barrier.validate()
    }

    /// The step this rule takes at belief `p`.
    pub fn effective_step(&self, p: &Belief) -> f64 {
        match self.kind {
            StepKind::FixedStep(eta) => eta,
            StepKind::BoundClipped(eta_base) => eta_base.min(ce_step_bound(p)),
            StepKind::AdsAware(eta_base) => {
                let back = backoff(normalized_entropy(p), &self.barrier)
                    .expect("normalized entropy lies in [0, 1]");
                eta_base.min(ce_step_bound(p)) * back
            }
        }
    }

    /// Short name used for output files and summary tables.
    pub fn label(&self) -> String {
        match self.kind {
            StepKind::FixedStep(eta) => format!("fixed_{eta}"),
            StepKind::BoundClipped(eta) => format!("clipped_{eta}"),
            StepKind::AdsAware(eta) => format!("ads_{eta}"),
        }
    }
}

/// Tracking-experiment configuration. Defaults reproduce the reference
/// run: a uniform 3-class start, target `(0.7, 0.2, 0.1)` for the first
/// 200 steps, then `(0.1, 0.2, 0.7)` for the remaining 400, under the
/// high-fixed, low-fixed, and entropy-aware strategies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ExperimentConfig {
    pub c_classes: usize,
    pub p0: Belief,
    pub q_phase1: Target,
    pub q_phase2: Target,
    pub shift_step: usize,
    pub total_steps: usize,
    pub strategies: Vec<StrategySpec>,
    /// Reserved for perturbed variants; the default experiment is
    /// noise-free and ignores it.
    pub seed: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            c_classes: 3,
            p0: Belief::uniform(3).expect("3 >= 2"),
            q_phase1: Belief::new(&[0.7, 0.2, 0.1]).expect("valid distribution"),
            q_phase2: Belief::new(&[0.1, 0.2, 0.7]).expect("valid distribution"),
            shift_step: 200,
            total_steps: 600,
            strategies: vec![
                StrategySpec::fixed(2.0),
                StrategySpec::fixed(0.1),
                StrategySpec::ads_aware(1.0),
            ],
            seed: 0,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.shift_step >= self.total_steps {
            return Err(Error::OutOfRange {
                what: "shift_step",
                got: self.shift_step as f64,
                lo: 0.0,
                hi: self.total_steps as f64 - 1.0,
            });
        }
        for belief in [&self.p0, &self.q_phase1, &self.q_phase2] {
            if belief.classes() != self.c_classes {
                return Err(Error::DimensionMismatch {
                    left: belief.classes(),
                    right: self.c_classes,
                });
            }
        }
        if self.strategies.is_empty() {
            return Err(Error::EmptyInput { min: 1, got: 0 });
        }
        for strategy in &self.strategies {
            strategy.validate()?;
        }
        Ok(())
    }
}

/// One experiment step: the belief before the update at time `t`, its KL to
/// the active target and normalized entropy, and the step the strategy
/// applied against the bound at that belief.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub t: usize,
    pub probs: Vec<f64>,
    pub kl_to_target: f64,
    pub b_entropy: f64,
    pub eta_eff: f64,
    pub eta_max: f64,
    pub ratio: f64,
}

/// Rows for one strategy of an experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyRun {
    pub strategy: StrategySpec,
    pub rows: Vec<MetricsRow>,
}

/// Runs every configured strategy through the shift protocol. Each step
/// records a row, applies the strategy's step through the mirror map, and
/// moves on. A strategy whose update saturates (exponent spread beyond the
/// representable limit) is pinned: the belief stops moving and rows keep
/// recording the collapsed state, which is what a multiplicative update
/// with underflowed weights would do.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<StrategyRun>> {
    cfg.validate()?;
    let mut runs = Vec::with_capacity(cfg.strategies.len());
    for strategy in &cfg.strategies {
        let mut p = cfg.p0.clone();
        let mut pinned = false;
        let mut rows = Vec::with_capacity(cfg.total_steps);
        for t in 0..cfg.total_steps {
            let target = if t < cfg.shift_step {
                &cfg.q_phase1
            } else {
                &cfg.q_phase2
            };
            let eta_eff = strategy.effective_step(&p);
            let eta_max = ce_step_bound(&p);
            rows.push(MetricsRow {
                t,
                probs: p.probs().to_vec(),
                // Summation dust can leave the divergence a few ulps below
                // zero once converged; the row reports it as zero.
                kl_to_target: kl(&p, target)?.max(0.0),
                b_entropy: normalized_entropy(&p),
                eta_eff,
                eta_max,
                ratio: eta_eff / eta_max,
            });
            if pinned {
                continue;
            }
            match mirror_descent_step(&p, target, eta_eff) {
                Ok(next) => p = next,
                Err(Error::Overflow { .. }) => pinned = true,
                Err(e) => return Err(e),
            }
        }
        runs.push(StrategyRun {
            strategy: *strategy,
            rows,
        });
    }
    Ok(runs)
}

/// One point of the binary-slice sweep at belief `(x, 1 − x)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub x: f64,
    pub eta_max: f64,
    pub b_entropy: f64,
    pub eta_ce: f64,
}

/// Evaluates the bound, normalized entropy, and entropy-aware step on the
/// open grid `x = j / (n_points + 1)`, `j = 1..=n_points`.
pub fn sweep_binary_slice(n_points: usize, cfg: &BarrierConfig) -> Result<Vec<SweepRow>> {
    if n_points < 3 {
        return Err(Error::OutOfRange {
            what: "n_points",
            got: n_points as f64,
            lo: 3.0,
            hi: f64::INFINITY,
        });
    }
    cfg.validate()?;
    let denom = (n_points + 1) as f64;
    let mut rows = Vec::with_capacity(n_points);
    for j in 1..=n_points {
        let x = j as f64 / denom;
        let p = Belief::new(&[x, 1.0 - x])?;
        rows.push(SweepRow {
            x,
            eta_max: ce_step_bound(&p),
            b_entropy: normalized_entropy(&p),
            eta_ce: crate::admissibility::ce_step(&p, cfg),
        });
    }
    Ok(rows)
}

/// Headline numbers for one strategy run, measured against a fixed target.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunSummary {
    pub final_kl: f64,
    pub converged_step: Option<usize>,
    pub collapsed: bool,
    pub max_ratio: f64,
}

/// Final KL to `target`, the first step whose KL to `target` drops below
/// [`CONVERGENCE_KL`], whether any belief came within [`COLLAPSE_MIN`] of
/// the boundary, and the largest step-to-bound ratio seen.
pub fn summarize(rows: &[MetricsRow], target: &Target) -> Result<RunSummary> {
    if rows.is_empty() {
        return Err(Error::EmptyInput { min: 1, got: 0 });
    }
    let mut converged_step = None;
    let mut collapsed = false;
    let mut max_ratio = f64::NEG_INFINITY;
    let mut final_kl = 0.0;
    for row in rows {
        let p = Belief::new(&row.probs)?;
        let divergence = kl(&p, target)?.max(0.0);
        if converged_step.is_none() && divergence < CONVERGENCE_KL {
            converged_step = Some(row.t);
        }
        if row.probs.iter().cloned().fold(f64::INFINITY, f64::min) < COLLAPSE_MIN {
            collapsed = true;
        }
        max_ratio = max_ratio.max(row.ratio);
        final_kl = divergence;
    }
    Ok(RunSummary {
        final_kl,
        converged_step,
        collapsed,
        max_ratio,
    })
}
