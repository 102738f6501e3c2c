//! Update maps on the simplex and the fixed-point machinery around them.
//!
//! Two maps are implemented. The projected forward step
//! `F_η(p) = Π(p − η∇E(p))` is the one covered by the KL contraction
//! estimate; the multiplicative-weights (mirror) step
//! `p⁺_i ∝ p_i·exp(−η∇E(p)_i)` is the one the tracking experiment uses.
//! Contraction is asserted only for the projected map and measured for the
//! mirror map.

use serde::{Deserialize, Serialize};

use crate::divergence::{check_dims, kl};
use crate::energy::{ce_gradient, curvature_constants, Target};
use crate::error::{Error, Result};
use crate::harness::StrategySpec;
use crate::simplex::{project_simplex, Belief};

/// Largest post-shift exponent spread the mirror step will evaluate. Past
/// this, `exp` underflows the trailing weights to zero and the
/// multiplicative update can no longer represent the state; the step
/// reports [`Error::Overflow`] instead of silently losing coordinates.
pub const EXP_SPREAD_LIMIT: f64 = 700.0;

/// Which update map to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepMap {
    Projected,
    Mirror,
}

impl StepMap {
    pub fn apply(self, p: &Belief, q: &Target, eta: f64) -> Result<Belief> {
        match self {
            StepMap::Projected => projected_gradient_step(p, q, eta),
            StepMap::Mirror => mirror_descent_step(p, q, eta),
        }
    }
}

/// Constants for contraction-rate estimates: `c_norm` is the local
/// KL-to-Euclidean comparison constant, `pair_radius` the sampling radius
/// used when probing contraction on nearby pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContractionConfig {
    pub c_norm: f64,
    pub pair_radius: f64,
}

impl ContractionConfig {
    /// Default constant for trajectories headed to `anchor`:
    /// `c_norm = 1 / min(anchor)`, with sampling radius `1e-4`.
    pub fn for_anchor(anchor: &Belief) -> Self {
        Self {
            c_norm: 1.0 / anchor.min_prob(),
            pair_radius: 1e-4,
        }
    }
}

/// An iterate sequence: `N + 1` points and the `N` effective steps that
/// produced them.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    points: Vec<Belief>,
    steps: Vec<f64>,
}

impl Trajectory {
    pub fn points(&self) -> &[Belief] {
        &self.points
    }

    pub fn steps(&self) -> &[f64] {
        &self.steps
    }

    pub fn final_point(&self) -> &Belief {
        self.points.last().expect("a trajectory holds its start")
    }
}

/// Projected forward step `Π(p − η∇E(p))` under the cross-entropy energy.
/// `η = 0` returns `p` unchanged.
pub fn projected_gradient_step(p: &Belief, q: &Target, eta: f64) -> Result<Belief> {
    check_dims(p, q)?;
    if eta < 0.0 {
        return Err(Error::NegativeStep(eta));
    }
    if eta == 0.0 {
        return Ok(p.clone());
    }
    let grad = ce_gradient(p, q)?;
    let forward: Vec<f64> = p
        .probs()
        .iter()
        .zip(&grad)
        .map(|(&pi, &gi)| pi - eta * gi)
        .collect();
    project_simplex(&forward)
}

/// Multiplicative-weights step `p⁺_i ∝ p_i·exp(−η∇E(p)_i)`, strictly
/// interior by construction. Exponent arguments are shifted by their
/// maximum before exponentiation; if the remaining spread exceeds
/// [`EXP_SPREAD_LIMIT`] the step reports [`Error::Overflow`].
pub fn mirror_descent_step(p: &Belief, q: &Target, eta: f64) -> Result<Belief> {
    check_dims(p, q)?;
    if eta < 0.0 {
        return Err(Error::NegativeStep(eta));
    }
    if eta == 0.0 {
        return Ok(p.clone());
    }
    let grad = ce_gradient(p, q)?;
    let args: Vec<f64> = grad.iter().map(|&gi| -eta * gi).collect();
    let hi = args.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = args.iter().cloned().fold(f64::INFINITY, f64::min);
    let spread = hi - lo;
    if spread > EXP_SPREAD_LIMIT {
        return Err(Error::Overflow {
            spread,
            limit: EXP_SPREAD_LIMIT,
        });
    }
    if spread == 0.0 {
        // A uniform multiplier cancels in the normalization.
        return Ok(p.clone());
    }
    let weights: Vec<f64> = p
        .probs()
        .iter()
        .zip(&args)
        .map(|(&pi, &ai)| pi * (ai - hi).exp())
        .collect();
    Belief::new(&weights)
}

/// KL between the images of `p1` and `p2` under one step, divided by the KL
/// between the originals.
pub fn contraction_ratio(
    p1: &Belief,
    p2: &Belief,
    q: &Target,
    eta: f64,
    map: StepMap,
) -> Result<f64> {
    let before = kl(p1, p2)?;
    if before == 0.0 {
        return Err(Error::IdenticalInputs);
    }
    let f1 = map.apply(p1, q, eta)?;
    let f2 = map.apply(p2, q, eta)?;
    Ok(kl(&f1, &f2)? / before)
}

/// Per-step rate factor `k(η) = 1 − η(2μ − ηL²) / c_norm`; below one
/// exactly when the step is admissible at `p` (for finite `c_norm`).
pub fn contraction_factor(p: &Belief, eta: f64, cfg: &ContractionConfig) -> f64 {
    let c = curvature_constants(p);
    let gap = eta * (2.0 * c.mu - eta * c.ell * c.ell);
    1.0 - gap / cfg.c_norm
}

/// Frequency histogram of labels, normalized and interior-clamped. This is
/// the fixed point the empirical cross-entropy dynamics contract toward.
pub fn empirical_anchor(labels: &[usize], classes: usize) -> Result<Belief> {
    if labels.is_empty() {
        return Err(Error::EmptyInput { min: 1, got: 0 });
    }
    let mut counts = vec![0.0; classes];
    for &label in labels {
        if label >= classes {
            return Err(Error::IndexOutOfRange {
                index: label,
                classes,
            });
        }
        counts[label] += 1.0;
    }
    Belief::new(&counts)
}

/// Runs the chosen map from `p0` with per-step sizes drawn from `rule`,
/// stopping once `kl(p_t, q) < tol` or after `max_steps` updates. If the
/// mirror map saturates (exponent spread past the representable limit) the
/// trajectory ends at the pinned point rather than erroring; other step
/// failures propagate.
pub fn iterate(
    p0: &Belief,
    q: &Target,
    rule: &StrategySpec,
    map: StepMap,
    max_steps: usize,
    tol: f64,
) -> Result<Trajectory> {
    if max_steps < 1 {
        return Err(Error::OutOfRange {
            what: "max_steps",
            got: max_steps as f64,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::OutOfRange {
            what: "tol",
            got: tol,
            lo: 0.0,
            hi: f64::INFINITY,
        });
    }
    let mut points = vec![p0.clone()];
    let mut steps = Vec::new();
    for _ in 0..max_steps {
        let current = points.last().expect("trajectory is never empty");
        if kl(current, q)? < tol {
            break;
        }
        let eta = rule.effective_step(current);
        match map.apply(current, q, eta) {
            Ok(next) => {
                points.push(next);
                steps.push(eta);
            }
            Err(Error::Overflow { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(Trajectory { points, steps })
}
