//! Step-size admissibility for belief updates.
//!
//! The cross-entropy endpoint is the closed form
//! `eta_max(p) = 2·min(p)² / max(p)`, equivalently `2μ/L²` for the
//! curvature constants of [`crate::energy::curvature_constants`]. The
//! entropy backoff `1 / (1 + α(B))` retreats from that endpoint as the
//! belief becomes diffuse; it never replaces it. The squared-error
//! comparison path has normalized endpoint 1, so there the backoff is the
//! step itself.

use serde::{Deserialize, Serialize};

use crate::divergence::check_dims;
use crate::energy::{curvature_constants, mse_energy, Target};
use crate::error::{Error, Result};
use crate::simplex::{entropy, Belief};

/// Barrier configuration: `b_max` clamps normalized entropy below one so
/// the barrier stays finite at the uniform belief, and `eta_floor` is a
/// minimum returned step for harness experiments (zero by default).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BarrierConfig {
    pub b_max: f64,
    pub eta_floor: f64,
}

impl Default for BarrierConfig {
    fn default() -> Self {
        Self {
            b_max: 1.0 - 1e-9,
            eta_floor: 0.0,
        }
    }
}

impl BarrierConfig {
    pub fn validate(&self) -> Result<()> {
        let b_max_ok = self.b_max > 0.0 && self.b_max < 1.0;
        if !b_max_ok {
            return Err(Error::OutOfRange {
                what: "b_max",
                got: self.b_max,
                lo: 0.0,
                hi: 1.0,
            });
        }
        let floor_ok = self.eta_floor >= 0.0;
        if !floor_ok {
            return Err(Error::OutOfRange {
                what: "eta_floor",
                got: self.eta_floor,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        Ok(())
    }
}

/// Result of an admissibility check: the gap `η(2μ − ηL²)` and whether the
/// step lies strictly inside the open admissible interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepAdmissibility {
    pub admissible: bool,
    pub gap: f64,
}

/// Entropy scaled by its maximum: `B(p) = H(p) / ln C`, in `(0, 1]` with
/// equality exactly at the uniform belief. Clamped at one so summation
/// rounding can never push it outside the barrier's domain.
pub fn normalized_entropy(p: &Belief) -> f64 {
    (entropy(p) / (p.classes() as f64).ln()).min(1.0)
}

/// Logarithmic barrier `α = −ln(1 − min(B, b_max))`; zero at `B = 0` and
/// strictly increasing up to the clamp.
pub fn barrier(b: f64, cfg: &BarrierConfig) -> Result<f64> {
    if !(0.0..=1.0).contains(&b) {
        return Err(Error::OutOfRange {
            what: "normalized entropy",
            got: b,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(-(1.0 - b.min(cfg.b_max)).ln())
}

/// Entropy backoff `1 / (1 + α(B))`, in `(0, 1]` and strictly decreasing
/// in `B` up to the clamp.
pub fn backoff(b: f64, cfg: &BarrierConfig) -> Result<f64> {
    Ok(1.0 / (1.0 + barrier(b, cfg)?))
}

/// Closed-form cross-entropy step endpoint `2·min(p)² / max(p)`.
pub fn ce_step_bound(p: &Belief) -> f64 {
    let lo = p.min_prob();
    2.0 * lo * lo / p.max_prob()
}

/// Entropy-aware cross-entropy step: the endpoint times the backoff at the
/// belief's normalized entropy, floored at `cfg.eta_floor`. With the
/// default zero floor this never exceeds [`ce_step_bound`].
pub fn ce_step(p: &Belief, cfg: &BarrierConfig) -> f64 {
    let back = backoff(normalized_entropy(p), cfg).expect("normalized entropy lies in [0, 1]");
    (ce_step_bound(p) * back).max(cfg.eta_floor)
}

/// The squared-error step is the backoff itself, since the normalized
/// compensation path has endpoint 1.
pub fn mse_step(b: f64, cfg: &BarrierConfig) -> Result<f64> {
    backoff(b, cfg)
}

/// Convenience form of [`mse_step`] that reads `B` off a belief.
pub fn mse_step_for_belief(p: &Belief, cfg: &BarrierConfig) -> f64 {
    mse_step(normalized_entropy(p), cfg).expect("normalized entropy lies in [0, 1]")
}

/// Point on the compensation path `(1 − η)·p + η·y`. The residual error is
/// quadratic in the step: `M(p_η, y) = (1 − η)²·M(p, y)`.
pub fn mse_compensate(p: &Belief, y: &Target, eta: f64) -> Result<Belief> {
    check_dims(p, y)?;
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::OutOfRange {
            what: "compensation step",
            got: eta,
            lo: 0.0,
            hi: 1.0,
        });
    }
    if eta == 0.0 {
        return Ok(p.clone());
    }
    if eta == 1.0 {
        return Ok(y.clone());
    }
    let mixed: Vec<f64> = p
        .probs()
        .iter()
        .zip(y.probs())
        .map(|(&a, &b)| (1.0 - eta) * a + eta * b)
        .collect();
    Belief::new(&mixed)
}

/// Residual squared error left after stepping with [`mse_step`]:
/// `(α / (1 + α))² · ‖p − y‖₂²`.
pub fn mse_residual_after_ads(b: f64, p: &Belief, y: &Target, cfg: &BarrierConfig) -> Result<f64> {
    let alpha = barrier(b, cfg)?;
    let shrink = alpha / (1.0 + alpha);
    Ok(shrink * shrink * mse_energy(p, y)?)
}

/// Computes the gap `η(2μ − ηL²)` at `p` and flags steps strictly inside
/// the open interval `(0, ce_step_bound(p))`. For `η > 0` the flag and the
/// sign of the gap agree.
pub fn is_admissible(eta: f64, p: &Belief) -> StepAdmissibility {
    let c = curvature_constants(p);
    let gap = eta * (2.0 * c.mu - eta * c.ell * c.ell);
    StepAdmissibility {
        admissible: eta > 0.0 && eta < ce_step_bound(p),
        gap,
    }
}
