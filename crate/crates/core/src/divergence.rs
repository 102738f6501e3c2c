//! KL divergence as the Bregman divergence generated by negative entropy.
//!
//! Both routes to the divergence are available: the direct sum
//! `Σ p_i ln(p_i / q_i)` and the Bregman form built from [`negentropy`] and
//! its gradient. The three-point identity tying consecutive divergences
//! together is exposed as a residual that vanishes for interior triples.

use crate::error::{Error, Result};
use crate::simplex::Belief;

/// Negative entropy `Σ p_i ln p_i`, the convex generator of the divergence.
pub fn negentropy(p: &Belief) -> f64 {
    p.probs().iter().map(|&x| x * x.ln()).sum()
}

/// Gradient of [`negentropy`]: `1 + ln q_i` per coordinate. The constant
/// offset cancels against any difference of simplex points but is kept so
/// the Bregman form can be checked exactly.
pub fn negentropy_gradient(q: &Belief) -> Vec<f64> {
    q.probs().iter().map(|&x| 1.0 + x.ln()).collect()
}

/// `D(p ‖ q) = Σ p_i ln(p_i / q_i)`. Nonnegative, zero only at `p = q`.
pub fn kl(p: &Belief, q: &Belief) -> Result<f64> {
    check_dims(p, q)?;
    Ok(p.probs()
        .iter()
        .zip(q.probs())
        .map(|(&a, &b)| a * (a.ln() - b.ln()))
        .sum())
}

/// Residual of the three-point identity,
/// `D(p‖q) − D(p‖r) − D(r‖q) + ⟨∇φ(q) − ∇φ(r), p − r⟩`,
/// which is exactly zero for every interior triple.
pub fn three_point_residual(p: &Belief, r: &Belief, q: &Belief) -> Result<f64> {
    check_dims(p, r)?;
    check_dims(r, q)?;
    let d_pq = kl(p, q)?;
    let d_pr = kl(p, r)?;
    let d_rq = kl(r, q)?;
    let grad_q = negentropy_gradient(q);
    let grad_r = negentropy_gradient(r);
    let inner: f64 = p
        .probs()
        .iter()
        .zip(r.probs())
        .zip(grad_q.iter().zip(&grad_r))
        .map(|((&pi, &ri), (&gq, &gr))| (gq - gr) * (pi - ri))
        .sum();
    Ok(d_pq - d_pr - d_rq + inner)
}

pub(crate) fn check_dims(p: &Belief, q: &Belief) -> Result<()> {
    if p.classes() != q.classes() {
        return Err(Error::DimensionMismatch {
            left: p.classes(),
            right: q.classes(),
        });
    }
    Ok(())
}
