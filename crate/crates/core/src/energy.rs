//! Cross-entropy and squared-error energy landscapes on the simplex:
//! values, gradients, Hessian diagonals, and the curvature constants read
//! off the current belief.

use serde::{Deserialize, Serialize};

use crate::divergence::check_dims;
use crate::error::Result;
use crate::simplex::Belief;

/// Reference distribution defining an energy; structurally a [`Belief`].
pub type Target = Belief;

/// Local strong-convexity and smoothness constants under the diagonal
/// curvature proxy `1 / p_i`: `mu = 1 / max(p)`, `ell = 1 / min(p)`, so
/// `0 < mu <= ell` always.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvaturePair {
    pub mu: f64,
    pub ell: f64,
}

/// Cross-entropy energy `−Σ q_i ln p_i`; minimized at `p = q`, where it
/// equals the entropy of `q`.
pub fn ce_energy(p: &Belief, q: &Target) -> Result<f64> {
    check_dims(p, q)?;
    Ok(-q
        .probs()
        .iter()
        .zip(p.probs())
        .map(|(&qi, &pi)| qi * pi.ln())
        .sum::<f64>())
}

/// Gradient of [`ce_energy`] in `p`: component `i` is `−q_i / p_i`.
pub fn ce_gradient(p: &Belief, q: &Target) -> Result<Vec<f64>> {
    check_dims(p, q)?;
    Ok(q.probs()
        .iter()
        .zip(p.probs())
        .map(|(&qi, &pi)| -qi / pi)
        .collect())
}

/// Diagonal of the target-dependent Hessian: component `i` is `q_i / p_i²`.
pub fn ce_hessian_diag_full(p: &Belief, q: &Target) -> Result<Vec<f64>> {
    check_dims(p, q)?;
    Ok(q.probs()
        .iter()
        .zip(p.probs())
        .map(|(&qi, &pi)| qi / (pi * pi))
        .collect())
}

/// Diagonal curvature proxy `1 / p_i`, independent of the target.
pub fn ce_hessian_diag_proxy(p: &Belief) -> Vec<f64> {
    p.probs().iter().map(|&pi| 1.0 / pi).collect()
}

/// Curvature constants under the proxy: the smallest and largest entries of
/// [`ce_hessian_diag_proxy`].
pub fn curvature_constants(p: &Belief) -> CurvaturePair {
    CurvaturePair {
        mu: 1.0 / p.max_prob(),
        ell: 1.0 / p.min_prob(),
    }
}

/// Squared Euclidean error `‖p − y‖₂²`.
pub fn mse_energy(p: &Belief, y: &Target) -> Result<f64> {
    check_dims(p, y)?;
    Ok(p.probs()
        .iter()
        .zip(y.probs())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum())
}
