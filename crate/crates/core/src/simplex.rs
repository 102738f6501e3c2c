//! Interior points of the probability simplex and the projections onto it.
//!
//! Beliefs are kept strictly inside the simplex: after normalization every
//! coordinate is clamped to at least [`INTERIOR_EPS`] and the vector is
//! renormalized, so logarithms and reciprocals of coordinates stay finite
//! and the sum-to-one invariant is exact instead of off by O(C·eps).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum distance kept between any belief coordinate and the simplex
/// boundary. Small enough that `1 / min(p)` stays far from overflow.
pub const INTERIOR_EPS: f64 = 1e-12;

/// A strictly interior point of the probability simplex over `C >= 2`
/// classes: every coordinate lies in `[INTERIOR_EPS, 1]` (up to one
/// renormalization rounding of the eps itself) and the coordinates sum to
/// one within 1e-12.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Belief {
    probs: Vec<f64>,
}

impl Belief {
    /// Builds a belief from raw nonnegative mass. The entries are divided by
    /// their sum, clamped to the interior, and renormalized, so inputs that
    /// are already distributions pass through unchanged while boundary
    /// points are nudged inside.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::EmptyInput {
                min: 2,
                got: raw.len(),
            });
        }
        if raw.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        if raw.iter().any(|&x| x < 0.0) {
            return Err(Error::NegativeInput);
        }
        let sum: f64 = raw.iter().sum();
        if sum <= 0.0 {
            return Err(Error::NonPositiveSum);
        }
        let mut probs: Vec<f64> = raw.iter().map(|x| x / sum).collect();
        for p in &mut probs {
            if *p < INTERIOR_EPS {
                *p = INTERIOR_EPS;
            }
        }
        let clamped_sum: f64 = probs.iter().sum();
        for p in &mut probs {
            *p /= clamped_sum;
        }
        Ok(Self { probs })
    }

    /// The uniform distribution over `classes` classes.
    pub fn uniform(classes: usize) -> Result<Self> {
        Self::new(&vec![1.0; classes])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn classes(&self) -> usize {
        self.probs.len()
    }

    pub fn min_prob(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_prob(&self) -> f64 {
        self.probs.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of the largest coordinate (first one on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &x) in self.probs.iter().enumerate() {
            if x > self.probs[best] {
                best = i;
            }
        }
        best
    }
}

impl TryFrom<Vec<f64>> for Belief {
    type Error = Error;

    fn try_from(raw: Vec<f64>) -> Result<Self> {
        Self::new(&raw)
    }
}

impl From<Belief> for Vec<f64> {
    fn from(b: Belief) -> Self {
        b.probs
    }
}

/// Unconstrained pre-projection coordinates; finite entries only.
#[derive(Clone, Debug, PartialEq)]
pub struct Logits {
    values: Vec<f64>,
}

impl Logits {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::EmptyInput {
                min: 2,
                got: values.len(),
            });
        }
        if values.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Euclidean projection onto the simplex by the sort-descending threshold
/// rule, followed by the interior clamp of [`Belief::new`]. Idempotent on
/// points already in the clamped interior.
pub fn project_simplex(v: &[f64]) -> Result<Belief> {
    if v.len() < 2 {
        return Err(Error::EmptyInput {
            min: 2,
            got: v.len(),
        });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteInput);
    }
    Belief::new(&threshold_project(v))
}

/// Sort-descending threshold rule: take the largest k with
/// `x_(k) > (sum_{i<=k} x_(i) - 1) / k`, and shift every coordinate down by
/// that pivot, clipping at zero. Exact and O(C log C).
fn threshold_project(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));
    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        cumsum += x;
        let candidate = (cumsum - 1.0) / (i as f64 + 1.0);
        if x > candidate {
            tau = candidate;
        }
    }
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

/// Max-shifted exponential normalization of the logits. Invariant under
/// adding a constant to every logit.
pub fn softmax(z: &Logits) -> Belief {
    let m = z.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = z.values.iter().map(|&v| (v - m).exp()).collect();
    Belief::new(&weights).expect("softmax weights are finite, nonnegative, and sum past zero")
}

/// Shannon entropy in nats; positive for interior points and at most
/// `ln C`, with equality exactly at the uniform distribution.
pub fn entropy(p: &Belief) -> f64 {
    -p.probs().iter().map(|&x| x * x.ln()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{x} vs {y} (tol {tol})");
        }
    }

    #[test]
    fn new_passes_through_distributions() {
        let b = Belief::new(&[0.2, 0.3, 0.5]).unwrap();
        assert_close(b.probs(), &[0.2, 0.3, 0.5], 1e-15);
    }

    #[test]
    fn new_normalizes_mass() {
        let b = Belief::new(&[2.0, 2.0]).unwrap();
        assert_close(b.probs(), &[0.5, 0.5], 1e-15);
    }

    #[test]
    fn new_clamps_boundary_points() {
        let b = Belief::new(&[1.0, 0.0]).unwrap();
        assert!((b.probs()[0] - (1.0 - INTERIOR_EPS)).abs() < 1e-14);
        assert!(b.probs()[1] >= 0.99 * INTERIOR_EPS && b.probs()[1] <= 1.01 * INTERIOR_EPS);
        let sum: f64 = b.probs().iter().sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn new_rejects_bad_input() {
        assert_eq!(
            Belief::new(&[1.0]),
            Err(Error::EmptyInput { min: 2, got: 1 })
        );
        assert_eq!(Belief::new(&[0.5, f64::NAN]), Err(Error::NonFiniteInput));
        assert_eq!(Belief::new(&[0.5, -0.1]), Err(Error::NegativeInput));
        assert_eq!(Belief::new(&[0.0, 0.0]), Err(Error::NonPositiveSum));
    }

    #[test]
    fn projection_fixes_simplex_points() {
        let b = project_simplex(&[0.2, 0.3, 0.5]).unwrap();
        assert_close(b.probs(), &[0.2, 0.3, 0.5], 1e-15);
    }

    #[test]
    fn projection_removes_symmetric_offset() {
        let b = project_simplex(&[1.0, 1.0]).unwrap();
        assert_close(b.probs(), &[0.5, 0.5], 1e-15);
    }

    /// Enumerates every active set of the projection's KKT system and keeps
    /// the feasible candidate closest to `v` in Euclidean distance.
    fn project_by_active_set(v: &[f64]) -> Vec<f64> {
        let n = v.len();
        let mut best: Option<(f64, Vec<f64>)> = None;
        for mask in 1..(1u32 << n) {
            let free: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let k = free.len() as f64;
            let s: f64 = free.iter().map(|&i| v[i]).sum();
            let shift = (s - 1.0) / k;
            let mut candidate = vec![0.0; n];
            let mut feasible = true;
            for &i in &free {
                candidate[i] = v[i] - shift;
                if candidate[i] < -1e-12 {
                    feasible = false;
                }
            }
            if !feasible {
                continue;
            }
            let dist: f64 = v
                .iter()
                .zip(&candidate)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            if best.as_ref().is_none_or(|(d, _)| dist < *d - 1e-15) {
                best = Some((dist, candidate));
            }
        }
        best.expect("some active set is feasible").1
    }

    #[test]
    fn projection_matches_active_set_enumeration() {
        let v = [0.8, 0.4, -0.2];
        let raw = threshold_project(&v);
        let oracle = project_by_active_set(&v);
        assert_close(&raw, &oracle, 1e-12);
        assert_close(&raw, &[0.7, 0.3, 0.0], 1e-12);

        let b = project_simplex(&v).unwrap();
        assert!((b.probs()[0] - 0.7).abs() < 1e-9);
        assert!((b.probs()[1] - 0.3).abs() < 1e-9);
        assert!(b.probs()[2] <= 2.0 * INTERIOR_EPS);
    }

    #[test]
    fn projection_is_idempotent() {
        let first = project_simplex(&[2.0, -1.0, 0.4, 0.1]).unwrap();
        let second = project_simplex(first.probs()).unwrap();
        assert_close(first.probs(), second.probs(), 1e-12);
    }

    #[test]
    fn softmax_of_equal_logits_is_uniform() {
        let z = Logits::new(vec![0.0, 0.0, 0.0]).unwrap();
        let b = softmax(&z);
        assert_close(b.probs(), &[1.0 / 3.0; 3], 1e-15);

        let shifted = Logits::new(vec![7.5, 7.5]).unwrap();
        assert_close(softmax(&shifted).probs(), &[0.5, 0.5], 1e-15);
    }

    #[test]
    fn softmax_ratio_matches_scalar_computation() {
        let z = Logits::new(vec![2f64.ln(), 0.0]).unwrap();
        let b = softmax(&z);
        assert_close(b.probs(), &[2.0 / 3.0, 1.0 / 3.0], 1e-15);
    }

    #[test]
    fn entropy_known_values() {
        let u3 = Belief::uniform(3).unwrap();
        assert!((entropy(&u3) - 3f64.ln()).abs() < 1e-12);

        let half = Belief::new(&[0.5, 0.5]).unwrap();
        assert!((entropy(&half) - 2f64.ln()).abs() < 1e-12);

        let skew = Belief::new(&[0.9, 0.1]).unwrap();
        let direct = -(0.9 * 0.9f64.ln() + 0.1 * 0.1f64.ln());
        assert!((entropy(&skew) - direct).abs() < 1e-12);
        assert!((entropy(&skew) - 0.325083).abs() < 1e-6);
    }
}
