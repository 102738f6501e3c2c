//! Shared samplers for the integration suites. Everything is seeded, so
//! every run sees the same draws.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stepbound::Belief;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random interior belief over `classes` classes: unit-exponential mass
/// per coordinate, normalized. `floor` mixes in that fraction of the
/// uniform distribution, which keeps the smallest coordinate at or above
/// `floor / classes` for tests whose tolerances need room from the
/// boundary.
pub fn sample_belief(rng: &mut ChaCha8Rng, classes: usize, floor: f64) -> Belief {
    let mut raw: Vec<f64> = (0..classes)
        .map(|_| {
            let u: f64 = rng.random();
            (-(1.0 - u).ln()).max(1e-300)
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    for x in &mut raw {
        *x = (1.0 - floor) * (*x / sum) + floor / classes as f64;
    }
    Belief::new(&raw).expect("sampled mass is positive and finite")
}

/// A nearby companion for `base`: a zero-sum perturbation of Euclidean norm
/// at most `radius`, shrunk further if needed so every coordinate keeps at
/// least half its original size.
pub fn sample_nearby(rng: &mut ChaCha8Rng, base: &Belief, radius: f64) -> Belief {
    let c = base.classes();
    let mut delta: Vec<f64> = (0..c).map(|_| rng.random::<f64>() - 0.5).collect();
    let mean = delta.iter().sum::<f64>() / c as f64;
    for d in &mut delta {
        *d -= mean;
    }
    let norm = delta.iter().map(|d| d * d).sum::<f64>().sqrt();
    if norm == 0.0 {
        return base.clone();
    }
    for d in &mut delta {
        *d *= radius / norm;
    }
    let mut shrink: f64 = 1.0;
    for (d, &p) in delta.iter().zip(base.probs()) {
        if *d < 0.0 && d.abs() > 0.5 * p {
            shrink = shrink.min(0.5 * p / d.abs());
        }
    }
    let perturbed: Vec<f64> = base
        .probs()
        .iter()
        .zip(&delta)
        .map(|(&p, &d)| p + d * shrink)
        .collect();
    Belief::new(&perturbed).expect("perturbation keeps the point interior")
}

/// Euclidean distance between two beliefs.
pub fn separation(a: &Belief, b: &Belief) -> f64 {
    a.probs()
        .iter()
        .zip(b.probs())
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
