//! Browser bindings for the interactive demo page.
//!
//! Three entry points, each returning JSON so the page's plain-JS glue can
//! plot without a framework: a bound report for one belief, the
//! binary-slice sweep, and the distribution-shift tracking run. Failures
//! come back as `{"error": "..."}` rather than exceptions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use stepbound::admissibility::{
    backoff, barrier, ce_step, ce_step_bound, normalized_entropy, BarrierConfig,
};
use stepbound::harness::{
    run_experiment, summarize, sweep_binary_slice, ExperimentConfig, StrategySpec,
};
use stepbound::Belief;

fn json_or_error<T: Serialize>(value: Result<T, String>) -> String {
    #[derive(Serialize)]
    struct ErrorRecord {
        error: String,
    }
    match value {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| {
            serde_json::to_string(&ErrorRecord {
                error: e.to_string(),
            })
            .unwrap()
        }),
        Err(error) => serde_json::to_string(&ErrorRecord { error }).unwrap(),
    }
}

#[derive(Serialize)]
struct BoundReport {
    probs: Vec<f64>,
    eta_max: f64,
    b_entropy: f64,
    alpha: f64,
    backoff: f64,
    eta_ce: f64,
}

/// Bound, barrier, backoff, and entropy-aware step at one belief. The raw
/// mass is normalized first, so sliders can hand over unnormalized values.
#[wasm_bindgen]
pub fn bound_report(raw: &[f64]) -> String {
    json_or_error((|| {
        let cfg = BarrierConfig::default();
        let p = Belief::new(raw).map_err(|e| e.to_string())?;
        let b = normalized_entropy(&p);
        Ok(BoundReport {
            probs: p.probs().to_vec(),
            eta_max: ce_step_bound(&p),
            b_entropy: b,
            alpha: barrier(b, &cfg).map_err(|e| e.to_string())?,
            backoff: backoff(b, &cfg).map_err(|e| e.to_string())?,
            eta_ce: ce_step(&p, &cfg),
        })
    })())
}

/// Sweep of `eta_max`, normalized entropy, and `eta_ce` along the binary
/// slice `(x, 1 - x)`, as parallel arrays ready for plotting.
#[wasm_bindgen]
pub fn sweep_rows(n_points: u32) -> String {
    #[derive(Serialize)]
    struct Sweep {
        x: Vec<f64>,
        eta_max: Vec<f64>,
        b_entropy: Vec<f64>,
        eta_ce: Vec<f64>,
    }
    json_or_error((|| {
        let rows = sweep_binary_slice(n_points as usize, &BarrierConfig::default())
            .map_err(|e| e.to_string())?;
        Ok(Sweep {
            x: rows.iter().map(|r| r.x).collect(),
            eta_max: rows.iter().map(|r| r.eta_max).collect(),
            b_entropy: rows.iter().map(|r| r.b_entropy).collect(),
            eta_ce: rows.iter().map(|r| r.eta_ce).collect(),
        })
    })())
}

#[derive(Serialize)]
struct StrategySeries {
    label: String,
    kl: Vec<f64>,
    p2: Vec<f64>,
    b_entropy: Vec<f64>,
    eta_eff: Vec<f64>,
    eta_max: Vec<f64>,
    final_kl: f64,
    collapsed: bool,
    converged_step: Option<usize>,
}

#[derive(Serialize)]
struct ExperimentSeries {
    shift_step: usize,
    total_steps: usize,
    strategies: Vec<StrategySeries>,
}

/// The three-strategy tracking run with adjustable steps and shift timing,
/// as per-strategy time series.
#[wasm_bindgen]
pub fn shift_experiment(
    eta_high: f64,
    eta_low: f64,
    eta_base: f64,
    shift_step: u32,
    total_steps: u32,
) -> String {
    json_or_error((|| {
        let cfg = ExperimentConfig {
            shift_step: shift_step as usize,
            total_steps: total_steps as usize,
            strategies: vec![
                StrategySpec::fixed(eta_high),
                StrategySpec::fixed(eta_low),
                StrategySpec::ads_aware(eta_base),
            ],
            ..ExperimentConfig::default()
        };
        cfg.validate().map_err(|e| e.to_string())?;
        let runs = run_experiment(&cfg).map_err(|e| e.to_string())?;
        let mut strategies = Vec::with_capacity(runs.len());
        for run in &runs {
            let summary = summarize(&run.rows, &cfg.q_phase2).map_err(|e| e.to_string())?;
            strategies.push(StrategySeries {
                label: run.strategy.label(),
                kl: run.rows.iter().map(|r| r.kl_to_target).collect(),
                p2: run.rows.iter().map(|r| r.probs[2]).collect(),
                b_entropy: run.rows.iter().map(|r| r.b_entropy).collect(),
                eta_eff: run.rows.iter().map(|r| r.eta_eff).collect(),
                eta_max: run.rows.iter().map(|r| r.eta_max).collect(),
                final_kl: summary.final_kl,
                collapsed: summary.collapsed,
                converged_step: summary.converged_step,
            });
        }
        Ok(ExperimentSeries {
            shift_step: cfg.shift_step,
            total_steps: cfg.total_steps,
            strategies,
        })
    })())
}
