use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use stepbound::admissibility::{
    backoff, barrier, ce_step, ce_step_bound, is_admissible, normalized_entropy, BarrierConfig,
};
use stepbound::divergence::kl;
use stepbound::dynamics::StepMap;
use stepbound::harness::{run_experiment, summarize, sweep_binary_slice, ExperimentConfig};
use stepbound::{Belief, Error};

use stepbound_cli::tables;

#[derive(Parser)]
#[command(
    name = "stepbound",
    version,
    about = "Admissible step bounds on the probability simplex"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the step bound and its entropy backoff at one belief.
    Bound {
        /// Comma-separated probabilities; auto-normalized with a warning flag.
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        /// Clamp applied to normalized entropy before the barrier.
        #[arg(long, default_value_t = BarrierConfig::default().b_max)]
        b_max: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Apply one update step and report the result and its admissibility.
    Step {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<f64>,
        #[arg(long)]
        eta: f64,
        #[arg(long, value_enum)]
        map: MapArg,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the distribution-shift tracking experiment.
    Experiment {
        /// JSON file mirroring the experiment configuration; missing fields
        /// take the defaults.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Directory for per-strategy tables and the summary table.
        #[arg(long, default_value = "experiment_out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sweep the bound along binary beliefs (x, 1-x).
    Sweep {
        #[arg(long)]
        n: usize,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapArg {
    Projected,
    Mirror,
}

impl From<MapArg> for StepMap {
    fn from(arg: MapArg) -> Self {
        match arg {
            MapArg::Projected => StepMap::Projected,
            MapArg::Mirror => StepMap::Mirror,
        }
    }
}

/// Failures after argument parsing: exit 1 for runtime numeric trouble,
/// 2 for unreadable input, 3 for domain invariant violations.
enum CliError {
    Runtime(String),
    Input(String),
    Domain(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Runtime(m) | CliError::Input(m) | CliError::Domain(m) => m,
        }
    }
}

fn classify(e: Error) -> CliError {
    match e {
        Error::Overflow { .. } => CliError::Runtime(e.to_string()),
        _ => CliError::Domain(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Bound { p, b_max, format } => cmd_bound(&p, b_max, format),
        Command::Step {
            p,
            q,
            eta,
            map,
            format,
        } => cmd_step(&p, &q, eta, map.into(), format),
        Command::Experiment {
            config,
            out,
            format,
        } => cmd_experiment(config.as_deref(), &out, format),
        Command::Sweep { n, out, format } => cmd_sweep(n, out.as_deref(), format),
    }
}

#[derive(Serialize)]
struct BoundRecord {
    eta_max: f64,
    b_entropy: f64,
    alpha: f64,
    backoff: f64,
    eta_ce: f64,
    normalized_input: bool,
}

fn cmd_bound(raw: &[f64], b_max: f64, format: Format) -> Result<(), CliError> {
    let cfg = BarrierConfig {
        b_max,
        ..BarrierConfig::default()
    };
    cfg.validate().map_err(classify)?;
    let belief = Belief::new(raw).map_err(classify)?;
    let normalized_input = (raw.iter().sum::<f64>() - 1.0).abs() > 1e-9;
    let b = normalized_entropy(&belief);
    let record = BoundRecord {
        eta_max: ce_step_bound(&belief),
        b_entropy: b,
        alpha: barrier(b, &cfg).map_err(classify)?,
        backoff: backoff(b, &cfg).map_err(classify)?,
        eta_ce: ce_step(&belief, &cfg),
        normalized_input,
    };
    match format {
        Format::Json => println!("{}", to_json(&record)?),
        Format::Csv => {
            println!("eta_max,b_entropy,alpha,backoff,eta_ce,normalized_input");
            println!(
                "{},{},{},{},{},{}",
                record.eta_max,
                record.b_entropy,
                record.alpha,
                record.backoff,
                record.eta_ce,
                record.normalized_input
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct StepRecord {
    probs: Vec<f64>,
    kl_before: f64,
    kl_after: f64,
    admissible: bool,
    gap: f64,
}

fn cmd_step(
    raw_p: &[f64],
    raw_q: &[f64],
    eta: f64,
    map: StepMap,
    format: Format,
) -> Result<(), CliError> {
    let p = Belief::new(raw_p).map_err(classify)?;
    let q = Belief::new(raw_q).map_err(classify)?;
    let check = is_admissible(eta, &p);
    let stepped = map.apply(&p, &q, eta).map_err(classify)?;
    let record = StepRecord {
        probs: stepped.probs().to_vec(),
        kl_before: kl(&p, &q).map_err(classify)?,
        kl_after: kl(&stepped, &q).map_err(classify)?,
        admissible: check.admissible,
        gap: check.gap,
    };
    match format {
        Format::Json => println!("{}", to_json(&record)?),
        Format::Csv => {
            let mut header = String::new();
            let mut row = String::new();
            for (i, value) in record.probs.iter().enumerate() {
                header.push_str(&format!("p_{i},"));
                row.push_str(&format!("{value},"));
            }
            println!("{header}kl_before,kl_after,admissible,gap");
            println!(
                "{row}{},{},{},{}",
                record.kl_before, record.kl_after, record.admissible, record.gap
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SummaryRecord {
    strategy: String,
    final_kl: f64,
    converged_step: Option<usize>,
    collapsed: bool,
    max_ratio: f64,
}

fn cmd_experiment(
    config: Option<&std::path::Path>,
    out: &std::path::Path,
    format: Format,
) -> Result<(), CliError> {
    let cfg: ExperimentConfig = match config {
        None => ExperimentConfig::default(),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
        }
    };
    cfg.validate()
        .map_err(|e| CliError::Input(format!("invalid config: {e}")))?;

    // Strategies are independent; running them one at a time lets a failure
    // name the strategy it came from.
    let mut runs = Vec::with_capacity(cfg.strategies.len());
    for strategy in &cfg.strategies {
        let single = ExperimentConfig {
            strategies: vec![*strategy],
            ..cfg.clone()
        };
        let run = run_experiment(&single)
            .map_err(|e| CliError::Runtime(format!("strategy {}: {e}", strategy.label())))?
            .pop()
            .expect("one strategy in, one run out");
        runs.push(run);
    }

    fs::create_dir_all(out).map_err(|e| CliError::Runtime(format!("{}: {e}", out.display())))?;

    let mut summaries = Vec::new();
    for run in &runs {
        let label = run.strategy.label();
        let summary = summarize(&run.rows, &cfg.q_phase2)
            .map_err(|e| CliError::Runtime(format!("strategy {label}: {e}")))?;
        let (name, contents) = match format {
            Format::Csv => (format!("{label}.csv"), tables::write_metrics_csv(&run.rows)),
            Format::Json => (format!("{label}.json"), to_json(&run.rows)?),
        };
        let path = out.join(name);
        fs::write(&path, contents)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        println!(
            "strategy {label}: final_kl={} converged_step={} collapsed={} max_ratio={}",
            summary.final_kl,
            summary
                .converged_step
                .map_or_else(|| "none".to_string(), |t| t.to_string()),
            summary.collapsed,
            summary.max_ratio
        );
        summaries.push(SummaryRecord {
            strategy: label,
            final_kl: summary.final_kl,
            converged_step: summary.converged_step,
            collapsed: summary.collapsed,
            max_ratio: summary.max_ratio,
        });
    }

    let (name, contents) = match format {
        Format::Csv => {
            let mut text = String::from("strategy,final_kl,converged_step,collapsed,max_ratio\n");
            for s in &summaries {
                text.push_str(&format!(
                    "{},{},{},{},{}\n",
                    s.strategy,
                    s.final_kl,
                    s.converged_step.map_or_else(String::new, |t| t.to_string()),
                    s.collapsed,
                    s.max_ratio
                ));
            }
            ("summary.csv".to_string(), text)
        }
        Format::Json => ("summary.json".to_string(), to_json(&summaries)?),
    };
    let path = out.join(name);
    fs::write(&path, contents)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn cmd_sweep(n: usize, out: Option<&std::path::Path>, format: Format) -> Result<(), CliError> {
    let rows = sweep_binary_slice(n, &BarrierConfig::default()).map_err(classify)?;
    let contents = match format {
        Format::Csv => tables::write_sweep_csv(&rows),
        Format::Json => {
            let mut text = to_json(&rows)?;
            text.push('\n');
            text
        }
    };
    match out {
        None => print!("{contents}"),
        Some(path) => fs::write(path, contents)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Runtime(e.to_string()))
}
