//! CSV encoding and decoding for the metrics and sweep tables.
//!
//! Headers are fixed: `t,p_0,...,p_{C-1},kl_to_target,b_entropy,eta_eff,
//! eta_max,ratio` for experiment tables and `x,eta_max,b_entropy,eta_ce`
//! for sweeps. Numbers are written with Rust's shortest round-trip
//! formatting, so a file read back by this module reproduces the original
//! values exactly.

use std::fmt::Write as _;

use stepbound::harness::{MetricsRow, SweepRow};

/// Fixed sweep-table header.
pub const SWEEP_HEADER: &str = "x,eta_max,b_entropy,eta_ce";

/// Experiment-table header for `classes` belief coordinates.
pub fn metrics_header(classes: usize) -> String {
    let mut header = String::from("t");
    for i in 0..classes {
        let _ = write!(header, ",p_{i}");
    }
    header.push_str(",kl_to_target,b_entropy,eta_eff,eta_max,ratio");
    header
}

pub fn write_metrics_csv(rows: &[MetricsRow]) -> String {
    let classes = rows.first().map_or(0, |row| row.probs.len());
    let mut out = metrics_header(classes);
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{}", row.t);
        for p in &row.probs {
            let _ = write!(out, ",{p}");
        }
        let _ = writeln!(
            out,
            ",{},{},{},{},{}",
            row.kl_to_target, row.b_entropy, row.eta_eff, row.eta_max, row.ratio
        );
    }
    out
}

pub fn read_metrics_csv(text: &str) -> Result<Vec<MetricsRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty metrics table")?;
    let columns = header.split(',').count();
    if columns < 7 || !header.starts_with("t,p_0") {
        return Err(format!("unexpected metrics header: {header}"));
    }
    let classes = columns - 6;
    let mut rows = Vec::new();
    for (number, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns {
            return Err(format!("row {number}: expected {columns} fields"));
        }
        let parse = |s: &str| -> Result<f64, String> {
            s.parse().map_err(|e| format!("row {number}: {e}"))
        };
        rows.push(MetricsRow {
            t: fields[0]
                .parse()
                .map_err(|e| format!("row {number}: {e}"))?,
            probs: fields[1..1 + classes]
                .iter()
                .map(|s| parse(s))
                .collect::<Result<_, _>>()?,
            kl_to_target: parse(fields[1 + classes])?,
            b_entropy: parse(fields[2 + classes])?,
            eta_eff: parse(fields[3 + classes])?,
            eta_max: parse(fields[4 + classes])?,
            ratio: parse(fields[5 + classes])?,
        });
    }
    Ok(rows)
}

pub fn write_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.x, row.eta_max, row.b_entropy, row.eta_ce
        );
    }
    out
}

pub fn read_sweep_csv(text: &str) -> Result<Vec<SweepRow>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty sweep table")?;
    if header != SWEEP_HEADER {
        return Err(format!("unexpected sweep header: {header}"));
    }
    let mut rows = Vec::new();
    for (number, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(format!("row {number}: expected 4 fields"));
        }
        let parse = |s: &str| -> Result<f64, String> {
            s.parse().map_err(|e| format!("row {number}: {e}"))
        };
        rows.push(SweepRow {
            x: parse(fields[0])?,
            eta_max: parse(fields[1])?,
            b_entropy: parse(fields[2])?,
            eta_ce: parse(fields[3])?,
        });
    }
    Ok(rows)
}
