//! Text formats for traces, landscapes and time-to-solution results.
//!
//! Artifact files may start with `#` comment lines (a config echo written by
//! the CLI); readers here skip them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::analysis::AnnealSweepPoint;
use crate::error::{Error, Result};
use crate::ising::IsingModel;
use crate::optimizer::{LandscapeGrid, LevelResult, OptimizationTrace};
use crate::simulator::VariationalParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TraceRecord {
    p: usize,
    gammas: Vec<f64>,
    betas: Vec<f64>,
    #[serde(rename = "E")]
    energy: f64,
    #[serde(rename = "F")]
    success: f64,
    evals: usize,
    seconds: f64,
}

/// Drops leading `#` lines.
pub fn strip_comments(text: &str) -> String {
    text.lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Prefixes `body` with a single `# ...` line.
pub fn with_header(header: &str, body: &str) -> String {
    let one_line = header.replace('\n', " ");
    format!("# {one_line}\n{body}")
}

/// `[{p, gammas, betas, E, F, evals, seconds}, ...]`
pub fn trace_to_json(trace: &OptimizationTrace) -> String {
    let records: Vec<TraceRecord> = trace
        .levels
        .iter()
        .map(|l| TraceRecord {
            p: l.p,
            gammas: l.params.gammas().to_vec(),
            betas: l.params.betas().to_vec(),
            energy: l.energy,
            success: l.success_probability,
            evals: l.evaluations,
            seconds: l.seconds,
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&records).expect("trace serializes");
    out.push('\n');
    out
}

pub fn trace_from_json(text: &str) -> Result<OptimizationTrace> {
    let records: Vec<TraceRecord> = serde_json::from_str(&strip_comments(text))?;
    let levels = records
        .into_iter()
        .map(|r| {
            let params = VariationalParams::new(r.gammas, r.betas)?;
            if params.depth() != r.p {
                return Err(Error::Malformed(format!(
                    "trace level p = {} carries {} angles per family",
                    r.p,
                    params.depth()
                )));
            }
            Ok(LevelResult {
                p: r.p,
                params,
                energy: r.energy,
                success_probability: r.success,
                evaluations: r.evals,
                seconds: r.seconds,
            })
        })
        .collect::<Result<_>>()?;
    Ok(OptimizationTrace { levels })
}

/// `gamma,beta,E,F`, one row per cell in gamma-major order.
pub fn landscape_to_csv(grid: &LandscapeGrid) -> String {
    let mut out = String::from("gamma,beta,E,F\n");
    for (gi, g) in grid.gamma_axis.iter().enumerate() {
        for (bi, b) in grid.beta_axis.iter().enumerate() {
            let (e, f) = grid.cell(gi, bi);
            writeln!(out, "{g},{b},{e},{f}").expect("write to string");
        }
    }
    out
}

/// `T,F_gs,tts`
pub fn sweep_to_csv(points: &[AnnealSweepPoint]) -> String {
    let mut out = String::from("T,F_gs,tts\n");
    for p in points {
        writeln!(out, "{},{},{}", p.total_time, p.success_probability, p.tts)
            .expect("write to string");
    }
    out
}

/// `cost,probability`
pub fn histogram_to_csv(hist: &BTreeMap<u64, f64>) -> String {
    let mut out = String::from("cost,probability\n");
    for (c, p) in hist {
        writeln!(out, "{c},{p}").expect("write to string");
    }
    out
}

/// `p,cost,probability`, one block per level.
pub fn level_histograms_to_csv(levels: &[(usize, BTreeMap<u64, f64>)]) -> String {
    let mut out = String::from("p,cost,probability\n");
    for (p, hist) in levels {
        for (c, prob) in hist {
            writeln!(out, "{p},{c},{prob}").expect("write to string");
        }
    }
    out
}

/// One row of a noisy-versus-clean comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseRow {
    pub p: usize,
    pub eta: f64,
    pub clean: f64,
    pub noisy: f64,
    pub std_error: f64,
}

/// `p,eta,F_clean,F_noisy,std_error`
pub fn noise_to_csv(rows: &[NoiseRow]) -> String {
    let mut out = String::from("p,eta,F_clean,F_noisy,std_error\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.p, r.eta, r.clean, r.noisy, r.std_error)
            .expect("write to string");
    }
    out
}

#[derive(Serialize)]
struct IsingDump<'a> {
    n: usize,
    #[serde(rename = "J")]
    couplings: Vec<&'a [f64]>,
    h: &'a [f64],
    offset: f64,
}

/// `{"n", "J": [[...]], "h": [...], "offset"}`
pub fn ising_to_json(m: &IsingModel) -> String {
    let n = m.n_qubits();
    let dump = IsingDump {
        n,
        couplings: m.couplings().chunks(n.max(1)).collect(),
        h: m.fields(),
        offset: m.offset(),
    };
    let mut out = serde_json::to_string_pretty(&dump).expect("model serializes");
    out.push('\n');
    out
}
