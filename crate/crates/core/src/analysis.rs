//! Repeated-measurement bounds and time to solution for QAOA and annealing.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::OptimizationTrace;
use crate::simulator::{anneal, AnnealConfig, QaoaProblem, VariationalParams};

/// Default target cumulative success probability.
pub const DEFAULT_TARGET: f64 = 0.99;

/// Smallest `m` with `1 - (1 - F)^m >= 1 - eps`, i.e. the smallest integer
/// strictly above `log(eps) / log(1 - F)`.
pub fn required_measurements(success: f64, eps: f64) -> Result<u64> {
    if !(success > 0.0 && success <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "success probability must lie in (0, 1], got {success}"
        )));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    if success == 1.0 {
        return Ok(1);
    }
    let bound = eps.ln() / (-success).ln_1p();
    Ok(bound.floor() as u64 + 1)
}

/// Representative of `beta` modulo `pi` with the smallest magnitude, in
/// `(-pi/2, pi/2]`. For `beta` in `[0, pi)` this subtracts `pi` exactly when
/// that shrinks `|beta|`.
pub fn canonical_beta(beta: f64) -> f64 {
    let r = beta.rem_euclid(PI);
    if r > PI / 2.0 {
        r - PI
    } else {
        r
    }
}

/// `T_p = sum_i |gamma_i| + |beta_i|` with every beta canonically shifted.
pub fn qaoa_total_time(params: &VariationalParams) -> f64 {
    params
        .gammas()
        .iter()
        .zip(params.betas())
        .map(|(g, &b)| g.abs() + canonical_beta(b).abs())
        .sum()
}

/// `time * log(1 - p_d) / log(1 - F)`; infinite when `F = 0`.
pub fn time_to_solution(time: f64, success: f64, target: f64) -> f64 {
    if success <= 0.0 {
        return f64::INFINITY;
    }
    if success >= 1.0 {
        return 0.0;
    }
    time * (-target).ln_1p() / (-success).ln_1p()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "QAOA")]
    Qaoa,
    #[serde(rename = "QA")]
    Qa,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TtsReport {
    pub algorithm: Algorithm,
    /// Level `p` for QAOA, total time `T` for annealing.
    pub schedule: f64,
    #[serde(rename = "F")]
    pub success_probability: f64,
    pub p_d: f64,
    pub tts: f64,
}

fn check_target(target: f64) -> Result<()> {
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target probability must lie in (0, 1), got {target}"
        )));
    }
    Ok(())
}

/// One report per recorded level, in trace order.
pub fn tts_qaoa_levels(trace: &OptimizationTrace, target: f64) -> Result<Vec<TtsReport>> {
    check_target(target)?;
    Ok(trace
        .levels
        .iter()
        .map(|l| TtsReport {
            algorithm: Algorithm::Qaoa,
            schedule: l.p as f64,
            success_probability: l.success_probability,
            p_d: target,
            tts: time_to_solution(qaoa_total_time(&l.params), l.success_probability, target),
        })
        .collect())
}

fn best_finite(reports: impl IntoIterator<Item = TtsReport>) -> Result<TtsReport> {
    reports
        .into_iter()
        .filter(|r| r.tts.is_finite())
        .min_by(|a, b| a.tts.total_cmp(&b.tts))
        .ok_or(Error::NoFiniteTts)
}

/// Minimum of the QAOA time to solution over the recorded levels. Levels
/// with `F = 0` are skipped.
pub fn tts_qaoa(trace: &OptimizationTrace, target: f64) -> Result<TtsReport> {
    if trace.levels.is_empty() {
        return Err(Error::InvalidArgument("empty optimization trace".into()));
    }
    best_finite(tts_qaoa_levels(trace, target)?)
}

/// `n` log-spaced annealing times over `[lo, hi]`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && n >= 1, "bad grid [{lo}, {hi}] x {n}");
    if n == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// 16 points over `[0.5, 200]`.
pub fn default_time_grid() -> Vec<f64> {
    log_grid(0.5, 200.0, 16)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealSweepPoint {
    pub total_time: f64,
    pub success_probability: f64,
    pub tts: f64,
    pub converged: bool,
}

pub fn anneal_sweep(
    problem: &QaoaProblem,
    times: &[f64],
    target: f64,
    dt: f64,
) -> Result<Vec<AnnealSweepPoint>> {
    check_target(target)?;
    if times.is_empty() {
        return Err(Error::InvalidArgument("empty annealing time grid".into()));
    }
    times
        .par_iter()
        .map(|&t| {
            let out = anneal(problem, &AnnealConfig::new(t, dt))?;
            Ok(AnnealSweepPoint {
                total_time: t,
                success_probability: out.success_probability,
                tts: time_to_solution(t, out.success_probability, target),
                converged: out.converged,
            })
        })
        .collect()
}

/// Best annealing time to solution over `times`, plus the whole sweep.
pub fn tts_qa(
    problem: &QaoaProblem,
    times: &[f64],
    target: f64,
    dt: f64,
) -> Result<(TtsReport, Vec<AnnealSweepPoint>)> {
    let sweep = anneal_sweep(problem, times, target, dt)?;
    let best = best_finite(sweep.iter().map(|pt| TtsReport {
        algorithm: Algorithm::Qa,
        schedule: pt.total_time,
        success_probability: pt.success_probability,
        p_d: target,
        tts: pt.tts,
    }))?;
    Ok((best, sweep))
}
