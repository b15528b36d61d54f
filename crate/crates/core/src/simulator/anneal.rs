//! Linear-schedule quantum annealing,
//! `H(t) = (t/T) H_C - (1 - t/T) sum_j X_j`, integrated with Strang
//! splitting. Each step of width `h` applies a half cost phase, the full
//! transverse-field rotation and another half cost phase, with the schedule
//! evaluated at the step midpoint. Adjacent half phases are merged.

use serde::{Deserialize, Serialize};

use super::{CostTable, QaoaProblem, StateVector, HARD_MAX_QUBITS};
use crate::error::{Error, Result};

pub const DEFAULT_DT: f64 = 0.05;

/// Largest change in the success probability under `dt -> dt/2` that still
/// counts as converged.
pub const ANNEAL_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnnealConfig {
    pub total_time: f64,
    pub dt: f64,
    /// Re-run at `dt/2` and compare.
    pub check_convergence: bool,
}

impl AnnealConfig {
    pub fn new(total_time: f64, dt: f64) -> Self {
        Self {
            total_time,
            dt,
            check_convergence: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnnealOutcome {
    /// Ground-state population after time `T` at the requested step.
    pub success_probability: f64,
    pub steps: usize,
    /// Result at half the step size, when convergence was checked.
    pub refined_success_probability: Option<f64>,
    pub converged: bool,
}

impl AnnealOutcome {
    pub fn dt_sensitivity(&self) -> Option<f64> {
        self.refined_success_probability
            .map(|r| (r - self.success_probability).abs())
    }
}

fn step_count(total_time: f64, dt: f64) -> usize {
    ((total_time / dt).ceil() as usize).max(1)
}

/// Final state after annealing for `total_time` in steps no wider than `dt`.
pub fn anneal_state(table: &CostTable, total_time: f64, dt: f64) -> Result<StateVector> {
    if !(total_time > 0.0 && total_time.is_finite()) || !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "annealing needs T > 0 and dt > 0, got T = {total_time}, dt = {dt}"
        )));
    }
    let steps = step_count(total_time, dt);
    let h = total_time / steps as f64;
    let mut s = StateVector::plus_with_limit(table.n_qubits(), HARD_MAX_QUBITS)?;
    let mut pending = 0.0;
    for k in 0..steps {
        let frac = (k as f64 + 0.5) * h / total_time;
        let half = 0.5 * frac * h;
        s.apply_cost_phase(pending + half, table)?;
        // exp(-i (1-frac) h (-sum X)) = V(-(1-frac) h)
        s.apply_mixer(-(1.0 - frac) * h);
        pending = half;
    }
    s.apply_cost_phase(pending, table)?;
    Ok(s)
}

pub fn anneal(problem: &QaoaProblem, cfg: &AnnealConfig) -> Result<AnnealOutcome> {
    let run = |dt: f64| -> Result<f64> {
        anneal_state(problem.table(), cfg.total_time, dt)?.success_probability(problem.solutions())
    };
    let success_probability = run(cfg.dt)?;
    let refined = if cfg.check_convergence {
        Some(run(cfg.dt / 2.0)?)
    } else {
        None
    };
    Ok(AnnealOutcome {
        success_probability,
        steps: step_count(cfg.total_time, cfg.dt),
        refined_success_probability: refined,
        converged: refined.is_none_or(|r| (r - success_probability).abs() <= ANNEAL_TOLERANCE),
    })
}
