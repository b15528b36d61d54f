//! Classical outer loop for QAOA: landscape scans, multistart quasi-Newton,
//! Nelder-Mead and the INTERP warm start between levels.

mod interp;
mod landscape;
mod nelder_mead;
mod quasi_newton;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simulator::{QaoaProblem, VariationalParams};

pub use interp::{interp_pipeline, interp_start};
pub use landscape::{landscape_scan, LandscapeGrid, DEFAULT_RESOLUTION};
pub use nelder_mead::{minimize_nelder_mead, NelderMeadConfig};
pub use quasi_newton::{central_gradient, minimize_box_bfgs, QuasiNewtonConfig};

/// Outcome of one local search on a flat parameter vector.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalMinimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
}

/// Best parameters found at one QAOA level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelResult {
    pub p: usize,
    pub params: VariationalParams,
    /// `E_p` at `params`, offset included.
    pub energy: f64,
    /// `F_p` at `params`.
    pub success_probability: f64,
    pub evaluations: usize,
    pub seconds: f64,
}

impl LevelResult {
    fn scored(
        problem: &QaoaProblem,
        params: VariationalParams,
        evaluations: usize,
        started: Instant,
    ) -> Self {
        let ev = problem.evaluate(&params);
        Self {
            p: params.depth(),
            params,
            energy: ev.energy,
            success_probability: ev.success_probability,
            evaluations,
            seconds: started.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OptimizationTrace {
    pub levels: Vec<LevelResult>,
}

impl OptimizationTrace {
    pub fn level(&self, p: usize) -> Option<&LevelResult> {
        self.levels.iter().find(|l| l.p == p)
    }

    /// Level with the highest success probability.
    pub fn best_success(&self) -> Option<&LevelResult> {
        self.levels
            .iter()
            .max_by(|a, b| a.success_probability.total_cmp(&b.success_probability))
    }
}

/// Orders by energy, then lexicographically by parameters.
fn better(a: &LocalMinimum, b: &LocalMinimum) -> Ordering {
    a.value.total_cmp(&b.value).then_with(|| {
        a.x.iter()
            .zip(&b.x)
            .map(|(u, v)| u.total_cmp(v))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultistartConfig {
    pub n_starts: usize,
    pub seed: u64,
    pub local: QuasiNewtonConfig,
}

impl MultistartConfig {
    pub fn new(n_starts: usize, seed: u64) -> Self {
        Self {
            n_starts,
            seed,
            local: QuasiNewtonConfig::default(),
        }
    }
}

/// `n` uniform points in `[0, pi]^p x [0, pi]^p`, reproducible from `seed`.
pub fn random_starts(p: usize, n: usize, seed: u64) -> Vec<VariationalParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let flat: Vec<f64> = (0..2 * p).map(|_| rng.random::<f64>() * PI).collect();
            VariationalParams::from_flat(&flat).expect("even length")
        })
        .collect()
}

/// Box-constrained quasi-Newton from each start; the best end point wins.
pub fn multistart_from(
    problem: &QaoaProblem,
    starts: &[VariationalParams],
    local: &QuasiNewtonConfig,
) -> Result<LevelResult> {
    let started = Instant::now();
    let p = match starts.first() {
        Some(s) => s.depth(),
        None => return Err(Error::InvalidArgument("need at least one start point".into())),
    };
    if starts.iter().any(|s| s.depth() != p) {
        return Err(Error::InvalidArgument("start points differ in depth".into()));
    }
    let objective = |x: &[f64]| problem.energy(&VariationalParams::from_flat(x).expect("even"));
    let runs: Vec<LocalMinimum> = starts
        .par_iter()
        .map(|s| minimize_box_bfgs(objective, &s.to_flat(), local))
        .collect();
    let evaluations = runs.iter().map(|r| r.evaluations).sum();
    let best = runs.into_iter().min_by(better).expect("non-empty");
    let params = VariationalParams::from_flat(&best.x)?;
    Ok(LevelResult::scored(problem, params, evaluations, started))
}

pub fn multistart_optimize(
    problem: &QaoaProblem,
    p: usize,
    cfg: &MultistartConfig,
) -> Result<LevelResult> {
    if p == 0 || cfg.n_starts == 0 {
        return Err(Error::InvalidArgument("need p >= 1 and n_starts >= 1".into()));
    }
    multistart_from(problem, &random_starts(p, cfg.n_starts, cfg.seed), &cfg.local)
}

/// Nelder-Mead on `E_p` from `start`, capped at `60 p` evaluations and
/// iterations.
pub fn nelder_mead(problem: &QaoaProblem, start: &VariationalParams) -> LevelResult {
    nelder_mead_with(problem, start, &NelderMeadConfig::for_depth(start.depth()))
}

pub fn nelder_mead_with(
    problem: &QaoaProblem,
    start: &VariationalParams,
    cfg: &NelderMeadConfig,
) -> LevelResult {
    let started = Instant::now();
    let objective = |x: &[f64]| problem.energy(&VariationalParams::from_flat(x).expect("even"));
    let m = minimize_nelder_mead(objective, &start.to_flat(), cfg);
    let params = VariationalParams::from_flat(&m.x).expect("even length");
    LevelResult::scored(problem, params, m.evaluations, started)
}

/// Independent multistart searches at every level `1..=p_max`.
pub fn multistart_trace(
    problem: &QaoaProblem,
    p_max: usize,
    cfg: &MultistartConfig,
) -> Result<OptimizationTrace> {
    let levels = (1..=p_max)
        .map(|p| multistart_optimize(problem, p, cfg))
        .collect::<Result<_>>()?;
    Ok(OptimizationTrace { levels })
}
