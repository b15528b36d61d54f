//! Depolarizing noise by Monte-Carlo trajectories.
//!
//! Each noise round hits every qubit independently with X, Y or Z, each with
//! probability `eta / 3`. Trajectory `k` draws from its own stream seeded with
//! `seed ^ k`, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Pauli, QaoaProblem, StateVector, VariationalParams, HARD_MAX_QUBITS};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum NoisePlacement {
    /// A noise round after every cost layer and after every mixer layer.
    #[default]
    EveryHalfLayer,
    /// One round per level, between the cost and mixer layers.
    BetweenCostAndMixer,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseConfig {
    pub eta: f64,
    pub trajectories: usize,
    pub seed: u64,
    #[serde(default)]
    pub placement: NoisePlacement,
}

impl NoiseConfig {
    pub const DEFAULT_TRAJECTORIES: usize = 2000;

    pub fn new(eta: f64, trajectories: usize, seed: u64) -> Self {
        Self {
            eta,
            trajectories,
            seed,
            placement: NoisePlacement::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::InvalidArgument(format!(
                "eta must lie in [0, 1], got {}",
                self.eta
            )));
        }
        if self.trajectories == 0 {
            return Err(Error::InvalidArgument("need at least one trajectory".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoisyEstimate {
    pub mean: f64,
    /// Sample standard deviation over trajectories divided by `sqrt(N)`.
    pub std_error: f64,
    pub trajectories: usize,
}

fn noise_round(s: &mut StateVector, eta: f64, rng: &mut ChaCha8Rng) {
    for q in 0..s.n_qubits() {
        if rng.random::<f64>() < eta {
            let pauli = match rng.random_range(0..3) {
                0 => Pauli::X,
                1 => Pauli::Y,
                _ => Pauli::Z,
            };
            s.apply_pauli(q, pauli);
        }
    }
}

/// Success probability of one noisy trajectory.
pub fn trajectory_success(
    problem: &QaoaProblem,
    params: &VariationalParams,
    cfg: &NoiseConfig,
    index: u64,
) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ index);
    let table = problem.table();
    let mut s = StateVector::plus_with_limit(table.n_qubits(), HARD_MAX_QUBITS)
        .expect("table size already checked");
    for (&g, &b) in params.gammas().iter().zip(params.betas()) {
        s.apply_cost_phase(g, table).expect("matching table");
        noise_round(&mut s, cfg.eta, &mut rng);
        s.apply_mixer(b);
        if cfg.placement == NoisePlacement::EveryHalfLayer {
            noise_round(&mut s, cfg.eta, &mut rng);
        }
    }
    s.success_probability(problem.solutions())
        .expect("valid solutions")
}

pub fn run_noisy(
    problem: &QaoaProblem,
    params: &VariationalParams,
    cfg: &NoiseConfig,
) -> Result<NoisyEstimate> {
    cfg.validate()?;
    let samples: Vec<f64> = (0..cfg.trajectories as u64)
        .into_par_iter()
        .map(|k| trajectory_success(problem, params, cfg, k))
        .collect();
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let std_error = if samples.len() > 1 {
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(NoisyEstimate {
        mean,
        std_error,
        trajectories: samples.len(),
    })
}
