//! Exact state-vector simulation: QAOA circuits, annealing schedules and
//! Pauli-noise trajectories.

mod anneal;
mod noise;
mod state;

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::instance::{solve_exact, ExactCoverInstance};
use crate::ising::{snap_energy, IsingModel};

pub use anneal::{anneal, anneal_state, AnnealConfig, AnnealOutcome, ANNEAL_TOLERANCE, DEFAULT_DT};
pub use noise::{run_noisy, trajectory_success, NoiseConfig, NoisePlacement, NoisyEstimate};
pub use state::{Pauli, StateVector, DEFAULT_MAX_QUBITS};

/// Absolute ceiling regardless of configuration (u32 level tables, memory).
pub const HARD_MAX_QUBITS: usize = 34;

/// QAOA angles `(gamma_1..gamma_p, beta_1..beta_p)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariationalParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl VariationalParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.is_empty() || gammas.len() != betas.len() {
            return Err(Error::InvalidArgument(format!(
                "need p >= 1 gammas and as many betas, got {} and {}",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("angles must be finite".into()));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(p: usize) -> Self {
        assert!(p >= 1, "depth must be at least 1");
        Self {
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    /// Splits `[gammas..., betas...]`.
    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if flat.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "flat parameter vector has odd length {}",
                flat.len()
            )));
        }
        let p = flat.len() / 2;
        Self::new(flat[..p].to_vec(), flat[p..].to_vec())
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    pub fn negated(&self) -> Self {
        Self {
            gammas: self.gammas.iter().map(|g| -g).collect(),
            betas: self.betas.iter().map(|b| -b).collect(),
        }
    }

    /// Reduces to `gamma in [0, 2pi)`, `beta in [0, pi)`. The energy spectrum
    /// is integral, so the circuit is `2pi`-periodic in each gamma and
    /// `pi`-periodic in each beta up to a global phase.
    pub fn canonical(&self) -> Self {
        Self {
            gammas: self.gammas.iter().map(|g| g.rem_euclid(2.0 * PI)).collect(),
            betas: self.betas.iter().map(|b| b.rem_euclid(PI)).collect(),
        }
    }
}

/// Diagonal of the cost Hamiltonian over the whole register, grouped by
/// energy level so a phase layer costs one lookup per amplitude.
#[derive(Debug, Clone)]
pub struct CostTable {
    n: usize,
    offset: f64,
    levels: Vec<f64>,
    level_of: Vec<u32>,
}

impl CostTable {
    pub fn new(m: &IsingModel) -> Result<Self> {
        Self::with_limit(m, DEFAULT_MAX_QUBITS)
    }

    pub fn with_limit(m: &IsingModel, max_qubits: usize) -> Result<Self> {
        let n = m.n_qubits();
        let limit = max_qubits.min(HARD_MAX_QUBITS);
        if n > limit {
            return Err(Error::TooManyQubits {
                what: "cost table",
                got: n,
                limit,
            });
        }
        let diag = m.diagonal();
        let mut index_of: BTreeMap<u64, u32> = BTreeMap::new();
        for &e in &diag {
            index_of.entry(snap_energy(e)).or_insert(0);
        }
        for (i, v) in index_of.values_mut().enumerate() {
            *v = i as u32;
        }
        let level_of = diag.iter().map(|&e| index_of[&snap_energy(e)]).collect();
        let levels = index_of.keys().map(|&e| e as f64).collect();
        Ok(Self {
            n,
            offset: m.offset(),
            levels,
            level_of,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Distinct energies in increasing order.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn level_indices(&self) -> &[u32] {
        &self.level_of
    }

    /// Energy of a basis state, offset included.
    pub fn energy(&self, index: u64) -> f64 {
        self.levels[self.level_of[index as usize] as usize]
    }

    pub fn max_energy(&self) -> f64 {
        *self.levels.last().expect("non-empty table")
    }
}

pub fn prepare_plus(n: usize) -> Result<StateVector> {
    StateVector::plus(n)
}

/// Applies `V(beta_p) U(gamma_p) ... V(beta_1) U(gamma_1)` to `|+>^n`.
pub fn run_qaoa_with(table: &CostTable, params: &VariationalParams) -> Result<StateVector> {
    let mut s = StateVector::plus_with_limit(table.n_qubits(), HARD_MAX_QUBITS)?;
    for (&g, &b) in params.gammas().iter().zip(params.betas()) {
        s.apply_cost_phase(g, table)?;
        s.apply_mixer(b);
    }
    Ok(s)
}

pub fn run_qaoa(m: &IsingModel, params: &VariationalParams) -> Result<StateVector> {
    run_qaoa_with(&CostTable::new(m)?, params)
}

/// `E_p` and `F_p` at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub energy: f64,
    pub success_probability: f64,
}

/// Cost table plus the solution set: everything needed to score a QAOA run.
#[derive(Debug, Clone)]
pub struct QaoaProblem {
    table: CostTable,
    solutions: Vec<u64>,
}

impl QaoaProblem {
    pub fn new(m: &IsingModel, solutions: Vec<u64>) -> Result<Self> {
        Self::from_table(CostTable::new(m)?, solutions)
    }

    pub fn from_table(table: CostTable, solutions: Vec<u64>) -> Result<Self> {
        if solutions.is_empty() {
            return Err(Error::NoSolutions);
        }
        let dim = 1u64 << table.n_qubits();
        if let Some(&bad) = solutions.iter().find(|&&s| s >= dim) {
            return Err(Error::InvalidArgument(format!("solution index {bad} out of range")));
        }
        Ok(Self { table, solutions })
    }

    /// Uses the instance's known solutions, or the exact oracle when absent.
    pub fn from_instance(inst: &ExactCoverInstance, max_qubits: usize) -> Result<Self> {
        let m = IsingModel::from_instance(inst);
        let table = CostTable::with_limit(&m, max_qubits)?;
        let covers = match inst.known_solutions() {
            Some(known) => known.to_vec(),
            None => solve_exact(inst),
        };
        let solutions = covers.iter().map(|c| bits::index_from_routes(c)).collect();
        Self::from_table(table, solutions)
    }

    pub fn table(&self) -> &CostTable {
        &self.table
    }

    pub fn solutions(&self) -> &[u64] {
        &self.solutions
    }

    pub fn n_qubits(&self) -> usize {
        self.table.n_qubits()
    }

    pub fn state(&self, params: &VariationalParams) -> StateVector {
        run_qaoa_with(&self.table, params).expect("table dimensions are consistent")
    }

    pub fn evaluate(&self, params: &VariationalParams) -> Evaluation {
        let s = self.state(params);
        Evaluation {
            energy: s.expectation(&self.table).expect("matching table"),
            success_probability: s.success_probability(&self.solutions).expect("valid solutions"),
        }
    }

    pub fn energy(&self, params: &VariationalParams) -> f64 {
        self.evaluate(params).energy
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::build_ising;
    use num_complex::Complex64;
    use std::f64::consts::FRAC_PI_2;

    fn toy_model() -> IsingModel {
        build_ising(&ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap())
    }

    #[test]
    fn params_validation() {
        assert!(VariationalParams::new(vec![], vec![]).is_err());
        assert!(VariationalParams::new(vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(VariationalParams::new(vec![f64::NAN], vec![1.0]).is_err());
        let p = VariationalParams::from_flat(&[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(p.gammas(), &[1.0, 2.0]);
        assert_eq!(p.betas(), &[3.0, 4.0]);
        assert_eq!(p.to_flat(), vec![1.0, 2.0, 3.0, 4.0]);
        let c = VariationalParams::new(vec![-1.0], vec![4.0]).unwrap().canonical();
        assert!((c.gammas()[0] - (2.0 * PI - 1.0)).abs() < 1e-15);
        assert!((c.betas()[0] - (4.0 - PI)).abs() < 1e-15);
    }

    #[test]
    fn toy_table() {
        let t = CostTable::new(&toy_model()).unwrap();
        assert_eq!(t.levels(), &[0.0, 1.0, 2.0]);
        assert_eq!(t.energy(0b011), 0.0);
        assert_eq!(t.energy(0b111), 2.0);
        assert_eq!(t.energy(0b000), 2.0);
    }

    #[test]
    fn cost_phase_examples() {
        let m = toy_model();
        let t = CostTable::new(&m).unwrap();
        let plus = StateVector::plus(3).unwrap();

        let mut s = plus.clone();
        s.apply_cost_phase(0.0, &t).unwrap();
        assert_eq!(s, plus);

        // E - offset = 1 at x = 111
        let mut s = plus.clone();
        s.apply_cost_phase(FRAC_PI_2, &t).unwrap();
        let ratio = s.amplitudes()[0b111] / plus.amplitudes()[0b111];
        assert!((ratio - Complex64::new(0.0, -1.0)).norm() < 1e-12);

        // integral offset: gamma = 2pi is the identity up to a global phase
        let mut s = plus.clone();
        s.apply_cost_phase(2.0 * PI, &t).unwrap();
        let g = s.amplitudes()[0] / plus.amplitudes()[0];
        assert!((g.norm() - 1.0).abs() < 1e-12);
        for (a, b) in s.amplitudes().iter().zip(plus.amplitudes()) {
            assert!((a - b * g).norm() < 1e-12);
        }

        let mut wrong = StateVector::plus(2).unwrap();
        assert!(wrong.apply_cost_phase(0.1, &t).is_err());
    }

    #[test]
    fn toy_expectation_success_histogram() {
        let m = toy_model();
        let t = CostTable::new(&m).unwrap();
        let plus = StateVector::plus(3).unwrap();
        assert!((plus.expectation(&t).unwrap() - 1.0).abs() < 1e-15);
        assert!((plus.success_probability(&[0b011, 0b100]).unwrap() - 0.25).abs() < 1e-15);
        let h = plus.cost_histogram(&t).unwrap();
        assert_eq!(h.keys().copied().collect::<Vec<_>>(), vec![0, 1, 2]);
        assert!((h[&0] - 0.25).abs() < 1e-15);
        assert!((h[&1] - 0.5).abs() < 1e-15);
        assert!((h[&2] - 0.25).abs() < 1e-15);

        let cover = StateVector::basis(3, 0b011).unwrap();
        assert_eq!(cover.expectation(&t).unwrap(), 0.0);
        let h = cover.cost_histogram(&t).unwrap();
        assert_eq!(h[&0], 1.0);
        assert_eq!(h.values().sum::<f64>(), 1.0);
    }

    #[test]
    fn identity_circuit() {
        let m = toy_model();
        let s = run_qaoa(&m, &VariationalParams::zeros(1)).unwrap();
        assert_eq!(s, StateVector::plus(3).unwrap());
        let s = run_qaoa(&m, &VariationalParams::new(vec![0.7], vec![1.3]).unwrap()).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn problem_from_instance() {
        let inst = ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let prob = QaoaProblem::from_instance(&inst, DEFAULT_MAX_QUBITS).unwrap();
        assert_eq!(prob.solutions(), &[0b011, 0b100]);
        let ev = prob.evaluate(&VariationalParams::zeros(2));
        assert!((ev.energy - 1.0).abs() < 1e-15);
        assert!((ev.success_probability - 0.25).abs() < 1e-15);
        assert!(QaoaProblem::from_instance(&inst, 2).is_err());
        assert!(QaoaProblem::new(&build_ising(&inst), vec![]).is_err());
    }
}
