use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CostTable;
use crate::error::{Error, Result};

/// Refuse registers larger than this unless the caller raises the limit.
/// 26 qubits is 1 GiB of amplitudes.
pub const DEFAULT_MAX_QUBITS: usize = 26;

// Below this dimension kernels run on the calling thread.
const PAR_MIN_DIM: usize = 1 << 16;
// Fixed reduction blocks keep sums bitwise reproducible regardless of threads.
const SUM_BLOCK: usize = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

/// `2^n` complex amplitudes; basis index bit `r` is route `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_qubits(n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("register needs at least one qubit".into()));
    }
    let limit = limit.min(super::HARD_MAX_QUBITS);
    if n > limit {
        return Err(Error::TooManyQubits {
            what: "state vector",
            got: n,
            limit,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|+>^n`, the uniform superposition.
    pub fn plus(n: usize) -> Result<Self> {
        Self::plus_with_limit(n, DEFAULT_MAX_QUBITS)
    }

    pub fn plus_with_limit(n: usize, max_qubits: usize) -> Result<Self> {
        check_qubits(n, max_qubits)?;
        let dim = 1usize << n;
        let a = Complex64::new((dim as f64).sqrt().recip(), 0.0);
        Ok(Self {
            n,
            amps: vec![a; dim],
        })
    }

    pub fn basis(n: usize, index: u64) -> Result<Self> {
        check_qubits(n, DEFAULT_MAX_QUBITS)?;
        let dim = 1usize << n;
        if index as usize >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} outside {n}-qubit register"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!(
                "amplitude count {dim} is not a power of two >= 2"
            )));
        }
        Ok(Self {
            n: dim.trailing_zeros() as usize,
            amps,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn probability(&self, index: u64) -> f64 {
        self.amps[index as usize].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.blocked_sum(|_, a| a.norm_sqr())
    }

    fn blocked_sum<F>(&self, term: F) -> f64
    where
        F: Fn(usize, &Complex64) -> f64 + Sync,
    {
        let block = |(b, chunk): (usize, &[Complex64])| -> f64 {
            let base = b * SUM_BLOCK;
            chunk.iter().enumerate().map(|(i, a)| term(base + i, a)).sum()
        };
        let partial: Vec<f64> = if self.dim() >= PAR_MIN_DIM {
            self.amps.par_chunks(SUM_BLOCK).enumerate().map(block).collect()
        } else {
            self.amps.chunks(SUM_BLOCK).enumerate().map(block).collect()
        };
        partial.iter().sum()
    }

    fn check_table(&self, table: &CostTable) -> Result<()> {
        if table.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: table.n_qubits(),
                got: self.n,
            });
        }
        Ok(())
    }

    /// `U(gamma) = exp(-i gamma (H_C - offset))`, diagonal in the basis.
    pub fn apply_cost_phase(&mut self, gamma: f64, table: &CostTable) -> Result<()> {
        self.check_table(table)?;
        let phases: Vec<Complex64> = table
            .levels()
            .iter()
            .map(|&e| Complex64::cis(-gamma * (e - table.offset())))
            .collect();
        let level_of = table.level_indices();
        let kernel = |(a, &l): (&mut Complex64, &u32)| *a *= phases[l as usize];
        if self.dim() >= PAR_MIN_DIM {
            self.amps.par_iter_mut().zip(level_of.par_iter()).for_each(kernel);
        } else {
            self.amps.iter_mut().zip(level_of.iter()).for_each(kernel);
        }
        Ok(())
    }

    /// `V(beta) = exp(-i beta sum_j X_j)` as one butterfly pass per qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        let (s, c) = beta.sin_cos();
        let ms = Complex64::new(0.0, -s);
        for q in 0..self.n {
            self.for_each_pair(q, |a, b| {
                let (x, y) = (*a, *b);
                *a = x * c + y * ms;
                *b = x * ms + y * c;
            });
        }
    }

    pub fn apply_pauli(&mut self, qubit: usize, pauli: Pauli) {
        match pauli {
            Pauli::X => self.for_each_pair(qubit, std::mem::swap),
            Pauli::Y => self.for_each_pair(qubit, |a, b| {
                let (x, y) = (*a, *b);
                *a = Complex64::new(y.im, -y.re); // -i * y
                *b = Complex64::new(-x.im, x.re); // i * x
            }),
            Pauli::Z => self.for_each_pair(qubit, |_, b| *b = -*b),
        }
    }

    /// Calls `f(amp[i], amp[i | 1<<q])` for every index `i` with bit `q` clear.
    fn for_each_pair<F>(&mut self, q: usize, f: F)
    where
        F: Fn(&mut Complex64, &mut Complex64) + Sync + Send,
    {
        let stride = 1usize << q;
        let dim = self.dim();
        let pair = |chunk: &mut [Complex64]| {
            let (lo, hi) = chunk.split_at_mut(stride);
            lo.iter_mut().zip(hi.iter_mut()).for_each(|(a, b)| f(a, b));
        };
        if dim < PAR_MIN_DIM {
            self.amps.chunks_exact_mut(2 * stride).for_each(pair);
        } else if dim / (2 * stride) >= 64 {
            self.amps.par_chunks_exact_mut(2 * stride).for_each(pair);
        } else {
            for chunk in self.amps.chunks_exact_mut(2 * stride) {
                let (lo, hi) = chunk.split_at_mut(stride);
                lo.par_iter_mut()
                    .zip(hi.par_iter_mut())
                    .with_min_len(SUM_BLOCK)
                    .for_each(|(a, b)| f(a, b));
            }
        }
    }

    /// Mean energy, offset included.
    pub fn expectation(&self, table: &CostTable) -> Result<f64> {
        self.check_table(table)?;
        Ok(self.blocked_sum(|i, a| a.norm_sqr() * table.energy(i as u64)))
    }

    /// Total probability on the given basis states.
    pub fn success_probability(&self, solutions: &[u64]) -> Result<f64> {
        if solutions.is_empty() {
            return Err(Error::NoSolutions);
        }
        if let Some(&bad) = solutions.iter().find(|&&s| s as usize >= self.dim()) {
            return Err(Error::InvalidArgument(format!(
                "solution index {bad} outside {}-qubit register",
                self.n
            )));
        }
        Ok(solutions.iter().map(|&s| self.probability(s)).sum())
    }

    /// Probability of measuring each energy level.
    pub fn cost_histogram(&self, table: &CostTable) -> Result<BTreeMap<u64, f64>> {
        self.check_table(table)?;
        let mut per_level = vec![0.0; table.levels().len()];
        for (a, &l) in self.amps.iter().zip(table.level_indices()) {
            per_level[l as usize] += a.norm_sqr();
        }
        Ok(table
            .levels()
            .iter()
            .zip(per_level)
            .map(|(&e, p)| (crate::ising::snap_energy(e), p))
            .collect())
    }

    /// `shots` independent computational-basis measurements.
    pub fn sample(&self, shots: usize, seed: u64) -> Vec<u64> {
        let mut cdf = Vec::with_capacity(self.dim());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cdf.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..shots)
            .map(|_| {
                let u = rng.random::<f64>() * acc;
                let i = cdf.partition_point(|&c| c <= u);
                i.min(self.dim() - 1) as u64
            })
            .collect()
    }
}
