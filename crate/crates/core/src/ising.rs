//! Ising form of the Exact Cover penalty.
//!
//! With `x_r = (1 + s_r) / 2` the penalty `sum_f (sum_r a_fr x_r - 1)^2`
//! becomes `sum_{r<r'} J_rr' s_r s_r' + sum_r h_r s_r + offset`, where
//!
//! * `J_rr' = 1/2 sum_f a_fr a_fr'` (off-diagonal),
//! * `h_r = 1/2 sum_f a_fr (sum_r' a_fr' - 2)`,
//! * `offset = 1/4 sum_f (sum_r a_fr - 2)^2 + 1/2 Tr(J)` with the diagonal
//!   `J_rr = 1/2 |route r|` folded into the constant.
//!
//! Every coefficient is a multiple of 1/4, so floating-point evaluation is
//! exact for any instance that fits in memory.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::instance::ExactCoverInstance;

/// Default ceiling for exhaustive enumeration of the spectrum.
pub const SPECTRUM_LIMIT: usize = 25;

/// Snaps a floating-point energy to the integer level it represents.
///
/// Panics if the value is further than `1e-6` from an integer or negative,
/// since the penalty is integral by construction.
pub fn snap_energy(e: f64) -> u64 {
    let r = e.round();
    assert!(
        (e - r).abs() < 1e-6 && r >= 0.0,
        "energy {e} is not a non-negative integer"
    );
    r as u64
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsingModel {
    n: usize,
    /// Row-major `n x n`, symmetric, zero diagonal.
    couplings: Vec<f64>,
    fields: Vec<f64>,
    offset: f64,
}

impl IsingModel {
    pub fn from_instance(inst: &ExactCoverInstance) -> Self {
        let n = inst.n_routes();
        let mut couplings = vec![0.0; n * n];
        let mut fields = vec![0.0; n];
        let mut offset = 0.0;
        let mut trace = 0.0;

        for routes in inst.flight_routes() {
            let load = routes.len() as f64;
            offset += 0.25 * (load - 2.0).powi(2);
            for &r in &routes {
                fields[r] += 0.5 * (load - 2.0);
                trace += 0.5;
                for &q in &routes {
                    if q != r {
                        couplings[r * n + q] += 0.5;
                    }
                }
            }
        }
        offset += 0.5 * trace;
        Self {
            n,
            couplings,
            fields,
            offset,
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn coupling(&self, r: usize, q: usize) -> f64 {
        self.couplings[r * self.n + q]
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn fields(&self) -> &[f64] {
        &self.fields
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Ising energy of a route selection, offset included.
    pub fn energy(&self, x: &[bool]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(self.energy_of_index(bits::index_from_bits(x)))
    }

    /// Same as [`energy`](Self::energy) for a basis index.
    pub fn energy_of_index(&self, index: u64) -> f64 {
        let spin = |r: usize| if index >> r & 1 == 1 { 1.0 } else { -1.0 };
        let mut e = self.offset;
        for r in 0..self.n {
            let sr = spin(r);
            e += self.fields[r] * sr;
            let row = &self.couplings[r * self.n..(r + 1) * self.n];
            for (q, &j) in row.iter().enumerate().skip(r + 1) {
                e += j * sr * spin(q);
            }
        }
        e
    }

    /// Energies of all `2^n` basis states, indexed by basis index.
    ///
    /// Built incrementally: setting bit `k` on top of a state `y` with bit `k`
    /// clear flips `s_k` from -1 to +1 and changes the energy by
    /// `2 h_k + 2 sum_q J_kq s_q(y)`.
    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.n;
        let dim = 1usize << n;
        let mut diag = vec![0.0; dim];
        let mut base = self.offset - self.fields.iter().sum::<f64>();
        for r in 0..n {
            for q in r + 1..n {
                base += self.coupling(r, q);
            }
        }
        diag[0] = base;
        for x in 1..dim {
            let k = x.trailing_zeros() as usize;
            let y = x & !(1 << k);
            let row = &self.couplings[k * n..(k + 1) * n];
            let mut delta = 2.0 * self.fields[k];
            for (q, &j) in row.iter().enumerate() {
                if j != 0.0 {
                    delta += if y >> q & 1 == 1 { 2.0 * j } else { -2.0 * j };
                }
            }
            diag[x] = diag[y] + delta;
        }
        diag
    }

    /// Degeneracy of every energy level.
    pub fn spectrum(&self) -> Result<BTreeMap<u64, u64>> {
        self.spectrum_with_limit(SPECTRUM_LIMIT)
    }

    pub fn spectrum_with_limit(&self, limit: usize) -> Result<BTreeMap<u64, u64>> {
        if self.n > limit {
            return Err(Error::TooManyQubits {
                what: "spectrum",
                got: self.n,
                limit,
            });
        }
        let mut counts = BTreeMap::new();
        for e in self.diagonal() {
            *counts.entry(snap_energy(e)).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

pub fn build_ising(inst: &ExactCoverInstance) -> IsingModel {
    IsingModel::from_instance(inst)
}

/// The Exact Cover penalty evaluated directly on the incidence structure,
/// without going through the Ising coefficients.
pub fn penalty_energy(inst: &ExactCoverInstance, x: &[bool]) -> Result<u64> {
    if x.len() != inst.n_routes() {
        return Err(Error::DimensionMismatch {
            expected: inst.n_routes(),
            got: x.len(),
        });
    }
    let selected: Vec<usize> = (0..x.len()).filter(|&r| x[r]).collect();
    Ok(inst
        .coverage(&selected)
        .iter()
        .map(|&c| {
            let d = c as i64 - 1;
            (d * d) as u64
        })
        .sum())
}
