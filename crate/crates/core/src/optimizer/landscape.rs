use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::simulator::{QaoaProblem, VariationalParams};

pub const DEFAULT_RESOLUTION: usize = 64;

/// `E_1` and `F_1` sampled on a uniform grid over `[0, pi] x [0, pi]`
/// (both end points included). Cells are stored gamma-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeGrid {
    pub resolution: usize,
    pub gamma_axis: Vec<f64>,
    pub beta_axis: Vec<f64>,
    pub energies: Vec<f64>,
    pub success: Vec<f64>,
}

/// Location and value of an extremal cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub gamma: f64,
    pub beta: f64,
    pub value: f64,
}

impl LandscapeGrid {
    pub fn cell(&self, gamma_index: usize, beta_index: usize) -> (f64, f64) {
        let k = gamma_index * self.resolution + beta_index;
        (self.energies[k], self.success[k])
    }

    fn point(&self, k: usize, value: f64) -> GridPoint {
        GridPoint {
            gamma: self.gamma_axis[k / self.resolution],
            beta: self.beta_axis[k % self.resolution],
            value,
        }
    }

    /// First cell (gamma-major order) attaining the minimal energy.
    pub fn argmin_energy(&self) -> GridPoint {
        let (k, &v) = self
            .energies
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
            .expect("non-empty grid");
        self.point(k, v)
    }

    pub fn argmax_success(&self) -> GridPoint {
        let (k, &v) = self
            .success
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty grid");
        self.point(k, v)
    }
}

pub fn landscape_scan(problem: &QaoaProblem, resolution: usize) -> Result<LandscapeGrid> {
    if resolution < 2 {
        return Err(Error::InvalidArgument(format!(
            "landscape resolution must be at least 2, got {resolution}"
        )));
    }
    let axis: Vec<f64> = (0..resolution)
        .map(|i| PI * i as f64 / (resolution - 1) as f64)
        .collect();
    let cells: Vec<(f64, f64)> = (0..resolution * resolution)
        .into_par_iter()
        .map(|k| {
            let params =
                VariationalParams::new(vec![axis[k / resolution]], vec![axis[k % resolution]])
                    .expect("finite angles");
            let ev = problem.evaluate(&params);
            (ev.energy, ev.success_probability)
        })
        .collect();
    let (energies, success) = cells.into_iter().unzip();
    Ok(LandscapeGrid {
        resolution,
        gamma_axis: axis.clone(),
        beta_axis: axis,
        energies,
        success,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::ExactCoverInstance;
    use crate::simulator::DEFAULT_MAX_QUBITS;

    #[test]
    fn toy_grid() {
        let inst = ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
        let prob = QaoaProblem::from_instance(&inst, DEFAULT_MAX_QUBITS).unwrap();
        let grid = landscape_scan(&prob, 16).unwrap();
        assert_eq!(grid.energies.len(), 256);
        let (e0, f0) = grid.cell(0, 0);
        assert!((e0 - 1.0).abs() < 1e-14);
        assert!((f0 - 0.25).abs() < 1e-14);
        assert!(grid.energies.iter().all(|&e| (-1e-12..=2.0 + 1e-12).contains(&e)));
        assert!(grid.argmin_energy().value <= e0);
        assert!(landscape_scan(&prob, 1).is_err());
    }
}
