use super::{nelder_mead, LevelResult, OptimizationTrace};
use crate::error::{Error, Result};
use crate::simulator::{QaoaProblem, VariationalParams};

/// Level-`p` angles linearly resampled onto `p + 1` slots:
/// `x'_i = (i-1)/p * x_{i-1} + (p-i+1)/p * x_i` for `i = 1..=p+1`, with
/// `x_0 = x_{p+1} = 0`. Gammas and betas are treated alike.
pub fn interp_start(prev: &VariationalParams) -> VariationalParams {
    let stretch = |xs: &[f64]| -> Vec<f64> {
        let p = xs.len();
        let at = |i: usize| if i == 0 || i > p { 0.0 } else { xs[i - 1] };
        (1..=p + 1)
            .map(|i| {
                let (i, pf) = (i as f64, p as f64);
                (i - 1.0) / pf * at(i as usize - 1) + (pf - i + 1.0) / pf * at(i as usize)
            })
            .collect()
    };
    VariationalParams::new(stretch(prev.gammas()), stretch(prev.betas()))
        .expect("interpolation keeps lengths equal")
}

/// Walks `interp_start` + Nelder-Mead from `base` up to level `p_max`,
/// recording every level including `base`.
pub fn interp_pipeline(
    problem: &QaoaProblem,
    p_max: usize,
    base: LevelResult,
) -> Result<OptimizationTrace> {
    if p_max < base.p {
        return Err(Error::InvalidArgument(format!(
            "p_max ({p_max}) below the base level ({})",
            base.p
        )));
    }
    let mut levels = vec![base];
    while levels.last().expect("non-empty").p < p_max {
        let start = interp_start(&levels.last().expect("non-empty").params);
        levels.push(nelder_mead(problem, &start));
    }
    Ok(OptimizationTrace { levels })
}
