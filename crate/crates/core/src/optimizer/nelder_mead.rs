use std::cell::Cell;

use super::LocalMinimum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMeadConfig {
    pub max_evaluations: usize,
    pub max_iterations: usize,
    /// Each extra simplex vertex is the start shifted by this along one axis.
    pub initial_step: f64,
    pub f_tol: f64,
    pub x_tol: f64,
}

impl NelderMeadConfig {
    /// Caps of `60 p` evaluations and `60 p` iterations for a depth-`p` run.
    pub fn for_depth(p: usize) -> Self {
        Self {
            max_evaluations: 60 * p,
            max_iterations: 60 * p,
            initial_step: 0.05,
            f_tol: 1e-4,
            x_tol: 1e-4,
        }
    }
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn lerp(from: &[f64], to: &[f64], t: f64) -> Vec<f64> {
    from.iter().zip(to).map(|(a, b)| a + t * (b - a)).collect()
}

/// Unconstrained Nelder-Mead. The best vertex never gets worse.
pub fn minimize_nelder_mead<F>(f: F, x0: &[f64], cfg: &NelderMeadConfig) -> LocalMinimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let calls = Cell::new(0usize);
    let budget_left = || calls.get() < cfg.max_evaluations;
    let eval = |x: &[f64]| {
        calls.set(calls.get() + 1);
        f(x)
    };

    let mut simplex: Vec<(Vec<f64>, f64)> = vec![(x0.to_vec(), eval(x0))];
    for i in 0..n {
        if !budget_left() {
            break;
        }
        let mut v = x0.to_vec();
        v[i] += cfg.initial_step;
        let fv = eval(&v);
        simplex.push((v, fv));
    }
    let order = |s: &mut Vec<(Vec<f64>, f64)>| s.sort_by(|a, b| a.1.total_cmp(&b.1));
    order(&mut simplex);

    let mut iterations = 0;
    let mut converged = false;
    while simplex.len() == n + 1 && iterations < cfg.max_iterations && budget_left() {
        let best = &simplex[0];
        let f_spread = simplex.iter().map(|v| (v.1 - best.1).abs()).fold(0.0, f64::max);
        let x_spread = simplex
            .iter()
            .flat_map(|v| v.0.iter().zip(&best.0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if f_spread <= cfg.f_tol && x_spread <= cfg.x_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for v in &simplex[..n] {
            for (c, x) in centroid.iter_mut().zip(&v.0) {
                *c += x / n as f64;
            }
        }
        let (worst, f_worst) = simplex[n].clone();
        let f_best = simplex[0].1;
        let f_second = simplex[n - 1].1;

        let xr = lerp(&centroid, &worst, -REFLECT);
        let fr = eval(&xr);
        if fr < f_best {
            if budget_left() {
                let xe = lerp(&centroid, &worst, -EXPAND);
                let fe = eval(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
            } else {
                simplex[n] = (xr, fr);
            }
        } else if fr < f_second {
            simplex[n] = (xr, fr);
        } else {
            if !budget_left() {
                if fr < f_worst {
                    simplex[n] = (xr, fr);
                }
                order(&mut simplex);
                break;
            }
            let (xc, fc, ok) = if fr < f_worst {
                let xc = lerp(&centroid, &xr, CONTRACT);
                let fc = eval(&xc);
                let ok = fc <= fr;
                (xc, fc, ok)
            } else {
                let xc = lerp(&centroid, &worst, CONTRACT);
                let fc = eval(&xc);
                let ok = fc < f_worst;
                (xc, fc, ok)
            };
            if ok {
                simplex[n] = (xc, fc);
            } else {
                let anchor = simplex[0].0.clone();
                for v in simplex.iter_mut().skip(1) {
                    if !budget_left() {
                        break;
                    }
                    v.0 = lerp(&anchor, &v.0, SHRINK);
                    v.1 = eval(&v.0);
                }
            }
        }
        order(&mut simplex);
    }
    order(&mut simplex);

    let (x, value) = simplex.swap_remove(0);
    LocalMinimum {
        x,
        value,
        evaluations: calls.get(),
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_quadratic_minimum_with_room() {
        let f = |x: &[f64]| (x[0] - 0.7).powi(2) + 3.0 * (x[1] + 0.2).powi(2);
        let cfg = NelderMeadConfig {
            max_evaluations: 1000,
            max_iterations: 1000,
            f_tol: 1e-12,
            x_tol: 1e-8,
            ..NelderMeadConfig::for_depth(1)
        };
        let m = minimize_nelder_mead(f, &[0.0, 0.0], &cfg);
        assert!(m.converged);
        assert!((m.x[0] - 0.7).abs() < 1e-6 && (m.x[1] + 0.2).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn respects_budget_caps() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 3.0).powi(2)).sum::<f64>();
        for p in 1..5 {
            let cfg = NelderMeadConfig::for_depth(p);
            let m = minimize_nelder_mead(f, &vec![0.0; 2 * p], &cfg);
            assert!(m.evaluations <= 60 * p, "{} > {}", m.evaluations, 60 * p);
            assert!(m.iterations <= 60 * p);
            assert!(m.value <= f(&vec![0.0; 2 * p]));
        }
    }

    #[test]
    fn stays_at_a_minimum() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] - 2.0).powi(2);
        let m = minimize_nelder_mead(f, &[1.0, 2.0], &NelderMeadConfig::for_depth(1));
        assert_eq!(m.x, vec![1.0, 2.0]);
        assert_eq!(m.value, 0.0);
    }
}
