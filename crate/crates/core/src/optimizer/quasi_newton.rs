//! Box-constrained BFGS with central finite-difference gradients.
//!
//! Iterates are projected onto the box after every trial step; coordinates
//! sitting on a bound with the gradient pushing outward are frozen for that
//! iteration. The line search is Armijo backtracking along the projected
//! path.

use std::cell::Cell;

use super::LocalMinimum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiNewtonConfig {
    pub lower: f64,
    pub upper: f64,
    /// Central-difference step.
    pub fd_step: f64,
    /// Stop when one iteration changes the objective by less than this.
    pub f_tol: f64,
    /// Stop when one iteration moves the point by less than this (2-norm).
    pub x_tol: f64,
    pub max_iterations: usize,
    /// Longest first trial step along the search direction.
    pub max_step: f64,
}

impl Default for QuasiNewtonConfig {
    fn default() -> Self {
        Self {
            lower: 0.0,
            upper: std::f64::consts::PI,
            fd_step: 1e-6,
            f_tol: 1e-6,
            x_tol: 1e-6,
            max_iterations: 400,
            max_step: 0.5,
        }
    }
}

pub fn central_gradient<F: Fn(&[f64]) -> f64>(f: F, x: &[f64], h: f64) -> Vec<f64> {
    let mut probe = x.to_vec();
    (0..x.len())
        .map(|i| {
            probe[i] = x[i] + h;
            let up = f(&probe);
            probe[i] = x[i] - h;
            let down = f(&probe);
            probe[i] = x[i];
            (up - down) / (2.0 * h)
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn minimize_box_bfgs<F>(f: F, x0: &[f64], cfg: &QuasiNewtonConfig) -> LocalMinimum
where
    F: Fn(&[f64]) -> f64,
{
    let n = x0.len();
    let calls = Cell::new(0usize);
    let eval = |x: &[f64]| {
        calls.set(calls.get() + 1);
        f(x)
    };
    let project = |x: &mut [f64]| {
        for v in x.iter_mut() {
            *v = v.clamp(cfg.lower, cfg.upper);
        }
    };
    let identity = |h: &mut Vec<f64>, scale: f64| {
        h.iter_mut().for_each(|v| *v = 0.0);
        for i in 0..n {
            h[i * n + i] = scale;
        }
    };

    let mut x = x0.to_vec();
    project(&mut x);
    let mut fx = eval(&x);
    let mut g = central_gradient(eval, &x, cfg.fd_step);
    let mut hinv = vec![0.0; n * n];
    identity(&mut hinv, 1.0);
    let mut updated = false;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < cfg.max_iterations {
        iterations += 1;
        let free: Vec<bool> = (0..n)
            .map(|i| !((x[i] <= cfg.lower && g[i] > 0.0) || (x[i] >= cfg.upper && g[i] < 0.0)))
            .collect();
        let gf: Vec<f64> = (0..n).map(|i| if free[i] { g[i] } else { 0.0 }).collect();
        let mut d: Vec<f64> = (0..n)
            .map(|i| {
                if free[i] {
                    -dot(&hinv[i * n..(i + 1) * n], &gf)
                } else {
                    0.0
                }
            })
            .collect();
        if dot(&g, &d) >= 0.0 {
            identity(&mut hinv, 1.0);
            updated = false;
            d = gf.iter().map(|v| -v).collect();
        }
        let dn = norm(&d);
        if dn == 0.0 {
            converged = true;
            break;
        }

        let mut alpha = (cfg.max_step / dn).min(1.0);
        let mut accepted = None;
        for _ in 0..60 {
            let mut trial: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + alpha * di).collect();
            project(&mut trial);
            let s: Vec<f64> = trial.iter().zip(&x).map(|(a, b)| a - b).collect();
            if norm(&s) == 0.0 {
                break;
            }
            let ft = eval(&trial);
            if ft <= fx + 1e-4 * dot(&g, &s) {
                accepted = Some((trial, ft, s));
                break;
            }
            alpha *= 0.5;
        }
        let Some((xn, fnew, s)) = accepted else {
            converged = true;
            break;
        };

        let gn = central_gradient(eval, &xn, cfg.fd_step);
        let y: Vec<f64> = gn.iter().zip(&g).map(|(a, b)| a - b).collect();
        let df = (fx - fnew).abs();
        let step = norm(&s);
        x = xn;
        fx = fnew;
        g = gn;

        let sy = dot(&s, &y);
        if sy > 1e-12 * norm(&s) * norm(&y) {
            if !updated {
                identity(&mut hinv, sy / dot(&y, &y));
                updated = true;
            }
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n).map(|i| dot(&hinv[i * n..(i + 1) * n], &y)).collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    hinv[i * n + j] += -rho * (hy[i] * s[j] + s[i] * hy[j])
                        + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }

        if df < cfg.f_tol || step < cfg.x_tol {
            converged = true;
            break;
        }
    }

    LocalMinimum {
        x,
        value: fx,
        evaluations: calls.get(),
        iterations,
        converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_bowl() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 10.0 * (x[1] - 2.0).powi(2);
        let m = minimize_box_bfgs(f, &[0.3, 0.3], &QuasiNewtonConfig::default());
        assert!((m.x[0] - 1.0).abs() < 1e-4 && (m.x[1] - 2.0).abs() < 1e-4, "{m:?}");
        assert!(m.converged);
    }

    #[test]
    fn bound_active_minimum() {
        // unconstrained minimum at (-1, 5) lies outside [0, pi]^2
        let f = |x: &[f64]| (x[0] + 1.0).powi(2) + (x[1] - 5.0).powi(2);
        let m = minimize_box_bfgs(f, &[1.0, 1.0], &QuasiNewtonConfig::default());
        assert_eq!(m.x, vec![0.0, std::f64::consts::PI]);
    }

    #[test]
    fn rosenbrock_in_box() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let cfg = QuasiNewtonConfig {
            f_tol: 1e-12,
            x_tol: 1e-12,
            ..Default::default()
        };
        let m = minimize_box_bfgs(f, &[0.2, 2.5], &cfg);
        assert!((m.x[0] - 1.0).abs() < 1e-3 && (m.x[1] - 1.0).abs() < 2e-3, "{m:?}");
    }

    #[test]
    fn stationary_start_is_a_fixed_point() {
        let f = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] - 1.5).powi(2);
        let m = minimize_box_bfgs(f, &[1.0, 1.5], &QuasiNewtonConfig::default());
        assert!((m.x[0] - 1.0).abs() < 1e-6 && (m.x[1] - 1.5).abs() < 1e-6);
    }

    #[test]
    fn gradient_of_sine() {
        let g = central_gradient(|x: &[f64]| x[0].sin() * x[1], &[0.4, 2.0], 1e-6);
        assert!((g[0] - 0.4f64.cos() * 2.0).abs() < 1e-8);
        assert!((g[1] - 0.4f64.sin()).abs() < 1e-8);
    }
}
