use tailqaoa_core::instance::{generate_planted, to_graph, valency_stats};
use tailqaoa_core::optimizer::{
    central_gradient, interp_pipeline, interp_start, landscape_scan, multistart_optimize,
    multistart_trace, nelder_mead, MultistartConfig,
};
use tailqaoa_core::simulator::{anneal, AnnealConfig, QaoaProblem, DEFAULT_MAX_QUBITS};
use tailqaoa_core::{ExactCoverInstance, VariationalParams};

fn problem(flights: usize, routes: usize, planted: usize, seed: u64) -> QaoaProblem {
    let inst = generate_planted(flights, routes, planted, seed).unwrap();
    QaoaProblem::from_instance(&inst, DEFAULT_MAX_QUBITS).unwrap()
}

fn interior_gradient_norm(prob: &QaoaProblem, params: &VariationalParams) -> f64 {
    let x = params.to_flat();
    let g = central_gradient(
        |v: &[f64]| prob.energy(&VariationalParams::from_flat(v).unwrap()),
        &x,
        1e-6,
    );
    x.iter()
        .zip(&g)
        .filter(|(v, _)| **v > 1e-9 && **v < std::f64::consts::PI - 1e-9)
        .map(|(_, d)| d * d)
        .sum::<f64>()
        .sqrt()
}

#[test]
fn multistart_optimum_is_stationary() {
    let prob = problem(16, 6, 3, 2);
    for p in 1..=2 {
        let best = multistart_optimize(&prob, p, &MultistartConfig::new(20, 4)).unwrap();
        let g = interior_gradient_norm(&prob, &best.params);
        assert!(g < 1e-3, "p = {p}: gradient norm {g}");
    }
}

#[test]
fn multistart_reaches_the_grid_minimum() {
    let inst = ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap();
    let prob = QaoaProblem::from_instance(&inst, DEFAULT_MAX_QUBITS).unwrap();
    let grid = landscape_scan(&prob, 256).unwrap();
    let best = multistart_optimize(&prob, 1, &MultistartConfig::new(100, 0)).unwrap();
    assert!(best.energy <= grid.argmin_energy().value + 1e-4);
}

#[test]
fn traces_are_reproducible() {
    let prob = problem(20, 6, 3, 1);
    let cfg = MultistartConfig::new(10, 9);
    let a = multistart_trace(&prob, 2, &cfg).unwrap();
    let b = multistart_trace(&prob, 2, &cfg).unwrap();
    for (x, y) in a.levels.iter().zip(&b.levels) {
        assert_eq!(x.params, y.params);
        assert_eq!(x.energy, y.energy);
    }
}

#[test]
fn nelder_mead_from_interp_improves_on_previous_level() {
    let prob = problem(77, 8, 4, 3);
    let base = multistart_optimize(&prob, 1, &MultistartConfig::new(50, 3)).unwrap();
    let trace = interp_pipeline(&prob, 3, base).unwrap();
    let e: Vec<f64> = trace.levels.iter().map(|l| l.energy).collect();
    assert!(e[2] < e[1] && e[1] < e[0], "{e:?}");
    let l3 = nelder_mead(&prob, &interp_start(&trace.levels[1].params));
    assert_eq!(l3.params, trace.levels[2].params);
    assert!(l3.evaluations <= 180);
}

#[test]
fn pipeline_with_single_level_returns_base() {
    let prob = problem(12, 5, 2, 0);
    let base = multistart_optimize(&prob, 1, &MultistartConfig::new(5, 0)).unwrap();
    let trace = interp_pipeline(&prob, 1, base.clone()).unwrap();
    assert_eq!(trace.levels, vec![base]);
}

#[test]
fn depth_five_beats_random_guessing() {
    let prob = problem(18, 6, 3, 5);
    let base = multistart_optimize(&prob, 1, &MultistartConfig::new(30, 5)).unwrap();
    let trace = interp_pipeline(&prob, 5, base).unwrap();
    let f5 = trace.level(5).unwrap().success_probability;
    assert!(f5 > 1.0 / 64.0, "F_5 = {f5}");
}

#[test]
fn denser_graphs_are_harder() {
    // Two planted routes leave six near-complete decoys; five leave sparse overlap.
    let family = |planted: usize| -> (f64, f64) {
        let mut valency = 0.0;
        let mut success = 0.0;
        for seed in 0..6 {
            let inst = generate_planted(77, 8, planted, seed).unwrap();
            valency += valency_stats(&to_graph(&inst)).mean;
            let prob = QaoaProblem::from_instance(&inst, DEFAULT_MAX_QUBITS).unwrap();
            let base = multistart_optimize(&prob, 1, &MultistartConfig::new(30, seed)).unwrap();
            let trace = interp_pipeline(&prob, 4, base).unwrap();
            success += trace.level(4).unwrap().success_probability;
        }
        (valency / 6.0, success / 6.0)
    };
    let (dense_v, dense_f) = family(2);
    let (sparse_v, sparse_f) = family(5);
    assert!(dense_v > sparse_v);
    assert!(dense_f < sparse_f, "dense F {dense_f} vs sparse F {sparse_f}");
}

#[test]
fn adiabatic_limit_three_qubits() {
    let prob = problem(6, 3, 2, 0);
    let out = anneal(&prob, &AnnealConfig::new(100.0, 0.01)).unwrap();
    assert!(out.success_probability > 0.9);
    assert!(out.dt_sensitivity().unwrap() < 1e-3);
}
