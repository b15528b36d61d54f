use proptest::prelude::*;
use tailqaoa_core::instance::{
    generate_planted, parse_instance, solve_dlx, solve_exact, solve_exhaustive, to_graph,
    valency_stats,
};
use tailqaoa_core::ising::build_ising;
use tailqaoa_core::{Error, ExactCoverInstance};

fn toy() -> ExactCoverInstance {
    ExactCoverInstance::new(2, vec![vec![0], vec![1], vec![0, 1]]).unwrap()
}

#[test]
fn toy_solutions_and_valency() {
    let inst = toy();
    assert_eq!(solve_exact(&inst), vec![vec![0, 1], vec![2]]);
    let v = valency_stats(&to_graph(&inst));
    assert!((v.mean - 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn file_format_round_trip() {
    let text = r#"{"n_flights": 4, "routes": [[0, 1], [2, 3], [1, 2], [0, 3]]}"#;
    let inst = parse_instance(text).unwrap();
    assert_eq!(inst.n_routes(), 4);
    assert_eq!(parse_instance(&inst.to_json()).unwrap(), inst);
    assert_eq!(solve_exact(&inst), vec![vec![0, 1], vec![2, 3]]);
}

#[test]
fn rejects_out_of_range_flight() {
    let err = parse_instance(r#"{"n_flights": 2, "routes": [[0, 5]]}"#).unwrap_err();
    assert!(matches!(err, Error::FlightOutOfRange { flight: 5, .. }), "{err}");
}

#[test]
fn rejects_bogus_known_solution() {
    let text = r#"{"n_flights": 2, "routes": [[0], [1]], "known_solutions": [[0]]}"#;
    assert!(parse_instance(text).is_err());
}

#[test]
fn seventy_seven_flight_family() {
    for seed in 0..3 {
        let inst = generate_planted(77, 8, 4, seed).unwrap();
        assert_eq!(inst.n_routes(), 8);
        assert_eq!(inst.n_flights(), 77);
        let sols = solve_exact(&inst);
        assert_eq!(sols.len(), 1);
        assert_eq!(inst.known_solutions().unwrap(), &sols[..]);
    }
}

#[test]
fn planted_validation() {
    assert!(matches!(
        generate_planted(10, 8, 9, 0),
        Err(Error::PlantedExceedsRoutes { .. })
    ));
    assert!(generate_planted(2, 4, 3, 0).is_err());
}

#[test]
fn family_valency_near_target() {
    let means: Vec<f64> = (0..10)
        .map(|s| valency_stats(&to_graph(&generate_planted(77, 8, 4, s).unwrap())).mean)
        .collect();
    let avg = means.iter().sum::<f64>() / means.len() as f64;
    assert!((avg - 5.15).abs() < 0.5, "mean valency {avg}");
}

#[test]
fn dlx_and_enumeration_agree_on_larger_instances() {
    for seed in 0..4 {
        let inst = generate_planted(30, 22, 6, seed).unwrap();
        assert_eq!(solve_dlx(&inst), solve_exhaustive(&inst));
    }
}

#[test]
fn graph_edges_are_positive_couplings() {
    for seed in 0..10 {
        let inst = generate_planted(20, 9, 4, seed).unwrap();
        let m = build_ising(&inst);
        let g = to_graph(&inst);
        let mut from_j = Vec::new();
        for r in 0..9 {
            for q in r + 1..9 {
                if m.coupling(r, q) > 0.0 {
                    from_j.push((r, q));
                }
            }
        }
        assert_eq!(g.edges(), &from_j[..]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn planted_is_deterministic_and_unique(
        flights in 6usize..30,
        routes in 3usize..10,
        seed in any::<u64>(),
    ) {
        let planted = 1 + routes / 3;
        let a = generate_planted(flights, routes, planted, seed).unwrap();
        let b = generate_planted(flights, routes, planted, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let sols = solve_exact(&a);
        prop_assert_eq!(sols.len(), 1);
        prop_assert_eq!(sols[0].len(), planted);
        prop_assert!(a.is_exact_cover(&sols[0]));
    }

    #[test]
    fn dlx_matches_enumeration(
        flights in 3usize..9,
        rows in proptest::collection::vec(proptest::collection::btree_set(0usize..8, 1..4), 1..12),
    ) {
        let routes: Vec<Vec<usize>> = rows
            .into_iter()
            .map(|s| s.into_iter().map(|f| f % flights).collect::<std::collections::BTreeSet<_>>())
            .map(|s| s.into_iter().collect())
            .collect();
        let inst = ExactCoverInstance::new(flights, routes).unwrap();
        prop_assert_eq!(solve_dlx(&inst), solve_exhaustive(&inst));
    }
}
