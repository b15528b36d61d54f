use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{exact::solve_exact, ExactCoverInstance, MAX_ROUTES};
use crate::error::{Error, Result};

pub const MAX_RESAMPLING_ROUNDS: usize = 1000;

/// Builds an instance with exactly one exact cover.
///
/// The flights are split into `planted_size` disjoint routes (the planted
/// solution); the other routes are random decoys whose sizes are drawn
/// uniformly from the planted sizes' range. Decoys are resampled until the
/// exact-cover oracle finds only the planted cover. Route order is shuffled so
/// the planted routes do not sit at fixed qubits.
pub fn generate_planted(
    n_flights: usize,
    n_routes: usize,
    planted_size: usize,
    seed: u64,
) -> Result<ExactCoverInstance> {
    if planted_size > n_routes {
        return Err(Error::PlantedExceedsRoutes {
            planted: planted_size,
            routes: n_routes,
        });
    }
    if planted_size == 0 {
        return Err(Error::InvalidGenerator("planted_size must be at least 1".into()));
    }
    if n_flights < planted_size {
        return Err(Error::InvalidGenerator(format!(
            "n_flights ({n_flights}) is smaller than planted_size ({planted_size})"
        )));
    }
    if n_routes > MAX_ROUTES {
        return Err(Error::TooManyQubits {
            what: "generator",
            got: n_routes,
            limit: MAX_ROUTES,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut flights: Vec<usize> = (0..n_flights).collect();
    flights.shuffle(&mut rng);
    let mut cuts: Vec<usize> = index::sample(&mut rng, n_flights - 1, planted_size - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    cuts.push(n_flights);
    let mut planted = Vec::with_capacity(planted_size);
    let mut start = 0;
    for &end in &cuts {
        let mut route = flights[start..end].to_vec();
        route.sort_unstable();
        planted.push(route);
        start = end;
    }
    let min_len = planted.iter().map(Vec::len).min().unwrap_or(1);
    let max_len = planted.iter().map(Vec::len).max().unwrap_or(1);

    for _ in 0..MAX_RESAMPLING_ROUNDS {
        let mut routes = planted.clone();
        for _ in planted_size..n_routes {
            let len = rng.random_range(min_len..=max_len);
            let mut decoy = index::sample(&mut rng, n_flights, len).into_vec();
            decoy.sort_unstable();
            routes.push(decoy);
        }
        let mut order: Vec<usize> = (0..n_routes).collect();
        order.shuffle(&mut rng);
        let shuffled: Vec<Vec<usize>> = order.iter().map(|&i| routes[i].clone()).collect();

        let candidate = ExactCoverInstance::new(n_flights, shuffled)?;
        let solutions = solve_exact(&candidate);
        if solutions.len() == 1 {
            let ExactCoverInstance {
                n_flights, routes, ..
            } = candidate;
            return ExactCoverInstance::with_solutions(n_flights, routes, Some(solutions));
        }
    }
    Err(Error::UniquenessUnachievable {
        attempts: MAX_RESAMPLING_ROUNDS,
    })
}
