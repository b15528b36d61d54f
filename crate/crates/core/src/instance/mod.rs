//! Exact Cover instances: routes over flights.
//!
//! An instance is the incidence structure `a_fr` (flight `f` is flown by
//! route `r`) stored row-wise as one flight list per route. Route order is
//! significant: it fixes the qubit order for everything downstream.

mod dlx;
mod exact;
mod planted;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use exact::{solve_dlx, solve_exact, solve_exhaustive, DLX_THRESHOLD, ORACLE_LIMIT};
pub use planted::{generate_planted, MAX_RESAMPLING_ROUNDS};

/// Upper bound on routes imposed by the 64-bit basis index.
pub const MAX_ROUTES: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    n_flights: usize,
    routes: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    known_solutions: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactCoverInstance {
    n_flights: usize,
    routes: Vec<Vec<usize>>,
    known_solutions: Option<Vec<Vec<usize>>>,
}

impl ExactCoverInstance {
    pub fn new(n_flights: usize, routes: Vec<Vec<usize>>) -> Result<Self> {
        Self::with_solutions(n_flights, routes, None)
    }

    pub fn with_solutions(
        n_flights: usize,
        routes: Vec<Vec<usize>>,
        known_solutions: Option<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        if n_flights == 0 {
            return Err(Error::Malformed("n_flights must be positive".into()));
        }
        if routes.is_empty() {
            return Err(Error::Malformed("instance has no routes".into()));
        }
        if routes.len() > MAX_ROUTES {
            return Err(Error::TooManyQubits {
                what: "instance",
                got: routes.len(),
                limit: MAX_ROUTES,
            });
        }
        for (r, route) in routes.iter().enumerate() {
            if route.is_empty() {
                return Err(Error::EmptyRoute { route: r });
            }
            let mut seen = vec![false; n_flights];
            for (position, &flight) in route.iter().enumerate() {
                if flight >= n_flights {
                    return Err(Error::FlightOutOfRange {
                        route: r,
                        position,
                        flight,
                        n_flights,
                    });
                }
                if std::mem::replace(&mut seen[flight], true) {
                    return Err(Error::DuplicateFlight { route: r, flight });
                }
            }
        }
        let inst = Self {
            n_flights,
            routes,
            known_solutions: None,
        };
        if let Some(solutions) = &known_solutions {
            for (index, sol) in solutions.iter().enumerate() {
                inst.check_solution(sol)
                    .map_err(|reason| Error::InvalidKnownSolution { index, reason })?;
            }
        }
        Ok(Self {
            known_solutions,
            ..inst
        })
    }

    fn check_solution(&self, sol: &[usize]) -> std::result::Result<(), String> {
        let mut picked = vec![false; self.routes.len()];
        for &r in sol {
            if r >= self.routes.len() {
                return Err(format!("route index {r} out of range"));
            }
            if std::mem::replace(&mut picked[r], true) {
                return Err(format!("route {r} listed more than once"));
            }
        }
        if !self.is_exact_cover(sol) {
            return Err("not an exact cover".into());
        }
        Ok(())
    }

    pub fn n_flights(&self) -> usize {
        self.n_flights
    }

    /// Number of routes, which is the qubit count.
    pub fn n_routes(&self) -> usize {
        self.routes.len()
    }

    pub fn routes(&self) -> &[Vec<usize>] {
        &self.routes
    }

    pub fn known_solutions(&self) -> Option<&[Vec<usize>]> {
        self.known_solutions.as_deref()
    }

    /// Number of selected routes covering each flight.
    pub fn coverage(&self, selected: &[usize]) -> Vec<u32> {
        let mut count = vec![0u32; self.n_flights];
        for &r in selected {
            for &f in &self.routes[r] {
                count[f] += 1;
            }
        }
        count
    }

    pub fn is_exact_cover(&self, selected: &[usize]) -> bool {
        self.coverage(selected).iter().all(|&c| c == 1)
    }

    /// Per-flight list of the routes flying it (the columns of `a_fr`).
    pub fn flight_routes(&self) -> Vec<Vec<usize>> {
        let mut cols = vec![Vec::new(); self.n_flights];
        for (r, route) in self.routes.iter().enumerate() {
            for &f in route {
                cols[f].push(r);
            }
        }
        cols
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: InstanceFile = serde_json::from_str(text)?;
        Self::with_solutions(file.n_flights, file.routes, file.known_solutions)
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            n_flights: self.n_flights,
            routes: self.routes.clone(),
            known_solutions: self.known_solutions.clone(),
        };
        serde_json::to_string_pretty(&file).expect("instance serializes")
    }
}

/// Parses an instance file (`{"n_flights", "routes", "known_solutions"?}`).
pub fn parse_instance(text: &str) -> Result<ExactCoverInstance> {
    ExactCoverInstance::from_json(text)
}

/// Route-overlap graph: one vertex per route, an edge wherever two routes
/// share a flight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemGraph {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl ProblemGraph {
    pub fn new(n_vertices: usize, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            assert!(e.0 != e.1, "self-loop at vertex {}", e.0);
            assert!(e.0.max(e.1) < n_vertices, "edge {e:?} out of range");
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        Self { n_vertices, edges }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Edges as `(low, high)` pairs in sorted order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n_vertices];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

pub fn to_graph(inst: &ExactCoverInstance) -> ProblemGraph {
    let n = inst.n_routes();
    let mut adjacent = vec![false; n * n];
    for routes in inst.flight_routes() {
        for (i, &a) in routes.iter().enumerate() {
            for &b in &routes[i + 1..] {
                adjacent[a * n + b] = true;
            }
        }
    }
    let edges = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| adjacent[a * n + b])
        .collect();
    ProblemGraph::new(n, edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValencyStats {
    pub mean: f64,
    /// Population standard deviation of the vertex degrees.
    pub std_dev: f64,
}

pub fn valency_stats(g: &ProblemGraph) -> ValencyStats {
    let n = g.n_vertices();
    if n == 0 {
        return ValencyStats {
            mean: 0.0,
            std_dev: 0.0,
        };
    }
    let mean = 2.0 * g.edges().len() as f64 / n as f64;
    let var = g
        .degrees()
        .iter()
        .map(|&d| (d as f64 - mean).powi(2))
        .sum::<f64>()
        / n as f64;
    ValencyStats {
        mean,
        std_dev: var.sqrt(),
    }
}
