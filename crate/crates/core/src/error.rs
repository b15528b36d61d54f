use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed instance: {0}")]
    Malformed(String),

    #[error("route {route}, position {position}: flight index {flight} out of range (n_flights = {n_flights})")]
    FlightOutOfRange {
        route: usize,
        position: usize,
        flight: usize,
        n_flights: usize,
    },

    #[error("route {route} is empty")]
    EmptyRoute { route: usize },

    #[error("route {route}: flight {flight} listed more than once")]
    DuplicateFlight { route: usize, flight: usize },

    #[error("known solution {index}: {reason}")]
    InvalidKnownSolution { index: usize, reason: String },

    #[error("planted_size exceeds n_routes ({planted} > {routes})")]
    PlantedExceedsRoutes { planted: usize, routes: usize },

    #[error("invalid generator arguments: {0}")]
    InvalidGenerator(String),

    #[error("could not plant a unique exact cover after {attempts} resampling rounds")]
    UniquenessUnachievable { attempts: usize },

    #[error("{what} has {got} qubits, limit is {limit}")]
    TooManyQubits {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("solution list is empty")]
    NoSolutions,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no finite time to solution: success probability is zero for every schedule")]
    NoFiniteTts,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
