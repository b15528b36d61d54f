//! Exact Cover (decision-form Tail Assignment) instances solved by exact
//! state-vector simulation of QAOA.
//!
//! The pipeline runs instance -> Ising reduction -> simulated circuit ->
//! classical parameter optimization -> success statistics. Quantum annealing
//! and depolarizing noise are simulated on the same cost tables for
//! comparison.

pub mod analysis;
pub mod bits;
pub mod error;
pub mod instance;
pub mod io;
pub mod ising;
pub mod optimizer;
pub mod simulator;

pub use error::{Error, Result};
pub use instance::{ExactCoverInstance, ProblemGraph, ValencyStats};
pub use ising::IsingModel;
pub use optimizer::{LevelResult, OptimizationTrace};
pub use simulator::{QaoaProblem, StateVector, VariationalParams};
