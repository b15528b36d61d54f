use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tailqaoa_core::simulator::{NoisePlacement, DEFAULT_DT, DEFAULT_MAX_QUBITS};

#[derive(Debug, Parser)]
#[command(name = "tailqaoa", version, about = "Exact Cover QAOA and annealing simulations")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Serialize)]
pub struct GlobalOpts {
    /// Worker threads for parallel kernels (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Refuse state vectors above this many qubits.
    #[arg(long, global = true, env = "QAOA_MAX_QUBITS", default_value_t = DEFAULT_MAX_QUBITS)]
    pub max_qubits: usize,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate a planted instance with a unique exact cover.
    Generate(GenerateArgs),
    /// Problem-graph valency and solution count of one or more instances.
    Info(InfoArgs),
    /// Dump the Ising couplings, fields and offset.
    IsingDump(InstanceOut),
    /// Scan E_1 and F_1 over a (gamma, beta) grid.
    Landscape(LandscapeArgs),
    /// Optimize variational parameters level by level.
    Optimize(OptimizeArgs),
    /// Cost histograms of the optimized states, including p = 0.
    Histogram(HistogramArgs),
    /// Measure an optimized state repeatedly.
    Sample(SampleArgs),
    /// Success probability under depolarizing noise.
    Noise(NoiseArgs),
    /// Linear-schedule annealing over a set of total times.
    Anneal(AnnealArgs),
    /// Time to solution for QAOA and annealing.
    Tts(TtsArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 77)]
    pub flights: usize,
    #[arg(long, default_value_t = 8)]
    pub routes: usize,
    /// Number of routes in the planted cover.
    #[arg(long, default_value_t = 4)]
    pub planted: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct InfoArgs {
    /// Instance files; several files also produce family averages.
    #[arg(required = true)]
    pub instances: Vec<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct InstanceOut {
    pub instance: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct LandscapeArgs {
    pub instance: PathBuf,
    /// Grid points per axis over [0, pi].
    #[arg(short, long, default_value_t = 64)]
    pub resolution: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Multistart at p = 1, then interpolated Nelder-Mead starts.
    Interp,
    /// Independent multistart quasi-Newton at every level.
    Multistart,
}

#[derive(Debug, Args, Serialize)]
pub struct OptimizeArgs {
    pub instance: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub p_max: usize,
    #[arg(long, value_enum, default_value_t = Strategy::Interp)]
    pub strategy: Strategy,
    /// Random starts for the multistart searches.
    #[arg(long, default_value_t = 4000)]
    pub n_starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct HistogramArgs {
    pub instance: PathBuf,
    /// Trace written by `optimize`.
    #[arg(long)]
    pub trace: PathBuf,
    /// Highest level to include (default: all levels in the trace).
    #[arg(long)]
    pub p_max: Option<usize>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SampleArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub trace: PathBuf,
    /// Level to sample (default: the level with the highest F).
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long, default_value_t = 74)]
    pub shots: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Placement {
    /// After every cost layer and every mixer layer.
    EveryHalfLayer,
    /// Once per level, between cost and mixer.
    BetweenCostAndMixer,
}

impl From<Placement> for NoisePlacement {
    fn from(p: Placement) -> Self {
        match p {
            Placement::EveryHalfLayer => NoisePlacement::EveryHalfLayer,
            Placement::BetweenCostAndMixer => NoisePlacement::BetweenCostAndMixer,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct NoiseArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub trace: PathBuf,
    /// Error probabilities per qubit and round, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.001,0.005,0.01")]
    pub eta: Vec<f64>,
    #[arg(long, default_value_t = 2000)]
    pub trajectories: usize,
    #[arg(long, value_enum, default_value_t = Placement::EveryHalfLayer)]
    pub placement: Placement,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct AnnealArgs {
    pub instance: PathBuf,
    /// Total annealing times, comma separated (default: 16 log-spaced points over [0.5, 200]).
    #[arg(long, value_delimiter = ',')]
    pub time: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
    /// Target probability used for the tts column.
    #[arg(long, default_value_t = 0.99)]
    pub p_d: f64,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct TtsArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub trace: PathBuf,
    /// Annealing times, comma separated (default: 16 log-spaced points over [0.5, 200]).
    #[arg(long, value_delimiter = ',')]
    pub t_grid: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_DT)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.99)]
    pub p_d: f64,
    /// Also write the annealing sweep as CSV.
    #[arg(long)]
    pub sweep_csv: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}
