use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;
use tailqaoa_core::analysis::{
    anneal_sweep, default_time_grid, required_measurements, tts_qa, tts_qaoa, tts_qaoa_levels,
    TtsReport,
};
use tailqaoa_core::bits::format_bitstring;
use tailqaoa_core::instance::{
    generate_planted, parse_instance, solve_exact, to_graph, valency_stats, ORACLE_LIMIT,
};
use tailqaoa_core::io::{self, NoiseRow};
use tailqaoa_core::ising::build_ising;
use tailqaoa_core::optimizer::{
    interp_pipeline, landscape_scan, multistart_optimize, multistart_trace, MultistartConfig,
};
use tailqaoa_core::simulator::{run_noisy, NoiseConfig, StateVector};
use tailqaoa_core::{ExactCoverInstance, OptimizationTrace, QaoaProblem};

use crate::cli::{
    AnnealArgs, Cli, Command, GenerateArgs, HistogramArgs, InfoArgs, InstanceOut, LandscapeArgs,
    NoiseArgs, OptimizeArgs, SampleArgs, Strategy, TtsArgs,
};

/// Bad flags or input files; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

macro_rules! usage {
    ($($arg:tt)*) => {
        return Err(UsageError(format!($($arg)*)).into())
    };
}

/// A file to write once every computation has succeeded.
struct Artifact {
    path: Option<PathBuf>,
    text: String,
}

impl Artifact {
    fn new(path: &Option<PathBuf>, text: String) -> Self {
        Self {
            path: path.clone(),
            text,
        }
    }
}

fn write_all(artifacts: Vec<Artifact>) -> Result<()> {
    let mut written: Vec<PathBuf> = Vec::new();
    for a in artifacts {
        let Some(path) = a.path else {
            print!("{}", a.text);
            continue;
        };
        let tmp = path.with_extension("partial");
        let res = fs::write(&tmp, &a.text).and_then(|_| fs::rename(&tmp, &path));
        if let Err(e) = res {
            let _ = fs::remove_file(&tmp);
            for w in &written {
                let _ = fs::remove_file(w);
            }
            return Err(e).with_context(|| format!("writing {}", path.display()));
        }
        written.push(path);
    }
    Ok(())
}

fn config_line(cli: &Cli) -> String {
    let echo = json!({
        "command": &cli.command,
        "max_qubits": cli.global.max_qubits,
        "threads": cli.global.threads,
    });
    format!("tailqaoa {echo}")
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<ExactCoverInstance> {
    let text = read_text(path)?;
    parse_instance(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())).into())
}

fn load_problem(path: &Path, max_qubits: usize) -> Result<QaoaProblem> {
    let inst = load_instance(path)?;
    if inst.n_routes() > max_qubits {
        usage!(
            "{}: {} routes exceed the qubit cap of {max_qubits} (raise --max-qubits or QAOA_MAX_QUBITS)",
            path.display(),
            inst.n_routes()
        );
    }
    Ok(QaoaProblem::from_instance(&inst, max_qubits)?)
}

fn load_trace(path: &Path, problem: &QaoaProblem) -> Result<OptimizationTrace> {
    let trace = io::trace_from_json(&read_text(path)?)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    if trace.levels.is_empty() {
        usage!("{}: trace has no levels", path.display());
    }
    // Refresh E and F so a trace from another instance cannot leak in.
    let mut trace = trace;
    for l in &mut trace.levels {
        let ev = problem.evaluate(&l.params);
        l.energy = ev.energy;
        l.success_probability = ev.success_probability;
    }
    Ok(trace)
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn check_probability(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        usage!("--{name} must lie in (0, 1), got {v}");
    }
    Ok(())
}

fn check_times(name: &str, times: &[f64], dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        usage!("--dt must be positive, got {dt}");
    }
    if let Some(bad) = times.iter().find(|t| !(**t > 0.0 && t.is_finite())) {
        usage!("--{name} values must be positive, got {bad}");
    }
    Ok(if times.is_empty() {
        default_time_grid()
    } else {
        times.to_vec()
    })
}

pub fn run(cli: &Cli) -> Result<()> {
    if let Some(n) = cli.global.threads {
        if n == 0 {
            usage!("--threads must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let header = config_line(cli);
    let cap = cli.global.max_qubits;
    let artifacts = match &cli.command {
        Command::Generate(a) => generate(a)?,
        Command::Info(a) => info(a)?,
        Command::IsingDump(a) => ising_dump(a)?,
        Command::Landscape(a) => landscape(a, cap, &header)?,
        Command::Optimize(a) => optimize(a, cap, &header)?,
        Command::Histogram(a) => histogram(a, cap, &header)?,
        Command::Sample(a) => sample(a, cap, &header)?,
        Command::Noise(a) => noise(a, cap, &header)?,
        Command::Anneal(a) => anneal(a, cap, &header)?,
        Command::Tts(a) => tts(a, cap, &header)?,
    };
    write_all(artifacts)
}

fn generate(a: &GenerateArgs) -> Result<Vec<Artifact>> {
    let inst = generate_planted(a.flights, a.routes, a.planted, a.seed)?;
    if let Some(sol) = inst.known_solutions().and_then(|s| s.first()) {
        eprintln!(
            "planted cover: routes {:?} of {} ({} flights)",
            sol,
            inst.n_routes(),
            inst.n_flights()
        );
    }
    let mut text = inst.to_json();
    text.push('\n');
    Ok(vec![Artifact::new(&a.output, text)])
}

#[derive(Serialize)]
struct InstanceInfo {
    #[serde(skip_serializing_if = "Option::is_none")]
    file: Option<String>,
    n: usize,
    flights: usize,
    valency_mean: f64,
    valency_std: f64,
    /// `None` when the instance is too large for the oracle and carries no
    /// known solutions.
    solutions: Option<usize>,
}

fn describe(inst: &ExactCoverInstance, file: Option<String>) -> InstanceInfo {
    let v = valency_stats(&to_graph(inst));
    let solutions = if inst.n_routes() <= ORACLE_LIMIT {
        Some(solve_exact(inst).len())
    } else {
        inst.known_solutions().map(<[_]>::len)
    };
    InstanceInfo {
        file,
        n: inst.n_routes(),
        flights: inst.n_flights(),
        valency_mean: v.mean,
        valency_std: v.std_dev,
        solutions,
    }
}

fn info(a: &InfoArgs) -> Result<Vec<Artifact>> {
    let instances = a
        .instances
        .iter()
        .map(|p| load_instance(p))
        .collect::<Result<Vec<_>>>()?;
    let text = if let [inst] = &instances[..] {
        json_line(&describe(inst, None))
    } else {
        let rows: Vec<InstanceInfo> = instances
            .iter()
            .zip(&a.instances)
            .map(|(inst, p)| describe(inst, Some(p.display().to_string())))
            .collect();
        let k = rows.len() as f64;
        let mean = rows.iter().map(|r| r.valency_mean).sum::<f64>() / k;
        let std = (rows.iter().map(|r| (r.valency_mean - mean).powi(2)).sum::<f64>() / k).sqrt();
        json_line(&json!({
            "instances": rows,
            "valency_mean": mean,
            "valency_std": std,
        }))
    };
    Ok(vec![Artifact::new(&a.output, text)])
}

fn ising_dump(a: &InstanceOut) -> Result<Vec<Artifact>> {
    let inst = load_instance(&a.instance)?;
    Ok(vec![Artifact::new(&a.output, io::ising_to_json(&build_ising(&inst)))])
}

fn landscape(a: &LandscapeArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    if a.resolution < 2 {
        usage!("--resolution must be at least 2, got {}", a.resolution);
    }
    let problem = load_problem(&a.instance, cap)?;
    let grid = landscape_scan(&problem, a.resolution)?;
    let best = grid.argmin_energy();
    eprintln!(
        "min E_1 = {:.6} at gamma = {:.4}, beta = {:.4}",
        best.value, best.gamma, best.beta
    );
    let text = io::with_header(header, &io::landscape_to_csv(&grid));
    Ok(vec![Artifact::new(&a.output, text)])
}

fn optimize(a: &OptimizeArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    if a.p_max == 0 {
        usage!("--p-max must be at least 1");
    }
    if a.n_starts == 0 {
        usage!("--n-starts must be at least 1");
    }
    let problem = load_problem(&a.instance, cap)?;
    let cfg = MultistartConfig::new(a.n_starts, a.seed);
    let trace = match a.strategy {
        Strategy::Interp => {
            let base = multistart_optimize(&problem, 1, &cfg)?;
            interp_pipeline(&problem, a.p_max, base)?
        }
        Strategy::Multistart => multistart_trace(&problem, a.p_max, &cfg)?,
    };
    for l in &trace.levels {
        eprintln!(
            "p = {:2}  E = {:10.6}  F = {:.6}  evals = {}",
            l.p, l.energy, l.success_probability, l.evaluations
        );
    }
    let text = io::with_header(header, &io::trace_to_json(&trace));
    Ok(vec![Artifact::new(&a.output, text)])
}

fn histogram(a: &HistogramArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    let problem = load_problem(&a.instance, cap)?;
    let trace = load_trace(&a.trace, &problem)?;
    let p_max = a.p_max.unwrap_or(usize::MAX);
    let plus = StateVector::plus_with_limit(problem.n_qubits(), cap)?;
    let mut levels = vec![(0, plus.cost_histogram(problem.table())?)];
    for l in trace.levels.iter().filter(|l| l.p <= p_max) {
        levels.push((l.p, problem.state(&l.params).cost_histogram(problem.table())?));
    }
    let text = io::with_header(header, &io::level_histograms_to_csv(&levels));
    Ok(vec![Artifact::new(&a.output, text)])
}

fn sample(a: &SampleArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    if a.shots == 0 {
        usage!("--shots must be at least 1");
    }
    let problem = load_problem(&a.instance, cap)?;
    let trace = load_trace(&a.trace, &problem)?;
    let level = match a.level {
        Some(p) => match trace.level(p) {
            Some(l) => l,
            None => usage!("trace has no level p = {p}"),
        },
        None => trace.best_success().expect("non-empty trace"),
    };
    let n = problem.n_qubits();
    let shots = problem.state(&level.params).sample(a.shots, a.seed);
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for &x in &shots {
        *counts.entry(format_bitstring(x, n)).or_default() += 1;
    }
    let hits = shots.iter().filter(|x| problem.solutions().contains(x)).count();
    let f = level.success_probability;
    let needed = if f > 0.0 {
        Some(required_measurements(f.min(1.0), 0.001)?)
    } else {
        None
    };
    let report = json!({
        "p": level.p,
        "F": f,
        "shots": a.shots,
        "seed": a.seed,
        "hits": hits,
        "found": hits > 0,
        "expected_found": 1.0 - (1.0 - f).powi(a.shots as i32),
        "required_measurements": needed,
        "solutions": problem.solutions().iter().map(|&s| format_bitstring(s, n)).collect::<Vec<_>>(),
        "counts": counts,
    });
    eprintln!("{hits} of {} shots hit an exact cover (F = {f:.6})", a.shots);
    Ok(vec![Artifact::new(&a.output, io::with_header(header, &json_line(&report)))])
}

fn noise(a: &NoiseArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    if a.eta.is_empty() {
        usage!("--eta needs at least one value");
    }
    if let Some(bad) = a.eta.iter().find(|e| !(0.0..=1.0).contains(*e)) {
        usage!("--eta values must lie in [0, 1], got {bad}");
    }
    if a.trajectories == 0 {
        usage!("--trajectories must be at least 1");
    }
    let problem = load_problem(&a.instance, cap)?;
    let trace = load_trace(&a.trace, &problem)?;
    let mut rows = Vec::new();
    for l in &trace.levels {
        for &eta in &a.eta {
            let cfg = NoiseConfig {
                placement: a.placement.into(),
                ..NoiseConfig::new(eta, a.trajectories, a.seed)
            };
            let est = run_noisy(&problem, &l.params, &cfg)?;
            rows.push(NoiseRow {
                p: l.p,
                eta,
                clean: l.success_probability,
                noisy: est.mean,
                std_error: est.std_error,
            });
        }
    }
    Ok(vec![Artifact::new(&a.output, io::with_header(header, &io::noise_to_csv(&rows)))])
}

fn anneal(a: &AnnealArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    check_probability("p-d", a.p_d)?;
    let times = check_times("time", &a.time, a.dt)?;
    let problem = load_problem(&a.instance, cap)?;
    let sweep = anneal_sweep(&problem, &times, a.p_d, a.dt)?;
    for pt in sweep.iter().filter(|pt| !pt.converged) {
        eprintln!(
            "warning: T = {} not converged under dt halving; reduce --dt",
            pt.total_time
        );
    }
    Ok(vec![Artifact::new(&a.output, io::with_header(header, &io::sweep_to_csv(&sweep)))])
}

fn faster(qaoa: &TtsReport, qa: &TtsReport) -> &'static str {
    match qaoa.tts.total_cmp(&qa.tts) {
        std::cmp::Ordering::Less => "QAOA",
        std::cmp::Ordering::Greater => "QA",
        std::cmp::Ordering::Equal => "tie",
    }
}

fn tts(a: &TtsArgs, cap: usize, header: &str) -> Result<Vec<Artifact>> {
    check_probability("p-d", a.p_d)?;
    let times = check_times("t-grid", &a.t_grid, a.dt)?;
    let problem = load_problem(&a.instance, cap)?;
    let trace = load_trace(&a.trace, &problem)?;
    let qaoa = tts_qaoa(&trace, a.p_d)?;
    let levels = tts_qaoa_levels(&trace, a.p_d)?;
    let (qa, sweep) = tts_qa(&problem, &times, a.p_d, a.dt)?;
    eprintln!(
        "TTS_QAOA = {:.4} (p = {}), TTS_QA = {:.4} (T = {:.4})",
        qaoa.tts, qaoa.schedule, qa.tts, qa.schedule
    );
    let report = json!({
        "qaoa": qaoa,
        "qa": qa,
        "faster": faster(&qaoa, &qa),
        "qaoa_levels": levels,
    });
    let mut out = vec![Artifact::new(&a.output, io::with_header(header, &json_line(&report)))];
    if let Some(path) = &a.sweep_csv {
        out.push(Artifact::new(
            &Some(path.clone()),
            io::with_header(header, &io::sweep_to_csv(&sweep)),
        ));
    }
    Ok(out)
}
