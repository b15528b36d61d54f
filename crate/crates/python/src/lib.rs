//! Python bindings: instances, the Ising model, QAOA evaluation and
//! optimization, annealing, noise and time-to-solution analysis.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use tailqaoa_core::analysis::{self, TtsReport};
use tailqaoa_core::instance::{self as inst, ExactCoverInstance};
use tailqaoa_core::ising::{build_ising, IsingModel};
use tailqaoa_core::optimizer::{self as opt, MultistartConfig};
use tailqaoa_core::simulator::{
    self as sim, AnnealConfig, NoiseConfig, NoisePlacement, QaoaProblem, DEFAULT_MAX_QUBITS,
};
use tailqaoa_core::{Error, LevelResult, VariationalParams};

fn err(e: Error) -> PyErr {
    match e {
        Error::UniquenessUnachievable { .. } | Error::NoSolutions | Error::NoFiniteTts => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn params(gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<VariationalParams> {
    VariationalParams::new(gammas, betas).map_err(err)
}

#[pyclass(name = "Instance", module = "tailqaoa", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInstance {
    inner: ExactCoverInstance,
}

#[pymethods]
impl PyInstance {
    #[new]
    #[pyo3(signature = (n_flights, routes, known_solutions=None))]
    fn new(
        n_flights: usize,
        routes: Vec<Vec<usize>>,
        known_solutions: Option<Vec<Vec<usize>>>,
    ) -> PyResult<Self> {
        let inner = ExactCoverInstance::with_solutions(n_flights, routes, known_solutions).map_err(err)?;
        Ok(Self { inner })
    }

    /// Planted instance with exactly one exact cover.
    #[staticmethod]
    fn planted(n_flights: usize, n_routes: usize, planted_size: usize, seed: u64) -> PyResult<Self> {
        let inner = inst::generate_planted(n_flights, n_routes, planted_size, seed).map_err(err)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = inst::parse_instance(text).map_err(err)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n_flights(&self) -> usize {
        self.inner.n_flights()
    }

    #[getter]
    fn n_routes(&self) -> usize {
        self.inner.n_routes()
    }

    #[getter]
    fn routes(&self) -> Vec<Vec<usize>> {
        self.inner.routes().to_vec()
    }

    #[getter]
    fn known_solutions(&self) -> Option<Vec<Vec<usize>>> {
        self.inner.known_solutions().map(<[_]>::to_vec)
    }

    fn is_exact_cover(&self, selected: Vec<usize>) -> bool {
        self.inner.is_exact_cover(&selected)
    }

    fn solve_exact(&self) -> Vec<Vec<usize>> {
        inst::solve_exact(&self.inner)
    }

    /// Edges of the route-overlap graph.
    fn graph_edges(&self) -> Vec<(usize, usize)> {
        inst::to_graph(&self.inner).edges().to_vec()
    }

    /// `(mean, std)` of the vertex degrees in the route-overlap graph.
    fn valency(&self) -> (f64, f64) {
        let v = inst::valency_stats(&inst::to_graph(&self.inner));
        (v.mean, v.std_dev)
    }

    fn ising(&self) -> PyIsingModel {
        PyIsingModel {
            inner: build_ising(&self.inner),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(n_flights={}, n_routes={})",
            self.inner.n_flights(),
            self.inner.n_routes()
        )
    }
}

#[pyclass(name = "IsingModel", module = "tailqaoa", frozen)]
struct PyIsingModel {
    inner: IsingModel,
}

#[pymethods]
impl PyIsingModel {
    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    #[getter]
    fn couplings(&self) -> Vec<Vec<f64>> {
        let n = self.inner.n_qubits();
        self.inner.couplings().chunks(n).map(<[_]>::to_vec).collect()
    }

    #[getter]
    fn fields(&self) -> Vec<f64> {
        self.inner.fields().to_vec()
    }

    #[getter]
    fn offset(&self) -> f64 {
        self.inner.offset()
    }

    /// Energy of a route selection given as one bool per route.
    fn energy(&self, bits: Vec<bool>) -> PyResult<f64> {
        self.inner.energy(&bits).map_err(err)
    }

    fn energy_of_index(&self, index: u64) -> f64 {
        self.inner.energy_of_index(index)
    }

    fn spectrum(&self) -> PyResult<BTreeMap<u64, u64>> {
        self.inner.spectrum().map_err(err)
    }
}

#[pyclass(name = "LevelResult", module = "tailqaoa", frozen, get_all, from_py_object)]
#[derive(Clone)]
struct PyLevel {
    p: usize,
    gammas: Vec<f64>,
    betas: Vec<f64>,
    energy: f64,
    success_probability: f64,
    evaluations: usize,
    seconds: f64,
}

impl From<&LevelResult> for PyLevel {
    fn from(l: &LevelResult) -> Self {
        Self {
            p: l.p,
            gammas: l.params.gammas().to_vec(),
            betas: l.params.betas().to_vec(),
            energy: l.energy,
            success_probability: l.success_probability,
            evaluations: l.evaluations,
            seconds: l.seconds,
        }
    }
}

impl PyLevel {
    fn to_core(&self) -> PyResult<LevelResult> {
        Ok(LevelResult {
            p: self.p,
            params: params(self.gammas.clone(), self.betas.clone())?,
            energy: self.energy,
            success_probability: self.success_probability,
            evaluations: self.evaluations,
            seconds: self.seconds,
        })
    }
}

#[pymethods]
impl PyLevel {
    fn __repr__(&self) -> String {
        format!(
            "LevelResult(p={}, energy={:.6}, success_probability={:.6})",
            self.p, self.energy, self.success_probability
        )
    }
}

/// QAOA on one instance: cost table plus the exact covers to score against.
#[pyclass(name = "Problem", module = "tailqaoa", frozen)]
struct PyProblem {
    inner: QaoaProblem,
}

#[pymethods]
impl PyProblem {
    #[new]
    #[pyo3(signature = (instance, max_qubits=DEFAULT_MAX_QUBITS))]
    fn new(instance: &PyInstance, max_qubits: usize) -> PyResult<Self> {
        let inner = QaoaProblem::from_instance(&instance.inner, max_qubits).map_err(err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.inner.n_qubits()
    }

    /// Basis indices of the exact covers (bit r set = route r selected).
    #[getter]
    fn solutions(&self) -> Vec<u64> {
        self.inner.solutions().to_vec()
    }

    /// `(E_p, F_p)` at the given angles.
    fn evaluate(&self, gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<(f64, f64)> {
        let ev = self.inner.evaluate(&params(gammas, betas)?);
        Ok((ev.energy, ev.success_probability))
    }

    fn probabilities(&self, gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<Vec<f64>> {
        let s = self.inner.state(&params(gammas, betas)?);
        Ok((0..s.dim() as u64).map(|i| s.probability(i)).collect())
    }

    /// Probability of each cost value.
    fn histogram(&self, gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<BTreeMap<u64, f64>> {
        let s = self.inner.state(&params(gammas, betas)?);
        s.cost_histogram(self.inner.table()).map_err(err)
    }

    #[pyo3(signature = (gammas, betas, shots, seed=0))]
    fn sample(&self, gammas: Vec<f64>, betas: Vec<f64>, shots: usize, seed: u64) -> PyResult<Vec<u64>> {
        Ok(self.inner.state(&params(gammas, betas)?).sample(shots, seed))
    }
}

#[pyfunction]
#[pyo3(signature = (problem, p, n_starts=100, seed=0))]
fn multistart(problem: &PyProblem, p: usize, n_starts: usize, seed: u64) -> PyResult<PyLevel> {
    let cfg = MultistartConfig::new(n_starts, seed);
    let r = opt::multistart_optimize(&problem.inner, p, &cfg).map_err(err)?;
    Ok(PyLevel::from(&r))
}

#[pyfunction]
fn nelder_mead(problem: &PyProblem, gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<PyLevel> {
    let r = opt::nelder_mead(&problem.inner, &params(gammas, betas)?);
    Ok(PyLevel::from(&r))
}

#[pyfunction]
fn interp_start(gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let next = opt::interp_start(&params(gammas, betas)?);
    Ok((next.gammas().to_vec(), next.betas().to_vec()))
}

/// Multistart at p = 1 followed by interpolated Nelder-Mead up to `p_max`.
#[pyfunction]
#[pyo3(signature = (problem, p_max, n_starts=4000, seed=0))]
fn interp_pipeline(
    py: Python<'_>,
    problem: &PyProblem,
    p_max: usize,
    n_starts: usize,
    seed: u64,
) -> PyResult<Vec<PyLevel>> {
    let trace = py
        .detach(|| {
            let base = opt::multistart_optimize(&problem.inner, 1, &MultistartConfig::new(n_starts, seed))?;
            opt::interp_pipeline(&problem.inner, p_max, base)
        })
        .map_err(err)?;
    Ok(trace.levels.iter().map(PyLevel::from).collect())
}

/// `(gamma_axis, beta_axis, energies, success)`; grids are indexed `[gamma][beta]`.
#[pyfunction]
#[pyo3(signature = (problem, resolution=opt::DEFAULT_RESOLUTION))]
#[allow(clippy::type_complexity)]
fn landscape(
    problem: &PyProblem,
    resolution: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let g = opt::landscape_scan(&problem.inner, resolution).map_err(err)?;
    let rows = |v: &[f64]| v.chunks(resolution).map(<[_]>::to_vec).collect();
    Ok((g.gamma_axis.clone(), g.beta_axis.clone(), rows(&g.energies), rows(&g.success)))
}

#[pyfunction]
fn required_measurements(success: f64, eps: f64) -> PyResult<u64> {
    analysis::required_measurements(success, eps).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (time, success, target=analysis::DEFAULT_TARGET))]
fn time_to_solution(time: f64, success: f64, target: f64) -> f64 {
    analysis::time_to_solution(time, success, target)
}

#[pyfunction]
fn qaoa_total_time(gammas: Vec<f64>, betas: Vec<f64>) -> PyResult<f64> {
    Ok(analysis::qaoa_total_time(&params(gammas, betas)?))
}

fn report(r: &TtsReport) -> (String, f64, f64, f64) {
    let name = match r.algorithm {
        analysis::Algorithm::Qaoa => "QAOA",
        analysis::Algorithm::Qa => "QA",
    };
    (name.to_string(), r.schedule, r.success_probability, r.tts)
}

/// Best QAOA time to solution over levels: `(algorithm, p, F, tts)`.
#[pyfunction]
#[pyo3(signature = (levels, target=analysis::DEFAULT_TARGET))]
fn tts_qaoa(levels: Vec<PyLevel>, target: f64) -> PyResult<(String, f64, f64, f64)> {
    let trace = tailqaoa_core::OptimizationTrace {
        levels: levels.iter().map(PyLevel::to_core).collect::<PyResult<_>>()?,
    };
    Ok(report(&analysis::tts_qaoa(&trace, target).map_err(err)?))
}

/// Best annealing time to solution over `times`: `(algorithm, T, F, tts)`.
#[pyfunction]
#[pyo3(signature = (problem, times=None, target=analysis::DEFAULT_TARGET, dt=sim::DEFAULT_DT))]
fn tts_qa(
    py: Python<'_>,
    problem: &PyProblem,
    times: Option<Vec<f64>>,
    target: f64,
    dt: f64,
) -> PyResult<(String, f64, f64, f64)> {
    let times = times.unwrap_or_else(analysis::default_time_grid);
    let (best, _) = py
        .detach(|| analysis::tts_qa(&problem.inner, &times, target, dt))
        .map_err(err)?;
    Ok(report(&best))
}

/// `(F_gs, F_gs at dt/2, converged)` after annealing for `total_time`.
#[pyfunction]
#[pyo3(signature = (problem, total_time, dt=sim::DEFAULT_DT))]
fn anneal(problem: &PyProblem, total_time: f64, dt: f64) -> PyResult<(f64, Option<f64>, bool)> {
    let out = sim::anneal(&problem.inner, &AnnealConfig::new(total_time, dt)).map_err(err)?;
    Ok((out.success_probability, out.refined_success_probability, out.converged))
}

/// `(mean F, standard error)` under depolarizing noise.
#[pyfunction]
#[pyo3(signature = (problem, gammas, betas, eta, trajectories=NoiseConfig::DEFAULT_TRAJECTORIES, seed=0, placement="every-half-layer"))]
#[allow(clippy::too_many_arguments)]
fn noisy_success(
    py: Python<'_>,
    problem: &PyProblem,
    gammas: Vec<f64>,
    betas: Vec<f64>,
    eta: f64,
    trajectories: usize,
    seed: u64,
    placement: &str,
) -> PyResult<(f64, f64)> {
    let placement = match placement {
        "every-half-layer" => NoisePlacement::EveryHalfLayer,
        "between-cost-and-mixer" => NoisePlacement::BetweenCostAndMixer,
        other => return Err(PyValueError::new_err(format!("unknown placement {other:?}"))),
    };
    let cfg = NoiseConfig {
        placement,
        ..NoiseConfig::new(eta, trajectories, seed)
    };
    let vp = params(gammas, betas)?;
    let est = py.detach(|| sim::run_noisy(&problem.inner, &vp, &cfg)).map_err(err)?;
    Ok((est.mean, est.std_error))
}

#[pymodule]
fn tailqaoa(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_class::<PyIsingModel>()?;
    m.add_class::<PyProblem>()?;
    m.add_class::<PyLevel>()?;
    m.add_function(wrap_pyfunction!(multistart, m)?)?;
    m.add_function(wrap_pyfunction!(nelder_mead, m)?)?;
    m.add_function(wrap_pyfunction!(interp_start, m)?)?;
    m.add_function(wrap_pyfunction!(interp_pipeline, m)?)?;
    m.add_function(wrap_pyfunction!(landscape, m)?)?;
    m.add_function(wrap_pyfunction!(required_measurements, m)?)?;
    m.add_function(wrap_pyfunction!(time_to_solution, m)?)?;
    m.add_function(wrap_pyfunction!(qaoa_total_time, m)?)?;
    m.add_function(wrap_pyfunction!(tts_qaoa, m)?)?;
    m.add_function(wrap_pyfunction!(tts_qa, m)?)?;
    m.add_function(wrap_pyfunction!(anneal, m)?)?;
    m.add_function(wrap_pyfunction!(noisy_success, m)?)?;
    Ok(())
}
