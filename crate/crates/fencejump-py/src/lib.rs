//! Python bindings for the fence-jump search library.
//!
//! Exposes the main types and operations in-process: strategy
//! construction (halving and optimal), analytic cost breakdowns,
//! root-finding, and the adversarial trajectory simulator.
//!
//! Usage from Python:
//!
//!     import fencejump
//!     fencejump.halving_jumps(2.0, 3)          # [1.0, 0.5, 0.25]
//!     fencejump.optimal_k_jump(2.0, 2).cost
//!     fencejump.worst_case_sim(2.0, [1.0, 0.5], eps=1e-2).sup_time

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fence_jump::simulator::MoveKind;
use fence_jump::{circle, costs, halving, simulator, solvers};

fn err(e: fence_jump::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The vector of worst-case costs by first-outside-landing index.
#[pyclass(name = "CostBreakdown")]
struct PyCostBreakdown {
    #[pyo3(get)]
    beta: f64,
    #[pyo3(get)]
    alphas: Vec<f64>,
    #[pyo3(get)]
    costs: Vec<f64>,
    #[pyo3(get)]
    worst: f64,
    #[pyo3(get)]
    worst_index: usize,
}

impl From<costs::CostBreakdown> for PyCostBreakdown {
    fn from(bd: costs::CostBreakdown) -> Self {
        Self {
            beta: bd.beta,
            alphas: bd.alphas,
            costs: bd.costs,
            worst: bd.worst,
            worst_index: bd.worst_index,
        }
    }
}

#[pymethods]
impl PyCostBreakdown {
    fn __repr__(&self) -> String {
        format!(
            "CostBreakdown(beta={}, k={}, worst={}, worst_index={})",
            self.beta,
            self.alphas.len(),
            self.worst,
            self.worst_index
        )
    }
}

/// A minimax strategy with its cost evidence.
#[pyclass(name = "MinimaxResult")]
struct PyMinimaxResult {
    #[pyo3(get)]
    alphas: Vec<f64>,
    #[pyo3(get)]
    cost: f64,
    #[pyo3(get)]
    method: String,
    #[pyo3(get)]
    certificate: f64,
}

impl From<solvers::MinimaxResult> for PyMinimaxResult {
    fn from(r: solvers::MinimaxResult) -> Self {
        Self {
            alphas: r.alphas,
            cost: r.cost,
            method: match r.method {
                solvers::MinimaxMethod::EqualizationChain => "equalization-chain".to_string(),
                solvers::MinimaxMethod::GridRefinement => "grid-refinement".to_string(),
            },
            certificate: r.certificate,
        }
    }
}

#[pymethods]
impl PyMinimaxResult {
    fn __repr__(&self) -> String {
        format!(
            "MinimaxResult(alphas={:?}, cost={}, method='{}')",
            self.alphas, self.cost, self.method
        )
    }
}

/// One robot move of a finished trajectory.
#[pyclass(name = "Move")]
struct PyMove {
    #[pyo3(get)]
    kind: String,
    #[pyo3(get)]
    arc: f64,
    #[pyo3(get)]
    length: f64,
}

/// A finished search trajectory.
#[pyclass(name = "TrajectoryTrace")]
struct PyTrajectoryTrace {
    moves: Vec<(String, f64, f64)>,
    #[pyo3(get)]
    total: f64,
    #[pyo3(get)]
    found_at_move: usize,
}

#[pymethods]
impl PyTrajectoryTrace {
    #[getter]
    fn moves(&self) -> Vec<PyMove> {
        self.moves
            .iter()
            .map(|(kind, arc, length)| PyMove {
                kind: kind.clone(),
                arc: *arc,
                length: *length,
            })
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "TrajectoryTrace(total={}, moves={}, found_at_move={})",
            self.total,
            self.moves.len(),
            self.found_at_move
        )
    }
}

/// Discretized adversary supremum.
#[pyclass(name = "SupResult")]
struct PySupResult {
    #[pyo3(get)]
    sup_time: f64,
    #[pyo3(get)]
    fence_start: f64,
    #[pyo3(get)]
    treasure: f64,
    #[pyo3(get)]
    grid_step: f64,
    #[pyo3(get)]
    scenarios_evaluated: u64,
}

#[pymethods]
impl PySupResult {
    fn __repr__(&self) -> String {
        format!(
            "SupResult(sup_time={}, fence_start={}, treasure={}, scenarios={})",
            self.sup_time, self.fence_start, self.treasure, self.scenarios_evaluated
        )
    }
}

/// Chord length subtending a ccw arc: 2*sin(alpha/2).
#[pyfunction]
fn chord(alpha: f64) -> PyResult<f64> {
    circle::chord(alpha).map_err(err)
}

/// Counterclockwise arc distance between two angles, in [0, 2*pi).
#[pyfunction]
fn ccw_distance(from_angle: f64, to_angle: f64) -> f64 {
    circle::ccw_distance(circle::Angle::new(from_angle), circle::Angle::new(to_angle))
}

/// Whether a point lies on the closed fence arc [start, start + beta].
#[pyfunction]
fn in_fence(point: f64, fence_start: f64, beta: f64) -> bool {
    circle::in_fence(
        circle::Angle::new(point),
        circle::FencePlacement::new(circle::Angle::new(fence_start)),
        beta,
    )
}

/// Largest admissible jump step: min(pi, 2*pi - beta).
#[pyfunction]
fn step_cap(beta: f64) -> f64 {
    circle::step_cap(beta)
}

/// Raise ValueError unless 0 < alpha_i <= min(pi, 2*pi - beta) for all i.
#[pyfunction]
fn validate_strategy(beta: f64, alphas: Vec<f64>) -> PyResult<()> {
    circle::validate_strategy(beta, &alphas).map_err(err)
}

/// Unique root of alpha + 2*sin(alpha/2) = beta.
#[pyfunction]
#[pyo3(signature = (beta, tol=1e-12))]
fn solve_alpha_beta(beta: f64, tol: f64) -> PyResult<f64> {
    solvers::solve_alpha_beta(beta, tol).map(|r| r.root).map_err(err)
}

/// The threshold fence length gamma ~ 4.04196 beyond which the optimal
/// single jump saturates at 2*pi - beta.
#[pyfunction]
fn gamma() -> f64 {
    solvers::gamma()
}

/// Halving threshold h_t = 2*pi*(t+1)/(t+2), h_0 = 0.
#[pyfunction]
fn threshold_h(t: usize) -> f64 {
    halving::threshold_h(t)
}

/// rho = max((2*beta - 2*pi) / (2*pi - beta), 1).
#[pyfunction]
fn rho(beta: f64) -> PyResult<f64> {
    halving::rho(beta).map_err(err)
}

/// Halving schedule by the closed form.
#[pyfunction]
fn halving_jumps(beta: f64, k: usize) -> PyResult<Vec<f64>> {
    halving::halving_jumps_closed(beta, k)
        .map(|s| s.alphas)
        .map_err(err)
}

/// Halving schedule by running the loop itself.
#[pyfunction]
fn halving_jumps_iterative(beta: f64, k: usize) -> PyResult<Vec<f64>> {
    halving::halving_jumps_iterative(beta, k)
        .map(|s| s.alphas)
        .map_err(err)
}

/// Closed-form worst-case cost of the k-jump halving schedule.
#[pyfunction]
fn halving_cost(beta: f64, k: usize) -> PyResult<f64> {
    costs::halving_cost_closed(beta, k).map_err(err)
}

/// Limit of the halving cost as k grows without bound.
#[pyfunction]
#[pyo3(signature = (beta, tol=1e-12))]
fn halving_cost_limit(beta: f64, tol: f64) -> PyResult<f64> {
    costs::halving_cost_limit(beta, tol).map_err(err)
}

/// Worst-case costs of a strategy by first-outside-landing index.
#[pyfunction]
fn cost_breakdown(beta: f64, alphas: Vec<f64>) -> PyResult<PyCostBreakdown> {
    costs::cost_breakdown(beta, &alphas).map(Into::into).map_err(err)
}

/// Max over the cost breakdown.
#[pyfunction]
fn worst_case_cost(beta: f64, alphas: Vec<f64>) -> PyResult<f64> {
    costs::worst_case_cost(beta, &alphas).map_err(err)
}

/// The optimal single-jump strategy.
#[pyfunction]
fn optimal_one_jump(beta: f64) -> PyResult<PyMinimaxResult> {
    solvers::optimal_one_jump(beta).map(Into::into).map_err(err)
}

/// Minimax-optimal k-jump strategy via structured equalization.
#[pyfunction]
#[pyo3(signature = (beta, k, tol=1e-9))]
fn optimal_k_jump(beta: f64, k: usize, tol: f64) -> PyResult<PyMinimaxResult> {
    solvers::optimal_k_jump(beta, k, tol).map(Into::into).map_err(err)
}

/// Exhaustive grid-refinement oracle for k <= 3.
#[pyfunction]
#[pyo3(signature = (beta, k, coarse=0.05, rounds=8))]
fn grid_refine_k_jump(beta: f64, k: usize, coarse: f64, rounds: u32) -> PyResult<PyMinimaxResult> {
    solvers::grid_refine_k_jump(beta, k, coarse, rounds)
        .map(Into::into)
        .map_err(err)
}

/// Execute a strategy against one explicit fence/treasure placement.
#[pyfunction]
fn run_trajectory(
    beta: f64,
    alphas: Vec<f64>,
    fence_start: f64,
    treasure: f64,
) -> PyResult<PyTrajectoryTrace> {
    let scenario = simulator::AdversaryScenario::new(fence_start, treasure);
    let trace = simulator::run_trajectory(beta, &alphas, &scenario).map_err(err)?;
    Ok(PyTrajectoryTrace {
        moves: trace
            .moves
            .iter()
            .map(|m| {
                let kind = match m.kind {
                    MoveKind::CenterToPerimeter => "center-to-perimeter",
                    MoveKind::WalkCcw => "walk-ccw",
                    MoveKind::WalkCw => "walk-cw",
                    MoveKind::ChordJump => "chord-jump",
                };
                (kind.to_string(), m.arc, m.length)
            })
            .collect(),
        total: trace.total,
        found_at_move: trace.found_at_move,
    })
}

/// Supremum of the simulated search time over the discretized adversary.
#[pyfunction]
#[pyo3(signature = (beta, alphas, eps=1e-3, delta=None))]
fn worst_case_sim(beta: f64, alphas: Vec<f64>, eps: f64, delta: Option<f64>) -> PyResult<PySupResult> {
    let delta = delta.unwrap_or(eps / 10.0);
    let sup = simulator::worst_case_sim(beta, &alphas, eps, delta).map_err(err)?;
    Ok(PySupResult {
        sup_time: sup.sup_time,
        fence_start: sup.argmax.fence_start.radians(),
        treasure: sup.argmax.treasure.radians(),
        grid_step: sup.grid_step,
        scenarios_evaluated: sup.scenarios_evaluated,
    })
}

#[pymodule]
fn fencejump(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCostBreakdown>()?;
    m.add_class::<PyMinimaxResult>()?;
    m.add_class::<PyTrajectoryTrace>()?;
    m.add_class::<PyMove>()?;
    m.add_class::<PySupResult>()?;

    m.add_function(wrap_pyfunction!(chord, m)?)?;
    m.add_function(wrap_pyfunction!(ccw_distance, m)?)?;
    m.add_function(wrap_pyfunction!(in_fence, m)?)?;
    m.add_function(wrap_pyfunction!(step_cap, m)?)?;
    m.add_function(wrap_pyfunction!(validate_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(solve_alpha_beta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_h, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(halving_jumps, m)?)?;
    m.add_function(wrap_pyfunction!(halving_jumps_iterative, m)?)?;
    m.add_function(wrap_pyfunction!(halving_cost, m)?)?;
    m.add_function(wrap_pyfunction!(halving_cost_limit, m)?)?;
    m.add_function(wrap_pyfunction!(cost_breakdown, m)?)?;
    m.add_function(wrap_pyfunction!(worst_case_cost, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_one_jump, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_k_jump, m)?)?;
    m.add_function(wrap_pyfunction!(grid_refine_k_jump, m)?)?;
    m.add_function(wrap_pyfunction!(run_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(worst_case_sim, m)?)?;

    m.add("TAU", std::f64::consts::TAU)?;
    Ok(())
}
