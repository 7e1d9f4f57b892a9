//! Worst-case search strategies for the fence-jumping problem on the
//! unit disk.
//!
//! A robot starts at the center of a unit circle; a treasure sits
//! somewhere on the perimeter, outside a fence arc of known length `beta`
//! but unknown position. The robot walks at unit speed and may cut
//! through the interior along chords. This crate computes jump-step
//! vectors (optimal and halving-heuristic), their analytic worst-case
//! costs, and a brute-force adversarial simulation that independently
//! confirms the analytic values.
//!
//! - [`circle`]: angles, fences, chords, strategy validity.
//! - [`costs`]: the cost recurrence and every closed form built on it.
//! - [`solvers`]: root-finding and the minimax jump optimization.
//! - [`halving`]: the halving heuristic schedule in both descriptions.
//! - [`simulator`]: trajectory execution against explicit adversaries
//!   and the discretized supremum.
//! - [`sweep`]: deterministic CSV sweeps over the fence length.
//! - [`verify`]: the full verification matrix behind `fence-jump verify`.

pub mod circle;
pub mod costs;
pub mod error;
pub mod halving;
pub mod simulator;
pub mod solvers;
pub mod sweep;
pub mod verify;

pub use circle::{
    ccw_distance, chord, in_fence, normalize, step_cap, validate_strategy, Angle, FencePlacement,
    JumpStrategy, ProblemInstance,
};
pub use costs::{
    cost_breakdown, cost_zero_jump, halving_cost_closed, halving_cost_limit,
    optimal_one_jump_cost, worst_case_cost, CostBreakdown,
};
pub use error::{Error, Result, Violation};
pub use halving::{
    halving_jumps_closed, halving_jumps_iterative, rho, threshold_h, HalvingSchedule,
};
pub use simulator::{
    run_trajectory, worst_case_sim, AdversaryScenario, MoveKind, MoveRecord, SupResult,
    TrajectoryTrace,
};
pub use solvers::{
    gamma, grid_refine_k_jump, optimal_k_jump, optimal_one_jump, solve_alpha_beta, solve_gamma,
    MinimaxMethod, MinimaxResult, RootResult,
};
