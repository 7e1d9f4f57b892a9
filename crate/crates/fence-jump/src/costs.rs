//! Analytic worst-case cost formulas for k-jump strategies.
//!
//! The cost recurrence over the first-outside-landing index `t` is the
//! authoritative definition; every closed form in this crate is validated
//! against it. With `alpha_0 = beta`:
//!
//! ```text
//! c_0     = 1 + 2*pi - alpha_0 + 2*sin(alpha_0 / 2)
//! c_t     = c_{t-1} + 4*sin(alpha_t / 2) - 2*sin(alpha_{t-1} / 2)   (1 <= t <= k)
//! c_{k+1} = 1 + 2*pi - sum_i (alpha_i - 2*sin(alpha_i / 2))
//! ```
//!
//! `c_0` is the cost when the basic landing is already outside the fence,
//! `c_t` when the t-th jump is the first to land outside, and `c_{k+1}`
//! when every landing (basic included) falls inside the fence.

use std::f64::consts::{PI, TAU};

use crate::circle::{check_beta, check_tolerance, chord_len, JumpStrategy};
use crate::error::{Error, Result};
use crate::halving;
use crate::solvers;

/// The vector `(c_0, ..., c_{k+1})` of worst-case costs by
/// first-outside-landing index, plus its max and argmax.
#[derive(Debug, Clone, PartialEq)]
pub struct CostBreakdown {
    pub beta: f64,
    pub alphas: Vec<f64>,
    /// `costs[t]`: worst-case total time when the t-th jump is the first
    /// landing outside the fence (`t = 0`: basic landing already outside;
    /// `t = k + 1`: every landing inside). Length `k + 2`.
    pub costs: Vec<f64>,
    /// `max(costs)`.
    pub worst: f64,
    /// Smallest index attaining `worst`.
    pub worst_index: usize,
}

impl CostBreakdown {
    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    /// Max over the landing cases a jump strategy can still influence
    /// (`t >= 1`); `c_0` is strategy-independent.
    pub fn worst_controllable(&self) -> f64 {
        self.costs[1..]
            .iter()
            .fold(f64::NEG_INFINITY, |acc, &c| acc.max(c))
    }
}

/// Both branch costs of the walk-only search: landing outside the fence
/// costs `1 + 2*pi - beta + 2*sin(beta/2)`, landing inside costs
/// `1 + 2*pi`. Outside is never worse since `beta - 2*sin(beta/2) >= 0`.
pub fn cost_zero_jump(beta: f64) -> Result<(f64, f64)> {
    check_beta(beta)?;
    Ok((1.0 + TAU - beta + chord_len(beta), 1.0 + TAU))
}

/// Evaluate the cost recurrence for a strategy, producing all `k + 2`
/// landing cases.
pub fn cost_breakdown(beta: f64, alphas: &[f64]) -> Result<CostBreakdown> {
    JumpStrategy::new(beta, alphas.to_vec()).validate()?;

    let k = alphas.len();
    let mut costs = Vec::with_capacity(k + 2);
    let mut c = 1.0 + TAU - beta + chord_len(beta);
    costs.push(c);
    let mut prev = beta;
    for &alpha in alphas {
        c += 4.0 * (alpha / 2.0).sin() - 2.0 * (prev / 2.0).sin();
        costs.push(c);
        prev = alpha;
    }
    // The all-inside case from its own formula rather than the recurrence:
    // the robot rounds the whole circle, saving alpha_i - chord(alpha_i)
    // per jump.
    let saved: f64 = alphas.iter().map(|&a| a - chord_len(a)).sum();
    costs.push(1.0 + TAU - saved);

    let (worst_index, worst) = costs
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        });

    Ok(CostBreakdown {
        beta,
        alphas: alphas.to_vec(),
        costs,
        worst,
        worst_index,
    })
}

/// Max over the full cost breakdown: the worst-case total search time of
/// the strategy against an adversarial fence and treasure.
pub fn worst_case_cost(beta: f64, alphas: &[f64]) -> Result<f64> {
    Ok(cost_breakdown(beta, alphas)?.worst)
}

/// Closed-form cost of the optimal single-jump strategy:
/// `1 + 2*pi - alpha_beta + 2*sin(alpha_beta/2)` while the equalizing root
/// `alpha_beta` fits under the step cap (`beta <= gamma`), and
/// `1 + beta + 2*sin(beta/2)` beyond it.
pub fn optimal_one_jump_cost(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if beta <= solvers::gamma() {
        let alpha = solvers::solve_alpha_beta(beta, solvers::DEFAULT_ROOT_TOL)?.root;
        Ok(1.0 + TAU - alpha + chord_len(alpha))
    } else {
        Ok(1.0 + beta + chord_len(beta))
    }
}

/// Closed-form cost of the halving schedule with `k` jumps.
///
/// For `k >= ceil(rho)` this evaluates, with `r = ceil(rho)` and
/// `a = pi - (r/2)*(2*pi - beta)` (the r-th halving jump):
///
/// ```text
/// 1 + 2*pi - beta + (2*pi - r*(2*pi - beta)) / 2^(k - r + 1)
///   + 2*(r - 1)*sin(beta/2) + 2 * sum_{i=0}^{k-r} sin(a / 2^(i+1))
/// ```
///
/// which telescopes the all-inside recurrence case exactly. For
/// `k < ceil(rho)` the sine series is empty and the closed form does not
/// apply; the cost is evaluated directly on the halving jump vector.
pub fn halving_cost_closed(beta: f64, k: usize) -> Result<f64> {
    check_beta(beta)?;
    if k == 0 {
        return Err(Error::EmptySchedule);
    }
    let r = halving::rho(beta)?.ceil() as usize;
    if k < r {
        let schedule = halving::halving_jumps_iterative(beta, k)?;
        return worst_case_cost(beta, &schedule.alphas);
    }

    let rf = r as f64;
    let a = PI - rf / 2.0 * (TAU - beta);
    let geometric_tail = (TAU - rf * (TAU - beta)) / 2f64.powi((k - r + 1) as i32);
    // summed smallest-first for stability
    let mut sine_sum = 0.0;
    for i in (0..=(k - r)).rev() {
        sine_sum += (a / 2f64.powi((i + 1) as i32)).sin();
    }
    Ok(1.0 + TAU - beta
        + geometric_tail
        + 2.0 * (rf - 1.0) * (beta / 2.0).sin()
        + 2.0 * sine_sum)
}

/// Limit of [`halving_cost_closed`] as `k -> inf`: the geometric term
/// vanishes and the sine series runs forever, truncated once its tail
/// bound (geometric, since `sin(x) <= x`) drops below `tol`.
///
/// The result is a lower bound on every finite-k halving cost.
pub fn halving_cost_limit(beta: f64, tol: f64) -> Result<f64> {
    check_beta(beta)?;
    check_tolerance(tol)?;

    let r = halving::rho(beta)?.ceil() as usize;
    let rf = r as f64;
    let a = PI - rf / 2.0 * (TAU - beta);

    // Terms 2*sin(a / 2^(i+1)); after the term with half-arc h the tail is
    // bounded by 2h.
    let mut halves = Vec::new();
    let mut h = a / 2.0;
    loop {
        halves.push(h);
        if 2.0 * h < tol || h == 0.0 {
            break;
        }
        h /= 2.0;
    }
    let sine_sum: f64 = halves.iter().rev().map(|&x| x.sin()).sum();

    Ok(1.0 + TAU - beta + 2.0 * (rf - 1.0) * (beta / 2.0).sin() + 2.0 * sine_sum)
}
