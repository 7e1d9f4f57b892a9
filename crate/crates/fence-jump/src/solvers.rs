//! Root-finding for the transcendental equations behind the optimal jump
//! choices, and the minimax optimization producing optimal k-jump
//! strategies.
//!
//! Every equation here is continuous and monotone on its bracket, so
//! plain bisection is used throughout; robustness over speed.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use crate::circle::{check_beta, check_tolerance, step_cap};
use crate::costs::{cost_breakdown, CostBreakdown};
use crate::error::{Error, Result};

/// Default residual tolerance for scalar roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
/// Default equalization certificate for the minimax solver.
pub const DEFAULT_MINIMAX_TOL: f64 = 1e-9;
/// Largest k the equalization solver accepts.
pub const MAX_OPTIMAL_K: usize = 8;
/// Largest k the exhaustive grid oracle accepts.
pub const MAX_GRID_K: usize = 3;

const MAX_BISECTION_ITERS: u32 = 200;

/// Outcome of a bracketing bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// Function value at `root`; within the requested tolerance.
    pub residual: f64,
    pub iterations: u32,
}

/// Bisection on `[lo, hi]` with `f(lo) <= 0 <= f(hi)`, stopping when the
/// residual meets `tol`.
fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<RootResult> {
    debug_assert!(f(lo) <= 0.0 && f(hi) >= 0.0);
    let mut best = (0.5 * (lo + hi), f64::INFINITY);
    for iterations in 1..=MAX_BISECTION_ITERS {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm.abs() < best.1.abs() {
            best = (mid, fm);
        }
        if fm.abs() <= tol {
            return Ok(RootResult {
                root: mid,
                residual: fm,
                iterations,
            });
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON * mid.abs() {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_BISECTION_ITERS,
        residual: best.1,
    })
}

/// Solve `alpha + 2*sin(alpha/2) = beta` for the unique root `alpha_beta`.
///
/// The left side is nondecreasing, negative at 0 and nonnegative at
/// `beta` for every fence length, so `[0, beta]` brackets the root;
/// `alpha_beta` is increasing in `beta`.
pub fn solve_alpha_beta(beta: f64, tol: f64) -> Result<RootResult> {
    if beta <= 0.0 || !beta.is_finite() {
        return Err(Error::BetaOutOfRange(beta));
    }
    check_tolerance(tol)?;
    let g = |alpha: f64| alpha + 2.0 * (alpha / 2.0).sin() - beta;
    // g(beta) = 2*sin(beta/2) >= 0 for beta <= 2*pi; widen past that
    let hi = if g(beta) >= 0.0 { beta } else { beta + 2.0 };
    bisect(g, 0.0, hi, tol)
}

/// Solve `gamma - sin(gamma/2) = pi` on `[pi, 2*pi]` (`gamma ~ 4.04196`):
/// the fence length beyond which the optimal single jump saturates at
/// `2*pi - beta`.
pub fn solve_gamma(tol: f64) -> Result<RootResult> {
    check_tolerance(tol)?;
    bisect(|x| x - (x / 2.0).sin() - PI, PI, TAU, tol)
}

/// Cached `gamma` at tight tolerance.
pub fn gamma() -> f64 {
    static GAMMA: OnceLock<f64> = OnceLock::new();
    *GAMMA.get_or_init(|| {
        solve_gamma(1e-13)
            .expect("gamma bracket is fixed and the residual target is attainable")
            .root
    })
}

/// How a [`MinimaxResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimaxMethod {
    /// Consecutive interior costs equalized analytically, the remaining
    /// scalar found by bisection, cap saturation handled by
    /// clamp-and-recurse.
    EqualizationChain,
    /// Exhaustive box search, iteratively refined around the incumbent.
    GridRefinement,
}

/// A minimax strategy together with its cost evidence.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimaxResult {
    pub alphas: Vec<f64>,
    /// Worst-case cost of `alphas` (max over the full breakdown).
    pub cost: f64,
    pub breakdown: CostBreakdown,
    pub method: MinimaxMethod,
    /// Equalization: residual `|c_t - c_{k+1}|` of the final bisection
    /// (0 when every step is clamped). Grid refinement: final grid step.
    pub certificate: f64,
}

fn minimax_result(
    beta: f64,
    alphas: Vec<f64>,
    method: MinimaxMethod,
    certificate: f64,
) -> Result<MinimaxResult> {
    let breakdown = cost_breakdown(beta, &alphas)?;
    Ok(MinimaxResult {
        cost: breakdown.worst,
        alphas,
        breakdown,
        method,
        certificate,
    })
}

/// The optimal single-jump strategy: jump `alpha_beta` while it fits
/// under the step cap (`beta <= gamma`), otherwise exactly `2*pi - beta`.
pub fn optimal_one_jump(beta: f64) -> Result<MinimaxResult> {
    check_beta(beta)?;
    let (alpha, certificate) = if beta <= gamma() {
        let root = solve_alpha_beta(beta, DEFAULT_ROOT_TOL)?;
        // the root equalizes the two controllable landing cases
        (root.root, root.residual.abs())
    } else {
        (TAU - beta, 0.0)
    };
    minimax_result(beta, vec![alpha], MinimaxMethod::EqualizationChain, certificate)
}

/// Successor step that keeps consecutive interior costs equal:
/// `c_t = c_{t-1}` forces `sin(alpha_t/2) = sin(alpha_{t-1}/2) / 2`.
fn chain_next(alpha: f64) -> f64 {
    2.0 * ((alpha / 2.0).sin() / 2.0).asin()
}

fn chain_fill(alphas: &mut Vec<f64>, first: f64, count: usize) {
    let mut a = first;
    for _ in 0..count {
        alphas.push(a);
        a = chain_next(a);
    }
}

/// Minimax-optimal k-jump strategy via structured equalization.
///
/// Interior costs are equalized along the chain, leaving one scalar
/// unknown per saturation level: the first free step is found by
/// bisection on `c_t - c_{k+1}` (increasing in that step); if its root
/// exceeds the cap `min(pi, 2*pi - beta)`, the step is clamped to the cap
/// and the rule recurses on the remaining suffix. The clamp rule is
/// heuristic; [`grid_refine_k_jump`] certifies it independently for
/// `k <= 3`.
pub fn optimal_k_jump(beta: f64, k: usize, tol: f64) -> Result<MinimaxResult> {
    check_beta(beta)?;
    check_tolerance(tol)?;
    if k == 0 || k > MAX_OPTIMAL_K {
        return Err(Error::KOutOfRange {
            k,
            max: MAX_OPTIMAL_K,
        });
    }

    let cap = step_cap(beta);
    let mut clamped: Vec<f64> = Vec::new();
    loop {
        let free = k - clamped.len();
        // objective gap between the first free landing case and the
        // all-inside case, as a function of the first free step
        let gap = |first: f64| -> Result<f64> {
            let mut alphas = clamped.clone();
            chain_fill(&mut alphas, first, free);
            let bd = cost_breakdown(beta, &alphas)?;
            Ok(bd.costs[clamped.len() + 1] - bd.costs[k + 1])
        };

        if gap(cap)? <= 0.0 {
            // even the largest admissible step leaves the all-inside case
            // dominant: saturate and move on
            clamped.push(cap);
            if clamped.len() == k {
                return minimax_result(beta, clamped, MinimaxMethod::EqualizationChain, 0.0);
            }
            continue;
        }

        let lo = 1e-9_f64.min(cap / 2.0);
        if gap(lo)? >= 0.0 {
            return Err(Error::NoConvergence {
                iterations: 0,
                residual: gap(lo)?,
            });
        }
        let root = bisect(|a| gap(a).unwrap_or(f64::NAN), lo, cap, tol)?;
        let mut alphas = clamped;
        chain_fill(&mut alphas, root.root, free);
        return minimax_result(
            beta,
            alphas,
            MinimaxMethod::EqualizationChain,
            root.residual.abs(),
        );
    }
}

/// Max over the controllable landing cases (`t >= 1`) without building a
/// full breakdown; the same recurrence evaluated in the same order, for
/// the grid oracle's hot loop. Callers guarantee a valid strategy.
fn controllable_worst(beta: f64, alphas: &[f64]) -> f64 {
    let mut running = 1.0 + TAU - beta + crate::circle::chord_len(beta);
    let mut prev = beta;
    let mut worst = f64::NEG_INFINITY;
    let mut saved = 0.0;
    for &alpha in alphas {
        running += 4.0 * (alpha / 2.0).sin() - 2.0 * (prev / 2.0).sin();
        worst = worst.max(running);
        prev = alpha;
        saved += alpha - crate::circle::chord_len(alpha);
    }
    worst.max(1.0 + TAU - saved)
}

/// Up to 3 grid coordinates; unused dimensions stay 0.
type GridPoint = [f64; 3];

fn lex_cmp(a: &GridPoint, b: &GridPoint) -> std::cmp::Ordering {
    for d in 0..3 {
        match a[d].total_cmp(&b[d]) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

/// Independent minimax oracle for `k <= 3`: exhaustive grid search over
/// `[0, cap]^k`, refined around the best coarse candidates by shrinking
/// each box 4x per round and re-gridding.
///
/// The max objective has flat plateaus (wherever one landing case
/// dominates) next to narrow valleys the coarse grid undersamples, so
/// refining only the single best coarse cell can converge to a plateau.
/// Instead the best few well-separated coarse candidates are each
/// refined and the overall minimum kept; plateau cells carry bitwise
/// identical values and collapse into one seed. A refinement scan whose
/// incumbent lands on a box face grows the box past that face before the
/// next shrink.
///
/// Deterministic: candidates are scanned in lexicographic order and ties
/// keep the earlier vector.
pub fn grid_refine_k_jump(
    beta: f64,
    k: usize,
    coarse: f64,
    rounds: u32,
) -> Result<MinimaxResult> {
    check_beta(beta)?;
    if k == 0 || k > MAX_GRID_K {
        return Err(Error::KOutOfRange { k, max: MAX_GRID_K });
    }
    if !(coarse > 0.0 && coarse.is_finite()) {
        return Err(Error::BadGridStep(coarse));
    }
    if rounds == 0 {
        return Err(Error::NoRounds);
    }

    let cap = step_cap(beta);
    const FLOOR: f64 = 1e-9;
    const BEAM: usize = 16;
    const MAX_EXPANSIONS: u32 = 8;

    let axis = |lo: f64, hi: f64, step: f64| -> Vec<f64> {
        let lo = lo.max(FLOOR);
        let hi = hi.min(cap);
        let mut pts = Vec::new();
        let mut x = lo;
        while x < hi && x + step > x {
            pts.push(x);
            x += step;
        }
        pts.push(hi);
        pts
    };

    let objective = |point: &GridPoint| -> f64 { controllable_worst(beta, &point[..k]) };

    // scan a box lexicographically, updating (cost, point) on strict
    // improvement
    let scan = |axes: &[Vec<f64>], best: &mut (f64, GridPoint)| {
        let mut cursor = [0usize; 3];
        let mut candidate: GridPoint = [0.0; 3];
        'scan: loop {
            for d in 0..k {
                candidate[d] = axes[d][cursor[d]];
            }
            let cost = objective(&candidate);
            if cost < best.0 {
                *best = (cost, candidate);
            }
            let mut d = k;
            while d > 0 {
                d -= 1;
                cursor[d] += 1;
                if cursor[d] < axes[d].len() {
                    continue 'scan;
                }
                cursor[d] = 0;
            }
            break;
        }
    };

    // full coarse pass, every sample kept for seed selection
    let full_axis = axis(FLOOR, cap, coarse);
    let mut samples: Vec<(f64, GridPoint)> = Vec::new();
    {
        let mut cursor = [0usize; 3];
        let mut candidate: GridPoint = [0.0; 3];
        'full: loop {
            for d in 0..k {
                candidate[d] = full_axis[cursor[d]];
            }
            samples.push((objective(&candidate), candidate));
            let mut d = k;
            while d > 0 {
                d -= 1;
                cursor[d] += 1;
                if cursor[d] < full_axis.len() {
                    continue 'full;
                }
                cursor[d] = 0;
            }
            break;
        }
    }
    samples.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| lex_cmp(&a.1, &b.1)));

    let mut seeds: Vec<(f64, GridPoint)> = Vec::new();
    for (value, point) in samples {
        if seeds.len() >= BEAM {
            break;
        }
        let redundant = seeds.iter().any(|(sv, sp)| {
            *sv == value
                || (0..k).all(|d| (sp[d] - point[d]).abs() <= 2.5 * coarse)
        });
        if !redundant {
            seeds.push((value, point));
        }
    }

    let mut final_step = coarse;
    let mut best: (f64, GridPoint) = seeds[0];
    for seed in seeds {
        let mut local = seed;
        let mut step = coarse;
        for _round in 1..rounds {
            step /= 4.0;
            let mut boxes: Vec<(f64, f64)> = (0..k)
                .map(|d| (local.1[d] - 8.0 * step, local.1[d] + 8.0 * step))
                .collect();
            for _expansion in 0..=MAX_EXPANSIONS {
                let axes: Vec<Vec<f64>> =
                    boxes.iter().map(|&(lo, hi)| axis(lo, hi, step)).collect();
                scan(&axes, &mut local);

                // fixed-size growth per pass keeps the re-gridded axes
                // from blowing up while still letting the incumbent walk
                // out of an undersized box
                let mut grew = false;
                for (d, bounds) in boxes.iter_mut().enumerate() {
                    if local.1[d] == *axes[d].first().expect("axis never empty")
                        && bounds.0 > FLOOR
                    {
                        bounds.0 = (bounds.0 - 8.0 * step).max(FLOOR);
                        grew = true;
                    }
                    if local.1[d] == *axes[d].last().expect("axis never empty")
                        && bounds.1 < cap
                    {
                        bounds.1 = (bounds.1 + 8.0 * step).min(cap);
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
        }
        final_step = step;
        if local.0 < best.0 || (local.0 == best.0 && lex_cmp(&local.1, &best.1).is_lt()) {
            best = local;
        }
    }

    minimax_result(beta, best.1[..k].to_vec(), MinimaxMethod::GridRefinement, final_step)
}
