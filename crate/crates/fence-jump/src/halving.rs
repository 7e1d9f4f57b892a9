//! The halving heuristic: jump over half of the still-unexplored fence,
//! capped at `2*pi - beta`.
//!
//! The schedule needs no root-finding, only constant work per jump, and
//! two equivalent descriptions are implemented: the iterative loop the
//! robot would actually run, and the closed form in terms of
//! `rho = max((2*beta - 2*pi) / (2*pi - beta), 1)`. Tests and the
//! acceptance suite hold them to element-wise agreement.

use std::f64::consts::TAU;

use crate::circle::check_beta;
use crate::error::{Error, Result};

/// Jumps this small are pure denormal noise; schedules are truncated
/// rather than extended past them (only reachable for k > 40 or so).
const MIN_JUMP: f64 = 1e-15;

/// A halving jump schedule. `alphas` is non-increasing and every step is
/// in `(0, min(pi, 2*pi - beta)]`; it may be shorter than `k` if the
/// requested depth runs into [`MIN_JUMP`] truncation.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingSchedule {
    pub beta: f64,
    /// Requested jump budget (a finite cap on the unbounded schedule).
    pub k: usize,
    pub alphas: Vec<f64>,
    pub rho: f64,
    pub rho_ceil: usize,
    /// Thresholds `h_1 .. h_n` consulted while classifying the jumps,
    /// one per emitted jump.
    pub thresholds_used: Vec<f64>,
}

/// Threshold `h_t`: for `beta > h_t` the t-th halving jump saturates at
/// `2*pi - beta`. `h_0 = 0` and `h_t = 2*pi*(t+1)/(t+2)`, increasing
/// toward `2*pi`.
pub fn threshold_h(t: usize) -> f64 {
    if t == 0 {
        0.0
    } else {
        TAU * (t as f64 + 1.0) / (t as f64 + 2.0)
    }
}

/// `rho = max((2*beta - 2*pi) / (2*pi - beta), 1)`: jumps with index below
/// `rho` saturate at `2*pi - beta`. Equals 1 up to `beta = 4*pi/3` and
/// grows without bound as `beta -> 2*pi`.
pub fn rho(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(((2.0 * beta - TAU) / (TAU - beta)).max(1.0))
}

/// The analytic jump value `A_{i,j} = (j*beta - (j-1)*2*pi) / 2^(i-j+1)`,
/// valid for `beta` in `(h_{j-1}, h_j]` and `i >= j`. Exposed for the test
/// suite.
pub fn a_ij(i: usize, j: usize, beta: f64) -> f64 {
    let jf = j as f64;
    (jf * beta - (jf - 1.0) * TAU) / 2f64.powi((i - j + 1) as i32)
}

fn schedule(beta: f64, k: usize, alphas: Vec<f64>) -> Result<HalvingSchedule> {
    let rho = rho(beta)?;
    Ok(HalvingSchedule {
        beta,
        k,
        thresholds_used: (1..=alphas.len()).map(threshold_h).collect(),
        alphas,
        rho,
        rho_ceil: rho.ceil() as usize,
    })
}

/// Run the halving loop verbatim for up to `k` jumps: each step attempts
/// half of the unexplored fence and is capped at `2*pi - beta`; the
/// emitted jump is accumulated into the explored total either way.
pub fn halving_jumps_iterative(beta: f64, k: usize) -> Result<HalvingSchedule> {
    check_beta(beta)?;
    if k == 0 {
        return Err(Error::EmptySchedule);
    }
    let cap = TAU - beta;
    let mut explored = 0.0;
    let mut alphas = Vec::with_capacity(k.min(64));
    for _ in 0..k {
        let temp = (beta - explored) / 2.0;
        let jump = if temp <= cap { temp } else { cap };
        if jump < MIN_JUMP {
            break;
        }
        alphas.push(jump);
        explored += jump;
    }
    schedule(beta, k, alphas)
}

/// Evaluate the closed-form schedule: `alpha_i = 2*pi - beta` while
/// `i < rho`, then `(2*pi - ceil(rho)*(2*pi - beta)) / 2^(i - ceil(rho) + 1)`.
pub fn halving_jumps_closed(beta: f64, k: usize) -> Result<HalvingSchedule> {
    check_beta(beta)?;
    if k == 0 {
        return Err(Error::EmptySchedule);
    }
    let rho_val = rho(beta)?;
    let r = rho_val.ceil() as usize;
    let cap = TAU - beta;
    let numerator = TAU - r as f64 * cap; // = 2 * alpha_r
    let mut alphas = Vec::with_capacity(k.min(64));
    for i in 1..=k {
        let alpha = if (i as f64) < rho_val {
            cap
        } else {
            numerator / 2f64.powi((i - r + 1) as i32)
        };
        if alpha < MIN_JUMP {
            break;
        }
        alphas.push(alpha);
    }
    schedule(beta, k, alphas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::step_cap;
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    #[test]
    fn thresholds() {
        assert_eq!(threshold_h(0), 0.0);
        assert_eq!(threshold_h(1), 4.0 * PI / 3.0);
        assert_eq!(threshold_h(2), 3.0 * PI / 2.0);
        let mut prev = 0.0;
        for t in 1..50 {
            let h = threshold_h(t);
            assert!(h > prev && h < TAU);
            prev = h;
        }
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(PI).unwrap(), 1.0);
        // (10 - 2*pi) / (2*pi - 5), computed by hand
        assert!((rho(5.0).unwrap() - 2.896553344263185).abs() < TOL);
        // boundary: numerator equals denominator at beta = 4*pi/3
        assert!((rho(4.0 * PI / 3.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(rho(0.0).is_err());
    }

    #[test]
    fn iterative_trace_small_fence() {
        // beta = 2: cap never binds, jumps are exact halves
        let s = halving_jumps_iterative(2.0, 3).unwrap();
        assert_eq!(s.alphas, vec![1.0, 0.5, 0.25]);
        assert_eq!(s.rho_ceil, 1);
    }

    #[test]
    fn iterative_trace_large_fence() {
        // beta = 5: temp = 2.5 > 2*pi - 5, so the cap binds twice
        let s = halving_jumps_iterative(5.0, 3).unwrap();
        let cap = TAU - 5.0;
        assert_eq!(s.alphas[0], cap);
        assert_eq!(s.alphas[1], cap);
        assert!((s.alphas[2] - (5.0 - 2.0 * cap) / 2.0).abs() < TOL);
        assert!((s.alphas[2] - 1.2168146928204135).abs() < TOL);
    }

    #[test]
    fn small_fences_halve_exactly() {
        // cap never binds for beta <= 4*pi/3, so alpha_i = beta / 2^i;
        // the running `explored` sum rounds, hence the ulp-scale slack
        for &beta in &[0.3, 1.0, 2.0, PI, 4.0] {
            let s = halving_jumps_iterative(beta, 10).unwrap();
            for (i, &a) in s.alphas.iter().enumerate() {
                let expected = beta / 2f64.powi(i as i32 + 1);
                assert!(
                    (a - expected).abs() <= 1e-13 * expected.max(1e-300),
                    "beta = {beta}, i = {i}: {a} vs {expected}"
                );
            }
        }
        // beta = 2 is a power of two: every step is exact
        let s = halving_jumps_iterative(2.0, 10).unwrap();
        for (i, &a) in s.alphas.iter().enumerate() {
            assert_eq!(a, 2.0 / 2f64.powi(i as i32 + 1));
        }
    }

    #[test]
    fn closed_matches_iterative() {
        for i in 1..=400 {
            let beta = i as f64 / 401.0 * TAU;
            for k in [1, 2, 3, 5, 8, 13, 20, 30] {
                let it = halving_jumps_iterative(beta, k).unwrap();
                let cl = halving_jumps_closed(beta, k).unwrap();
                assert_eq!(it.alphas.len(), cl.alphas.len(), "beta = {beta}, k = {k}");
                for (a, b) in it.alphas.iter().zip(&cl.alphas) {
                    assert!((a - b).abs() <= 1e-12, "beta = {beta}, k = {k}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn closed_examples() {
        let s = halving_jumps_closed(2.0, 3).unwrap();
        assert_eq!(s.alphas, vec![1.0, 0.5, 0.25]);
        assert_eq!(s.rho_ceil, 1);

        let s = halving_jumps_closed(5.0, 3).unwrap();
        assert_eq!(s.rho_ceil, 3);
        assert_eq!(s.alphas[0], TAU - 5.0);
        assert_eq!(s.alphas[1], TAU - 5.0);
        assert!((s.alphas[2] - 1.2168146928204135).abs() < TOL);
    }

    #[test]
    fn jump_at_rho_ceil_has_reduced_form() {
        // alpha_r = pi - (r/2) * (2*pi - beta) at the first uncapped index
        for i in 1..200 {
            let beta = i as f64 / 200.0 * (TAU - 0.02) + 0.01;
            let s = halving_jumps_closed(beta, 25).unwrap();
            let r = s.rho_ceil;
            if r <= s.alphas.len() {
                let expected = PI - r as f64 / 2.0 * (TAU - beta);
                assert!(
                    (s.alphas[r - 1] - expected).abs() < 1e-12,
                    "beta = {beta}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn schedules_non_increasing_and_valid() {
        for i in 1..300 {
            let beta = i as f64 / 300.0 * (TAU - 0.02) + 0.01;
            let s = halving_jumps_closed(beta, 20).unwrap();
            let cap = step_cap(beta);
            let mut prev = f64::INFINITY;
            for &a in &s.alphas {
                assert!(a > 0.0 && a <= cap + 1e-15, "beta = {beta}: alpha = {a}");
                assert!(a <= prev, "beta = {beta}: increasing step");
                prev = a;
            }
        }
    }

    #[test]
    fn a_ij_valid_on_its_interval() {
        // 0 < A_{i,j} <= 2*pi - beta whenever beta in (h_{j-1}, h_j], i >= j
        for j in 1..=8usize {
            let (lo, hi) = (threshold_h(j - 1), threshold_h(j));
            for step in 1..=20 {
                let beta = lo + (hi - lo) * step as f64 / 20.0;
                for i in j..=(j + 10) {
                    let a = a_ij(i, j, beta);
                    assert!(
                        a > 0.0 && a <= TAU - beta + 1e-12,
                        "i = {i}, j = {j}, beta = {beta}: A = {a}"
                    );
                }
            }
        }
    }

    #[test]
    fn piecewise_structure_saturates_past_thresholds() {
        // for beta > h_i the i-th jump equals 2*pi - beta exactly
        for i in 1..400 {
            let beta = i as f64 / 400.0 * (TAU - 0.02) + 0.01;
            let s = halving_jumps_closed(beta, 6).unwrap();
            for (idx, &a) in s.alphas.iter().enumerate() {
                if beta > threshold_h(idx + 1) {
                    assert_eq!(a, TAU - beta, "beta = {beta}, i = {}", idx + 1);
                }
            }
        }
    }

    #[test]
    fn all_inside_is_the_worst_landing_case() {
        // the schedule's breakdown peaks at t = k + 1 for every fence
        for i in 1..150 {
            let beta = i as f64 / 150.0 * (TAU - 0.02) + 0.01;
            for k in 1..=8 {
                let s = halving_jumps_iterative(beta, k).unwrap();
                let bd = crate::costs::cost_breakdown(beta, &s.alphas).unwrap();
                assert_eq!(
                    bd.worst_index,
                    s.alphas.len() + 1,
                    "beta = {beta}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn rejects_domain_errors() {
        assert!(halving_jumps_iterative(0.0, 3).is_err());
        assert!(halving_jumps_iterative(TAU, 3).is_err());
        assert!(matches!(
            halving_jumps_iterative(2.0, 0),
            Err(Error::EmptySchedule)
        ));
        assert!(halving_jumps_closed(2.0, 0).is_err());
    }

    #[test]
    fn deep_schedules_truncate_noise() {
        let s = halving_jumps_iterative(1.0, 100).unwrap();
        assert!(s.alphas.len() < 100);
        assert!(s.alphas.iter().all(|&a| a >= 1e-15));
        assert_eq!(s.k, 100);
    }
}
