//! Angle arithmetic on the unit circle, fence membership, chord geometry,
//! and jump-strategy validity.
//!
//! Everything lives in arc-length coordinates on a circle of radius 1:
//! angles are radians in `[0, 2*pi)`, counterclockwise is the positive
//! direction, and all distances double as travel times for a unit-speed
//! robot.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result, Violation};

/// Reduce an arbitrary angle to `[0, 2*pi)`.
///
/// `rem_euclid` can round up to exactly `2*pi` for tiny negative inputs,
/// so the result is post-corrected to keep the half-open invariant.
pub fn normalize(radians: f64) -> f64 {
    let r = radians.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// An angle on the unit circle, kept normalized to `[0, 2*pi)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub fn new(radians: f64) -> Self {
        Self(normalize(radians))
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// Move counterclockwise by `arc` radians (re-normalizing).
    pub fn advance_ccw(self, arc: f64) -> Self {
        Self::new(self.0 + arc)
    }

    /// Move clockwise by `arc` radians (re-normalizing).
    pub fn advance_cw(self, arc: f64) -> Self {
        Self::new(self.0 - arc)
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Self::new(radians)
    }
}

/// Counterclockwise arc distance from `from` to `to`, in `[0, 2*pi)`.
///
/// `ccw_distance(a, a) == 0`; going the other way around costs the
/// complement, so `ccw_distance(a, b) + ccw_distance(b, a)` is `2*pi`
/// whenever the angles differ.
pub fn ccw_distance(from: Angle, to: Angle) -> f64 {
    normalize(to.0 - from.0)
}

/// Chord length without the domain check; callers guarantee `alpha` is a
/// normalized arc.
#[inline]
pub(crate) fn chord_len(alpha: f64) -> f64 {
    debug_assert!((0.0..=TAU).contains(&alpha));
    2.0 * (alpha / 2.0).sin()
}

/// Length of the chord subtending a ccw arc of `alpha` radians:
/// `2*sin(alpha/2)`, in `[0, 2]`.
pub fn chord(alpha: f64) -> Result<f64> {
    if !(0.0..=TAU).contains(&alpha) {
        return Err(Error::ArcOutOfRange(alpha));
    }
    Ok(chord_len(alpha))
}

/// Validate a fence length, returning it unchanged.
pub(crate) fn check_beta(beta: f64) -> Result<f64> {
    if beta > 0.0 && beta < TAU {
        Ok(beta)
    } else {
        Err(Error::BetaOutOfRange(beta))
    }
}

pub(crate) fn check_tolerance(tol: f64) -> Result<f64> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::NonPositiveTolerance(tol))
    }
}

/// Largest admissible jump step for fence length `beta`:
/// `min(pi, 2*pi - beta)`.
pub fn step_cap(beta: f64) -> f64 {
    PI.min(TAU - beta)
}

/// A problem instance: a fence of arc length `beta` somewhere on the unit
/// circle. Radius and robot speed are fixed to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemInstance {
    beta: f64,
}

impl ProblemInstance {
    /// Requires `0 < beta < 2*pi`: a zero fence is no constraint and a full
    /// fence leaves nowhere for the treasure.
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Self {
            beta: check_beta(beta)?,
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn step_cap(&self) -> f64 {
        step_cap(self.beta)
    }
}

/// A concrete fence placement: the closed ccw arc `[start, start + beta]`,
/// where `start` is the endpoint a ccw-walking robot meets first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FencePlacement {
    pub start: Angle,
}

impl FencePlacement {
    pub fn new(start: Angle) -> Self {
        Self { start }
    }

    /// The ccw (exit) endpoint `start + beta`.
    pub fn end(&self, beta: f64) -> Angle {
        self.start.advance_ccw(beta)
    }
}

/// Fence membership: `p` is a fence point iff its ccw distance from the
/// fence start is at most `beta`. Both endpoints count as fence points.
pub fn in_fence(p: Angle, fence: FencePlacement, beta: f64) -> bool {
    ccw_distance(fence.start, p) <= beta
}

/// An ordered vector of jump arc lengths `(alpha_1, ..., alpha_k)` for a
/// given fence length. `k = 0` is the plain walk-only search.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpStrategy {
    pub beta: f64,
    pub alphas: Vec<f64>,
}

impl JumpStrategy {
    pub fn new(beta: f64, alphas: Vec<f64>) -> Self {
        Self { beta, alphas }
    }

    pub fn k(&self) -> usize {
        self.alphas.len()
    }

    /// Report every violation of `0 < beta < 2*pi` and
    /// `0 < alpha_i <= min(pi, 2*pi - beta)`. Empty means valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !(self.beta > 0.0 && self.beta < TAU) {
            out.push(Violation::BetaOutOfRange { beta: self.beta });
        }
        let cap = step_cap(self.beta);
        for (index, &alpha) in self.alphas.iter().enumerate() {
            if alpha <= 0.0 || alpha.is_nan() {
                out.push(Violation::StepNonPositive { index, alpha });
            } else if alpha > cap {
                out.push(Violation::StepExceedsCap { index, alpha, cap });
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidStrategy(violations))
        }
    }
}

/// Convenience wrapper over [`JumpStrategy::violations`].
pub fn validate_strategy(beta: f64, alphas: &[f64]) -> Result<()> {
    JumpStrategy::new(beta, alphas.to_vec()).validate()
}
