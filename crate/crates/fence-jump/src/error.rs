//! Crate-wide error type and strategy violation reports.

use std::fmt;

use thiserror::Error;

/// A single validity violation found in a [`crate::circle::JumpStrategy`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// The fence length is outside the open interval `(0, 2*pi)`.
    BetaOutOfRange { beta: f64 },
    /// Jump step `alphas[index]` is not strictly positive.
    StepNonPositive { index: usize, alpha: f64 },
    /// Jump step `alphas[index]` exceeds the cap `min(pi, 2*pi - beta)`.
    StepExceedsCap { index: usize, alpha: f64, cap: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BetaOutOfRange { beta } => {
                write!(f, "beta must be in (0, 2*pi), got {beta}")
            }
            Self::StepNonPositive { index, alpha } => {
                write!(f, "alpha_{} must be positive, got {alpha}", index + 1)
            }
            Self::StepExceedsCap { index, alpha, cap } => {
                write!(
                    f,
                    "alpha_{} = {alpha} exceeds the cap min(pi, 2*pi - beta) = {cap}",
                    index + 1
                )
            }
        }
    }
}

fn join_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("beta must be in (0, 2*pi), got {0}")]
    BetaOutOfRange(f64),

    #[error("arc length must be in [0, 2*pi], got {0}")]
    ArcOutOfRange(f64),

    #[error("invalid strategy: {}", join_violations(.0))]
    InvalidStrategy(Vec<Violation>),

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("jump count must be at least 1")]
    EmptySchedule,

    #[error("jump count k = {k} outside the supported range [1, {max}]")]
    KOutOfRange { k: usize, max: usize },

    #[error("solver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: u32, residual: f64 },

    #[error("treasure at angle {angle} lies on the fence")]
    TreasureOnFence { angle: f64 },

    #[error("grid step must be positive and finite, got {0}")]
    BadGridStep(f64),

    #[error("boundary offset must satisfy 0 < delta < eps, got delta = {delta}, eps = {eps}")]
    BadBoundaryOffset { delta: f64, eps: f64 },

    #[error("sweep range must satisfy 0 < beta_min < beta_max < 2*pi, got [{min}, {max}]")]
    BadSweepRange { min: f64, max: f64 },

    #[error("sweep needs at least 2 steps, got {0}")]
    TooFewSteps(usize),

    #[error("grid refinement needs at least one round")]
    NoRounds,
}

pub type Result<T> = std::result::Result<T, Error>;
