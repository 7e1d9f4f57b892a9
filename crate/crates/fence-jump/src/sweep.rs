//! Parameter sweeps over the fence length, serialized as CSV.
//!
//! Output is deterministic: rows are computed in parallel but written in
//! sorted `(beta, method, k)` order, floats are printed with 12
//! significant digits, and nothing time- or host-dependent goes into the
//! file.

use rayon::prelude::*;

use std::f64::consts::TAU;
use std::io::{self, Write};
use std::str::FromStr;

use crate::costs::worst_case_cost;
use crate::error::{Error, Result};
use crate::halving::halving_jumps_closed;
use crate::simulator::worst_case_sim;
use crate::solvers::{optimal_k_jump, optimal_one_jump, DEFAULT_MINIMAX_TOL};

/// Strategy family swept per beta.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SweepMethod {
    Halving,
    OneJump,
    Optimal,
    ZeroJump,
}

impl SweepMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Halving => "halving",
            Self::OneJump => "one-jump",
            Self::Optimal => "optimal",
            Self::ZeroJump => "zero-jump",
        }
    }

    pub const ALL: [SweepMethod; 4] = [
        Self::Halving,
        Self::OneJump,
        Self::Optimal,
        Self::ZeroJump,
    ];
}

impl FromStr for SweepMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "halving" => Ok(Self::Halving),
            "one-jump" => Ok(Self::OneJump),
            "optimal" => Ok(Self::Optimal),
            "zero-jump" => Ok(Self::ZeroJump),
            other => Err(format!(
                "unknown method '{other}' (expected halving|one-jump|optimal|zero-jump)"
            )),
        }
    }
}

/// Simulation settings for sweeps that also run the adversary oracle.
#[derive(Debug, Clone, Copy)]
pub struct SimGrid {
    pub eps: f64,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub beta_min: f64,
    pub beta_max: f64,
    /// Number of beta samples, endpoints included.
    pub steps: usize,
    /// Jump budget for the halving and optimal methods.
    pub k: usize,
    pub methods: Vec<SweepMethod>,
    pub simulate: Option<SimGrid>,
}

/// One `(beta, method)` result.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub beta: f64,
    pub k: usize,
    pub method: SweepMethod,
    pub alphas: Vec<f64>,
    pub cost_analytic: f64,
    pub cost_simulated: Option<f64>,
    pub sup_gap: Option<f64>,
}

fn make_row(beta: f64, method: SweepMethod, k: usize, sim: Option<SimGrid>) -> Result<SweepRow> {
    let alphas = match method {
        SweepMethod::ZeroJump => Vec::new(),
        SweepMethod::OneJump => optimal_one_jump(beta)?.alphas,
        SweepMethod::Optimal => optimal_k_jump(beta, k, DEFAULT_MINIMAX_TOL)?.alphas,
        SweepMethod::Halving => halving_jumps_closed(beta, k)?.alphas,
    };
    let cost_analytic = worst_case_cost(beta, &alphas)?;
    let (cost_simulated, sup_gap) = match sim {
        Some(grid) => {
            let sup = worst_case_sim(beta, &alphas, grid.eps, grid.delta)?;
            (Some(sup.sup_time), Some(cost_analytic - sup.sup_time))
        }
        None => (None, None),
    };
    Ok(SweepRow {
        beta,
        k: alphas.len(),
        method,
        alphas,
        cost_analytic,
        cost_simulated,
        sup_gap,
    })
}

/// Compute all rows for the configured beta grid and methods, sorted by
/// `(beta, method, k)`.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if !(cfg.beta_min > 0.0 && cfg.beta_min < cfg.beta_max && cfg.beta_max < TAU) {
        return Err(Error::BadSweepRange {
            min: cfg.beta_min,
            max: cfg.beta_max,
        });
    }
    if cfg.steps < 2 {
        return Err(Error::TooFewSteps(cfg.steps));
    }

    let span = cfg.beta_max - cfg.beta_min;
    let denom = (cfg.steps - 1) as f64;
    let cells: Vec<(f64, SweepMethod)> = (0..cfg.steps)
        .map(|i| cfg.beta_min + span * i as f64 / denom)
        .flat_map(|beta| cfg.methods.iter().map(move |&m| (beta, m)))
        .collect();

    let mut rows = cells
        .par_iter()
        .map(|&(beta, method)| make_row(beta, method, cfg.k, cfg.simulate))
        .collect::<Result<Vec<_>>>()?;

    rows.sort_by(|a, b| {
        a.beta
            .total_cmp(&b.beta)
            .then_with(|| a.method.name().cmp(b.method.name()))
            .then_with(|| a.k.cmp(&b.k))
    });
    Ok(rows)
}

/// 12 significant digits, locale-free, truncated toward zero.
///
/// Truncation (rather than rounding) keeps re-parsed magnitudes at or
/// below their source, so a cap-saturated jump step never re-parses past
/// the cap.
fn fmt_sig12(x: f64) -> String {
    let full = format!("{x:.16e}");
    let (mantissa, exponent) = full.split_once('e').expect("{:e} always has an exponent");
    let keep = if mantissa.starts_with('-') { 14 } else { 13 }; // sign + d + '.' + 11
    format!("{}e{exponent}", &mantissa[..keep])
}

/// Write the rows as CSV. The alpha column count is fixed per file by the
/// widest row; absent values are left empty.
pub fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> io::Result<()> {
    let max_k = rows.iter().map(|r| r.alphas.len()).max().unwrap_or(0);
    write!(out, "beta,k,method")?;
    for i in 1..=max_k {
        write!(out, ",alpha_{i}")?;
    }
    writeln!(out, ",cost_analytic,cost_simulated,sup_gap")?;

    for row in rows {
        write!(out, "{},{},{}", fmt_sig12(row.beta), row.k, row.method.name())?;
        for i in 0..max_k {
            match row.alphas.get(i) {
                Some(&a) => write!(out, ",{}", fmt_sig12(a))?,
                None => write!(out, ",")?,
            }
        }
        write!(out, ",{}", fmt_sig12(row.cost_analytic))?;
        match row.cost_simulated {
            Some(v) => write!(out, ",{}", fmt_sig12(v))?,
            None => write!(out, ",")?,
        }
        match row.sup_gap {
            Some(v) => writeln!(out, ",{}", fmt_sig12(v))?,
            None => writeln!(out, ",")?,
        }
    }
    Ok(())
}

/// Render to an in-memory buffer; the determinism checks compare these
/// byte for byte.
pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
