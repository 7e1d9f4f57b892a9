//! Command-line front end: single-instance queries, beta sweeps as CSV,
//! and the verification matrix.
//!
//! Exit codes: 0 on success, 1 on verification/agreement failure, 2 on
//! usage or domain errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fence_jump::sweep::{run_sweep, write_csv, SimGrid, SweepConfig, SweepMethod};
use fence_jump::verify::{render_report, run_all, VerifyConfig};
use fence_jump::{
    cost_breakdown, halving_jumps_closed, optimal_k_jump, optimal_one_jump, worst_case_cost,
    worst_case_sim, CostBreakdown,
};

#[derive(Parser)]
#[command(
    name = "fence-jump",
    version,
    about = "Worst-case search strategies for chord-jumping over a fence on the unit circle"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyMethod {
    Halving,
    Optimal,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a jump strategy and its analytic worst-case cost.
    Strategy {
        /// Fence arc length, in (0, 2*pi).
        #[arg(long)]
        beta: f64,
        /// Jump budget.
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum)]
        method: StrategyMethod,
    },
    /// Evaluate the cost breakdown of an explicit jump vector.
    Cost {
        #[arg(long)]
        beta: f64,
        /// Comma-separated jump steps; empty for the walk-only search.
        #[arg(long, default_value = "")]
        alphas: String,
    },
    /// Run the adversarial simulation and report agreement with the
    /// analytic worst case.
    Simulate {
        #[arg(long)]
        beta: f64,
        /// Comma-separated jump steps; empty for the walk-only search.
        #[arg(long, default_value = "")]
        alphas: String,
        /// Adversary grid step.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Boundary offset; defaults to eps / 10.
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Sweep the fence length and write one CSV row per (beta, method).
    Sweep {
        #[arg(long)]
        beta_min: f64,
        #[arg(long)]
        beta_max: f64,
        /// Number of beta samples, endpoints included.
        #[arg(long)]
        steps: usize,
        /// Jump budget for the halving and optimal methods.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Comma-separated subset of halving,one-jump,optimal,zero-jump.
        #[arg(long, default_value = "halving,optimal")]
        methods: String,
        /// Also run the adversarial simulation per row.
        #[arg(long)]
        simulate: bool,
        #[arg(long, default_value_t = 1e-2)]
        eps: f64,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the verification matrix.
    Verify {
        /// Adversary grid step for the simulation checks.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Skip the simulation-heavy checks.
        #[arg(long)]
        quick: bool,
    },
}

fn parse_alphas(raw: &str) -> Result<Vec<f64>, String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| format!("invalid jump step '{s}'"))
        })
        .collect()
}

fn print_breakdown(bd: &CostBreakdown) {
    println!("breakdown (first landing outside the fence at jump t):");
    let k = bd.k();
    for (t, cost) in bd.costs.iter().enumerate() {
        let label = match t {
            0 => "basic landing outside".to_string(),
            t if t == k + 1 => "every landing inside".to_string(),
            t => format!("jump {t} lands outside"),
        };
        let marker = if t == bd.worst_index { "  <- worst" } else { "" };
        println!("  t={t:<2} {label:<24} {cost:.12}{marker}");
    }
}

fn fmt_alphas(alphas: &[f64]) -> String {
    alphas
        .iter()
        .map(|a| a.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// 0 = ok, 1 = disagreement/failure, 2 = usage or domain error.
fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Strategy { beta, k, method } => {
            let (alphas, label) = match method {
                StrategyMethod::Halving => {
                    (halving_jumps_closed(beta, k).map_err(|e| e.to_string())?.alphas, "halving")
                }
                StrategyMethod::Optimal => {
                    if k == 1 {
                        (optimal_one_jump(beta).map_err(|e| e.to_string())?.alphas, "optimal")
                    } else {
                        (
                            optimal_k_jump(beta, k, 1e-9).map_err(|e| e.to_string())?.alphas,
                            "optimal",
                        )
                    }
                }
            };
            let bd = cost_breakdown(beta, &alphas).map_err(|e| e.to_string())?;
            println!("beta: {beta}");
            println!("method: {label}, k: {}", alphas.len());
            println!("alphas: {}", fmt_alphas(&alphas));
            println!("worst-case cost: {:.12}", bd.worst);
            print_breakdown(&bd);
            Ok(0)
        }
        Command::Cost { beta, alphas } => {
            let alphas = parse_alphas(&alphas)?;
            let bd = cost_breakdown(beta, &alphas).map_err(|e| e.to_string())?;
            println!("beta: {beta}");
            println!("alphas: {}", fmt_alphas(&alphas));
            println!("worst-case cost: {:.12}", bd.worst);
            print_breakdown(&bd);
            Ok(0)
        }
        Command::Simulate {
            beta,
            alphas,
            eps,
            delta,
        } => {
            let alphas = parse_alphas(&alphas)?;
            let delta = delta.unwrap_or(eps / 10.0);
            let analytic = worst_case_cost(beta, &alphas).map_err(|e| e.to_string())?;
            let sup = worst_case_sim(beta, &alphas, eps, delta).map_err(|e| e.to_string())?;
            let gap = analytic - sup.sup_time;
            println!("analytic worst case: {analytic:.12}");
            println!("simulated supremum:  {:.12}", sup.sup_time);
            println!(
                "argmax scenario: fence_start = {:.9}, treasure = {:.9}",
                sup.argmax.fence_start.radians(),
                sup.argmax.treasure.radians()
            );
            println!(
                "gap = {gap:.3e} over {} scenarios (eps = {eps:.1e}, delta = {delta:.1e})",
                sup.scenarios_evaluated
            );
            if gap.abs() <= 5.0 * eps {
                println!("agreement: ok (|gap| <= 5*eps)");
                Ok(0)
            } else {
                println!("agreement: FAILED (|gap| > 5*eps)");
                Ok(1)
            }
        }
        Command::Sweep {
            beta_min,
            beta_max,
            steps,
            k,
            methods,
            simulate,
            eps,
            delta,
            out,
        } => {
            let methods = methods
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<SweepMethod>())
                .collect::<Result<Vec<_>, _>>()?;
            if methods.is_empty() {
                return Err("no sweep methods given".to_string());
            }
            let cfg = SweepConfig {
                beta_min,
                beta_max,
                steps,
                k,
                methods,
                simulate: simulate.then_some(SimGrid {
                    eps,
                    delta: delta.unwrap_or(eps / 10.0),
                }),
            };
            let rows = run_sweep(&cfg).map_err(|e| e.to_string())?;
            let file = File::create(&out).map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            let mut writer = BufWriter::new(file);
            write_csv(&rows, &mut writer).map_err(|e| e.to_string())?;
            writer.flush().map_err(|e| e.to_string())?;
            println!("wrote {} rows to {}", rows.len(), out.display());
            Ok(0)
        }
        Command::Verify { eps, quick } => {
            let reports = run_all(VerifyConfig { eps, quick });
            let (text, ok) = render_report(&reports);
            print!("{text}");
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    // FENCEJUMP_THREADS caps scenario/sweep parallelism (default: cores)
    if let Ok(raw) = std::env::var("FENCEJUMP_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
            _ => {
                eprintln!("error: FENCEJUMP_THREADS must be a positive integer, got '{raw}'");
                return ExitCode::from(2);
            }
        }
    }

    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
