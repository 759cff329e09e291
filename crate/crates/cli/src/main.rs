//! `qrobust`: how much local depolarizing noise does an entangled state
//! survive?
//!
//! Exit codes: 0 success, 1 verification mismatch (table1), 2 usage or
//! input errors.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{CommandOutput, MuArg, StateSelector};
use output::Format;

#[derive(Parser)]
#[command(
    name = "qrobust",
    version,
    about = "Robustness of multi-qubit entanglement under local depolarizing noise"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Bisection tolerance on the depolarization probability d
    #[arg(long, global = true, default_value_t = 5e-4)]
    tol: f64,

    /// Seed for sampling-based subroutines
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute the critical-depolarization table for the named 3- and
    /// 4-qubit states and verify it against built-in reference values
    Table1,

    /// GHZ thresholds for n = 2..N with a numeric cross-check up to n = 8
    GhzCurve {
        /// Largest register size (2..=64)
        #[arg(long)]
        n: usize,
    },

    /// Per-cut PT eigenvalues, PPT flags, Schmidt ranks, and entropies of a
    /// state under depolarization d
    Analyze {
        /// Named state: G3, G4, W3, W4, X4, B4, S4, SINGLET
        #[arg(long)]
        state: Option<String>,

        /// Ket expression, e.g. "(|000>+|111>)/sqrt(2)" (normalized)
        #[arg(long, conflicts_with = "state")]
        state_expr: Option<String>,

        /// Depolarization probability applied to every qubit
        #[arg(long, default_value_t = 0.0)]
        d: f64,
    },

    /// Squeezing parameter of a one-axis-twisted state and its noise bound
    Squeeze {
        /// Register size (1..=10)
        #[arg(long)]
        n: usize,

        /// Twisting angle, or "scan" for the minimum over a 200-point grid
        #[arg(long)]
        mu: String,

        /// Scaling factor s = 1 - d used for the noisy squeezing column
        #[arg(long, default_value_t = 1.0)]
        s: f64,
    },

    /// Negativity of a GHZ state measured on every qubit with probability p
    MeasureGhz {
        /// Register size (2..=10)
        #[arg(long)]
        n: usize,

        /// Per-qubit measurement probability
        #[arg(long)]
        p: f64,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let tol = cli.tol;
    if tol.is_nan() || tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return 2;
    }
    let outcome = match &cli.command {
        Command::Table1 => commands::table1(tol, cli.seed),
        Command::GhzCurve { n } => commands::ghz_curve(*n, tol, cli.seed),
        Command::Analyze {
            state,
            state_expr,
            d,
        } => match (state, state_expr) {
            (Some(name), None) => {
                commands::analyze(&StateSelector::Named(name.clone()), *d, cli.seed)
            }
            (None, Some(expr)) => {
                commands::analyze(&StateSelector::Expr(expr.clone()), *d, cli.seed)
            }
            _ => {
                eprintln!("error: analyze needs exactly one of --state or --state-expr");
                return 2;
            }
        },
        Command::Squeeze { n, mu, s } => {
            let mu_arg = if mu == "scan" {
                MuArg::Scan
            } else {
                match mu.parse::<f64>() {
                    Ok(v) => MuArg::Value(v),
                    Err(_) => {
                        eprintln!("error: --mu expects a number or \"scan\", got `{mu}`");
                        return 2;
                    }
                }
            };
            commands::squeeze(*n, &mu_arg, *s, cli.seed)
        }
        Command::MeasureGhz { n, p } => commands::measure_ghz(*n, *p, cli.seed),
    };

    let CommandOutput {
        report,
        diagnostics,
        exit_code,
    } = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };

    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let text = report.render(format);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    } else {
        let mut stdout = std::io::stdout().lock();
        if stdout.write_all(text.as_bytes()).is_err() {
            return 2;
        }
    }
    for line in &diagnostics {
        eprintln!("{line}");
    }
    exit_code
}
