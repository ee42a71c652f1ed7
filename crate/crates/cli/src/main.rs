//! `pspectra`: eigenvalues, P-values, bounds and reproducible datasets for
//! power-law and logarithmic central potentials.
//!
//! Exit codes: 0 success, 1 usage or runtime error, 2 a check failed
//! (non-convergence, reference mismatch, ordering violation).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use pspectra::{SolverConfig, StateLabel};

use commands::{Outcome, Suite};
use output::{destination, emit, Format, RunManifest};

#[derive(Parser)]
#[command(name = "pspectra", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; defaults to `$PSPECTRA_OUT_DIR/<command>.<ext>`, else stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Relative eigenvalue tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Args, Clone, Copy)]
struct StateArgs {
    /// Spatial dimension.
    #[arg(long = "N", default_value_t = 3)]
    dim: u32,
    /// Radial quantum number (1 = nodeless).
    #[arg(long = "n", default_value_t = 1)]
    n: u32,
    /// Angular momentum.
    #[arg(long = "l", default_value_t = 0)]
    ell: u32,
}

impl StateArgs {
    fn label(self) -> Result<StateLabel> {
        Ok(StateLabel::new(self.dim, self.n, self.ell)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// One eigenvalue of -Δ + v sgn(q) r^q, or -Δ + v ln r with --log.
    #[command(allow_negative_numbers = true)]
    Eigen {
        #[arg(long, conflicts_with = "log", required_unless_present = "log")]
        q: Option<f64>,
        #[arg(long)]
        log: bool,
        #[arg(long, default_value_t = 1.0)]
        v: f64,
        #[command(flatten)]
        state: StateArgs,
    },
    /// E, P, Z and Q = Z P over a grid of exponents (0 is the log potential).
    #[command(allow_negative_numbers = true)]
    Pfun {
        /// Comma-separated exponents; defaults to the standard grid for the dimension.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        q: Option<Vec<f64>>,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Linear-potential P-values for N = 2..12, n = 1..4 against the reference table.
    Table1,
    /// Bounds on the ground state of -Δ + v r^{3/2} from linear and oscillator P-values.
    #[command(allow_negative_numbers = true)]
    Fig5 {
        /// Comma-separated dimensions [default: 3..10].
        #[arg(long = "N", value_delimiter = ',')]
        dims: Option<Vec<u32>>,
        /// Comma-separated couplings [default: log grid on 0.5..10 plus 0.5,1,2,5,10].
        #[arg(long, value_delimiter = ',')]
        v: Option<Vec<f64>>,
    },
    /// Property suites over fixed grids.
    Verify {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eigen { .. } => "eigen",
            Command::Pfun { .. } => "pfun",
            Command::Table1 => "table1",
            Command::Fig5 { .. } => "fig5",
            Command::Verify { .. } => "verify",
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    let name = cli.command.name();
    let Outcome { table, params, failures } = match cli.command {
        Command::Eigen { q, log, v, state } => commands::eigen(q, log, v, state.label()?, cli.tol)?,
        Command::Pfun { q, state } => commands::pfun_cmd(q, state.label()?, cli.tol)?,
        Command::Table1 => commands::table1_cmd(cli.tol)?,
        Command::Fig5 { dims, v } => commands::fig5_cmd(dims, v, cli.tol)?,
        Command::Verify { suite } => commands::verify_cmd(suite, cli.tol)?,
    };
    let manifest = RunManifest {
        command: name.to_owned(),
        params,
        tolerance: cli.tol,
        mesh: json!(SolverConfig::default()),
        version: env!("CARGO_PKG_VERSION"),
        wall_time_s: started.elapsed().as_secs_f64(),
        rows: table.rows.len(),
        status: if failures.is_empty() { "pass".into() } else { format!("fail ({})", failures.len()) },
    };
    let dest = destination(cli.out.as_deref(), name, cli.format);
    emit(&table, &manifest, cli.format, dest.as_deref())?;
    if let Some(path) = &dest {
        eprintln!("wrote {} ({} rows)", path.display(), table.rows.len());
    }
    for f in &failures {
        eprintln!("FAIL {f}");
    }
    Ok(failures.is_empty())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
