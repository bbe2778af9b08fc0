use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use popmap_cli::commands::{self, Method};
use popmap_cli::exit;

/// Inseparability checks for n-qubit density operators.
#[derive(Parser)]
#[command(name = "popmap", version)]
struct Cli {
    /// Negativity threshold for `detect ... map` (default 1e-9).
    #[arg(long, global = true, value_name = "FLOAT")]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fixture state: horodecki-b, isotropic, pure-p, ghz, random-msep.
    Gen {
        family: String,
        /// key=value parameters, e.g. `b=0.1` or `s=0 bell=phi+`.
        params: Vec<String>,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Apply a product of single-qubit maps, e.g. `1:P,2:T` or `all:P`.
    Apply {
        input: PathBuf,
        spec: String,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run a criterion: lz, hamming, or map (with --spec).
    Detect {
        input: PathBuf,
        method: Method,
        #[arg(long, value_name = "SPEC")]
        spec: Option<String>,
    },
    /// Print eigenvalues in ascending order.
    Eigs { input: PathBuf },
    /// Recompute the closed-form checks and print a pass/fail table.
    Reproduce {
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::ERROR as u8 } else { 0 });
        }
    };
    let mut out = io::stdout().lock();
    let result = match (cli.tol, &cli.command) {
        (Some(t), _) if !(t.is_finite() && t >= 0.0) => Err(popmap_cli::CliError::Usage(format!(
            "--tol must be a non-negative number, got {t}"
        ))),
        (_, Command::Gen { family, params, out: path }) => commands::gen(family, params, path.as_deref(), &mut out),
        (_, Command::Apply { input, spec, out: path }) => commands::apply(input, spec, path.as_deref(), &mut out),
        (tol, Command::Detect { input, method, spec }) => {
            commands::detect(input, *method, spec.as_deref(), tol, &mut out)
        }
        (_, Command::Eigs { input }) => commands::eigs(input, &mut out),
        (_, Command::Reproduce { perturb }) => commands::reproduce(*perturb, &mut out),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("popmap: {e}");
            ExitCode::from(exit::ERROR as u8)
        }
    }
}
