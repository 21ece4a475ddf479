use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ptxform_tools::config::check_tolerance;
use ptxform_tools::error::EXIT_CONFIG;
use ptxform_tools::{run, Command, RunConfig, RunOptions};

/// Spectra, transforms and PT phase scans for non-Hermitian Hamiltonians.
///
/// Exit codes: 0 success, 2 configuration error, 3 numerical failure
/// (including failed residual certification), 4 I/O error.
#[derive(Debug, Parser)]
#[command(name = "ptxform", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for CSV tables and report.json.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Breaking-indicator tolerance on |Im E|.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for scans.
    #[arg(long, global = true, env = "PTXFORM_THREADS")]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Sub {
    /// Certified eigenvalues of one Hamiltonian (eigenvalues.csv).
    Spectrum,
    /// Fourier or Segal-Bargmann transform of a sampled function.
    Transform,
    /// PT-breaking scan over a one-parameter family (scan.csv).
    Scan,
    /// Spin-chain spectra and phase table (chain.csv, phase.csv).
    Chain,
    /// Swanson oscillator levels and mapping quantities.
    Swanson,
}

fn execute<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    let command = match cli.command {
        Sub::Spectrum => Command::Spectrum,
        Sub::Transform => Command::Transform,
        Sub::Scan => Command::Scan,
        Sub::Chain => Command::Chain,
        Sub::Swanson => Command::Swanson,
    };
    if let Some(n) = cli.threads {
        // A second initialization in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = cli
        .config
        .as_deref()
        .map_or_else(|| Ok(RunConfig::default()), RunConfig::load)
        .and_then(|cfg| {
            let opts = RunOptions {
                out: cli.out.clone(),
                tol: cli.tol.map(check_tolerance).transpose()?,
            };
            run(command, &cfg, &opts)
        });
    match result {
        Ok(_) => 0,
        Err(e) => {
            eprintln!("ptxform {}: {e}", command.name());
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(execute(std::env::args_os()))
}
