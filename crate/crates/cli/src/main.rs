use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use oqf_cli::{run, Command, JobConfig, Options};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    /// Correlation matrix at each sample time.
    Evolve,
    /// Stationary correlation matrix of a strictly damped generator.
    Steady,
    /// Steady occupation profile of the boundary-driven skin-effect chain.
    Skin,
    /// Seeded identity checks against the dense Fock-space oracle.
    Verify,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Evolve => Command::Evolve,
            Cmd::Steady => Command::Steady,
            Cmd::Skin => Command::Skin,
            Cmd::Verify => Command::Verify,
        }
    }
}

/// Exact dynamics of open quadratic fermion systems.
///
/// Exit status: 0 success, 1 invalid input, 2 physics or numerical failure,
/// 3 verification failure.
#[derive(Debug, Parser)]
#[command(name = "oqf", version)]
struct Args {
    command: Cmd,
    /// TOML job description.
    #[arg(long)]
    config: PathBuf,
    /// CSV destination; defaults to the config's `output`, then stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Seed for the random instances used by `verify`.
    #[arg(long)]
    seed: Option<u64>,
    /// Tolerance override: every residual bound for `verify`, the physicality
    /// slack for `evolve` and `steady`.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = Options {
        out: args.out,
        seed: args.seed,
        tol: args.tol,
    };
    let result = JobConfig::load(&args.config).and_then(|cfg| run(args.command.into(), &cfg, &opts));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("oqf: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
