use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mccc::checks::DEFAULT_QUADRATURE_TOLERANCE;
use mccc::cli::{cmd_oracle_check, cmd_run, cmd_sweep, RunOptions};

#[derive(Parser)]
#[command(name = "mccc", version, about = "Complex correntropy adaptive filtering experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the Monte Carlo MCCC vs RLS comparison.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Override the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (default: one per trial, capped at available cores).
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Repeat the comparison for several kernel sizes.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        sigmas: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// Check the estimators and solvers against independent oracles.
    OracleCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_QUADRATURE_TOLERANCE)]
        tol: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run { config, out, seed, parallel } => {
            cmd_run(&config, &out, &RunOptions { seed, parallel }).map(|m| {
                for f in &m.outputs {
                    println!("wrote {}", out.join(f).display());
                }
                true
            })
        }
        Command::Sweep { config, sigmas, out, seed, parallel } => {
            cmd_sweep(&config, &sigmas, &out, &RunOptions { seed, parallel }).map(|m| {
                println!("{} runs, {} files under {}", m.sigmas.len(), m.outputs.len(), out.display());
                true
            })
        }
        Command::OracleCheck { seed, tol } => cmd_oracle_check(seed, tol).map(|report| {
            print!("{report}");
            report.all_passed()
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
