use clap::{Parser, Subcommand};
use ensemble_nmr_cli::{runner, scenarios, verify, DEFAULT_SEED};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ensemble-nmr", version, about = "Scenario runner and acceptance suite for ensemble NMR registers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the scenarios configured in a file.
    Run {
        config: PathBuf,
        /// Output directory; each scenario writes into `<out>/<name>/`.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Manifest seed, overriding the config's `seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Scenarios run concurrently.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List registered scenarios with their keys and defaults.
    List,
    /// Run the acceptance criteria; exit 0 iff all pass.
    Verify {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

fn list() {
    for s in scenarios::REGISTRY {
        println!("{:<24}{}", s.name, s.summary);
        for p in s.params {
            println!("    {:<22}{:<10.4e}{:<8}{}", p.key, p.default, p.dim.to_string(), p.help);
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config, out, seed, jobs } => match runner::run_file(&config, &out, seed, jobs) {
            Ok((manifest, timings)) => {
                for ((name, t), entry) in timings.iter().zip(&manifest.scenarios) {
                    println!("{name}: {} files in {t:.3} s", entry.outputs.len());
                }
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {}: {e}", config.display());
                ExitCode::from(2)
            }
        },
        Command::List => {
            list();
            ExitCode::SUCCESS
        }
        Command::Verify { seed } => {
            let mut all = true;
            for id in 1..=verify::CRITERIA {
                let o = verify::evaluate(id, seed);
                println!("{}", o.line());
                all &= o.passed();
            }
            if all {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
