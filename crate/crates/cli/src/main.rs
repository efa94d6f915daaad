//! `ext2cat`: run scenario files and self-checks.

mod report;
mod scenario;
mod tasks;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use ext2cat_core::sweep::{selfcheck, Config};
use ext2cat_core::zmod::Budget;

#[derive(Parser)]
#[command(name = "ext2cat", version, about = "Extension 2-categories of finite Z/m-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tasks of a scenario file.
    Run {
        /// JSON scenario file
        scenario: PathBuf,
        /// Write the JSON report here instead of standard output.
        #[arg(long, conflicts_with = "text")]
        out: Option<PathBuf>,
        /// Print a plain-text summary instead of JSON.
        #[arg(long)]
        text: bool,
    },
    /// Run the acceptance criteria on the named complexes, or on the full sweep.
    Selfcheck {
        /// Sweep every complex with module orders up to --max-order
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 4)]
        modulus: i64,
        #[arg(long, default_value_t = 8)]
        max_order: u128,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print a plain-text summary instead of JSON.
        #[arg(long)]
        text: bool,
    },
}

fn json_line<T: serde::Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Run { scenario, out, text } => {
            let raw = std::fs::read_to_string(&scenario).with_context(|| format!("reading {}", scenario.display()))?;
            let sc = scenario::parse(&raw)?;
            let rep = report::run(&sc);
            if text {
                print!("{}", report::render_text(&rep));
            } else if let Some(path) = out {
                std::fs::write(&path, json_line(&rep)?).with_context(|| format!("writing {}", path.display()))?;
            } else {
                print!("{}", json_line(&rep)?);
            }
            Ok(rep.passed)
        }
        Command::Selfcheck { full, modulus, max_order, seed, text } => {
            let cfg = Config { modulus, max_order, full, seed, budget: Budget::from_env() };
            let rep = selfcheck(&cfg)?;
            if text {
                print!("{}", report::render_selfcheck(&rep));
            } else {
                print!("{}", json_line(&rep)?);
            }
            Ok(rep.passed())
        }
    }
}
