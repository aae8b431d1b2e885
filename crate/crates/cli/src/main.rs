use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use gt_cli::{render, run, Overrides, EXIT_MALFORMED};

/// Runs one JSON verification job and prints a JSON report.
#[derive(Parser)]
#[command(name = "gt", version)]
struct Args {
    /// Job file; stdin when absent.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    precision: Option<i64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Spaces per indent level; 0 prints one line.
    #[arg(long, default_value_t = 2)]
    json_indent: usize,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let text = match text {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gt: cannot read job: {e}");
            return ExitCode::from(EXIT_MALFORMED as u8);
        }
    };
    let flags = Overrides {
        seed: args.seed,
        prime: args.prime,
        precision: args.precision,
        trials: args.trials,
    };
    let env_prime = std::env::var(gt_core::PRIME_ENV).ok();
    let (code, report) = run(&text, &flags, env_prime.as_deref());
    // a closed pipe downstream is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{}", render(&report, args.json_indent));
    ExitCode::from(code as u8)
}
