use std::process::ExitCode;

use altlex_cli::commands::{self, Command, Flags};
use altlex_cli::selftest::Fault;
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    Parity,
}

/// Exact computation with the alternating lexicographic order on
/// transfinite decreasing sequences.
#[derive(Debug, Parser)]
#[command(name = "altlex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for the self-test generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Successor steps per decomposition round.
    #[arg(long, global = true, default_value_t = altlex::kl::decompose::DEFAULT_BUDGET)]
    budget: usize,
    /// Terms kept in truncated indices.
    #[arg(long, global = true, default_value_t = 40)]
    precision: u32,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[arg(long, global = true, hide = true)]
    inject_fault: Option<FaultArg>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let flags = Flags {
        seed: cli.seed,
        budget: cli.budget,
        precision: cli.precision,
        fault: cli.inject_fault.map(|FaultArg::Parity| Fault::Parity),
    };
    let out = commands::run(&cli.command, &flags);
    let text = serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n";
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("altlex: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if let Some(msg) = out.report.get("error").and_then(|e| e.get("message")) {
        eprintln!("altlex: {}", msg.as_str().unwrap_or_default());
    }
    ExitCode::from(out.code as u8)
}
