//! Command-line harness over the curve library: check one curve, sweep
//! families, re-verify the headline equivalences, and tabulate good-k
//! counts. Reports are deterministic given the flags and seed —
//! byte-identical across runs and worker counts.

mod check;
mod common;
mod goodk_cmd;
mod report;
mod scan;
mod verify;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "planefill",
    version,
    about = "Plane-filling curves over finite fields: smoothness, scans, and counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide smoothness of one curve and report its singular points.
    Check(check::CheckArgs),
    /// Sweep a family over ranges of q (and r), one verdict per k.
    #[command(name = "scan-k")]
    ScanK(scan::ScanArgs),
    /// Re-verify criterion/solver agreement and the counting claims.
    Verify(verify::VerifyArgs),
    /// Tabulate bad/good k counts and the pair-graph structure.
    Goodk(goodk_cmd::GoodkArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Check(args) => check::run(args),
        Command::ScanK(args) => scan::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Goodk(args) => goodk_cmd::run(args),
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
