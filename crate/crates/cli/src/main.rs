//! `wdtk`: command-line access to Weil-Deligne representation computations.

mod commands;
mod doc;
mod report;
mod selftest;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use commands::{run, Command};
use report::Mode;

#[derive(Debug, Parser)]
#[command(name = "wdtk", version, about = "Exact computations with Weil-Deligne representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format
    #[arg(long, global = true, value_enum, default_value = "text")]
    report: Mode,
    /// Also require Frobenius to act as g -> g^q on the tame quotient
    #[arg(long, global = true)]
    strict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let load = |p: &std::path::Path| std::fs::read_to_string(p).map_err(|e| e.to_string());
    let outcome = run(&cli.command, cli.strict, &load);
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = out.write_all(outcome.report.render(cli.report).as_bytes());
    let _ = out.flush();
    ExitCode::from(outcome.code as u8)
}
