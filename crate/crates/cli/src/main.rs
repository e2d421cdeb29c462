//! `perscontext` command-line tool.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Invalid;

#[derive(Parser)]
#[command(
    name = "perscontext",
    version,
    about = "Personal context hierarchies and recognition"
)]
struct Cli {
    /// Configuration document (near threshold, window length, strategy, seed).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Random seed; overrides the configuration and the scenario.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Repeat for more log output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile an ETG and EG into a concept hierarchy.
    Compile(commands::CompileArgs),
    /// Validate any combination of input documents.
    Validate(commands::ValidateArgs),
    /// Run the recognition loop on a scenario script.
    Simulate(commands::SimulateArgs),
    /// Score predicted label vectors against ground truth.
    Evaluate(commands::EvaluateArgs),
    /// Render a hierarchy document as Graphviz DOT.
    ExportDot(commands::ExportDotArgs),
    /// Materialize the entity graph of one stream record.
    Snapshot(commands::SnapshotArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    let globals = commands::Globals {
        config: cli.config,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Compile(a) => commands::compile(&globals, a),
        Command::Validate(a) => commands::validate(&globals, a),
        Command::Simulate(a) => commands::simulate(&globals, a),
        Command::Evaluate(a) => commands::evaluate(&globals, a),
        Command::ExportDot(a) => commands::export_dot(&globals, a),
        Command::Snapshot(a) => commands::snapshot(&globals, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Invalid>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
