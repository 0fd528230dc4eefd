use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{CommandFactory, FromArgMatches, Parser};

mod commands;
mod docs;
mod report;

use commands::{Job, Registry};
use report::Report;

const INPUT_ERROR: u8 = 2;
const VERIFICATION_FAILURE: u8 = 1;

#[derive(Parser, Debug)]
#[command(name = "twisted", version, about = "Twisted homology and verification of twisted simplicial constructions")]
struct Cli {
    /// Subcommand to run
    #[arg(value_parser = PossibleValuesParser::new(Registry::standard().names()))]
    command: String,
    /// Space document (JSON); give twice for mv-check
    #[arg(long = "space", value_name = "FILE")]
    spaces: Vec<PathBuf>,
    /// Twist document (JSON)
    #[arg(long, value_name = "FILE")]
    twist: Option<PathBuf>,
    /// Top degree of the truncation
    #[arg(long)]
    cap: Option<usize>,
    /// Basepoint vertex; defaults to the first vertex
    #[arg(long)]
    basepoint: Option<String>,
    /// Reduced chains (killed at the basepoint)
    #[arg(long)]
    reduced: bool,
    /// Unreduced chains (the default)
    #[arg(long)]
    unreduced: bool,
    /// Seed for randomized suites
    #[arg(long)]
    seed: Option<u64>,
    /// Include boundary matrices in the JSON report
    #[arg(long)]
    emit_matrices: bool,
    /// Write the JSON report here
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Print the JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Record wall-clock time in the report
    #[arg(long)]
    timing: bool,
    /// Cone point for cone-check
    #[arg(long)]
    apex: Option<String>,
    /// Random words for the identity suite
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    /// Highest word degree for the identity suite
    #[arg(long, default_value_t = 3)]
    max_degree: usize,
    /// Highest base simplex degree for bundle-check
    #[arg(long, default_value_t = 3)]
    max_base_degree: usize,
}

fn run(cli: Cli) -> anyhow::Result<Report> {
    let registry = Registry::standard();
    let command = registry.get(&cli.command).expect("clap restricts names");
    let job = Job {
        spaces: cli.spaces,
        twist: cli.twist,
        cap: cli.cap,
        basepoint: cli.basepoint,
        reduced: cli.reduced,
        unreduced: cli.unreduced,
        seed: cli.seed,
        emit_matrices: cli.emit_matrices,
        apex: cli.apex,
        samples: cli.samples,
        max_degree: cli.max_degree,
        max_base_degree: cli.max_base_degree,
    };
    let cap = job.cap_or(command.default_cap())?;
    let mut report = Report::new(command.name(), job.echo(cap));
    let start = Instant::now();
    command.run(&job, cap, &mut report)?;
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

fn main() -> ExitCode {
    let help = format!("Commands:\n{}", Registry::standard().help());
    let parsed = Cli::command().after_help(help).try_get_matches().and_then(|m| Cli::from_arg_matches(&m));
    let cli = match parsed {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    let (out, json) = (cli.out.clone(), cli.json);
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, &text) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(INPUT_ERROR);
        }
    }
    if json {
        println!("{text}");
    } else {
        println!("{}", report.render());
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(VERIFICATION_FAILURE)
    }
}
