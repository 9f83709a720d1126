use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use gradhom_cli::corpus::corpus_run;
use gradhom_cli::{parse_problem, run_tasks, FieldSpec, Filter, RunOptions, DEFAULT_BOUND};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Runs a problem file, or the built-in corpus when no input is given.
/// Exit status: 0 ok, 1 a FAIL is present, 2 input error.
#[derive(Debug, Parser)]
#[command(name = "gradhom", version)]
struct Args {
    /// Problem file (JSON).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Default truncation bound for tasks that do not set one.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Comma separated terms: theorem=ID, op=NAME, problem=TEXT, label=TEXT or a bare term.
    #[arg(long, default_value = "")]
    filter: String,
    /// p, rational, or a prime such as F_101; overrides the file.
    #[arg(long)]
    field: Option<String>,
    /// Multiplies every task bound; 2 reruns at 2B for stability checks.
    #[arg(long, default_value_t = 1)]
    bound_scale: usize,
    /// Seed for the randomized property checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("gradhom: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let filter = match Filter::parse(&args.filter) {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let field = match args.field.as_deref().map(FieldSpec::parse).transpose() {
        Ok(f) => f,
        Err(e) => return input_error(e),
    };
    let opts = RunOptions {
        bound: args.bound,
        scale: args.bound_scale,
        seed: args.seed,
        field,
        filter,
        ..RunOptions::default()
    };
    let report = match &args.input {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            let pf = match parse_problem(&text) {
                Ok(p) => p,
                Err(e) => return input_error(format!("{}: {e}", path.display())),
            };
            run_tasks(&pf, &opts).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => corpus_run(&opts).map_err(|(file, e)| format!("corpus/{file}: {e}")),
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return input_error(e),
    };
    match args.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    ExitCode::from(report.exit_code() as u8)
}
