//! Command-line driver: executes subalgebra-basis scripts or single
//! commands, with optional state persistence and structured output.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use sagbi_core::{load_state, parse_script_with_names, save_state, Error, OutputFormat, Session};

#[derive(Parser, Debug)]
#[command(
    name = "sagbi",
    about = "Subalgebra (SAGBI) bases over the rationals",
    long_about = "Executes subalgebra-basis scripts: ring and subring \
declarations, sagbi computations with resumable state, certification, \
subduction, membership tests, intersections, and state files."
)]
struct Args {
    /// Script file to execute
    #[arg(long, conflicts_with = "eval")]
    script: Option<PathBuf>,

    /// Inline statements to execute
    #[arg(long)]
    eval: Option<String>,

    /// Verbosity: 1 traces degrees per round, 2 traces subduction steps
    #[arg(long, default_value_t = 0)]
    print_level: u32,

    /// Load a computation object before running, bound to the name `main`
    #[arg(long)]
    state_in: Option<PathBuf>,

    /// Save the most recent computation object on exit
    #[arg(long)]
    state_out: Option<PathBuf>,

    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "structured"])]
    format: String,
}

fn run(args: &Args) -> Result<String, Error> {
    let text = match (&args.script, &args.eval) {
        (Some(path), None) => std::fs::read_to_string(path)?,
        (None, Some(inline)) => inline.clone(),
        _ => {
            return Err(Error::InvalidInput(
                "exactly one of --script and --eval is required".into(),
            ))
        }
    };
    let format = if args.format == "structured" {
        OutputFormat::Structured
    } else {
        OutputFormat::Text
    };
    let mut session = Session::new();
    let mut preloaded: Vec<&str> = Vec::new();
    if let Some(path) = &args.state_in {
        let (subring, _) = load_state(path)?;
        session.preload("main", subring)?;
        preloaded.push("main");
    }
    let script = parse_script_with_names(&text, &preloaded)?;
    let output = session.run(&script, args.print_level, format)?;
    if let Some(path) = &args.state_out {
        let basis = session.last_basis().ok_or_else(|| {
            Error::InvalidInput("no computation object to save with --state-out".into())
        })?;
        save_state(&basis, path)?;
    }
    Ok(output)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(output) => {
            print!("{}", output);
            ExitCode::SUCCESS
        }
        Err(err) => {
            let category = err.category();
            eprintln!("error[{}]: {}", category, err);
            match category {
                "parse" => ExitCode::from(2),
                "math" => ExitCode::from(3),
                _ => ExitCode::from(4),
            }
        }
    }
}
