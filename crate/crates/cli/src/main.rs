use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fillmore_cli::commands::{self, GenOptions, GenRing, GenShape};
use fillmore_cli::demo::{self, DemoName};
use fillmore_cli::document::Algorithm;
use fillmore_cli::CliError;

/// Build a matrix similar to a given one with any prescribed diagonal.
#[derive(Parser)]
#[command(name = "fillmore", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a problem document and print (or write) the solution document.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "two-step")]
        algorithm: Algorithm,
        /// Force the unify-row pivot, 1-based, e.g. `3,4` (two-step only).
        #[arg(long, value_parser = parse_pivot)]
        pivot: Option<(usize, usize)>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-verify a solution document against its problem.
    Verify { input: PathBuf, solution: PathBuf },
    /// Print a worked example.
    Demo {
        #[arg(value_enum)]
        name: DemoName,
    },
    /// Generate problem documents.
    Gen {
        #[arg(long, value_enum)]
        ring: GenRing,
        /// Modulus for `--ring gf`.
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "dense")]
        shape: GenShape,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Magnitude bound for integer and rational entries.
        #[arg(long, default_value_t = 9)]
        bound: u64,
        /// Write `instance-NNNN.json` files here instead of JSON lines on stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn parse_pivot(text: &str) -> Result<(usize, usize), String> {
    let (r, s) = text.split_once(',').ok_or("expected r,s")?;
    let index = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((index(r)?, index(s)?))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve { input, algorithm, pivot, output } => {
            let doc = commands::solve(&read(&input)?, algorithm, pivot)?;
            match output {
                Some(path) => write(&path, &pretty(&doc)),
                None => {
                    print!("{}", pretty(&doc));
                    Ok(())
                }
            }
        }
        Command::Verify { input, solution } => {
            let outcome = commands::verify_solution(&read(&input)?, &read(&solution)?)?;
            print!("{}", pretty(&outcome));
            if outcome.passed {
                Ok(())
            } else {
                let why = outcome
                    .verification
                    .first_failure
                    .or(outcome.trace_verification.first_failure)
                    .or(outcome.consistency_failure)
                    .unwrap_or_default();
                Err(CliError::Verification(why))
            }
        }
        Command::Demo { name } => {
            print!("{}", demo::transcript(name)?);
            Ok(())
        }
        Command::Gen { ring, p, n, seed, shape, count, bound, out_dir } => {
            let docs = commands::generate(&GenOptions { ring, modulus: p, n, seed, shape, count, bound })?;
            match out_dir {
                Some(dir) => {
                    fs::create_dir_all(&dir)
                        .map_err(|e| CliError::Io { path: dir.display().to_string(), message: e.to_string() })?;
                    for (i, doc) in docs.iter().enumerate() {
                        write(&dir.join(format!("instance-{i:04}.json")), &pretty(doc))?;
                    }
                }
                None => {
                    for doc in &docs {
                        println!("{}", serde_json::to_string(doc).expect("documents serialize"));
                    }
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
