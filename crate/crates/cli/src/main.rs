use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use unstalg_core::suites::merge_reports;
use unstalg_core::{evaluate, Suite, SuiteReport};

#[derive(Parser)]
#[command(name = "unstalg", version, about = "Exact Steenrod-algebra computations on Stiefel-Whitney classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and report every check.
    Run {
        /// wu, relations, injectivity, main-structure, covers, finite-bo,
        /// dickson, rp, kam or all
        suite: String,
        /// Degree bound for every computation.
        #[arg(long, env = "UNSTALG_BOUND", default_value_t = 24)]
        bound: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads for `all`; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a word to a polynomial: "Sq^2 Sq^1 | w2" or "D_1 D_1 | w2".
    Calc {
        expr: String,
        #[arg(long, env = "UNSTALG_BOUND", default_value_t = 24)]
        bound: u32,
    },
    /// List the suites and their minimum degree bounds.
    List,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn run_suite(suite: Suite, bound: u32, jobs: Option<usize>) -> Result<SuiteReport> {
    suite.check_bound(bound)?;
    if suite != Suite::All {
        return Ok(suite.run(bound)?);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool.build().context("building the worker pool")?;
    let reports = pool.install(|| {
        Suite::MEMBERS
            .par_iter()
            .map(|s| s.run(bound))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(merge_reports(bound, reports))
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Run {
            suite,
            bound,
            format,
            jobs,
            out,
        } => {
            let suite: Suite = suite.parse()?;
            let report = run_suite(suite, bound, jobs)?;
            let text = match format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json() + "\n",
            };
            emit(&text, out.as_ref())?;
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Calc { expr, bound } => {
            let result = evaluate(&expr, bound)?;
            println!("{result}");
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            for s in Suite::MEMBERS.into_iter().chain([Suite::All]) {
                println!("{:<16}--bound >= {}", s.name(), s.min_bound());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
