//! `foliate`: exact graded invariants of a foliation given by a spec file.
//!
//! Exit codes: 0 on success, 1 when an identity fails on the input,
//! 2 on usage or spec errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Parser};
use foliation_core::parser::SpecFile;
use foliation_core::{Engine, Error};

use crate::commands::Command;
use crate::report::Format;

const SPEC_HELP: &str = "\
Spec files are TOML with a [foliation] table and an optional [run] table.

[foliation]
  nvars           number of homogeneous variables x0..x{nvars-1}
  kind            \"rational\", \"logarithmic\" or \"raw-form\"
  one_based_vars  write variables as x1..x{nvars} (default false)
  F, G, r, s      rational: omega = r F dG - s G dF, deg F = r, deg G = s
  f, lambda       logarithmic: factors and residues, sum lambda_i deg f_i = 0
  coeffs          raw-form: the coefficients A_0..A_n of omega

[run]
  command, a_max, format, jobs   defaults for the flags of the same name

Polynomials use +, -, *, ^ with explicit multiplication, rationals such as
2/3, the imaginary unit i, and parentheses, e.g. \"(2/3)*(1+i)*x0^2\".";

#[derive(Debug, Parser)]
#[command(name = "foliate", version, about, after_long_help = SPEC_HELP)]
struct Cli {
    /// Command to run; falls back to `command` in the spec's [run] table.
    #[arg(value_enum)]
    command: Option<Command>,

    /// Path to the spec file.
    #[arg(long)]
    spec: PathBuf,

    /// Largest degree scanned [default: e + n + 1].
    #[arg(long)]
    a_max: Option<i64>,

    /// Output format [default: table].
    #[arg(long, value_enum)]
    format: Option<Format>,

    /// Worker threads [default: available parallelism].
    #[arg(long, env = "FOLIATE_JOBS")]
    jobs: Option<usize>,

    /// Read variables as x1..xN regardless of the spec file.
    #[arg(long)]
    one_based_vars: bool,

    /// More diagnostics on stderr (repeatable).
    #[arg(short, long, action = ArgAction::Count)]
    verbose: u8,

    /// Only errors on stderr.
    #[arg(short, long, conflicts_with = "verbose")]
    quiet: bool,
}

fn init_logging(cli: &Cli) {
    let level = match (cli.quiet, cli.verbose) {
        (true, _) => log::LevelFilter::Error,
        (false, 0) => log::LevelFilter::Warn,
        (false, 1) => log::LevelFilter::Info,
        (false, _) => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .init();
}

fn run(cli: &Cli) -> Result<String, Error> {
    let text = std::fs::read_to_string(&cli.spec)
        .map_err(|e| Error::usage(format!("cannot read {}: {e}", cli.spec.display())))?;
    let mut file = SpecFile::parse(&text)?;
    if cli.one_based_vars {
        file.foliation.one_based_vars = true;
    }
    let run = file.run.clone().unwrap_or_default();

    let command = match (cli.command, &run.command) {
        (Some(c), _) => c,
        (None, Some(c)) => c.parse().map_err(Error::usage)?,
        (None, None) => {
            return Err(Error::usage(
                "no command given on the command line or in [run]",
            ))
        }
    };
    let format = match (cli.format, &run.format) {
        (Some(f), _) => f,
        (None, Some(f)) => f.parse().map_err(Error::usage)?,
        (None, None) => Format::Table,
    };
    if let Some(jobs) = cli.jobs.or(run.jobs) {
        if jobs == 0 {
            return Err(Error::usage("--jobs must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::usage(format!("thread pool: {e}")))?;
    }

    let foliation = file.foliation_spec()?.build()?;
    for w in foliation.warnings() {
        log::warn!("{w}");
    }
    let engine = Engine::new(foliation);
    let a_max = cli
        .a_max
        .or(run.a_max)
        .unwrap_or_else(|| commands::default_a_max(&engine));
    if a_max < 1 {
        return Err(Error::usage("--a-max must be at least 1"));
    }
    log::info!("{command:?} on {} with a_max = {a_max}", cli.spec.display());
    Ok(commands::run(command, &engine, a_max)?.render(format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_logging(&cli);
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("foliate: {e}");
            if e.is_falsification() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
