//! Command-line entry point: read a job document, run it, print the
//! report.  Exit code 0 on success, 2 when a construction is classified
//! but not implemented, 1 on any error.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semiconj::cli::{Command as JobCommand, parse_input, run};
use semiconj::error::Error;

#[derive(Parser)]
#[command(name = "semiconj", about = "Exact semiconjugacy and fiber-orbit toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Job document path; standard input when omitted.
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ramification portrait of V.
    Portrait(Common),
    /// Orbifold signature, Euler characteristic and fiber decision for V.
    Classify(Common),
    /// Construct a commuting pair A o V = V o B.
    Semiconj {
        #[command(flatten)]
        common: Common,
        /// Degree of the commuting mate (default: smallest coprime >= 2).
        #[arg(long)]
        m: Option<usize>,
    },
    /// Verify a supplied triple A, V, B.
    Verify(Common),
    /// Track fibers of V along the A-orbit of a seed value.
    Orbit {
        #[command(flatten)]
        common: Common,
        /// Number of orbit steps.
        #[arg(long)]
        steps: Option<usize>,
        /// Working precision in bits.
        #[arg(long)]
        precision: Option<u32>,
        /// Exact rational seed y0, written p/q.
        #[arg(long)]
        seed: Option<String>,
    },
    /// Fiber decisions for the y- and x-maps of y^2 = x^3 + ax + b.
    Elliptic {
        #[command(flatten)]
        common: Common,
        /// Coefficient a, written p/q.
        #[arg(long)]
        a: Option<String>,
        /// Coefficient b, written p/q.
        #[arg(long)]
        b: Option<String>,
    },
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| Error::Validation(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::Validation(format!("cannot read standard input: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse_rat_flag(s: &str) -> Result<semiconj::field::Rat, Error> {
    let doc = format!("command = \"classify\"\n[params]\na = \"{s}\"\n");
    parse_input(&doc).map(|j| j.a.unwrap())
}

fn execute(cli: Cli) -> Result<(String, i32), Error> {
    let (command, common) = match &cli.command {
        Cmd::Portrait(c) => (JobCommand::Portrait, c),
        Cmd::Classify(c) => (JobCommand::Classify, c),
        Cmd::Semiconj { common, .. } => (JobCommand::Semiconj, common),
        Cmd::Verify(c) => (JobCommand::Verify, c),
        Cmd::Orbit { common, .. } => (JobCommand::Orbit, common),
        Cmd::Elliptic { common, .. } => (JobCommand::Elliptic, common),
    };
    // `elliptic` with both coefficients on the command line needs no
    // job document.
    let standalone = matches!(
        &cli.command,
        Cmd::Elliptic { common, a: Some(_), b: Some(_), .. } if common.input.is_none()
    );
    let mut job = if standalone {
        parse_input("command = \"elliptic\"")?
    } else {
        parse_input(&read_input(&common.input)?)?
    };
    job.command = command;
    match &cli.command {
        Cmd::Semiconj { m, .. } => job.m = m.or(job.m),
        Cmd::Orbit { steps, precision, seed, .. } => {
            job.steps = steps.or(job.steps);
            job.precision = precision.or(job.precision);
            if let Some(s) = seed {
                job.seed = Some(parse_rat_flag(s)?);
            }
        }
        Cmd::Elliptic { a, b, .. } => {
            if let Some(s) = a {
                job.a = Some(parse_rat_flag(s)?);
            }
            if let Some(s) = b {
                job.b = Some(parse_rat_flag(s)?);
            }
        }
        _ => {}
    }
    let report = run(&job)?;
    Ok((report.text, report.exit_code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
