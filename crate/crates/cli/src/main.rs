mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use centraliser::oracle::DEFAULT_COST_BOUND;
use centraliser::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "centraliser",
    version,
    about = "Exact computations in centraliser algebras of two-part Schur algebras"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Refuse tensor-space computations with more than this many weight words.
    #[arg(long, default_value_t = DEFAULT_COST_BOUND, global = true)]
    cost_bound: u128,

    #[command(subcommand)]
    command: Command,
}

/// Any two of `m`, `lambda2`, `r` with `r = m + 2·lambda2`.
#[derive(Debug, Clone, Args)]
pub struct Shape {
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    lambda2: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Window of the two-part p-Kostka matrix.
    Kostka {
        #[arg(long, default_value_t = 15)]
        m_max: u64,
        #[arg(long, default_value_t = 15)]
        g_max: u64,
        #[arg(long, default_value_t = 2, value_parser = parse_prime)]
        p: u32,
    },
    /// Primitive idempotents e_{m,g} in characteristic 2.
    Idempotents {
        #[command(flatten)]
        shape: Shape,
    },
    /// Check the complete set of orthogonal idempotents, at a point or over a grid.
    Verify {
        #[command(flatten)]
        shape: Shape,
        /// Inclusive range a:b of m values.
        #[arg(long, value_parser = parse_range, requires = "lambda2_range")]
        m_range: Option<(u64, u64)>,
        /// Inclusive range a:b of lambda2 values.
        #[arg(long, value_parser = parse_range, requires = "m_range")]
        lambda2_range: Option<(u64, u64)>,
    },
    /// Compare against explicit matrices on the weight space of the tensor power.
    Oracle {
        #[command(flatten)]
        shape: Shape,
        #[arg(long, default_value_t = 2, value_parser = parse_prime)]
        p: u32,
    },
    /// Block decomposition in characteristic 2.
    Blocks {
        #[command(flatten)]
        shape: Shape,
    },
    /// Identities for b(1) over the rationals.
    Char0 {
        #[command(flatten)]
        shape: Shape,
    },
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|e| format!("{e}"))?;
    if centraliser::padic::is_prime(u64::from(p)) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected a:b, got {s:?}"))?;
    let a: u64 = a.parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> ! {
    Cli::command().error(kind, msg).exit()
}

impl Shape {
    /// Resolves to `(m, lambda2)`.
    fn resolve(&self) -> (u64, usize) {
        let (m, l) = match (self.m, self.lambda2, self.r) {
            (Some(m), Some(l), r) => {
                let expected = l.checked_mul(2).and_then(|x| x.checked_add(m));
                if let Some(r) = r {
                    if expected != Some(r) {
                        usage_error(
                            ErrorKind::ArgumentConflict,
                            format!("r = {r} but m + 2*lambda2 = {m} + 2*{l}"),
                        );
                    }
                }
                (m, l)
            }
            (Some(m), None, Some(r)) => {
                if r < m || (r - m) % 2 != 0 {
                    usage_error(
                        ErrorKind::ArgumentConflict,
                        format!("r - m = {r} - {m} is not a nonnegative even number"),
                    );
                }
                (m, (r - m) / 2)
            }
            (None, Some(l), Some(r)) => match l.checked_mul(2).filter(|&x| x <= r) {
                Some(twice) => (r - twice, l),
                None => usage_error(
                    ErrorKind::ArgumentConflict,
                    format!("2*lambda2 = 2*{l} exceeds r = {r}"),
                ),
            },
            _ => usage_error(
                ErrorKind::MissingRequiredArgument,
                "give at least two of --m, --lambda2, --r",
            ),
        };
        match usize::try_from(l) {
            Ok(l) => (m, l),
            Err(_) => usage_error(ErrorKind::ValueValidation, "lambda2 too large"),
        }
    }
}

fn exit_for(err: &Error) -> ExitCode {
    eprintln!("error: {err}");
    match err {
        Error::CostBound { .. } => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = match &cli.command {
        Command::Kostka { m_max, g_max, p } => commands::kostka(*m_max, *g_max, *p, format),
        Command::Idempotents { shape } => {
            let (m, l) = shape.resolve();
            commands::idempotents(m, l, format)
        }
        Command::Verify {
            shape,
            m_range,
            lambda2_range,
        } => {
            let points: Vec<(u64, usize)> = match (m_range, lambda2_range) {
                (Some((m0, m1)), Some((l0, l1))) => (*m0..=*m1)
                    .flat_map(|m| (*l0..=*l1).map(move |l| (m, l as usize)))
                    .collect(),
                _ => vec![shape.resolve()],
            };
            commands::verify(&points, m_range.is_some(), format)
        }
        Command::Oracle { shape, p } => {
            let (m, l) = shape.resolve();
            commands::oracle(m, l, *p, cli.cost_bound, format)
        }
        Command::Blocks { shape } => {
            let (m, l) = shape.resolve();
            commands::blocks(m, l, format)
        }
        Command::Char0 { shape } => {
            let (m, l) = shape.resolve();
            commands::char0(m, l, format)
        }
    };
    let outcome = match result {
        Ok(outcome) => outcome,
        Err(err) => return exit_for(&err),
    };
    let written = match &cli.output {
        Some(path) => fs::write(path, &outcome.body),
        None => io::stdout().lock().write_all(outcome.body.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: cannot write output: {err}");
        return ExitCode::from(2);
    }
    if outcome.pass {
        ExitCode::SUCCESS
    } else {
        for detail in &outcome.failures {
            eprintln!("{detail}");
        }
        ExitCode::from(1)
    }
}
