//! `dcurve`: unirationality, properness, implicitization and inversion of
//! plane differential curves from the command line.

mod commands;
mod render;

use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use dcurve_core::parse::ParseOptions;
use dcurve_core::{Error, Indet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Gcld,
    Gcrd,
    Lcrm,
    Ele,
    Resultant,
    Parametrize,
    Implicitize,
    Proper,
    Invert,
    Verify,
    Mobius,
    Wronskian,
    Membership,
    OrderCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Field {
    /// Rational numbers; `t` is rejected.
    Q,
    /// Rational functions in `t` with derivation `d/dt`.
    Qt,
}

#[derive(Debug, Parser)]
#[command(
    name = "dcurve",
    version,
    about = "Differential curve toolkit over Q(t)"
)]
struct Cli {
    verb: Verb,
    /// Expressions: operators in `D`, differential polynomials in x, y, u,
    /// parametrizations `(P1/Q1, P2/Q2)` or scalars, depending on the verb.
    args: Vec<String>,
    /// Print a JSON record instead of text.
    #[arg(long)]
    json: bool,
    #[arg(long, value_enum, default_value_t = Field::Qt)]
    field: Field,
    /// Indeterminate eliminated by `resultant`.
    #[arg(long, default_value = "u")]
    var: String,
    /// Read further expressions from a file, one per line; `#` starts a
    /// comment.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

/// Failure with its exit status: 2 for bad input, 3 for a broken invariant.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Internal(_)) {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub struct Context {
    pub opts: ParseOptions,
    pub var: Indet,
}

fn read_file(path: &std::path::Path) -> Result<Vec<String>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn run(cli: &Cli) -> Result<commands::Report, Failure> {
    let mut args = cli.args.clone();
    if let Some(path) = &cli.file {
        args.extend(read_file(path)?);
    }
    let var = Indet::from_name(&cli.var)
        .ok_or_else(|| Failure::input(format!("--var must be x, y or u, not `{}`", cli.var)))?;
    let ctx = Context {
        opts: ParseOptions {
            allow_t: cli.field == Field::Qt,
        },
        var,
    };
    commands::dispatch(cli.verb, &args, &ctx)
}

const FLAGS: [&str; 6] = ["json", "field", "var", "file", "help", "version"];

/// Expressions such as `-x + y` would otherwise be read as flags. The
/// expression grammar ignores whitespace, so a leading space shields them.
fn shield_expressions(args: impl Iterator<Item = String>) -> Vec<String> {
    args.map(|a| {
        let flag = match a.strip_prefix("--") {
            Some(rest) => FLAGS.contains(&rest.split('=').next().unwrap_or("")) || rest.is_empty(),
            None => a == "-h" || a == "-V",
        };
        if a.starts_with('-') && !flag {
            format!(" {a}")
        } else {
            a
        }
    })
    .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse_from(shield_expressions(std::env::args()));
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json(cli.verb));
            } else {
                println!("{}", report.text);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
