//! Command-line front end.
//!
//! Exit codes are part of the stable interface:
//! 0 success, 2 parse/validation failure, 3 resource limit, 4 precondition
//! failure (`--direct` on an inconsistently connected system), 5 empty
//! realization family. Code 1 is reserved for internal invariant failures.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::bayes::{enumerate_realizations, epistemic_mixture};
use crate::consistify::consistify;
use crate::coupling::{coupling_report, multimaximal_coupling};
use crate::error::{Error, Result};
use crate::format::{
    consistified_to_file, parse_file, parse_system, system_to_file, to_json_string, ParsedFile,
};
use crate::lp::{noncontextual_fraction_with_limit, DEFAULT_MAX_COLUMNS};
use crate::ratio::format_rational;
use crate::report::Report;
use crate::system::outcome_string;

#[derive(Debug, Parser)]
#[command(
    name = "contextuality",
    version,
    about = "Decide and measure (non)contextuality of systems of dichotomous random variables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check consistent connectedness and determinism of a system file.
    Check {
        file: PathBuf,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Compute the noncontextual fraction and the contextuality verdict.
    Fraction {
        file: PathBuf,
        /// Analyze the system directly; requires simple consistent
        /// connectedness.
        #[arg(long, conflicts_with = "consistify")]
        direct: bool,
        /// Analyze the consistification (the default; works for any system).
        #[arg(long)]
        consistify: bool,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
        /// Cap on the number of global-assignment columns.
        #[arg(long, value_name = "N")]
        max_columns: Option<u64>,
    },
    /// Write the consistified system with provenance annotations.
    Consistify {
        file: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the multimaximal coupling of one content's connection.
    Couple {
        file: PathBuf,
        /// The content whose connection to couple.
        #[arg(long)]
        content: String,
    },
    /// Enumerate deterministic realizations and write the epistemic mixture.
    Bayes {
        file: PathBuf,
        /// Output path for the mixture system; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

/// Runs a parsed invocation and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ColumnLimit { .. }
        | Error::RelationLimit { .. }
        | Error::OracleLimit { .. }
        | Error::RealizationLimit { .. } => 3,
        Error::InconsistentlyConnected => 4,
        Error::NoRealizations(_) => 5,
        Error::Invariant(_) | Error::ConsistifiedProperty(_) => 1,
        _ => 2,
    }
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Check { file, json } => cmd_check(&file, json),
        Command::Fraction {
            file,
            direct,
            consistify: _,
            json,
            max_columns,
        } => cmd_fraction(&file, direct, json, max_columns),
        Command::Consistify { file, out } => cmd_consistify(&file, out.as_deref()),
        Command::Couple { file, content } => cmd_couple(&file, &content),
        Command::Bayes { file, out } => cmd_bayes(&file, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|err| Error::Format(format!("cannot read {}: {err}", path.display())))
}

fn emit(report: &Report, json: bool) {
    if json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn cmd_check(path: &Path, json: bool) -> Result<()> {
    let system = parse_system(&read(path)?)?;
    let report = Report::empty().with_connectedness(&system);
    emit(&report, json);
    Ok(())
}

fn cmd_fraction(path: &Path, direct: bool, json: bool, max_columns: Option<u64>) -> Result<()> {
    let system = parse_system(&read(path)?)?;
    let limit = max_columns.unwrap_or(DEFAULT_MAX_COLUMNS);
    let started = Instant::now();
    let mut report = Report::empty().with_connectedness(&system);
    if direct {
        let result = noncontextual_fraction_with_limit(&system, limit)?;
        report = report.with_fraction("direct", &result, system.contents());
    } else {
        let cs = consistify(&system)?;
        let result = noncontextual_fraction_with_limit(&cs.base, limit)?;
        report = report.with_fraction("consistified", &result, cs.base.contents());
    }
    report.timing_ms = started.elapsed().as_millis();
    emit(&report, json);
    Ok(())
}

fn cmd_consistify(path: &Path, out: Option<&Path>) -> Result<()> {
    let system = parse_system(&read(path)?)?;
    let cs = consistify(&system)?;
    let text = to_json_string(&consistified_to_file(&cs));
    write_output(out, &text)
}

fn cmd_couple(path: &Path, content: &str) -> Result<()> {
    let system = parse_system(&read(path)?)?;
    let connection = system.connection(&content.into())?;
    let coupling = multimaximal_coupling(&connection);
    let report = coupling_report(&coupling);

    println!("connection of `{content}`:");
    for (context, p) in connection.members() {
        println!("  Pr[+1 | {context}] = {}", format_rational(p));
    }
    println!("multimaximal coupling atoms over ({}):", coupling.variables().join(", "));
    for (atom, mass) in coupling.pmf() {
        println!("  {}  {}", outcome_string(atom), format_rational(mass));
    }
    if !report.pairwise_equalities.is_empty() {
        println!("pairwise equality probabilities:");
        for ((i, j), p) in &report.pairwise_equalities {
            println!(
                "  Pr[{} = {}] = {}",
                coupling.variables()[*i],
                coupling.variables()[*j],
                format_rational(p)
            );
        }
        println!(
            "chain equality: {}",
            format_rational(&report.chain_equality)
        );
    }
    Ok(())
}

fn cmd_bayes(path: &Path, out: Option<&Path>) -> Result<()> {
    let parsed = parse_file(&read(path)?)?;
    let (constraints, prior) = match parsed {
        ParsedFile::Constraints { constraints, prior } => (constraints, prior),
        ParsedFile::System(_) => {
            return Err(Error::Format(
                "bayes needs a constraint file with `allowed` sets per context".to_string(),
            ))
        }
    };
    let mut family = enumerate_realizations(&constraints)?;
    if let Some(weights) = prior {
        family = family.with_prior(weights)?;
    }
    eprintln!("realizations: {}", family.len());
    let mixture = epistemic_mixture(&family)?;
    let text = to_json_string(&system_to_file(&mixture));
    write_output(out, &text)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text)?;
            Ok(())
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
