//! Command-line front end for `quadchow`: argument types, the `compute`
//! expression evaluator, a parallel suite runner and the EDI file format.
//!
//! Exit codes: 0 success, 1 an identity or property failed, 2 usage or parse
//! error, 3 a dimension or index out of range, 4 any other evaluation error.

use std::fmt;
use std::io::Write;

use quadchow::verify::Suite;
use quadchow::Error;

pub mod args;
pub mod compute;
pub mod edi_file;
pub mod runner;

pub use args::{Cli, Coeff, Command, Format, OrientationArg, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Identity(String),
    Usage(String),
    Range(String),
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Identity(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Range(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Identity(m) | Failure::Usage(m) | Failure::Range(m) | Failure::Internal(m) => f.write_str(m),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::Parse { .. } => Failure::Usage(message),
            Error::DimensionOutOfRange { .. } | Error::OutOfRange(_) => Failure::Range(message),
            _ => Failure::Internal(message),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

/// Runs one command, writing its report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let config = &cli.config;
    match &cli.command {
        Command::Compute { expr } => {
            let n = config.n.ok_or_else(|| Failure::Usage("compute needs --n".into()))?;
            let options =
                compute::ComputeOptions { n, coeff: config.coeff.into(), orientation: config.orientation.into() };
            let text = compute::compute(expr, options)?;
            match config.format {
                Format::Text => writeln!(out, "{text}")?,
                Format::Json => writeln!(out, "{}", serde_json::json!({ "n": n, "expr": expr, "value": text }))?,
            }
            Ok(())
        }
        Command::Verify { suite } => verify(*suite, config, out),
        Command::Edi { input, random } => match (input, random) {
            (_, Some(count)) => edi_random(*count, config, out),
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
                edi(&text, config, out)
            }
            (None, None) => Err(Failure::Usage("edi needs an input file or --random".into())),
        },
    }
}

fn verify(suite: Suite, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let dims: Vec<u32> = match config.n {
        Some(n) => vec![n],
        None => suite.default_range(config.deep).collect(),
    };
    let mut failed = 0;
    let mut total = 0;
    for n in dims {
        let report = runner::run_parallel(suite, n)?;
        if config.deep {
            eprintln!("{}", report.summary());
        }
        match config.format {
            Format::Text => report.write_text(out)?,
            Format::Json => writeln!(out, "{}", report.to_json())?,
        }
        failed += report.cases.len() - report.passed();
        total += report.cases.len();
    }
    if failed > 0 {
        return Err(Failure::Identity(format!("{suite}: {failed} of {total} cases did not pass")));
    }
    Ok(())
}

/// Processes an EDI file given as text.
pub fn edi(text: &str, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let input = edi_file::EdiInput::from_json(text).map_err(|e| Failure::Usage(format!("invalid EDI file: {e}")))?;
    let output = edi_file::process(&input)?;
    match config.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&output).expect("reports serialize"))?,
        Format::Text => {
            write!(out, "{}", output.ascii)?;
            if let Some(i1) = output.witt_index {
                if output.inconsistencies.is_empty() {
                    writeln!(out, "consistent with first Witt index {i1}")?;
                } else {
                    let nodes: Vec<String> =
                        output.inconsistencies.iter().map(|[i, c]| format!("({i}, {c})")).collect();
                    writeln!(out, "inconsistent with first Witt index {i1}: {}", nodes.join(" "))?;
                }
            }
        }
    }
    Ok(())
}

fn edi_random(count: usize, config: &RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    let check = edi_file::check_random_squares(count, config.seed);
    for v in &check.violations {
        writeln!(out, "FAIL  {v}")?;
    }
    writeln!(
        out,
        "edi closure (seed {}): {}/{} squares passed",
        config.seed,
        check.checked - check.violations.len(),
        check.checked
    )?;
    if !check.violations.is_empty() {
        return Err(Failure::Identity(format!("{} squares violate a closure property", check.violations.len())));
    }
    Ok(())
}
