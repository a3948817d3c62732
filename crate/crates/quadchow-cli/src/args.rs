use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadchow::verify::Suite;
use quadchow::{CoeffRing, Orientation};

#[derive(Debug, Parser)]
#[command(
    name = "quadchow",
    version,
    about = "Exact intersection theory on split quadrics and their orthogonal grassmannians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: RunConfig,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Dimension of the quadric.
    #[arg(long, global = true)]
    pub n: Option<u32>,
    /// Coefficients of printed cycles.
    #[arg(long, value_enum, default_value_t = Coeff::Z, global = true)]
    pub coeff: Coeff,
    /// Component of the middle grassmannian in even dimension.
    #[arg(long, value_enum, default_value_t = OrientationArg::Plus, global = true)]
    pub orientation: OrientationArg,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Include the slow dimensions when no `--n` is given, with progress on stderr.
    #[arg(long, global = true)]
    pub deep: bool,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the basis expansion of a cycle expression or a named cycle.
    Compute {
        /// A literal such as `h^2 x l0 + 2 l1 x 1`, or one of `delta i`, `rho i`,
        /// `rost`, `Z i j`, `W i j`, `theta i`, `alpha i`.
        expr: String,
    },
    /// Run an identity suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Propagate and check a square of rationality marks.
    Edi {
        /// JSON file `{ "n", "marks", "witt_index", "rho_marks"? }`.
        #[arg(required_unless_present = "random")]
        input: Option<PathBuf>,
        /// Instead of reading a file, check the closure properties on this many
        /// random squares drawn from `--seed`.
        #[arg(long, conflicts_with = "input")]
        random: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    Z,
    Z2,
}

impl From<Coeff> for CoeffRing {
    fn from(c: Coeff) -> Self {
        match c {
            Coeff::Z => CoeffRing::Integer,
            Coeff::Z2 => CoeffRing::Mod2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrientationArg {
    Plus,
    Minus,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Plus => Orientation::Plus,
            OrientationArg::Minus => Orientation::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_suite(name: &str) -> Result<Suite, String> {
    Suite::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite `{name}`; expected one of {}", names.join(", "))
    })
}
