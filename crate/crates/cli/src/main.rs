//! `cyclohedra`: nested sets on cycle graphs and the dihedral action on the
//! cyclohedron face ring, from the command line.

mod report;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclohedra::census::DEFAULT_ENUMERATION_BOUND;
use cyclohedra::equivariant::DEFAULT_DEGREE_BOUND;
use cyclohedra::matchings::MatchingKind;

#[derive(Parser)]
#[command(name = "cyclohedra", version, about = "Nested sets of cycle graphs under the dihedral action")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args, Clone, Debug)]
pub struct Options {
    /// Cycle length n+1.
    #[arg(long = "n", global = true, default_value_t = 4)]
    pub n_plus_1: usize,
    /// Number of tubes.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Cyclic isotropy order.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Largest degree for series expansions and monomial scans.
    #[arg(long, global = true, default_value_t = DEFAULT_DEGREE_BOUND)]
    pub degree: usize,
    /// Group element: e, s<k>, t or s<k>t.
    #[arg(long, global = true)]
    pub element: Option<String>,
    /// Matching construction: 1, 2 or both.
    #[arg(long, global = true, default_value = "both")]
    pub kind: KindArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Largest n+1 for which nested sets are enumerated exhaustively.
    #[arg(long = "max-enum", global = true, default_value_t = DEFAULT_ENUMERATION_BOUND)]
    pub max_enum: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    One(MatchingKind),
    Both,
}

impl std::str::FromStr for KindArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "both" {
            return Ok(KindArg::Both);
        }
        s.parse::<MatchingKind>().map(KindArg::One).map_err(|e| e.to_string())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Face counts by enumeration against the closed form.
    Faces,
    /// Isotropy census α, β, γ and β split by fixed tubes.
    Census,
    /// Equivariant Hilbert series as a sum of permutation characters.
    Series {
        /// Restrict to the rotation subgroup (closed form, no enumeration).
        #[arg(long)]
        cyclic: bool,
    },
    /// Graded character at one element: monomial scan against the series.
    Character,
    /// Annular matchings as bracket sequences with their nested sets.
    Matchings,
    /// Run every consistency check and print a PASS/FAIL ledger.
    Verify,
}

/// Rendered output and whether every comparison in it agreed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn run(cli: Cli) -> Result<Outcome> {
    let opts = cli.opts;
    if opts.degree == 0 {
        bail!("--degree must be at least 1");
    }
    if opts.threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build_global()?;
    }
    match cli.command {
        Command::Faces => report::faces(&opts),
        Command::Census => report::census(&opts),
        Command::Series { cyclic } => report::series(&opts, cyclic),
        Command::Character => report::character(&opts),
        Command::Matchings => report::matchings(&opts),
        Command::Verify => verify::verify(&opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| anyhow!("--{flag} is required"))
}
