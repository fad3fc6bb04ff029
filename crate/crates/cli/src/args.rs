use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use markoff_core::arith::{is_prime, primes_in};
use markoff_core::graph::GeneratorSet;
use markoff_core::spectral::{DEFAULT_BINS, DEFAULT_DENSE_CAP, DEFAULT_TOL};
use markoff_core::surface::LevelSurface;

/// Bad input from the command line; reported with exit code 1.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser, Debug)]
#[command(name = "markoff", version, about = "Markoff surfaces mod p: counts, components, spectra, Cayley orbits")]
pub struct Cli {
    /// Worker threads.
    #[arg(long, global = true, env = "MARKOFF_WORKERS", value_parser = clap::value_parser!(u16).range(1..))]
    pub workers: Option<u16>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file (or directory for `spectrum`); stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Point count from the closed formula, checked against enumeration.
    Count(CountArgs),
    /// Component sizes of one level graph.
    Components(ComponentsArgs),
    /// Component sizes for every level of every prime in a range.
    ComponentsTable(TableArgs),
    /// Second adjacency eigenvalue of Dehn graphs over a prime range (resumable).
    Lambda2(Lambda2Args),
    /// Full spectrum and Kesten-McKay histogram comparison.
    Spectrum(SpectrumArgs),
    /// Predicted (and optionally enumerated) orbits on the Cayley cubic.
    Cayley(CayleyArgs),
    /// Fricke trace identity on random unimodular pairs.
    FrickeSelftest(FrickeArgs),
    /// Quick consistency checks across all modules.
    Selftest,
}

/// Level selector: a value, every level, or the degenerate Cayley level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Value(i64),
    All,
    Cayley,
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(Level::All),
            "cayley" => Ok(Level::Cayley),
            _ => s
                .parse()
                .map(Level::Value)
                .map_err(|_| format!("expected an integer, `all` or `cayley`, got `{s}`")),
        }
    }
}

impl Level {
    /// Levels to visit for prime `p`, reduced into `0..p`.
    pub fn levels(self, p: u64, a: i64) -> anyhow::Result<Vec<u64>> {
        Ok(match self {
            Level::Value(k) => vec![k.rem_euclid(p as i64) as u64],
            Level::All => (0..p).collect(),
            Level::Cayley => vec![LevelSurface::degenerate_level(p, a).map_err(|e| usage(e.to_string()))?],
        })
    }

    pub fn single(self, p: u64, a: i64) -> anyhow::Result<u64> {
        match self {
            Level::All => Err(usage("`--k all` is only accepted by components-table")),
            _ => Ok(self.levels(p, a)?[0]),
        }
    }
}

pub fn check_prime(p: u64) -> anyhow::Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(usage(format!("--p must be a prime >= 5, got {p}")));
    }
    Ok(())
}

#[derive(Args, Debug, Clone)]
pub struct PrimeRange {
    /// A single prime.
    #[arg(long, conflicts_with_all = ["pmin", "pmax"])]
    pub p: Option<u64>,
    /// Smallest prime of the range.
    #[arg(long)]
    pub pmin: Option<u64>,
    /// Largest prime of the range.
    #[arg(long)]
    pub pmax: Option<u64>,
}

impl PrimeRange {
    pub fn primes(&self) -> anyhow::Result<Vec<u64>> {
        if let Some(p) = self.p {
            check_prime(p)?;
            return Ok(vec![p]);
        }
        let (lo, hi) = match (self.pmin, self.pmax) {
            (lo, Some(hi)) => (lo.unwrap_or(5), hi),
            _ => return Err(usage("give --p, or a range with --pmax (and optionally --pmin)")),
        };
        if lo < 5 {
            return Err(usage(format!("--pmin must be at least 5, got {lo}")));
        }
        if hi < lo {
            return Err(usage(format!("empty range {lo}..={hi}")));
        }
        Ok(primes_in(lo, hi))
    }
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub p: u64,
    /// Level k (an integer or `cayley`).
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k: Level,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub a: i64,
    /// Only evaluate the formula.
    #[arg(long)]
    pub skip_enumeration: bool,
}

#[derive(Args, Debug)]
pub struct ComponentsArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k: Level,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value = "full")]
    pub gens: GeneratorSet,
    /// Drop the origin from the vertex set.
    #[arg(long)]
    pub exclude_origin: bool,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[command(flatten)]
    pub range: PrimeRange,
    #[arg(long, default_value = "all", allow_hyphen_values = true)]
    pub k: Level,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub a: i64,
    #[arg(long, default_value = "full")]
    pub gens: GeneratorSet,
    #[arg(long)]
    pub exclude_origin: bool,
}

#[derive(Args, Debug)]
pub struct Lambda2Args {
    #[command(flatten)]
    pub range: PrimeRange,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k: Level,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub a: i64,
    /// Residual target for the Lanczos iteration.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub range: PrimeRange,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub k: Level,
    #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
    pub a: i64,
    /// Histogram bins on [-3, 3] (at least 10).
    #[arg(long, default_value_t = DEFAULT_BINS)]
    pub nbins: usize,
    /// Largest vertex count handled by the dense eigensolver (at most 12000).
    #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
    pub dense_cap: usize,
}

#[derive(Args, Debug)]
pub struct CayleyArgs {
    #[command(flatten)]
    pub range: PrimeRange,
    /// Include the double sign changes.
    #[arg(long)]
    pub signs: bool,
    /// Enumerate orbits and compare with the prediction.
    #[arg(long)]
    pub verify: bool,
    /// Largest prime enumerated under --verify.
    #[arg(long, default_value_t = markoff_core::cayley::DEFAULT_EMPIRICAL_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct FrickeArgs {
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    /// Largest prime to draw from.
    #[arg(long, default_value_t = 97)]
    pub pmax: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
