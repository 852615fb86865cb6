//! Command-line surface. The parsed [`RunConfig`] is also the serialized form
//! written by `--emit-config` and read back by `replay`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz::counting::DEFAULT_CHUNK_SIZE;
use hurwitz::real::DEFAULT_PRECISION_CAP;
use hurwitz::verify::Prop;
use serde::{Deserialize, Serialize};

#[derive(Parser, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[command(name = "hurwitz", version, about = "Exact Hurwitz and classical continued fractions")]
pub struct RunConfig {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Refinement cap for `dec:` literals without an explicit `@bits`, and the
    /// width exponent for rendered enclosures.
    #[arg(long, default_value_t = DEFAULT_PRECISION_CAP, global = true)]
    pub precision_bits: u32,
    /// Denominators per parallel work unit in brute-force enumeration.
    #[arg(long, default_value_t = DEFAULT_CHUNK_SIZE, global = true)]
    pub chunk_size: u64,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Print this configuration as JSON instead of running it.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub emit_config: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Hurwitz,
    Classical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Convergent,
    Oracle,
}

/// How witness qualities are written in CSV.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Render {
    Surd,
    Decimal,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Partial quotients and convergents of a real.
    Expand {
        #[arg(long, value_enum, default_value_t = Algo::Hurwitz)]
        algo: Algo,
        /// Literal such as `17/12`, `(1+sqrt(5))/2` or `dec:1.41421356@80`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Emit the sign-alternated Hurwitz form.
        #[arg(long)]
        negative: bool,
    },
    /// Rewrite a classical expansion into Hurwitz form, with the full trace.
    Transform {
        #[arg(long, allow_hyphen_values = true, conflicts_with = "b", required_unless_present = "b")]
        x: Option<String>,
        /// Raw classical quotients, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Classical terms to expand when `--x` is given.
        #[arg(long, default_value_t = 40)]
        terms: usize,
        /// Treat `--b` as a prefix of an infinite expansion rather than a rational.
        #[arg(long)]
        prefix: bool,
    },
    /// Check a property exactly; exits 1 if any row fails.
    Verify {
        #[arg(long)]
        prop: Prop,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        /// Hurwitz quotients, comma separated (for prop1 and prop2).
        #[arg(long, allow_hyphen_values = true)]
        terms: Option<String>,
        /// Largest index checked.
        #[arg(long, default_value_t = 30)]
        n: usize,
        /// Denominator bound for the brute-force coverage check (theorem1; 0 skips it).
        #[arg(long, default_value_t = 0)]
        rho: u64,
        /// Classical terms searched (theorem1; defaults to 4n).
        #[arg(long)]
        classical_terms: Option<usize>,
        /// Comma-separated deltas (theorem2-sandwich).
        #[arg(long, default_value = "1/10,1/4,1/3")]
        delta: String,
    },
    /// Counting functions.
    #[command(subcommand)]
    Count(CountCommand),
    /// Run a configuration previously written with `--emit-config`.
    Replay {
        path: PathBuf,
    },
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "count", rename_all = "kebab-case")]
pub enum CountCommand {
    /// Primitive pairs with `q <= rho` and `|q (q x - p)| <= delta`, over `ln rho`.
    Xrho {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        rho: String,
        #[arg(long, value_enum, default_value_t = CountMethod::Convergent)]
        method: CountMethod,
        /// Include the witness list in JSON and plain output.
        #[arg(long)]
        witnesses: bool,
        #[arg(long, value_enum, default_value_t = Render::Surd)]
        render: Render,
    },
    /// Count and log sandwiches for `1 <= j <= n`.
    Sandwich {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: usize,
    },
    /// Finite-index averages of partial quotient statistics.
    Cd {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        n: usize,
    },
    /// Primitive pairs in the box `max(|p|, |q|) <= rho` with
    /// `0 < |(aq + bp)(cq + dp)| < delta` and `cq + dp > kappa`.
    Gform {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long)]
        delta: String,
        #[arg(long)]
        kappa: String,
        #[arg(long)]
        rho: String,
        #[arg(long)]
        witnesses: bool,
        /// Test every pair in the box instead of searching near the roots.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, value_enum, default_value_t = Render::Surd)]
        render: Render,
    },
}

impl RunConfig {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<RunConfig> {
        serde_json::from_str(text)
    }
}
