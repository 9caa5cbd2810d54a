//! Command-line flags and the optional TOML config file merged under them.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "posmon",
    version,
    about = "Factorization invariants of positive monoids of rationals",
    after_help = "Rationals are written num/den. A config file (--config) supplies defaults for any flag."
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file whose keys supply defaults for the flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Result cache directory (falls back to POSMON_CACHE_DIR).
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache for this run.
    #[arg(long, global = true)]
    pub no_cache: bool,
    /// Maximum rows in table output.
    #[arg(long, global = true, value_name = "N")]
    pub row_cap: Option<usize>,
    /// Split factorization searches across threads.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    Explicit,
    Grams,
    Power,
    UnitFractions,
    Alternating,
    Conductor,
    Sring,
}

/// Flags describing the monoid.
#[derive(Debug, Clone, Default, Args)]
pub struct MonoidArgs {
    /// Generator family.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Generators of an explicit monoid, comma separated (implies --family explicit).
    #[arg(long, value_name = "LIST")]
    pub gens: Option<String>,
    /// Number of generators kept from a sequence family.
    #[arg(long)]
    pub k: Option<u64>,
    /// Ratio q of the power family.
    #[arg(long)]
    pub q: Option<String>,
    /// Threshold r of the sring family.
    #[arg(long)]
    pub r: Option<String>,
    /// Denominator bound for a dense family.
    #[arg(long)]
    pub max_den: Option<u64>,
    /// Keep the unit fractions 1/p with p up to this prime bound.
    #[arg(long)]
    pub max_prime: Option<u64>,
    /// Custom primes for the alternating family, comma separated.
    #[arg(long, value_name = "LIST")]
    pub primes: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the factorizations of an element.
    Factorize {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The element, as an integer or num/den
        #[arg(long)]
        x: Option<String>,
        /// Only factorizations of exactly this length.
        #[arg(long)]
        length: Option<u64>,
        /// Only factorizations of at most this length.
        #[arg(long)]
        max_len: Option<u64>,
    },
    /// Compute the length set of an element.
    Lengths {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The element, as an integer or num/den
        #[arg(long)]
        x: Option<String>,
        /// Only factorizations of at most this length
        #[arg(long)]
        max_len: Option<u64>,
    },
    /// List the atoms inside the truncation.
    Atoms {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Only atoms up to this value.
        #[arg(long)]
        upper: Option<String>,
    },
    /// Decide membership and atomicity of an element.
    Contains {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The element, as an integer or num/den
        #[arg(long)]
        x: Option<String>,
    },
    /// Build and verify a property certificate.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Arithmetic in the monoid semiring of generalized polynomials.
    Semiring {
        #[command(subcommand)]
        op: SemiringCommand,
    },
    /// Monotone subsequences and sums of finite sequences.
    Seq {
        #[command(subcommand)]
        op: SeqCommand,
    },
    /// Run the full example battery and verify every certificate.
    PaperExamples,
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// A non-stabilizing ascending chain of principal ideals.
    Accp {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Last index n of the chain
        #[arg(long)]
        n_max: Option<u64>,
    },
    /// The unbounded length set of 1 over the unit fractions.
    Bf {
        #[command(flatten)]
        monoid: MonoidArgs,
    },
    /// Growing families of length-2 factorizations.
    Lff {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Use the multiplicative monoid of the sring family.
        #[arg(long)]
        mul: bool,
        /// The square root s of the multiplicative target s^2.
        #[arg(long)]
        s: Option<String>,
    },
    /// The finite divisor bound of the alternating family.
    FfmBound {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The element, as an integer or num/den
        #[arg(long)]
        x: Option<String>,
    },
    /// The atomic/ACCP/BF/FF/LFF table of a family.
    Classify {
        #[command(flatten)]
        monoid: MonoidArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum SemiringCommand {
    /// Multiply two polynomials.
    Mul {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Left factor, e.g. "1 + 2*x^(1/2)"
        #[arg(long)]
        f: Option<String>,
        /// Right factor
        #[arg(long)]
        g: Option<String>,
    },
    /// Exact division f / g inside the semiring.
    Div {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Dividend
        #[arg(long)]
        f: Option<String>,
        /// Divisor
        #[arg(long)]
        g: Option<String>,
    },
    /// Decide irreducibility by exhaustive divisor search.
    Irreducible {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The polynomial to test
        #[arg(long)]
        f: Option<String>,
        /// Maximum number of candidate divisors.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// All factorizations into irreducibles.
    Factor {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The polynomial to factor
        #[arg(long)]
        f: Option<String>,
        /// Largest number of factors searched
        #[arg(long)]
        max_len: Option<u64>,
    },
    /// Evaluate f at e to the requested significant digits.
    Eval {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// The polynomial to evaluate
        #[arg(long)]
        f: Option<String>,
        /// Significant digits of the result
        #[arg(long)]
        digits: Option<u32>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeqCommand {
    /// Longest strictly increasing subsequence.
    Lis {
        /// File with one rational per line, or - for stdin
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Longest weakly decreasing subsequence.
    Lwd {
        /// File with one rational per line, or - for stdin
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// An increasing subsequence of length r or a weakly decreasing one of length t.
    Monotone {
        /// File with one rational per line, or - for stdin
        #[arg(long)]
        input: Option<PathBuf>,
        /// Length of the increasing subsequence sought
        #[arg(long)]
        r: Option<usize>,
        /// Length of the weakly decreasing subsequence sought
        #[arg(long)]
        t: Option<usize>,
    },
    /// Termwise sum of sequences of equal length.
    Sum {
        /// One file per sequence; repeat the flag.
        #[arg(long)]
        input: Vec<PathBuf>,
    },
}

/// Keys accepted in the `--config` file. Every key is optional and the
/// matching flag wins when both are given.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub family: Option<FamilyName>,
    pub gens: Option<String>,
    pub k: Option<u64>,
    pub q: Option<String>,
    pub r: Option<String>,
    pub s: Option<String>,
    pub max_den: Option<u64>,
    pub max_prime: Option<u64>,
    pub primes: Option<String>,
    pub x: Option<String>,
    pub length: Option<u64>,
    pub max_len: Option<u64>,
    pub n_max: Option<u64>,
    pub upper: Option<String>,
    pub digits: Option<u32>,
    pub budget: Option<u64>,
    pub format: Option<Format>,
    pub row_cap: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: Option<bool>,
    pub parallel: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text =
            std::fs::read_to_string(path).map_err(|e| format!("--config: cannot read {}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("--config: {}: {e}", path.display()))
    }

    /// Fills every unset monoid flag from the file.
    pub fn merge_monoid(&self, m: &MonoidArgs) -> MonoidArgs {
        MonoidArgs {
            family: m.family.or(self.family),
            gens: m.gens.clone().or_else(|| self.gens.clone()),
            k: m.k.or(self.k),
            q: m.q.clone().or_else(|| self.q.clone()),
            r: m.r.clone().or_else(|| self.r.clone()),
            max_den: m.max_den.or(self.max_den),
            max_prime: m.max_prime.or(self.max_prime),
            primes: m.primes.clone().or_else(|| self.primes.clone()),
        }
    }
}
