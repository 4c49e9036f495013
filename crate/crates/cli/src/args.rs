//! Command-line arguments.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "icanon", version, about = "Kazhdan-Lusztig, canonical and ι-canonical bases with positivity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Write output to a file instead of stdout.
    #[arg(short = 'o', long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,

    /// Directory for cached results.
    #[arg(long, env = "ICANON_CACHE_DIR", global = true)]
    #[serde(skip)]
    pub cache_dir: Option<PathBuf>,

    /// Ignore the cache entirely.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub no_cache: bool,

    /// Largest accepted rank in type A.
    #[arg(long, default_value_t = 5, global = true)]
    pub max_rank_a: usize,

    /// Largest accepted rank in type B.
    #[arg(long, default_value_t = 4, global = true)]
    pub max_rank_b: usize,

    /// Largest accepted tensor space dimension.
    #[arg(long, default_value_t = 4096, global = true)]
    pub max_dim: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    /// Kazhdan-Lusztig polynomials p_{y,w} of a Weyl group.
    Kl(Group),
    /// Parabolic Kazhdan-Lusztig polynomials p^+_{y,w} of M_J.
    Pkl {
        #[command(flatten)]
        group: Group,
        /// Parabolic subset J, e.g. "s1" or "s0,s2".
        #[arg(long = "J", default_value = "")]
        j: String,
    },
    /// Expansion of KL elements in the hybrid basis for W_I (of H or of M_J).
    Hybrid {
        #[command(flatten)]
        group: Group,
        #[arg(long = "I", default_value = "")]
        i: String,
        /// Work in M_J instead of the Hecke algebra.
        #[arg(long = "J")]
        j: Option<String>,
        /// A single element, as a word "s0 s1" or a window "[-2, 1]".
        #[arg(long)]
        w: Option<String>,
    },
    /// Canonical or ι-canonical basis of a tensor of wedges.
    Basis {
        #[command(flatten)]
        module: Module,
        #[arg(long, value_enum, default_value_t = Kind::Canonical)]
        kind: Kind,
    },
    /// Transition coefficients with nonnegativity verdicts.
    Positivity {
        #[command(flatten)]
        module: Module,
        /// Split point l: the first l factors form the α side.
        #[arg(long)]
        split: Option<usize>,
        #[arg(long, value_enum, default_value_t = Expansion::Mixed)]
        expansion: Expansion,
        /// Dominant weight as multiplicities a_1,...,a_n (for --expansion simple).
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Group {
    #[arg(long, value_parser = ["A", "B", "a", "b"])]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Module {
    #[arg(long)]
    pub n: usize,
    /// Comma separated factors, e.g. "V,wedge2,V".
    #[arg(long, default_value = "")]
    pub factors: String,
    #[arg(long, default_value = "bw13")]
    pub variant: String,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Canonical,
    Iota,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expansion {
    Mixed,
    Pure,
    Simple,
}
