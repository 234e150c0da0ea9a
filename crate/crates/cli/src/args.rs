use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::suites::Suite;

#[derive(Debug, Parser)]
#[command(
    name = "affine-fk",
    version,
    about = "Affine Schubert calculus: compute tables and verify identities"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Rank of the affine symmetric group.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Length bound for enumerated elements (default 6, or 5 for n >= 4).
    #[arg(long, global = true)]
    pub max_length: Option<usize>,
    /// Degree bound for symmetric-function computations (default 8).
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cache directory; falls back to $AFFINE_FK_CACHE_DIR. No cache if neither is set.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
    /// Only for `compute structure`.
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute and print one object.
    #[command(subcommand)]
    Compute(ComputeCmd),
    /// Run a verification suite; exit status 0 iff every check passes.
    Verify(VerifyArgs),
    /// Inspect or fill the cache.
    #[command(subcommand)]
    Cache(CacheCmd),
}

#[derive(Debug, Clone, Args)]
pub struct ElementArgs {
    /// Reduced or unreduced word in the simple reflections, e.g. `2,1,0`.
    #[arg(long, conflicts_with = "window", required_unless_present = "window")]
    pub word: Option<String>,
    /// Window notation, e.g. `-1,2,5`.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum ComputeCmd {
    /// Affine Schubert polynomial in R_n normal form.
    Schubert(ElementArgs),
    /// Affine Stanley symmetric function.
    Stanley {
        #[command(flatten)]
        element: ElementArgs,
        /// `m` (k-bounded monomials) or `p` (power sums modulo parts > k).
        #[arg(long, default_value = "m")]
        basis: String,
    },
    /// k-Schur function with k = n - 1.
    Kschur {
        #[arg(long)]
        partition: String,
        /// Output basis: p, h, m, e or s.
        #[arg(long, default_value = "p")]
        basis: String,
    },
    /// Affine Schur function with k = n - 1, in k-bounded monomials.
    Affschur {
        #[arg(long)]
        partition: String,
    },
    /// Signed ribbons of size m below an element, or ribbon tableaux of a weight.
    Ribbons {
        #[command(flatten)]
        element: ElementArgs,
        #[arg(long, conflicts_with = "weight", required_unless_present = "weight")]
        m: Option<usize>,
        /// Ribbon sizes in order, e.g. `2,1`.
        #[arg(long)]
        weight: Option<String>,
    },
    /// Structure constants of S̃_u S̃_v in the Schubert basis.
    Structure {
        /// Word for u, e.g. `0` or `1,0`.
        #[arg(long)]
        u: String,
        /// Word for v.
        #[arg(long)]
        v: String,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Number of random samples per degree for sampled checks.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum CacheCmd {
    /// Compute and store Schubert and k-Schur tables up to the bounds.
    Warm,
    /// Validate every entry; corrupt entries are quarantined.
    Check,
    /// List entries.
    List,
    /// Remove all entries (quarantined files are kept).
    Clear,
}
