use crate::input::SetArg;
use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};
use wrep_core::repcount::WeightPair;

#[derive(Parser, Debug)]
#[command(name = "wrep", version, about = "Weighted representation functions on block sets")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,

    /// Worker threads for scans and searches (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Run data-parallel drivers sequentially.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    R1,
    R2,
    R3,
}

#[derive(Args, Debug)]
pub struct Weights {
    /// Shorthand for weights (1, k).
    #[arg(long, conflicts_with_all = ["k1", "k2"])]
    pub k: Option<i128>,
    #[arg(long, requires = "k2")]
    pub k1: Option<i128>,
    #[arg(long, requires = "k1")]
    pub k2: Option<i128>,
}

impl Weights {
    pub fn resolve(&self) -> Result<WeightPair> {
        Ok(match (self.k, self.k1, self.k2) {
            (Some(k), _, _) => WeightPair::unit_first(k)?,
            (None, Some(k1), Some(k2)) => WeightPair::new(k1, k2)?,
            _ => anyhow::bail!("give --k or both --k1 and --k2"),
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fast exact count r_{k1,k2}(A, n).
    Eval {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        weights: Weights,
        #[arg(long)]
        n: i128,
        /// Also run the brute-force oracle and fail on disagreement.
        #[arg(long)]
        check: bool,
    },
    /// Brute-force count (linear in n).
    Oracle {
        #[command(flatten)]
        set: SetArg,
        #[command(flatten)]
        weights: Weights,
        #[arg(long)]
        n: i128,
    },
    /// Unweighted counters R1, R2, R3.
    Classic {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        n: i128,
        #[arg(long, value_enum, default_value_t = Variant::R1)]
        variant: Variant,
    },
    /// Detect a scaling tail t_{i+a} = k t_i in a boundary list.
    Detect {
        #[command(flatten)]
        set: SetArg,
        /// Comma-separated boundaries (instead of a set).
        #[arg(long, value_delimiter = ',')]
        boundaries: Option<Vec<i128>>,
        #[arg(long)]
        k: i128,
    },
    /// Generate a scaling set from a seed t_0..t_{a-1}.
    Gen {
        /// Comma-separated seed; its length is the period a.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<i128>,
        #[arg(long)]
        k: i128,
        /// Store boundaries below this value.
        #[arg(long, default_value_t = 1000)]
        limit: i128,
    },
    /// List the intervals of a set below a limit.
    Materialize {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        limit: i128,
    },
    /// Complement of a set.
    Complement {
        #[command(flatten)]
        set: SetArg,
    },
    /// T = 4 (t_{a+2} - t_0) and the least odd g with k^g > T.
    SelectG {
        #[command(flatten)]
        set: SetArg,
    },
    /// n = (k^g + 1) m + r with m located on the boundary lattice.
    Decompose {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        n: i128,
        #[arg(long)]
        g: Option<u32>,
    },
    /// Build and validate the explicit witness family for n.
    Witnesses {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        n: i128,
        #[arg(long)]
        g: Option<u32>,
    },
    /// Compare r_{1,k}(A, n) with r_{1,k}(N \ A, n) over a range.
    VerifyPsi {
        #[command(flatten)]
        set: SetArg,
        /// Defaults to the set's tail ratio.
        #[arg(long)]
        k: Option<i128>,
        #[arg(long)]
        n_lo: i128,
        #[arg(long)]
        n_hi: i128,
        /// Include the per-n series.
        #[arg(long)]
        per_n: bool,
    },
    /// Ratio r/n on the containing side over a (sampled) range.
    Scan {
        #[command(flatten)]
        set: SetArg,
        #[arg(long)]
        k: Option<i128>,
        #[arg(long)]
        n_lo: i128,
        #[arg(long)]
        n_hi: i128,
        #[arg(long)]
        g: Option<u32>,
        #[arg(long, default_value_t = 1)]
        stride: i128,
    },
    /// Search scaling seeds for long equality runs.
    Search {
        #[arg(long)]
        k: i128,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        t0_max: i128,
        #[arg(long)]
        width_max: i128,
        #[arg(long)]
        horizon: i128,
        #[arg(long)]
        n_start: Option<i128>,
        /// Keep only the best candidates.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Whether two ratios k, l can share a set (log k / log l = odd/odd).
    Intersect {
        #[arg(long)]
        k: i128,
        #[arg(long)]
        l: i128,
    },
}
