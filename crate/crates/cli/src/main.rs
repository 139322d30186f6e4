//! `seqsubset`: distances, codes, constructions, bounds and channel
//! simulation for sets of sequences.
//!
//! Exit codes: 0 success, 2 usage error, 3 data error, 4 bound not
//! applicable, 5 contradiction with a proved guarantee.

mod commands;
mod grid;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Seed used when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 0xD4A5_704E;

#[derive(Debug, Parser)]
#[command(
    name = "seqsubset",
    version,
    about = "Codes over sets of sequences under the sequence-subset distance"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Read and print sequences as A/C/G/T instead of 0..3.
    #[arg(long, global = true)]
    pub dna: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for pairwise scans and trials (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Extra diagnostics on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two pool files, with an optimal injection.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Treat repeated lines as multiplicities.
        #[arg(long)]
        multiset: bool,
        /// Confirm with exhaustive search over injections.
        #[arg(long)]
        oracle: bool,
    },
    /// Minimum distance of a code file.
    ///
    /// CSV columns: `min_distance,radius,codewords`, or `i,j,distance` with `--pairs`.
    Mindist {
        code: PathBuf,
        #[arg(long)]
        multiset: bool,
        /// Also list every pairwise distance (1-based codeword indices).
        #[arg(long)]
        pairs: bool,
    },
    /// Minimum-distance decoding of a received pool.
    ///
    /// CSV columns: `index,distance,runner_up,ambiguous` (1-based index).
    Decode {
        code: PathBuf,
        received: PathBuf,
        #[arg(long)]
        multiset: bool,
        /// Collapse repeated reads before decoding.
        #[arg(long)]
        dedup: bool,
    },
    /// Build a code from one of the constructions; writes a code file.
    Construct {
        #[command(subcommand)]
        which: Construction,
    },
    /// Tabulate size, rate and redundancy bounds over a parameter grid.
    ///
    /// Each parameter accepts `a`, `a..b` (inclusive) or comma lists.
    /// CSV columns: `q,L,M,d,K,inner,bound,value,applicable,reason`.
    Bound {
        #[arg(value_enum)]
        kind: BoundSelection,
        #[arg(long)]
        q: String,
        #[arg(long = "L")]
        len: String,
        #[arg(long = "M")]
        m: String,
        #[arg(long)]
        d: Option<String>,
        /// Support size for the recursive chain (default q^L).
        #[arg(long = "K")]
        k: Option<String>,
        /// Bound on the smaller code for a single recursive step.
        #[arg(long)]
        inner: Option<String>,
    },
    /// Channel-plus-decoder round trips.
    ///
    /// CSV columns: `trials,recovered,ambiguous,bound_violations,infeasible,pattern_bound,radius`.
    Simulate {
        code: PathBuf,
        /// Error pattern as `nI,nD,nS`.
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Always send this codeword (1-based) instead of cycling through all.
        #[arg(long)]
        codeword: Option<usize>,
    },
    /// Check a code against its certificate, the bounds and the metric axioms.
    Verify {
        code: PathBuf,
        #[arg(long)]
        multiset: bool,
        /// Random triples for the metric spot check on large codes.
        #[arg(long, default_value_t = 1000)]
        spot: usize,
        #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundSelection {
    Special,
    Plotkin,
    Singleton,
    Recursive,
    All,
}

#[derive(Debug, Args)]
pub struct ConstructOut {
    /// Output code file (default stdout).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Skip the exhaustive minimum-distance check.
    #[arg(long)]
    pub no_verify: bool,
}

#[derive(Debug, Args)]
pub struct InnerCodes {
    /// Generator matrix (`#q= k= n=` header) or codeword list.
    pub c1: PathBuf,
    pub c2: PathBuf,
    /// Minimum distance of C1 to rely on when it is too large to check.
    #[arg(long)]
    pub trust_d1: Option<u64>,
    #[arg(long)]
    pub trust_d2: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Construction {
    /// Disjoint alphabets, d = L·M.
    C1 {
        #[arg(long)]
        q: u32,
        #[arg(long = "L")]
        len: usize,
        #[arg(long = "M")]
        m: usize,
        /// Number of codewords (default from M = m^L).
        #[arg(long = "N")]
        n: Option<usize>,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Supports of a binary code select codewords of C1.
    C2 {
        #[command(flatten)]
        inner: InnerCodes,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Symbols of C2 index rows of C1.
    C3 {
        #[command(flatten)]
        inner: InnerCodes,
        /// Positions of x_{i,j} in the C1 list, row-major, 0-based.
        #[arg(long, conflicts_with = "as_listed")]
        index_map: Option<PathBuf>,
        /// Lay out C1 in file order instead of sorted order.
        #[arg(long)]
        as_listed: bool,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// Index sequences from C1 prefixed to blocks of C2 codewords.
    C4 {
        #[command(flatten)]
        inner: InnerCodes,
        #[command(flatten)]
        out: ConstructOut,
    },
    /// C4 with n information codewords per sequence.
    C4p {
        #[command(flatten)]
        inner: InnerCodes,
        #[arg(long, default_value_t = 2)]
        fold: usize,
        #[command(flatten)]
        out: ConstructOut,
    },
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(commands::EXIT_DATA);
        }
    }
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(commands::exit_code(&err))
        }
    }
}
