//! `epsap`: recognize, construct and search for approximate progressions.
//!
//! Exit status: 0 when something was found or a value was computed, 1 when
//! nothing was found, 2 on usage or runtime errors.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use epsap::{Epsilon, ExactRational};

#[derive(Parser, Debug)]
#[command(name = "epsap", version, about = "Approximate arithmetic progressions: recognition, constructions, exact search")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, env = "EPSAP_WORKERS", default_value_t = 0, global = true)]
    pub workers: usize,
    /// Seed for randomized modes.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

impl Global {
    pub fn format(&self) -> Format {
        if self.json {
            Format::Json
        } else {
            self.format
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether points form an approximate progression or cube.
    #[command(subcommand)]
    Recognize(Recognize),
    /// Build one of the constructions.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a coloring or a set read from a file.
    #[command(subcommand)]
    Verify(Verify),
    /// Exact W_eps(k, r) by backtracking.
    Wnumber {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: u8,
        #[arg(long)]
        eps: Epsilon,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        #[arg(long, default_value_t = 200_000_000)]
        node_cap: u64,
    },
    /// Exact f_eps(N, m, k) by branch and bound.
    Density {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: Epsilon,
        #[arg(long, default_value_t = 200_000_000)]
        node_cap: u64,
        /// Count exact progressions instead of approximate ones (m = 1 only).
        #[arg(long)]
        exact_ap: bool,
    },
    /// Export the hypergraph of approximate progressions in [N].
    Hypergraph {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: Epsilon,
        /// `text` or `json`.
        #[arg(long = "as", default_value = "text")]
        as_format: String,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Find a translate of A meeting X densely.
    Translate {
        /// SET file with A.
        #[arg(long)]
        a: PathBuf,
        /// SET file with X ⊆ [N]^m.
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = TranslateModeArg::Auto)]
        mode: TranslateModeArg,
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        #[arg(long, default_value_t = 10_000_000)]
        max_samples: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TranslateModeArg {
    Auto,
    Deterministic,
    Randomized,
}

#[derive(Subcommand, Debug)]
pub enum Recognize {
    /// One-dimensional, decided exactly.
    Ap {
        /// Comma-separated integers.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<i64>,
        #[arg(long)]
        eps: Epsilon,
    },
    /// m-dimensional cube, decided numerically.
    Cube {
        /// SET file with k^m points (or a GRID file with --indexed).
        #[arg(long)]
        input: PathBuf,
        /// Rows are in index order; needed for eps >= 1/2.
        #[arg(long)]
        indexed: bool,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: Epsilon,
        #[arg(long, default_value_t = epsap::geometry::DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Args, Debug, Clone)]
pub struct OutputFile {
    /// Write the SET or COLORING file here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Construct {
    /// The r-fold blow-up of {0..k-1} with step ceil(k/eps), as a set in [N].
    Blowup {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        eps: Epsilon,
        #[command(flatten)]
        out: OutputFile,
    },
    /// The (r-1,1;D)-alternate labeling as a two-coloring.
    Alternate {
        #[arg(long)]
        r: usize,
        /// Block length D.
        #[arg(long)]
        block: usize,
        /// Number of periods.
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        /// Recorded in the file header.
        #[arg(long)]
        k: usize,
        /// Recorded in the file header.
        #[arg(long)]
        eps: Epsilon,
        #[command(flatten)]
        out: OutputFile,
    },
    /// The two-coloring by blocks of length k-1.
    SimpleR2 {
        #[arg(long)]
        k: usize,
        /// Recorded in the file header.
        #[arg(long)]
        eps: Epsilon,
        #[command(flatten)]
        out: OutputFile,
    },
    /// The recursive r-coloring; k defaults to the smallest admissible value.
    Lowerbound {
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        r: u8,
        #[arg(long)]
        eps: Epsilon,
        #[arg(long, default_value = "1/1000")]
        eps0: ExactRational,
        #[arg(long, default_value_t = 100_000_000)]
        max_len: u64,
        /// Print the parameters only.
        #[arg(long)]
        params_only: bool,
        #[command(flatten)]
        out: OutputFile,
    },
    /// Digit set in [0, q^h - 1] avoiding AP_k(eps).
    Behrend {
        #[arg(long)]
        eps: Epsilon,
        #[arg(long)]
        h: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "auto")]
        provider: String,
        /// Shift by +1 to land in [1, q^h].
        #[arg(long)]
        one_based: bool,
        #[command(flatten)]
        out: OutputFile,
    },
    /// The cube blow-up A_r in Z^m.
    CubeBlowup {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: Epsilon,
        #[arg(long)]
        alpha: ExactRational,
        #[arg(long, default_value_t = epsap::density::cube_blowup::DEFAULT_POINT_CAP)]
        cap: usize,
        /// Output one random point per top-level block instead (uses --seed),
        /// as a GRID file in index order.
        #[arg(long)]
        transversal: bool,
        #[command(flatten)]
        out: OutputFile,
    },
    /// A × [N]^(m-1) for a one-dimensional SET file A ⊆ [N].
    Product {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        out: OutputFile,
    },
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Succeeds when the coloring has no monochromatic AP_k(eps).
    Coloring {
        #[arg(long)]
        input: PathBuf,
        /// Overrides the header value.
        #[arg(long)]
        k: Option<usize>,
        /// Overrides the header value.
        #[arg(long)]
        eps: Option<Epsilon>,
    },
    /// Succeeds when the set has no AP_k(eps) (m = 1) or C_eps(m, k).
    Set {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        eps: Epsilon,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.workers > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.workers).build_global();
    }
    match commands::run(&cli) {
        Ok(found) => ExitCode::from(if found { 0 } else { 1 }),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
