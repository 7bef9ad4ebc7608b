use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cheby-ramsey", version, about = "Exact tools for max-norm plane colorings avoiding monochromatic triangles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "CHEBY_RAMSEY_THREADS")]
    pub threads: Option<usize>,

    /// Seed for randomized steps, echoed in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List every copy of the triangle in a point set.
    Copies {
        #[command(flatten)]
        triangle: TriangleArg,
        /// JSON array of [x, y] rational strings.
        #[arg(long)]
        points: PathBuf,
    },
    /// Certify a lifted coloring and search a sample grid for a
    /// monochromatic copy. Exit 0: certified, 1: counterexample, 2: neither.
    Verify {
        #[command(flatten)]
        triangle: TriangleArg,
        /// TOML plane coloring.
        #[arg(long)]
        coloring: PathBuf,
        /// Side of the sampled square [0, W]^2.
        #[arg(long, default_value = "8")]
        window: String,
        /// Grid spacing.
        #[arg(long, default_value = "1/4")]
        step: String,
    },
    /// Chromatic number of the line for a distance set, and the resulting
    /// plane bounds when a triangle is given.
    ChiLine {
        /// Triangle whose side or diagonal set is used.
        #[arg(long, value_name = "A,B,C", conflicts_with = "distances")]
        triangle: Option<String>,
        #[arg(long, value_enum, default_value_t = Route::Side)]
        route: Route,
        /// Explicit distance set.
        #[arg(long, value_name = "D1,D2,...", required_unless_present = "triangle")]
        distances: Option<String>,
        /// Lower bound: exact chromatic number of {0..N}.
        #[arg(long, default_value_t = 12)]
        window: usize,
        /// Upper bound: residue colorings with period at most P.
        #[arg(long, default_value_t = 12)]
        max_period: usize,
    },
    /// Chromatic number and largest copy-free subset of a finite point set.
    ChiSet {
        /// Required with --points; a hypergraph file carries its own.
        #[arg(long, value_name = "A,B,C", required_unless_present = "hypergraph")]
        triangle: Option<String>,
        #[arg(long, required_unless_present = "hypergraph", conflicts_with = "hypergraph")]
        points: Option<PathBuf>,
        /// Copy hypergraph JSON instead of a point set.
        #[arg(long)]
        hypergraph: Option<PathBuf>,
        /// Largest color count tried.
        #[arg(long, default_value_t = 4)]
        colors: usize,
    },
    /// Lower (periodic) and upper (patch) bounds on copy-free density in
    /// Z or Z^2.
    Density {
        #[command(flatten)]
        triangle: TriangleArg,
        /// Torus dims n or n,m.
        #[arg(long)]
        dims: String,
        /// Patch dims; defaults to dims + c in each coordinate.
        #[arg(long)]
        patch: Option<String>,
    },
    /// Search a grid for a small point set needing at least k colors.
    Witness {
        #[command(flatten)]
        triangle: TriangleArg,
        #[arg(long)]
        colors: usize,
        /// Grid spacing 1/q.
        #[arg(long, default_value = "1")]
        step: String,
        /// Grid covers [0, W]^2.
        #[arg(long, default_value_t = 6)]
        window: i64,
        #[arg(long, default_value_t = 4)]
        restarts: usize,
        /// Search nodes per solver call.
        #[arg(long, default_value_t = 2_000_000)]
        budget: u64,
    },
    /// Replay the period and anti-period deductions with checked copies.
    Deduce {
        #[command(flatten)]
        triangle: TriangleArg,
        /// Coefficient bound for certificate searches.
        #[arg(long, default_value_t = 10)]
        bound: u32,
        /// Segment extension steps.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Draw a coloring or a point set (with copy overlays) as SVG.
    Render {
        #[arg(long, value_name = "A,B,C")]
        triangle: Option<String>,
        #[arg(long, required_unless_present = "points", conflicts_with = "points")]
        coloring: Option<PathBuf>,
        #[arg(long)]
        points: Option<PathBuf>,
        /// Coloring window [0, W]^2.
        #[arg(long, default_value = "8")]
        window: String,
    },
}

#[derive(Debug, Args)]
pub struct TriangleArg {
    /// Side lengths as rationals, in any order.
    #[arg(long, value_name = "A,B,C")]
    pub triangle: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    Side,
    Diagonal,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Copies { .. } => "copies",
            Command::Verify { .. } => "verify",
            Command::ChiLine { .. } => "chi-line",
            Command::ChiSet { .. } => "chi-set",
            Command::Density { .. } => "density",
            Command::Witness { .. } => "witness",
            Command::Deduce { .. } => "deduce",
            Command::Render { .. } => "render",
        }
    }
}
