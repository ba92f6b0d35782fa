use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kcanon::signatures::DEFAULT_BUDGET;
use kcanon::solver::DEFAULT_SINK_WEIGHT;
use kcanon::{NodeId, SolveMethod};

/// Resistor-network signatures for undirected weighted graphs.
///
/// Graph files are edge lists (`u v [w]` per line, `#` comments) or JSON
/// `{"n": N, "edges": [[u, v, w], ...]}`. Use `-` to read standard input.
#[derive(Debug, Parser)]
#[command(name = "kcanon", version, about, max_term_width = 100)]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Quantization grid for signature comparison.
    #[arg(long, global = true, env = "KCANON_TOL", default_value = "1e-8", value_name = "TOL")]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Method::Grounded)]
    pub method: Method,

    /// Conductance from every node to the auxiliary sink (universal-sink
    /// method only).
    #[arg(long, global = true, default_value_t = DEFAULT_SINK_WEIGHT, value_name = "SIEMENS")]
    pub sink_weight: f64,

    /// Node expansions allowed in backtracking searches.
    #[arg(
        long,
        global = true,
        default_value_t = DEFAULT_BUDGET,
        value_parser = clap::value_parser!(u64).range(1..),
    )]
    pub budget: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Print solve statistics to stderr; repeat for timings.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Grounded,
    Pseudoinverse,
    UniversalSink,
}

impl From<Method> for SolveMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Grounded => SolveMethod::Grounded,
            Method::Pseudoinverse => SolveMethod::Pseudoinverse,
            Method::UniversalSink => SolveMethod::UniversalSink,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Voltages, edge currents and effective resistance for one injection.
    Voltages {
        graph: PathBuf,
        /// Source node (1 A injected).
        a: NodeId,
        /// Sink node (1 A withdrawn).
        b: NodeId,
    },
    /// Orbit candidates: nodes grouped by identical voltage signature.
    Orbits {
        graph: PathBuf,
        /// Compare against brute-force automorphism orbits (N <= 10);
        /// exits 4 when they differ.
        #[arg(long)]
        verify: bool,
    },
    /// Isomorphism screen. Exit 0: isomorphic (mapping printed), 1: distinct,
    /// 5: undecided.
    Iso { first: PathBuf, second: PathBuf },
    /// Canonical fingerprint JSON and its SHA-256.
    Fingerprint { graph: PathBuf },
    /// Canonical labeling and canonical form.
    Canon { graph: PathBuf },
    /// Exact and brute-force ground truth for small graphs.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
}

#[derive(Debug, Subcommand)]
pub enum OracleQuery {
    /// Automorphism group order and orbits (N <= 10).
    Automorphisms {
        graph: PathBuf,
        /// Also list every automorphism.
        #[arg(long)]
        list: bool,
    },
    /// Brute-force isomorphism test (N <= 10). Exit 0: isomorphic, 1: distinct.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Exact rational voltages for one injection.
    Solve { graph: PathBuf, a: NodeId, b: NodeId },
    /// Connected graphs on n nodes up to isomorphism (2 <= n <= 7).
    Enumerate {
        n: usize,
        /// Print every graph, not just the count.
        #[arg(long)]
        list: bool,
    },
}
