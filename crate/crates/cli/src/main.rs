//! `hypercone`: entropies, inequality checks, contraction proofs and
//! hypergraph states from the command line.
//!
//! Exit codes: 0 all requested checks passed, 1 a check failed, 2 invalid
//! input or other error, 3 a search or verification budget ran out.

mod commands;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "hypercone", version, about = "Hypergraph entropy cones and proofs by contraction")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Global {
    /// Emit a single JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "HYPERCONE_THREADS")]
    pub threads: Option<usize>,
    /// Node budget per rank for verification and search.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Recorded in the run manifest; all algorithms are deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Render numbers as decimals instead of exact rationals.
    #[arg(long, global = true)]
    pub float: bool,
    /// Also write the run manifest to this file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    /// Leave wall-clock timing out of JSON output.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Subcommand)]
pub enum Command {
    /// Min-cut entropy vector of a hypergraph, or one subsystem's entropy.
    Entropy {
        graph: PathBuf,
        #[arg(long)]
        subsystem: Option<String>,
    },
    /// Evaluate an inequality (all its instances) on a hypergraph's entropies.
    CheckIneq {
        /// Built-in name, inequality file, or expression.
        ineq: String,
        graph: PathBuf,
    },
    /// Verify a contraction map rank by rank.
    VerifyMap {
        /// Built-in name, inequality file, or expression (with --n).
        ineq: String,
        /// Use the built-in map of the named inequality.
        #[arg(long, conflicts_with = "map")]
        builtin: bool,
        /// Map file `{"L", "Rp", "f10"}`.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Disable the distance and polytope-span prunes.
        #[arg(long)]
        no_prune: bool,
        /// Party count for expressions.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Search for a contraction map valid up to a target rank.
    SearchMap {
        ineq: String,
        #[arg(long, default_value_t = 2)]
        k_target: usize,
        #[arg(long)]
        n: Option<usize>,
        /// Write the map found to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify all 24 five-party maps and compare with the published summary.
    BatchAppendix {
        /// `table5` (published ranks) or `fixed:K`.
        #[arg(long, default_value = "table5")]
        kmax_policy: String,
        /// Restrict to some rows, e.g. `1-7,12`.
        #[arg(long)]
        rows: Option<String>,
    },
    /// Build the hypergraph state; optionally dump amplitudes and compare entropies.
    BuildState {
        graph: PathBuf,
        #[arg(long)]
        dump: bool,
        #[arg(long)]
        verify: bool,
        /// Insert GHZ and Hadamard blocks on 2-edges instead of contracting directly.
        #[arg(long)]
        explicit_two_edges: bool,
        /// On mismatch, try permuted and phased AME tensors.
        #[arg(long)]
        basis_search: bool,
    },
    /// Collapse a hypergraph onto bit-string cells of its minimal cuts.
    Reduce {
        graph: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_parties: usize,
    },
    /// Catalog of extreme-ray realizations.
    Rays {
        #[command(subcommand)]
        action: RaysAction,
    },
    /// Parse an inequality and show its canonical form.
    Parse {
        expr: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
pub enum RaysAction {
    /// List built-in rays with their entropy vectors.
    List,
    /// Evaluate inequalities on a ray.
    Check {
        name: String,
        /// `sa`, `ssa`, `mmi`, `ingleton`, `q`, `all` or a library name.
        #[arg(long, default_value = "all")]
        against: String,
        /// Look the ray up in this file instead of the built-ins.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Load external rays, check each graph realizes its vector, and count bulk vertices.
    Load { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    run::execute(&cli.global, &cli.command)
}
