use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::experiments::Tier;

/// Graph homomorphisms parameterized by treewidth.
#[derive(Debug, Parser)]
#[command(name = "twhom", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Search node budget per backtracking run.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Wall-clock limit in seconds.
    #[arg(long, global = true)]
    pub time_limit: Option<u64>,
    /// Worker threads for core searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Seed for randomized experiments and sampling.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Decide,
    Find,
    Count,
    Enumerate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExperimentName {
    #[value(name = "paper-5-cores")]
    PaperCores,
    #[value(name = "conjecture-18")]
    Conjecture18,
    #[value(name = "oracle-suite")]
    OracleSuite,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide, find, count or enumerate homomorphisms SOURCE -> TARGET.
    Solve {
        source: String,
        target: String,
        /// PACE `.td` decomposition of the source.
        #[arg(long)]
        td: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Decide)]
        mode: ModeArg,
        /// Solve the target directly instead of splitting it into prime factors.
        #[arg(long)]
        no_factor_dispatch: bool,
    },
    /// Test whether GRAPH is a core and compute its core.
    Core { graph: String },
    /// Test whether GRAPH is projective.
    Projective { graph: String },
    /// Prime factorization with respect to the direct product.
    Factor { graph: String },
    /// Build and verify an edge gadget for TARGET.
    Gadget {
        target: String,
        /// Second factor R for the non-projective gadget.
        #[arg(long)]
        extra: Option<String>,
        /// Vertex w of R (0-based).
        #[arg(long, default_value_t = 0)]
        w: usize,
        /// Write the materialized gadget in DIMACS-like form.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce coloring of GRAPH to homomorphisms into the projective core TARGET.
    Reduce {
        graph: String,
        target: String,
        /// PACE `.td` decomposition of GRAPH to extend.
        #[arg(long)]
        td_in: Option<PathBuf>,
        /// Where to write the extended decomposition.
        #[arg(long)]
        td_out: Option<PathBuf>,
        /// Where to write the reduced graph (DIMACS-like).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the original-vertex map.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Run a named experiment.
    Experiment {
        #[arg(value_enum)]
        name: ExperimentName,
        #[arg(long, value_enum, default_value_t = Tier::Quick)]
        tier: Tier,
        /// Product pair for conjecture-18 (repeatable).
        #[arg(long, num_args = 2, value_names = ["A", "B"], action = clap::ArgAction::Append)]
        pair: Vec<String>,
        /// Random pairs for oracle-suite.
        #[arg(long, default_value_t = 500)]
        random_pairs: usize,
    },
}
