use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 42;

/// Entanglement measures, convex roofs and monogamy checks.
#[derive(Debug, Parser)]
#[command(name = "monotone-lab", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every random choice.
    #[arg(long, global = true, env = "MONOTONE_LAB_SEED", default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Random restarts of the roof optimizer.
    #[arg(long, global = true)]
    pub restarts: Option<usize>,

    /// Relative-improvement stopping tolerance of the roof optimizer.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Write the table (or report) here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures on a state file.
    Measure {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated measure names, e.g. `E2_NORM,TANGLE`.
        #[arg(long, value_delimiter = ',', required = true)]
        measure: Vec<String>,
        /// Bipartition such as `A|BC`; defaults to `A|BC` or `A|B`.
        #[arg(long)]
        cut: Option<String>,
    },
    /// Check the disentangling condition on a tripartite family.
    Monogamy {
        #[arg(long, value_enum, default_value_t = Family::Phi)]
        family: Family,
        /// Family parameters, e.g. `a0=0.5,a1=0.3,a2=0.2`.
        #[arg(long)]
        params: Option<String>,
        #[arg(long)]
        measure: Option<String>,
        /// Tripartite pure state for `--family file`.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Verdict that counts as success, overriding the family default.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Emit a figure table as CSV.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        fig: u8,
        #[arg(long, default_value_t = 34)]
        resolution: usize,
    },
    /// Run a seeded property suite.
    Properties {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Sample count; each suite has its own default.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Convex-roof estimate of a measure on a state file.
    Roof {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        measure: String,
        #[arg(long)]
        cut: Option<String>,
        #[arg(long)]
        max_iter: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Phi,
    Omega,
    Acin,
    W,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Concavity,
    Bounds,
    Mixing,
    Coherence,
}
