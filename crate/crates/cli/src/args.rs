use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "tribranch", version, about = "Buildings, ideal points, triangle groups and complexes of groups")]
pub struct Cli {
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline on a job config: relators, traces, ideal
    /// points, fixed vertices and orbit summaries.
    Analyze {
        config: PathBuf,
    },
    /// Trace of abac against its closed form, relator checks, and the Haken
    /// test for Seifert invariants.
    Triangle {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// Orbit of the standard vertex under generator moves.
    Orbit {
        #[arg(long, conflicts_with_all = ["p", "q", "r"])]
        config: Option<PathBuf>,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value = "zero")]
        place: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Also write the graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Neighbours of the standard vertex over F_p.
    Link {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        dim: usize,
    },
    #[command(subcommand)]
    Scwol(ScwolCommand),
}

#[derive(Debug, Subcommand)]
pub enum ScwolCommand {
    /// Check the scwol axioms and, for a complex of groups, its conditions.
    Validate(ScwolInput),
    /// Fundamental group presentation and its abelianization.
    Pi1 {
        #[command(flatten)]
        input: ScwolInput,
        #[arg(long, default_value_t = 0)]
        base: usize,
    },
    /// Development of a complex of groups along a morphism to a finite group.
    Develop(ScwolInput),
    /// Quotient complex of groups of a finite group action.
    Quotient(ScwolInput),
}

#[derive(Debug, Args)]
pub struct ScwolInput {
    /// JSON file with one of the keys `scwol`, `cells`, `cog`, `action`,
    /// plus `morphism` for `develop`.
    #[arg(long)]
    pub input: PathBuf,
}
