mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use topoham_core::hamiltonicity::DEFAULT_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Auto,
    Backtracking,
    HeldKarp,
}

#[derive(Debug, Parser)]
#[command(
    name = "topoham",
    version,
    about = "Topological indices and Hamiltonicity conditions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Largest order the Hamiltonicity oracle accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP, value_parser = positive())]
    pub cap: usize,
    /// Worker threads for verification; defaults to the number of cores.
    #[arg(long, global = true, value_parser = positive())]
    pub threads: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct Source {
    /// graph6 or edge-list file; stdin when absent or `-`.
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wiener, hyper-Wiener and Harary indices with transmissions.
    Index(Source),
    /// Generate an extremal family member as graph6.
    Family {
        family: String,
        n: usize,
        k: usize,
        #[arg(long, conflicts_with = "quasi_complement")]
        complement: bool,
        #[arg(long)]
        quasi_complement: bool,
    },
    /// Complement, or quasi-complement of a bipartite graph.
    Complement {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        quasi: bool,
        /// Part X as a comma-separated list; a 2-colouring otherwise.
        #[arg(long)]
        x: Option<String>,
    },
    /// Decide Hamiltonicity properties; all four when none is selected.
    Oracle {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        traceable: bool,
        #[arg(long)]
        hamiltonian: bool,
        #[arg(long)]
        hamilton_connected: bool,
        #[arg(long)]
        traceable_from_every_vertex: bool,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
    },
    /// Evaluate one catalog entry on one graph.
    Check {
        entry: String,
        #[command(flatten)]
        source: Source,
        /// Defaults to the entry's smallest k.
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        x: Option<String>,
    },
    /// Run catalog entries and bound lemmas over a corpus against the oracle.
    Verify(VerifyArgs),
    /// Compare the family closed forms with computed values.
    ClosedForms {
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 14)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Dump the condition catalog.
    Catalog,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Every labeled graph on N vertices.
    #[arg(long, value_name = "N", group = "corpus")]
    pub enumerate: Option<usize>,
    /// Every labeled bipartite graph with parts A and B.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "corpus")]
    pub enumerate_bipartite: Option<Vec<usize>>,
    /// Random graphs on N vertices (see --count, --p).
    #[arg(long, value_name = "N", group = "corpus")]
    pub sample: Option<usize>,
    /// Random bipartite graphs with parts A and B.
    #[arg(long, num_args = 2, value_names = ["A", "B"], group = "corpus")]
    pub sample_bipartite: Option<Vec<usize>>,
    /// graph6 file, `-` for stdin.
    #[arg(long, value_name = "FILE", group = "corpus")]
    pub input: Option<PathBuf>,
    /// Read --input graphs as bipartite via a 2-colouring.
    #[arg(long, requires = "input")]
    pub bipartite: bool,
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub min_degree: usize,
    #[arg(long)]
    pub connected: bool,
    /// Complement (quasi-complement for bipartite corpora) connected.
    #[arg(long)]
    pub connected_complement: bool,
    #[arg(long, default_value_t = 0)]
    pub min_connectivity: usize,
    /// Comma-separated entry ids; all entries by default.
    #[arg(long)]
    pub entries: Option<String>,
    #[arg(long, conflicts_with_all = ["k_min", "k_max"])]
    pub k: Option<u32>,
    #[arg(long)]
    pub k_min: Option<u32>,
    #[arg(long)]
    pub k_max: Option<u32>,
    #[arg(long)]
    pub no_bounds: bool,
    #[arg(long, value_enum, default_value_t = RecordsArg::All)]
    pub records: RecordsArg,
    /// Write records.jsonl, coverage.csv and bounds.csv here.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecordsArg {
    All,
    Interesting,
    Findings,
    None,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn positive() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::new().range(1..)
}
