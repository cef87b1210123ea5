use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "firstsplit",
    version,
    about = "Minimum-duplication first speciation from gene-tree forests"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads for exact enumerations.
    #[arg(long, default_value_t = 1, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub threads: u16,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Approx,
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichGraph {
    #[value(name = "H")]
    H,
    #[value(name = "I")]
    I,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Approximate bipartition by minimizing the submodular cut function of I(F).
    Approx {
        input: PathBuf,
        /// Also solve exactly and check the approximation bounds.
        #[arg(long)]
        certify: bool,
    },
    /// Exact minimum-duplication bipartition by enumeration.
    Exact {
        input: PathBuf,
        /// List every optimal bipartition.
        #[arg(long)]
        all: bool,
    },
    /// Minimum prefix whose removal disconnects H(F).
    Mdpp { input: PathBuf },
    /// Meet partitions over all optimal bipartitions and all optimal prefixes.
    Partition { input: PathBuf },
    /// Edge and vertex membership in optimal solutions.
    Decide(DecideArgs),
    /// Duplication cost of a forest against a species tree.
    Dupcost { forest: PathBuf, species: PathBuf },
    /// Greedy species tree by recursive bipartition.
    Greedy {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Approx)]
        method: MethodArg,
    },
    /// Build H(F) or I(F) and export it as DOT.
    Graph {
        input: PathBuf,
        #[arg(long, value_enum)]
        which: WhichGraph,
        /// Write DOT here instead of embedding it in the output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Generate random forests.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run the invariant suites on a forest or on a random corpus.
    Check(CheckArgs),
    /// Compare approximate and exact solving on generated instances.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("question").required(true).args(["edge", "vertex"])))]
pub struct DecideArgs {
    pub input: PathBuf,
    /// Is H(F) edge {U,V} with label LABEL cut by some optimal bipartition?
    #[arg(long, num_args = 3, value_names = ["U", "V", "LABEL"])]
    pub edge: Option<Vec<String>>,
    /// Does vertex LABEL belong to some minimum prefix?
    #[arg(long, value_name = "LABEL")]
    pub vertex: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Duplication-loss simulation along a random species tree.
    Sim {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10)]
        families: usize,
        #[arg(long, default_value_t = 0.1)]
        p_dup: f64,
        #[arg(long, default_value_t = 0.1)]
        p_loss: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Forest output file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Species tree output file.
        #[arg(long)]
        species_out: Option<PathBuf>,
    },
    /// Uniform random trees with uniformly drawn leaf genomes.
    Uniform {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 5)]
        trees: usize,
        #[arg(long, default_value_t = 8)]
        leaves: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["input", "random"])))]
pub struct CheckArgs {
    pub input: Option<PathBuf>,
    /// Number of generated forests.
    #[arg(long)]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest genome count in generated forests.
    #[arg(long, default_value_t = 8)]
    pub max_k: usize,
    #[arg(long, default_value_t = 6)]
    pub max_trees: usize,
    #[arg(long, default_value_t = 8)]
    pub max_leaves: usize,
    /// Random pairs per submodularity audit.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Genome counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances per size.
    #[arg(long, default_value_t = 3)]
    pub instances: usize,
    #[arg(long, default_value_t = 6)]
    pub trees: usize,
    #[arg(long, default_value_t = 10)]
    pub leaves: usize,
}
