use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Commuting graphs of Heisenberg and unitriangular groups, Rado walks and
/// small Markov chains. Every output is reproducible from its flags.
///
/// Exit codes: 0 success, 2 invalid input, 3 size cap exceeded.
/// HEISENLAB_CAP overrides the enumeration cap (default 4194304).
#[derive(Debug, Parser)]
#[command(name = "heisenlab", version, about, long_about = None)]
pub struct Cli {
    /// Worker threads for parallel reductions (default: all cores).
    /// Results do not depend on this.
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Write the artifact here instead of stdout.
    #[arg(long, short, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build Γ or Γ̃ and write it as an edge list or a JSON summary.
    Graph(GraphArgs),
    /// Density, codegree-deviation sum and degree histogram.
    Quasi(QuasiArgs),
    /// Embed a finite graph into Γ̃(H_{2k+1}(p)) and verify it.
    Embed(EmbedArgs),
    /// Rado graph: extension witnesses, neighborhood masses, detailed balance, sampler tests.
    #[command(subcommand)]
    Rado(RadoCommand),
    /// Random walks: the Rado walk or the H_3(p) walk.
    #[command(subcommand)]
    Walk(WalkCommand),
    /// Unitriangular calculus: σ/τ, equations, fibers, equipartitions, André sets.
    #[command(subcommand)]
    Ut(UtCommand),
    /// Conjugacy census of UT(n, p).
    Census(CensusArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyArg {
    Heisenberg,
    Ut,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Full,
    Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphFormat {
    Edgelist,
    Json,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroupArgs {
    #[arg(long, value_enum, default_value = "heisenberg")]
    pub family: FamilyArg,
    /// Prime modulus.
    #[arg(long)]
    pub p: u64,
    /// Heisenberg rank: the group is H_{2k+1}(p).
    #[arg(long)]
    pub k: Option<usize>,
    /// Matrix size for the ut family.
    #[arg(long)]
    pub n: Option<usize>,
    /// Default: quotient for heisenberg, full for ut.
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Drop the loop at every vertex.
    #[arg(long)]
    pub no_loops: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, value_enum, default_value = "edgelist")]
    pub format: GraphFormat,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QuasiArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Also count edges between two random vertex subsets of this size.
    #[arg(long)]
    pub subset_size: Option<usize>,
    /// Seed for the subsets; the second subset uses seed + 1.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EmbedArgs {
    /// Edge list: "u v" per line, '#' comments, optional "# vertices=N".
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long)]
    pub p: u64,
    /// Skip building Γ̃ for the independent induced-subgraph check.
    #[arg(long)]
    pub no_graph_check: bool,
}

/// Law of the vertex measure Q. Only Q(j) = 2^{-(j+1)} is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QLaw {
    Dyadic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Bit,
    Legendre,
}

#[derive(Debug, Subcommand)]
pub enum RadoCommand {
    /// Least vertex joined to all of U and none of V.
    Extension(ExtensionArgs),
    /// Q(N(i)) as head plus closed-form tail.
    Mass(MassArgs),
    /// Detailed balance for every pair below L.
    Balance(BalanceArgs),
    /// Σ_j K(i, j) = 1 checked exactly.
    Rowsum(RowsumArgs),
    /// χ² test of the rejection sampler against exact kernel rows.
    Chi2(Chi2Args),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtensionArgs {
    /// Comma-separated vertices, e.g. "1,2".
    #[arg(long, default_value = "")]
    pub u: String,
    #[arg(long, default_value = "")]
    pub v: String,
    #[arg(long, value_enum, default_value = "bit")]
    pub model: ModelArg,
    /// Sieve bound for the Legendre prime pool.
    #[arg(long, default_value_t = heisenlab::rado::DEFAULT_POOL_BOUND)]
    pub pool_bound: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MassArgs {
    #[arg(long)]
    pub i: u64,
    #[arg(long, value_enum, default_value = "dyadic")]
    pub q_law: QLaw,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BalanceArgs {
    #[arg(long = "L", default_value_t = 128)]
    pub l: u64,
    #[arg(long, value_enum, default_value = "dyadic")]
    pub q_law: QLaw,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RowsumArgs {
    #[arg(long)]
    pub i: u64,
    #[arg(long = "L", default_value_t = 1024)]
    pub l: u64,
    #[arg(long, value_enum, default_value = "dyadic")]
    pub q_law: QLaw,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Chi2Args {
    /// Comma-separated start states.
    #[arg(long, default_value = "0,1,2,3,5,8,13,100")]
    pub starts: String,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    pub significance: f64,
    #[arg(long, value_enum, default_value = "dyadic")]
    pub q_law: QLaw,
}

#[derive(Debug, Subcommand)]
pub enum WalkCommand {
    /// TV curve of the Rado walk (CSV) or a sampled trajectory.
    Rado(RadoWalkArgs),
    /// Spectral gap and exact TV curve of the H_3(p) walk.
    H3(H3Args),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkEmit {
    Tv,
    Trajectory,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RadoWalkArgs {
    #[arg(long, default_value_t = 0)]
    pub start: u64,
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    /// Truncation for distribution evolution; must exceed start.
    #[arg(long = "L", default_value_t = 1024)]
    pub l: u64,
    /// Seed for sampled trajectories.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "tv")]
    pub emit: WalkEmit,
    #[arg(long, value_enum, default_value = "dyadic")]
    pub q_law: QLaw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct H3Args {
    #[arg(long)]
    pub p: u64,
    /// Length of the TV curve.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
}

#[derive(Debug, Subcommand)]
pub enum UtCommand {
    /// σ_A, τ_A and their union.
    SigmaTau(CoreArgs),
    /// Commuting equations between the fibers over two cores.
    Equations(PairArgs),
    /// Partite certificate for a commuting clique of cores.
    Fibers(FibersArgs),
    /// Block partition of two fibers with per-block labels.
    Equipartition(PairArgs),
    /// Is the André set for (k, ℓ) a single conjugacy class of U_{n+2}?
    Andre(AndreArgs),
    /// Shell/complement splitting of U_{n+2}.
    Semidirect(SemidirectArgs),
}

/// Cores are given as "i,j,v;i,j,v" with 1-based positions inside the n×n
/// core. The ambient U_{n+2} index is one more, so `--n 5 --a "2,4,1;2,5,1;4,5,1"`
/// is the core with ambient entries (3,5), (3,6), (5,6).
#[derive(Debug, Clone, Args, Serialize)]
pub struct CoreArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    /// Nonzero entries "i,j,v;..." (1-based, i < j).
    #[arg(long, default_value = "")]
    pub a: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value = "")]
    pub a: String,
    #[arg(long, default_value = "")]
    pub b: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FibersArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    /// One core per flag; repeat for a clique of size t.
    #[arg(long = "core", required = true)]
    pub cores: Vec<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AndreArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub l: usize,
    /// Pin the leading hook entries "a,b" instead of ranging over all nonzero values.
    #[arg(long)]
    pub hook: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SemidirectArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CensusArgs {
    /// Comma-separated matrix sizes, e.g. "3,4,5".
    #[arg(long)]
    pub n: String,
    #[arg(long)]
    pub p: u64,
}
