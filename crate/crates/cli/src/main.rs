mod args;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use heisenlab::commgraph::{
    bipartite_edge_count, build_graph, embed_graph, induced_subgraph_check, quasi_stats, random_subset,
    BipartiteCount, CommGraph, EmbeddingWitness, Family, Mode, QuasiStats, SimpleGraph,
};
use heisenlab::group::cap_from_env;
use heisenlab::json::Envelope;
use heisenlab::rado::{
    chi_square_suite, detailed_balance, direct_extension, extension_witness, kernel_row_sum, mixing_estimate,
    neighborhood_mass, trajectory, write_trajectory, ChiSquare, LegendrePool, RadoModel,
};
use heisenlab::utgroup::{
    andre_class_check_with, clique_fibers, conjugacy_census, equation_system, equipartition, semidirect_check,
    sigma_tau, symmetrize, BlockLabel, HookValues, UtMatrix,
};
use heisenlab::walklab::h3_mix_report;
use heisenlab::{Error, PrimeModulus};

use args::*;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_size_error() => 3,
            CliError::Io(_) => 1,
            _ => 2,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("heisenlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(w) = cli.workers {
        if w == 0 {
            return Err(CliError::Usage("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let cap = cap_from_env();
    let bytes = match &cli.command {
        Command::Graph(a) => graph(a, cap)?,
        Command::Quasi(a) => quasi(a, cap)?,
        Command::Embed(a) => embed(a, cap)?,
        Command::Rado(c) => rado(c)?,
        Command::Walk(c) => walk(c)?,
        Command::Ut(c) => ut(c, cap)?,
        Command::Census(a) => census(a, cap)?,
    };
    match &cli.out {
        Some(path) => fs::write(path, bytes)?,
        None => std::io::stdout().lock().write_all(&bytes)?,
    }
    Ok(())
}

fn json<C: Serialize, R: Serialize>(config: &C, result: &R) -> Vec<u8> {
    Envelope::new(config, result).to_string_pretty().into_bytes()
}

fn prime(p: u64) -> CliResult<PrimeModulus> {
    Ok(PrimeModulus::new(p)?)
}

fn parse_list(s: &str) -> CliResult<Vec<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| CliError::Usage(format!("not a nonnegative integer: {t:?}"))))
        .collect()
}

fn parse_core(n: usize, spec: &str, p: PrimeModulus) -> CliResult<UtMatrix> {
    let mut triples = Vec::new();
    for entry in spec.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let parts = parse_list(entry)?;
        let [i, j, v] = parts[..] else {
            return Err(CliError::Usage(format!("core entry {entry:?} is not \"i,j,v\"")));
        };
        triples.push((i as usize, j as usize, v as u32));
    }
    Ok(UtMatrix::from_triples(n, &triples, p)?)
}

fn build(a: &GroupArgs, cap: u64) -> CliResult<CommGraph> {
    let p = prime(a.p)?;
    let (family, default_mode) = match a.family {
        FamilyArg::Heisenberg => {
            let k = a.k.ok_or_else(|| CliError::Usage("--k is required for the heisenberg family".into()))?;
            if k == 0 {
                return Err(CliError::Usage("--k must be at least 1".into()));
            }
            (Family::Heisenberg { k }, ModeArg::Quotient)
        }
        FamilyArg::Ut => {
            let n = a.n.ok_or_else(|| CliError::Usage("--n is required for the ut family".into()))?;
            (Family::Ut { n }, ModeArg::Full)
        }
    };
    let mode = match a.mode.unwrap_or(default_mode) {
        ModeArg::Full => Mode::Full,
        ModeArg::Quotient => Mode::Quotient,
    };
    Ok(build_graph(family, p, mode, !a.no_loops, cap)?)
}

#[derive(Serialize)]
struct GraphSummary {
    vertices: usize,
    loops_included: bool,
    ordered_edges: u64,
    degree_histogram: BTreeMap<u64, u64>,
}

fn graph(a: &GraphArgs, cap: u64) -> CliResult<Vec<u8>> {
    let g = build(&a.group, cap)?;
    Ok(match a.format {
        GraphFormat::Edgelist => {
            let mut out = Vec::new();
            g.write_edgelist(&mut out)?;
            out
        }
        GraphFormat::Json => {
            let mut hist = BTreeMap::new();
            for v in 0..g.vertex_count() {
                *hist.entry(g.degree(v)).or_insert(0) += 1;
            }
            let s = GraphSummary {
                vertices: g.vertex_count(),
                loops_included: g.loops_included,
                ordered_edges: g.ordered_edges(),
                degree_histogram: hist,
            };
            json(a, &s)
        }
    })
}

#[derive(Serialize)]
struct QuasiResult {
    stats: QuasiStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartite: Option<BipartiteCount>,
}

fn quasi(a: &QuasiArgs, cap: u64) -> CliResult<Vec<u8>> {
    let g = build(&a.group, cap)?;
    let bipartite = match a.subset_size {
        Some(s) => {
            let n = g.vertex_count();
            if s > n {
                return Err(CliError::Usage(format!("--subset-size {s} exceeds the {n} vertices")));
            }
            let x = random_subset(n, s, a.seed);
            let y = random_subset(n, s, a.seed.wrapping_add(1));
            Some(bipartite_edge_count(&g, &x, &y)?)
        }
        None => None,
    };
    Ok(json(
        a,
        &QuasiResult {
            stats: quasi_stats(&g),
            bipartite,
        },
    ))
}

#[derive(Serialize)]
struct EmbedResult {
    witness: EmbeddingWitness,
    /// Independent check against the built Γ̃, when requested and under the cap.
    induced_check: Option<bool>,
}

fn embed(a: &EmbedArgs, cap: u64) -> CliResult<Vec<u8>> {
    let p = prime(a.p)?;
    let text = fs::read_to_string(&a.graph)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", a.graph.display())))?;
    let g = SimpleGraph::parse_edgelist(&text)?;
    let witness = embed_graph(&g, p)?;
    let induced_check = if a.no_graph_check {
        None
    } else {
        let target = build_graph(Family::Heisenberg { k: witness.k }, p, Mode::Quotient, true, cap)?;
        let vertices = witness
            .vertex_images
            .iter()
            .map(|e| target.vertex_of(e))
            .collect::<Result<Vec<_>, _>>()?;
        Some(induced_subgraph_check(&target, &vertices, &g)?)
    };
    Ok(json(a, &EmbedResult { witness, induced_check }))
}

#[derive(Serialize)]
struct ExtensionResult {
    witness: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    direct: Option<u64>,
}

#[derive(Serialize)]
struct MassResult {
    i: u64,
    #[serde(with = "heisenlab::json::rational")]
    head: num_rational::BigRational,
    /// `1/(2^{2^i}+1)`, written out only while it is small enough.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    tail: Option<num_rational::BigRational>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_rational")]
    exact: Option<num_rational::BigRational>,
    value: f64,
    certified_error: f64,
}

mod opt_rational {
    use num_rational::BigRational;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        r.as_ref().map(heisenlab::json::rational_value).serialize(s)
    }
}

#[derive(Serialize)]
struct Chi2Result {
    significance: f64,
    all_pass: bool,
    rows: Vec<ChiSquare>,
}

fn rado(c: &RadoCommand) -> CliResult<Vec<u8>> {
    Ok(match c {
        RadoCommand::Extension(a) => {
            let u: BTreeSet<u64> = parse_list(&a.u)?.into_iter().collect();
            let v: BTreeSet<u64> = parse_list(&a.v)?.into_iter().collect();
            let (model, direct) = match a.model {
                ModelArg::Bit => (RadoModel::Bit, Some(direct_extension(&u, &v)?)),
                ModelArg::Legendre => (
                    RadoModel::Legendre {
                        pool: LegendrePool::new(a.pool_bound),
                    },
                    None,
                ),
            };
            let witness = extension_witness(&model, &u, &v)?;
            json(a, &ExtensionResult { witness, direct })
        }
        RadoCommand::Mass(a) => {
            let m = neighborhood_mass(a.i);
            let value = m.to_f64();
            json(
                a,
                &MassResult {
                    i: a.i,
                    head: m.head.clone(),
                    tail: m.tail_exact(),
                    exact: m.exact(),
                    value,
                    certified_error: 4.0 * f64::EPSILON * value,
                },
            )
        }
        RadoCommand::Balance(a) => json(a, &detailed_balance(a.l)),
        RadoCommand::Rowsum(a) => json(a, &kernel_row_sum(a.i, a.l)?),
        RadoCommand::Chi2(a) => {
            let starts = parse_list(&a.starts)?;
            let rows = chi_square_suite(&starts, a.samples, a.seed)?;
            let all_pass = rows.iter().all(|r| r.passes(a.significance));
            json(
                a,
                &Chi2Result {
                    significance: a.significance,
                    all_pass,
                    rows,
                },
            )
        }
    })
}

fn walk(c: &WalkCommand) -> CliResult<Vec<u8>> {
    let mut out = Vec::new();
    match c {
        WalkCommand::Rado(a) => match a.emit {
            WalkEmit::Tv => {
                let curve = mixing_estimate(a.start, a.steps, a.l)?;
                for w in &curve.warnings {
                    eprintln!("heisenlab: warning: {w}");
                }
                curve.write_csv(&mut out)?;
            }
            WalkEmit::Trajectory => {
                let path = trajectory(a.start, a.steps, a.seed)?;
                write_trajectory(&mut out, a.seed, &path)?;
            }
        },
        WalkCommand::H3(a) => {
            let report = h3_mix_report(prime(a.p)?, a.steps)?;
            match a.format {
                ReportFormat::Json => return Ok(json(a, &report)),
                ReportFormat::Csv => {
                    writeln!(out, "step,tv")?;
                    for (s, tv) in report.tv.tv.iter().enumerate() {
                        writeln!(out, "{s},{tv:.15e}")?;
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct SigmaTauResult {
    sigma: BTreeSet<usize>,
    tau: BTreeSet<usize>,
    symmetrized: BTreeSet<usize>,
    m: usize,
}

#[derive(Serialize)]
struct FibersResult {
    n: usize,
    m: usize,
    symmetrized: BTreeSet<usize>,
    part_sizes: Vec<usize>,
    pairs_checked: u64,
    bijective: bool,
    edges_match: bool,
    verified: bool,
}

#[derive(Serialize)]
struct EquipartitionResult {
    n: usize,
    m: usize,
    symmetrized: BTreeSet<usize>,
    x_blocks: usize,
    y_blocks: usize,
    block_size: usize,
    full: usize,
    empty: usize,
    twisted: usize,
    verified: bool,
    dichotomy_holds: bool,
    pairs_checked: u64,
    labels: Vec<Vec<BlockLabel>>,
}

#[derive(Serialize)]
struct AndreResult {
    single_class: bool,
}

fn ut(c: &UtCommand, cap: u64) -> CliResult<Vec<u8>> {
    Ok(match c {
        UtCommand::SigmaTau(a) => {
            let core = parse_core(a.n, &a.a, prime(a.p)?)?;
            let st = sigma_tau(&core);
            let symmetrized = symmetrize(&st);
            let m = a.n - symmetrized.len();
            json(
                a,
                &SigmaTauResult {
                    sigma: st.sigma,
                    tau: st.tau,
                    symmetrized,
                    m,
                },
            )
        }
        UtCommand::Equations(a) => {
            let p = prime(a.p)?;
            let (x, y) = (parse_core(a.n, &a.a, p)?, parse_core(a.n, &a.b, p)?);
            json(a, &equation_system(&x, &y, p)?)
        }
        UtCommand::Fibers(a) => {
            let p = prime(a.p)?;
            let cores = a.cores.iter().map(|s| parse_core(a.n, s, p)).collect::<CliResult<Vec<_>>>()?;
            let f = clique_fibers(&cores, p, cap)?;
            json(
                a,
                &FibersResult {
                    n: f.n,
                    m: f.m,
                    part_sizes: f.parts.iter().map(Vec::len).collect(),
                    pairs_checked: f.certificate.pairs_checked,
                    bijective: f.certificate.bijective,
                    edges_match: f.certificate.edges_match,
                    verified: f.certificate.verified(),
                    symmetrized: f.symmetrized,
                },
            )
        }
        UtCommand::Equipartition(a) => {
            let p = prime(a.p)?;
            let (x, y) = (parse_core(a.n, &a.a, p)?, parse_core(a.n, &a.b, p)?);
            let e = equipartition(&x, &y, p, cap)?;
            json(
                a,
                &EquipartitionResult {
                    n: e.n,
                    m: e.m,
                    x_blocks: e.x_blocks.len(),
                    y_blocks: e.y_blocks.len(),
                    block_size: e.x_blocks.first().map_or(0, |b| b.members.len()),
                    full: e.count(BlockLabel::FullHeisenberg),
                    empty: e.count(BlockLabel::Empty),
                    twisted: e.twisted_count(),
                    verified: e.verified,
                    dichotomy_holds: e.dichotomy_holds(),
                    pairs_checked: e.pairs_checked,
                    symmetrized: e.symmetrized.clone(),
                    labels: e.labels,
                },
            )
        }
        UtCommand::Andre(a) => {
            let values = match &a.hook {
                None => HookValues::AnyNonzero,
                Some(s) => match parse_list(s)?[..] {
                    [x, y] => HookValues::Fixed(x as u32, y as u32),
                    _ => return Err(CliError::Usage(format!("--hook {s:?} is not \"a,b\""))),
                },
            };
            let single_class = andre_class_check_with(a.n, prime(a.p)?, a.k, a.l, values, cap)?;
            json(a, &AndreResult { single_class })
        }
        UtCommand::Semidirect(a) => json(a, &semidirect_check(a.n, prime(a.p)?, cap)?),
    })
}

fn census(a: &CensusArgs, cap: u64) -> CliResult<Vec<u8>> {
    let p = prime(a.p)?;
    let records = parse_list(&a.n)?
        .into_iter()
        .map(|n| conjugacy_census(n as usize, p, cap))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json(a, &records))
}
