use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bitmatrix::BitMatrix;
use super::graph::CommGraph;
use crate::error::{Error, Result};

/// Density and codegree-deviation statistics of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiStats {
    pub n: u64,
    pub loops_included: bool,
    /// Ordered adjacent pairs, loops counted once each.
    pub ordered_edges: u64,
    /// `ordered_edges / n²`.
    #[serde(with = "crate::json::rational")]
    pub density: BigRational,
    /// `Σ_{v,w} | |N(v) ∩ N(w)| − δ² n |` over all ordered pairs.
    #[serde(with = "crate::json::rational")]
    pub codegree_deviation_sum: BigRational,
    /// `codegree_deviation_sum / n³`.
    #[serde(with = "crate::json::rational")]
    pub normalized_sum: BigRational,
    pub degree_histogram: BTreeMap<u64, u64>,
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn quasi_stats(g: &CommGraph) -> QuasiStats {
    let adj = g.adjacency();
    let n = adj.len() as u64;
    let degrees: Vec<u64> = (0..adj.len()).map(|v| adj.row_count(v)).collect();
    let d: u64 = degrees.iter().sum();
    let mut histogram = BTreeMap::new();
    for &deg in &degrees {
        *histogram.entry(deg).or_insert(0u64) += 1;
    }
    // |c − D²/n³| = |c·n³ − D²| / n³, accumulated exactly in i128.
    let n3 = (n as i128).pow(3);
    let d2 = (d as i128) * (d as i128);
    let scaled: i128 = (0..adj.len())
        .into_par_iter()
        .map(|v| {
            let diag = (adj.and_count(v, v) as i128 * n3 - d2).abs();
            let off: i128 = (v + 1..adj.len())
                .map(|w| (adj.and_count(v, w) as i128 * n3 - d2).abs())
                .sum();
            diag + 2 * off
        })
        .sum();
    let sum = ratio(scaled, n3);
    let normalized = &sum / ratio(n3, 1);
    QuasiStats {
        n,
        loops_included: g.loops_included,
        ordered_edges: d,
        density: ratio(d, n * n),
        codegree_deviation_sum: sum,
        normalized_sum: normalized,
        degree_histogram: histogram,
    }
}

/// Ordered-pair edge count between two vertex sets and its deviation from
/// two baselines: the density baseline `δ|A||B|` and the constant-`p`
/// baseline `p|A||B|` as literally stated for bipartite counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteCount {
    pub a_size: u64,
    pub b_size: u64,
    pub count: u64,
    #[serde(with = "crate::json::rational")]
    pub density_baseline: BigRational,
    #[serde(with = "crate::json::rational")]
    pub deviation: BigRational,
    #[serde(with = "crate::json::rational")]
    pub literal_baseline: BigRational,
    #[serde(with = "crate::json::rational")]
    pub literal_deviation: BigRational,
}

pub fn bipartite_edge_count(g: &CommGraph, a: &[usize], b: &[usize]) -> Result<BipartiteCount> {
    let n = g.vertex_count();
    if let Some(&bad) = a.iter().chain(b).find(|&&v| v >= n) {
        return Err(Error::Domain(format!("vertex {bad} out of range 0..{n}")));
    }
    let mask = BitMatrix::mask(n, b);
    // Duplicates in B collapse in the mask; count them explicitly instead.
    let count: u64 = if has_duplicates(b) {
        a.iter()
            .map(|&u| b.iter().filter(|&&w| g.adjacent(u, w)).count() as u64)
            .sum()
    } else {
        a.iter().map(|&u| g.adjacency().masked_count(u, &mask)).sum()
    };
    let ab = ratio(a.len() as u64 * b.len() as u64, 1);
    let d = g.ordered_edges();
    let density = ratio(d, (n as u64) * (n as u64));
    let density_baseline = &density * &ab;
    let literal_baseline = ratio(g.p.get(), 1) * &ab;
    let c = ratio(count, 1);
    Ok(BipartiteCount {
        a_size: a.len() as u64,
        b_size: b.len() as u64,
        count,
        deviation: (&c - &density_baseline).abs(),
        density_baseline,
        literal_deviation: (&c - &literal_baseline).abs(),
        literal_baseline,
    })
}

fn has_duplicates(v: &[usize]) -> bool {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.windows(2).any(|w| w[0] == w[1])
}

/// `size` distinct vertices of `0..n`, sorted, reproducible from `seed`.
pub fn random_subset(n: usize, size: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = sample(&mut rng, n, size.min(n)).into_vec();
    v.sort_unstable();
    v
}
