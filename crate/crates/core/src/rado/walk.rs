use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::mass::{kernel_expr, neighborhood_mass};
use super::model::rado_adjacent;
use crate::error::{Error, Result};

/// Proposals allowed per step before giving up.
pub const PROPOSAL_CAP: u64 = 1_000_000;

/// Generator for trajectory `index` under a root seed: ChaCha8 seeded with
/// the root, on stream `index`.
pub fn split_rng(root: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(root);
    rng.set_stream(index);
    rng
}

/// Draw `j` with probability `2^{-(j+1)}`.
fn geometric<R: Rng>(rng: &mut R) -> u64 {
    let mut base = 0u64;
    loop {
        let w: u64 = rng.random();
        if w != 0 {
            return base + w.trailing_zeros() as u64;
        }
        base += 64;
    }
}

#[derive(Debug, Clone)]
pub struct WalkState {
    pub current: u64,
    pub rng: ChaCha8Rng,
    pub history: Option<Vec<u64>>,
}

impl WalkState {
    pub fn new(start: u64, seed: u64) -> Self {
        WalkState {
            current: start,
            rng: ChaCha8Rng::seed_from_u64(seed),
            history: None,
        }
    }

    pub fn recording(mut self) -> Self {
        self.history = Some(vec![self.current]);
        self
    }
}

/// One step of the neighbor-weighted walk by rejection: propose `j ~ Q`,
/// accept iff `j ~ current`.
pub fn walk_step(mut state: WalkState) -> Result<WalkState> {
    let next = sample_neighbor(state.current, &mut state.rng)?;
    state.current = next;
    if let Some(h) = state.history.as_mut() {
        h.push(next);
    }
    Ok(state)
}

pub fn sample_neighbor<R: Rng>(i: u64, rng: &mut R) -> Result<u64> {
    for _ in 0..PROPOSAL_CAP {
        let j = geometric(rng);
        if rado_adjacent(i, j) {
            return Ok(j);
        }
    }
    Err(Error::SamplerDiagnostics {
        state: i,
        cap: PROPOSAL_CAP,
    })
}

pub fn trajectory(start: u64, steps: usize, seed: u64) -> Result<Vec<u64>> {
    let mut s = WalkState::new(start, seed).recording();
    for _ in 0..steps {
        s = walk_step(s)?;
    }
    Ok(s.history.unwrap_or_default())
}

/// Trajectory dump: `# seed=…` and `# start=…` headers, then one vertex per line.
pub fn write_trajectory<W: Write>(mut out: W, seed: u64, path: &[u64]) -> std::io::Result<()> {
    writeln!(out, "# seed={seed}")?;
    if let Some(s) = path.first() {
        writeln!(out, "# start={s}")?;
    }
    for v in path {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

/// Pearson goodness-of-fit of single steps from `start` against the exact
/// kernel row. Cells with expected count below 5 are pooled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub start: u64,
    pub samples: u64,
    pub bins: usize,
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

impl ChiSquare {
    pub fn passes(&self, significance: f64) -> bool {
        self.p_value >= significance
    }
}

pub fn chi_square_row(start: u64, samples: u64, rng: &mut ChaCha8Rng) -> Result<ChiSquare> {
    let mass = neighborhood_mass(start);
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(sample_neighbor(start, rng)?).or_insert(0) += 1;
    }
    let n = samples as f64;
    let mut stat = 0.0;
    let mut bins = 0usize;
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    let mut covered = 0.0;
    // Neighbors whose probability is large enough to matter; the remainder
    // (including the whole upper tail) goes to the pooled cell.
    let max_j = 200u64;
    for j in 0..max_j {
        if !rado_adjacent(start, j) {
            continue;
        }
        let k = match kernel_expr(start, j).evaluate() {
            Some(v) => ratio_to_f64(&v),
            None => 2f64.powi(-(j as i32 + 1)) / mass.to_f64(),
        };
        covered += k;
        let exp = n * k;
        let obs = *counts.get(&j).unwrap_or(&0) as f64;
        if exp >= 5.0 {
            stat += (obs - exp).powi(2) / exp;
            bins += 1;
        } else {
            pooled_obs += obs;
            pooled_exp += exp;
        }
    }
    pooled_obs += counts.range(max_j..).map(|(_, &c)| c as f64).sum::<f64>();
    pooled_exp += n * (1.0 - covered).max(0.0);
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp;
        bins += 1;
    }
    let df = bins.saturating_sub(1).max(1);
    let dist = ChiSquared::new(df as f64).map_err(|e| Error::Certification(e.to_string()))?;
    Ok(ChiSquare {
        start,
        samples,
        bins,
        statistic: stat,
        degrees_of_freedom: df,
        p_value: 1.0 - dist.cdf(stat),
    })
}

fn ratio_to_f64(r: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// χ² tests from each start, one generator stream per start.
pub fn chi_square_suite(starts: &[u64], samples: u64, seed: u64) -> Result<Vec<ChiSquare>> {
    starts
        .par_iter()
        .map(|&s| chi_square_row(s, samples, &mut split_rng(seed, s)))
        .collect()
}
