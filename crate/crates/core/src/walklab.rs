//! Small exact Markov-chain toolkit: kernels with a common denominator,
//! exact stationarity checks, spectral gaps and total-variation curves.
//! The nearest-neighbor walk on H_3(p) is the main client.

use nalgebra::{DMatrix, DVector};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::PrimeModulus;
use crate::group::FiniteGroup;
use crate::heisenberg::{HeisElem, Heisenberg};

/// Largest dense kernel handled.
pub const MAX_STATES: usize = 2048;

/// Allowed disagreement between the two eigen-methods.
pub const EIGEN_AGREEMENT: f64 = 1e-8;

/// A row-stochastic kernel whose entries are `numerator / den` for one
/// common denominator. Rows are sparse and sorted by column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Kernel {
    pub den: u64,
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl Kernel {
    pub fn from_rationals(rows: Vec<Vec<(usize, Ratio<u64>)>>) -> Result<Self> {
        let den = rows
            .iter()
            .flatten()
            .fold(1u64, |acc, (_, r)| acc.lcm(r.denom()));
        let n = rows.len();
        let mut out = Vec::with_capacity(n);
        for row in rows {
            let mut merged: Vec<(usize, u64)> = Vec::new();
            let mut row = row;
            row.sort_by_key(|&(j, _)| j);
            for (j, r) in row {
                if j >= n {
                    return Err(Error::Domain(format!("column {j} outside {n} states")));
                }
                let v = r.numer() * (den / r.denom());
                match merged.last_mut() {
                    Some((lj, lv)) if *lj == j => *lv += v,
                    _ => merged.push((j, v)),
                }
            }
            out.push(merged);
        }
        let k = Kernel { den, rows: out };
        if !k.rows_sum_to_one() {
            return Err(Error::Domain("kernel rows must sum to 1".into()));
        }
        Ok(k)
    }

    pub fn identity(n: usize) -> Self {
        Kernel {
            den: 1,
            rows: (0..n).map(|i| vec![(i, 1)]).collect(),
        }
    }

    pub fn states(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Ratio<u64> {
        let v = self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|k| self.rows[i][k].1)
            .unwrap_or(0);
        Ratio::new(v, self.den)
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows.iter().all(|r| r.iter().map(|&(_, v)| v).sum::<u64>() == self.den)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.states()).all(|i| self.rows[i].iter().all(|&(j, v)| self.entry(j, i) == Ratio::new(v, self.den)))
    }

    /// `π K = π` exactly for the uniform distribution (column sums are 1).
    pub fn uniform_is_stationary(&self) -> bool {
        let mut cols = vec![0u64; self.states()];
        for row in &self.rows {
            for &(j, v) in row {
                cols[j] += v;
            }
        }
        cols.iter().all(|&c| c == self.den)
    }

    /// `π K = π` exactly for a given rational distribution.
    pub fn is_stationary(&self, pi: &[BigRational]) -> bool {
        if pi.len() != self.states() {
            return false;
        }
        let mut out = vec![BigRational::zero(); self.states()];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                out[j] += &pi[i] * BigRational::new(BigInt::from(v), BigInt::from(self.den));
            }
        }
        out == pi
    }

    fn dense(&self) -> DMatrix<f64> {
        let n = self.states();
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] = v as f64 / self.den as f64;
            }
        }
        m
    }

    fn apply(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            self.states(),
            self.rows
                .iter()
                .map(|row| row.iter().map(|&(j, w)| v[j] * w as f64).sum::<f64>() / self.den as f64),
        )
    }
}

/// Nearest-neighbor walk on H_3(p): `K(x, y) = 1/5` when `y x^{-1}` is one
/// of `[±1,0,0], [0,±1,0]` or the identity. States follow the canonical
/// element order of H_3(p).
pub fn h3_kernel(p: PrimeModulus) -> Result<Kernel> {
    let h = Heisenberg::new(1, p);
    let n = h.order() as usize;
    if n > MAX_STATES {
        return Err(Error::SizeCap {
            requested: n as u128,
            cap: MAX_STATES as u64,
        });
    }
    let steps: Vec<HeisElem> = [(1, 0), (-1, 0), (0, 1), (0, -1), (0, 0)]
        .iter()
        .map(|&(a, b)| HeisElem::new(&[a], &[b], 0, p).expect("valid"))
        .collect();
    let rows = (0..n)
        .map(|i| {
            let x = h.element(i as u64);
            steps
                .iter()
                .map(|s| (h.index_of(&h.mul(s, &x)) as usize, Ratio::new(1, 5)))
                .collect()
        })
        .collect();
    Kernel::from_rationals(rows)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGap {
    /// `1 − |λ₂|`.
    pub gap: f64,
    pub lambda2_modulus: f64,
    /// From the dense symmetric eigensolve.
    pub dense_lambda2: f64,
    /// From power iteration on `K²` with constants projected out.
    pub power_lambda2: f64,
    pub power_iterations: usize,
    pub certified_error: f64,
    /// Eigenvalue 1 is repeated, so there is no gap.
    pub degenerate: bool,
}

/// Spectral gap of a symmetric kernel, from a dense eigensolve checked by
/// power iteration. Disagreement beyond [`EIGEN_AGREEMENT`] is an error.
pub fn spectral_gap(k: &Kernel) -> Result<SpectralGap> {
    let n = k.states();
    if n == 0 || n > MAX_STATES {
        return Err(Error::SizeCap {
            requested: n as u128,
            cap: MAX_STATES as u64,
        });
    }
    if !k.is_symmetric() {
        return Err(Error::Precondition("dense eigensolve needs a symmetric kernel".into()));
    }
    let eig = k.dense().symmetric_eigen();
    let mut moduli: Vec<f64> = eig.eigenvalues.iter().map(|v| v.abs()).collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    let dense = moduli.get(1).copied().unwrap_or(0.0);
    let degenerate = (1.0 - dense).abs() < 1e-12;

    let (power, iterations) = if n == 1 {
        (0.0, 0)
    } else {
        power_lambda2(k)
    };
    let disagreement = (dense - power).abs();
    if disagreement > EIGEN_AGREEMENT {
        return Err(Error::Certification(format!(
            "eigensolvers disagree on |λ₂|: dense {dense}, power iteration {power}"
        )));
    }
    let l2 = if degenerate { 1.0 } else { dense };
    Ok(SpectralGap {
        gap: 1.0 - l2,
        lambda2_modulus: l2,
        dense_lambda2: dense,
        power_lambda2: power,
        power_iterations: iterations,
        certified_error: EIGEN_AGREEMENT.max(disagreement),
        degenerate,
    })
}

/// `sqrt` of the top eigenvalue of `K²` on the complement of the constants.
fn power_lambda2(k: &Kernel) -> (f64, usize) {
    let n = k.states();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let deflate = |v: &mut DVector<f64>| {
        let mean = v.mean();
        v.add_scalar_mut(-mean);
    };
    let mut v = DVector::from_iterator(n, (0..n).map(|_| rng.random::<f64>() - 0.5));
    deflate(&mut v);
    if v.norm() == 0.0 {
        return (0.0, 0);
    }
    v /= v.norm();
    let mut est = f64::NAN;
    let mut stable = 0;
    for it in 1..=200_000 {
        let mut w = k.apply(&k.apply(&v));
        deflate(&mut w);
        let rq = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            return (0.0, it);
        }
        v = w / norm;
        let next = rq.max(0.0).sqrt();
        if (next - est).abs() < 1e-15 {
            stable += 1;
            if stable >= 20 {
                return (next, it);
            }
        } else {
            stable = 0;
        }
        est = next;
    }
    (est, 200_000)
}

/// Exact total-variation curve from a point mass at `start` to the uniform
/// distribution, for `ℓ = 0..=l_max`. Distributions are kept as integer
/// counts over `den^ℓ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TvCurve {
    pub start: usize,
    pub tv: Vec<f64>,
    /// First `ℓ` with TV ≤ 1/4, compared exactly.
    pub steps_to_quarter: Option<usize>,
}

pub fn tv_curve(k: &Kernel, start: usize, l_max: usize) -> Result<TvCurve> {
    let n = k.states();
    if start >= n {
        return Err(Error::Domain(format!("start {start} outside {n} states")));
    }
    if !k.uniform_is_stationary() {
        return Err(Error::Precondition("tv_curve measures distance to the uniform distribution".into()));
    }
    let mut counts = vec![BigUint::zero(); n];
    counts[start] = BigUint::from(1u32);
    let mut scale = BigUint::from(1u32);
    let mut tv = Vec::with_capacity(l_max + 1);
    let mut quarter = None;
    let nn = BigUint::from(n);
    for step in 0..=l_max {
        if step > 0 {
            let mut next = vec![BigUint::zero(); n];
            for (i, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(j, w) in &k.rows[i] {
                    next[j] += c * w;
                }
            }
            counts = next;
            scale *= k.den;
        }
        // TV = Σ |c_j·n − scale| / (2·n·scale).
        let mut num = BigUint::zero();
        for c in &counts {
            let a = c * &nn;
            num += if a >= scale { &a - &scale } else { &scale - &a };
        }
        let den = BigUint::from(2u32) * &nn * &scale;
        if quarter.is_none() && &num * 4u32 <= den {
            quarter = Some(step);
        }
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        tv.push(r.to_f64().unwrap_or(f64::NAN));
    }
    Ok(TvCurve {
        start,
        tv,
        steps_to_quarter: quarter,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixReport {
    pub p: u32,
    pub states: usize,
    /// The uniform distribution, exactly stationary.
    #[serde(with = "crate::json::rational")]
    pub stationary: BigRational,
    pub stationary_exact: bool,
    pub gap: SpectralGap,
    pub tv: TvCurve,
}

/// Kernel, gap and TV curve of the H_3(p) walk from the identity.
pub fn h3_mix_report(p: PrimeModulus, l_max: usize) -> Result<MixReport> {
    let k = h3_kernel(p)?;
    let n = k.states();
    Ok(MixReport {
        p: p.get(),
        states: n,
        stationary: BigRational::new(BigInt::from(1), BigInt::from(n)),
        stationary_exact: k.uniform_is_stationary(),
        gap: spectral_gap(&k)?,
        tv: tv_curve(&k, 0, l_max)?,
    })
}
