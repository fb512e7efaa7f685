use std::io::Write;

use serde::{Deserialize, Serialize};

use super::mass::neighborhood_mass;
use super::model::rado_adjacent;
use crate::error::{Error, Result};

/// Default truncation for distribution evolution.
pub const DEFAULT_TRUNCATION: u64 = 1024;

/// Leak above which a larger truncation is suggested.
pub const LEAK_WARNING: f64 = 0.1;

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TvPoint {
    pub step: usize,
    /// `½ Σ_{j<L} |μ_ℓ(j) − Π_L(j)|` for the truncated evolution `μ_ℓ`.
    pub tv: f64,
    /// Bounds on the untruncated `‖K^ℓ_start − Π‖_TV`.
    pub tv_lower: f64,
    pub tv_upper: f64,
    /// Mass that has left `{0..L−1}`.
    pub leak: f64,
    pub certified_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingCurve {
    pub start: u64,
    pub l: u64,
    pub points: Vec<TvPoint>,
    /// Upper bound on the stationary mass beyond `L`.
    pub pi_tail_bound: f64,
    pub warnings: Vec<String>,
}

impl MixingCurve {
    /// Each TV value is at most the previous one, up to the error bars.
    pub fn nonincreasing_within_bars(&self) -> bool {
        self.points.windows(2).all(|w| w[1].tv_lower <= w[0].tv_upper)
    }

    /// CSV with columns `step,tv_lower,tv_upper,leak`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "step,tv_lower,tv_upper,leak")?;
        for p in &self.points {
            writeln!(out, "{},{:.15e},{:.15e},{:.15e}", p.step, p.tv_lower, p.tv_upper, p.leak)?;
        }
        Ok(())
    }
}

/// `Σ_{j >= L, j ~ i} Q(j)` for `i < L`, as a float.
fn tail_beyond(i: u64, l: u64) -> f64 {
    let m = neighborhood_mass(i);
    if i >= 64 || (1u64 << i) >= l {
        return m.tail_f64();
    }
    let b = 2u64 << i;
    let q = l / b;
    let lo = (q * b + (1u64 << i)).max(l);
    let hi = (q + 1) * b;
    let pow = |e: u64| 2f64.powi(-(e.min(1100) as i32));
    let partial = if lo < hi { pow(lo) - pow(hi) } else { 0.0 };
    partial + pow((q + 1) * b) * m.tail_f64()
}

/// Evolve the point mass at `start` for `steps` steps on `{0..L−1}`,
/// dropping (and recording) mass that leaves the truncation.
pub fn mixing_estimate(start: u64, steps: usize, l: u64) -> Result<MixingCurve> {
    if start >= l {
        return Err(Error::Precondition(format!(
            "start {start} must lie below the truncation L = {l}"
        )));
    }
    if l > 1 << 16 {
        return Err(Error::SizeCap {
            requested: l as u128,
            cap: 1 << 16,
        });
    }
    let n = l as usize;
    // Row i: (j, K(i, j)) for neighbors j < L, with K(i,j) = 2^{m_i − j}/r_i.
    let mut rows: Vec<Vec<(u32, f64)>> = Vec::with_capacity(n);
    let mut escape = Vec::with_capacity(n);
    let mut pi = Vec::with_capacity(n);
    for i in 0..l {
        let mass = neighborhood_mass(i);
        let (m, r) = mass.scaled();
        let row: Vec<(u32, f64)> = (0..l)
            .filter(|&j| rado_adjacent(i, j))
            .map(|j| (j as u32, 2f64.powi(m as i32 - j as i32) / r))
            .collect();
        rows.push(row);
        escape.push(tail_beyond(i, l) * 2f64.powi(m as i32 + 1) / r);
        // Π(i) = Q(i) Q(N(i)) = 2^{-(i+1)} 2^{-(m+1)} r.
        pi.push(2f64.powi(-((i + m + 2).min(1100) as i32)) * r);
    }
    let z: f64 = pi.iter().sum();
    let pi: Vec<f64> = pi.iter().map(|v| v / z).collect();
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0) as f64;
    // Per-step rounding of nonnegative sums, kernel weights and escapes.
    let step_err = (max_row + 70.0) * UNIT_ROUNDOFF * 1.01 + l as f64 * f64::from_bits(1);
    let base_err = (l as f64 + 70.0) * UNIT_ROUNDOFF * 1.01;
    let pi_tail = (6.0 * 2f64.powi(-(l.min(1074) as i32))).max(f64::from_bits(1));

    let mut mu = vec![0.0f64; n];
    mu[start as usize] = 1.0;
    let mut leak = 0.0f64;
    let mut points = Vec::with_capacity(steps + 1);
    let mut warnings = Vec::new();
    for step in 0..=steps {
        if step > 0 {
            let mut next = vec![0.0f64; n];
            for (i, &w) in mu.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                for &(j, k) in &rows[i] {
                    next[j as usize] += w * k;
                }
                leak += w * escape[i];
            }
            mu = next;
        }
        let tv = 0.5 * mu.iter().zip(&pi).map(|(a, b)| (a - b).abs()).sum::<f64>();
        let err = base_err + step as f64 * step_err;
        let half = leak / 2.0 + pi_tail + err;
        points.push(TvPoint {
            step,
            tv,
            tv_lower: (tv - half).max(0.0),
            tv_upper: (tv + half).min(1.0),
            leak,
            certified_error: err,
        });
        if leak > LEAK_WARNING && warnings.is_empty() {
            warnings.push(format!(
                "leaked mass {leak:.3} exceeds {LEAK_WARNING} at step {step}; increase L above {l}"
            ));
        }
    }
    Ok(MixingCurve {
        start,
        l,
        points,
        pi_tail_bound: pi_tail,
        warnings,
    })
}
