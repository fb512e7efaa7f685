//! Arithmetic in the prime field F_p and on vectors over it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime modulus in the supported range `2 <= p < 2^16`.
///
/// Residues are kept as `u32` and always fully reduced, so every product
/// of two residues fits comfortably in a `u64`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u32")]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub const MAX_EXCLUSIVE: u64 = 1 << 16;

    pub fn new(p: u64) -> Result<Self> {
        if !(2..Self::MAX_EXCLUSIVE).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u32 {
        (v % self.0 as u64) as u32
    }

    /// Reduce a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> u32 {
        v.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

impl TryFrom<u64> for PrimeModulus {
    type Error = Error;
    fn try_from(p: u64) -> Result<Self> {
        PrimeModulus::new(p)
    }
}

impl From<PrimeModulus> for u32 {
    fn from(p: PrimeModulus) -> u32 {
        p.0
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic trial-division primality test; adequate for the u16 range
/// used by the groups and for the Legendre prime pool.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// A vector over F_p. The modulus is not stored; operations take it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FpVec(Vec<u32>);

impl FpVec {
    pub fn zeros(n: usize) -> Self {
        FpVec(vec![0; n])
    }

    /// Build a vector, reducing every entry mod p.
    pub fn new(entries: impl IntoIterator<Item = u64>, p: PrimeModulus) -> Self {
        FpVec(entries.into_iter().map(|v| p.reduce(v)).collect())
    }

    pub fn from_signed(entries: impl IntoIterator<Item = i64>, p: PrimeModulus) -> Self {
        FpVec(entries.into_iter().map(|v| p.reduce_signed(v)).collect())
    }

    /// Wrap entries that are already reduced. Checked in debug builds.
    pub(crate) fn from_reduced(entries: Vec<u32>, p: PrimeModulus) -> Self {
        debug_assert!(entries.iter().all(|&e| e < p.get()));
        FpVec(entries)
    }

    /// The standard basis vector e_i of length n.
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        FpVec(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, _)| i)
            .collect()
    }

    fn check_len(&self, other: &FpVec) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::Dimension {
                expected: self.len(),
                found: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FpVec, p: PrimeModulus) -> Result<FpVec> {
        self.check_len(other)?;
        Ok(FpVec(
            self.0.iter().zip(&other.0).map(|(&a, &b)| p.add(a, b)).collect(),
        ))
    }

    pub fn sub(&self, other: &FpVec, p: PrimeModulus) -> Result<FpVec> {
        self.check_len(other)?;
        Ok(FpVec(
            self.0.iter().zip(&other.0).map(|(&a, &b)| p.sub(a, b)).collect(),
        ))
    }

    pub fn neg(&self, p: PrimeModulus) -> FpVec {
        FpVec(self.0.iter().map(|&a| p.neg(a)).collect())
    }

    pub fn scale(&self, c: u32, p: PrimeModulus) -> FpVec {
        let c = c % p.get();
        FpVec(self.0.iter().map(|&a| p.mul(a, c)).collect())
    }

    pub fn dot(&self, other: &FpVec, p: PrimeModulus) -> Result<u32> {
        self.check_len(other)?;
        Ok(dot_unchecked(&self.0, &other.0, p))
    }
}

#[inline]
pub(crate) fn dot_unchecked(a: &[u32], b: &[u32], p: PrimeModulus) -> u32 {
    // p < 2^16 so each product is < 2^32; accumulating 2^32 of them still fits.
    let s: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    p.reduce(s)
}

pub fn vec_add(a: &FpVec, b: &FpVec, p: PrimeModulus) -> Result<FpVec> {
    a.add(b, p)
}

pub fn vec_scale(c: u32, v: &FpVec, p: PrimeModulus) -> FpVec {
    v.scale(c, p)
}

pub fn vec_dot(a: &FpVec, b: &FpVec, p: PrimeModulus) -> Result<u32> {
    a.dot(b, p)
}

/// The alternating form `x·b − y·a` on pairs `(x, y)`, `(a, b)` in F_p^n × F_p^n.
///
/// Two Heisenberg elements `[x,y,*]` and `[a,b,*]` commute exactly when this
/// vanishes.
pub fn symplectic(x: &FpVec, y: &FpVec, a: &FpVec, b: &FpVec, p: PrimeModulus) -> Result<u32> {
    let n = x.len();
    for v in [y, a, b] {
        if v.len() != n {
            return Err(Error::Dimension {
                expected: n,
                found: v.len(),
            });
        }
    }
    Ok(symplectic_unchecked(x.entries(), y.entries(), a.entries(), b.entries(), p))
}

#[inline]
pub(crate) fn symplectic_unchecked(x: &[u32], y: &[u32], a: &[u32], b: &[u32], p: PrimeModulus) -> u32 {
    p.sub(dot_unchecked(x, b, p), dot_unchecked(y, a, p))
}
