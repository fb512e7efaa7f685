use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::PrimeModulus;
use crate::group::{check_cap, digits, pow_u128, undigits, FiniteGroup};

/// An upper-unitriangular `n × n` matrix over F_p.
///
/// Only the strictly upper entries are stored, row-major. Accessors use the
/// 1-based `(row, col)` convention of matrix notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UtMatrix {
    n: usize,
    entries: Vec<u32>,
}

#[inline]
fn offset(n: usize, i: usize, j: usize) -> usize {
    // 0-based i < j
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl UtMatrix {
    pub fn identity(n: usize) -> Self {
        UtMatrix {
            n,
            entries: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// Number of free entries, `n(n−1)/2`.
    pub fn free_entries(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    pub fn from_entries(n: usize, entries: Vec<u32>, p: PrimeModulus) -> Result<Self> {
        if entries.len() != Self::free_entries(n) {
            return Err(Error::Dimension {
                expected: Self::free_entries(n),
                found: entries.len(),
            });
        }
        Ok(UtMatrix {
            n,
            entries: entries.into_iter().map(|e| e % p.get()).collect(),
        })
    }

    /// Build from `(row, col, value)` triples, 1-based with `row < col`.
    pub fn from_triples(n: usize, triples: &[(usize, usize, u32)], p: PrimeModulus) -> Result<Self> {
        let mut m = UtMatrix::identity(n);
        for &(i, j, v) in triples {
            if !(1 <= i && i < j && j <= n) {
                return Err(Error::Domain(format!(
                    "({i},{j}) is not a strictly upper position of a {n}x{n} matrix"
                )));
            }
            m.set(i, j, v % p.get());
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Entry at 1-based `(i, j)`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.entries[offset(self.n, i - 1, j - 1)],
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => 0,
        }
    }

    /// Set the strictly upper entry at 1-based `(i, j)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        assert!(i < j, "only strictly upper entries are free");
        let o = offset(self.n, i - 1, j - 1);
        self.entries[o] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Strictly upper positions holding a nonzero entry, 1-based.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if self.get(i, j) != 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The matrix with ones on the superdiagonal and zeros elsewhere above it.
    pub fn superdiagonal_ones(n: usize) -> Self {
        let mut m = UtMatrix::identity(n);
        for i in 1..n {
            m.set(i, i + 1, 1);
        }
        m
    }
}

impl fmt::Display for UtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            let row: Vec<String> = (1..=self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn check_pair(a: &UtMatrix, b: &UtMatrix) -> Result<()> {
    if a.n != b.n {
        return Err(Error::Dimension {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(())
}

pub(crate) fn mul_unchecked(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> UtMatrix {
    let n = a.n;
    let mut c = UtMatrix::identity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            let mut s = a.get(i, j) as u64 + b.get(i, j) as u64;
            for k in i + 1..j {
                s += a.get(i, k) as u64 * b.get(k, j) as u64;
            }
            c.set(i, j, p.reduce(s));
        }
    }
    c
}

pub fn ut_mul(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> Result<UtMatrix> {
    check_pair(a, b)?;
    Ok(mul_unchecked(a, b, p))
}

pub fn ut_inv(a: &UtMatrix, p: PrimeModulus) -> UtMatrix {
    let n = a.n;
    let mut b = UtMatrix::identity(n);
    // (AB)_{ij} = b_ij + a_ij + sum_{i<k<j} a_ik b_kj = 0, solved bottom-up.
    for i in (1..=n).rev() {
        for j in i + 1..=n {
            let mut s = a.get(i, j) as u64;
            for k in i + 1..j {
                s += a.get(i, k) as u64 * b.get(k, j) as u64;
            }
            b.set(i, j, p.neg(p.reduce(s)));
        }
    }
    b
}

pub(crate) fn commutes_unchecked(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> bool {
    let n = a.n;
    for i in 1..=n {
        for j in i + 2..=n {
            let mut ab = 0u64;
            let mut ba = 0u64;
            for k in i + 1..j {
                ab += a.get(i, k) as u64 * b.get(k, j) as u64;
                ba += b.get(i, k) as u64 * a.get(k, j) as u64;
            }
            if p.reduce(ab) != p.reduce(ba) {
                return false;
            }
        }
    }
    true
}

pub fn ut_commutes(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> Result<bool> {
    check_pair(a, b)?;
    Ok(commutes_unchecked(a, b, p))
}

/// UT(n, p) as an indexed finite group; elements are numbered by reading the
/// strictly upper entries (row-major) as base-p digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitriangularGroup {
    n: usize,
    p: PrimeModulus,
}

impl UnitriangularGroup {
    pub fn new(n: usize, p: PrimeModulus) -> Self {
        UnitriangularGroup { n, p }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    /// `p^{n(n−1)/2}`, saturating.
    pub fn order_u128(&self) -> u128 {
        pow_u128(self.p.get(), UtMatrix::free_entries(self.n) as u32)
    }

    pub fn enumerate(&self, cap: u64) -> Result<Vec<UtMatrix>> {
        check_cap(self.order_u128(), cap)?;
        Ok(self.elements())
    }
}

impl FiniteGroup for UnitriangularGroup {
    type Elem = UtMatrix;

    fn order(&self) -> u64 {
        self.order_u128().min(u64::MAX as u128) as u64
    }

    fn element(&self, index: u64) -> UtMatrix {
        UtMatrix {
            n: self.n,
            entries: digits(index, self.p.get(), UtMatrix::free_entries(self.n)),
        }
    }

    fn index_of(&self, e: &UtMatrix) -> u64 {
        undigits(e.entries.iter().copied(), self.p.get())
    }

    fn identity(&self) -> UtMatrix {
        UtMatrix::identity(self.n)
    }

    fn mul(&self, a: &UtMatrix, b: &UtMatrix) -> UtMatrix {
        mul_unchecked(a, b, self.p)
    }

    fn inv(&self, a: &UtMatrix) -> UtMatrix {
        ut_inv(a, self.p)
    }

    fn generators(&self) -> Vec<UtMatrix> {
        (1..self.n)
            .map(|i| {
                let mut m = UtMatrix::identity(self.n);
                m.set(i, i + 1, 1);
                m
            })
            .collect()
    }

    fn commutes(&self, a: &UtMatrix, b: &UtMatrix) -> bool {
        commutes_unchecked(a, b, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn accessors_are_one_based() {
        let m = UtMatrix::from_triples(4, &[(1, 2, 5), (2, 4, 1)], p(7)).unwrap();
        assert_eq!(m.get(1, 2), 5);
        assert_eq!(m.get(2, 4), 1);
        assert_eq!(m.get(3, 3), 1);
        assert_eq!(m.get(4, 1), 0);
        assert_eq!(m.nonzero_positions(), vec![(1, 2), (2, 4)]);
        assert!(UtMatrix::from_triples(4, &[(2, 2, 1)], p(7)).is_err());
    }

    #[test]
    fn identity_and_inverse() {
        let g = UnitriangularGroup::new(4, p(3));
        let id = g.identity();
        for i in (0..g.order()).step_by(13) {
            let a = g.element(i);
            assert_eq!(g.mul(&a, &id), a);
            assert_eq!(g.mul(&id, &a), a);
            assert_eq!(g.mul(&a, &g.inv(&a)), id);
            assert_eq!(g.mul(&g.inv(&a), &a), id);
        }
    }

    #[test]
    fn commutes_matches_products() {
        let g = UnitriangularGroup::new(4, p(2));
        let elems = g.elements();
        for a in &elems {
            for b in &elems {
                assert_eq!(g.commutes(a, b), g.mul(a, b) == g.mul(b, a));
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(UnitriangularGroup::new(4, p(3)).enumerate(DEFAULT_CAP).unwrap().len(), 729);
        assert_eq!(UnitriangularGroup::new(1, p(3)).order(), 1);
        assert!(UnitriangularGroup::new(6, p(3)).enumerate(1000).is_err());
    }

    #[test]
    fn mismatched_dimensions() {
        let a = UtMatrix::identity(3);
        let b = UtMatrix::identity(4);
        assert!(ut_mul(&a, &b, p(2)).is_err());
        assert!(ut_commutes(&a, &b, p(2)).is_err());
    }
}
