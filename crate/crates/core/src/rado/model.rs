use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::is_prime;

/// Default sieve bound for the Legendre prime pool.
pub const DEFAULT_POOL_BOUND: u64 = 100_000;

/// Bit model: for `i < j`, `i ~ j` iff bit `i` of `j` is set. Loops are
/// undefined and answer `false`.
#[inline]
pub fn rado_adjacent(i: u64, j: u64) -> bool {
    let (lo, hi) = (i.min(j), i.max(j));
    lo != hi && lo < 64 && (hi >> lo) & 1 == 1
}

/// Adjacency answer carrying a flag for the undefined loop query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjacency {
    pub adjacent: bool,
    pub loop_query: bool,
}

pub fn rado_adjacency(i: u64, j: u64) -> Adjacency {
    Adjacency {
        adjacent: rado_adjacent(i, j),
        loop_query: i == j,
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Euler's criterion: `a` is a nonzero square mod the odd prime `q`.
fn is_residue(a: u64, q: u64) -> bool {
    a % q != 0 && pow_mod(a, (q - 1) / 2, q) == 1
}

fn check_legendre_vertex(q: u64) -> Result<()> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(Error::Domain(format!("{q} is not a prime congruent to 1 mod 4")));
    }
    Ok(())
}

/// Legendre model on primes `≡ 1 mod 4`: `q1 ~ q2` iff `q1` is a square mod `q2`.
/// Both directions are evaluated; reciprocity makes them agree.
pub fn legendre_adjacent(q1: u64, q2: u64) -> Result<bool> {
    check_legendre_vertex(q1)?;
    check_legendre_vertex(q2)?;
    if q1 == q2 {
        return Err(Error::Domain(format!("legendre adjacency needs distinct primes, got {q1} twice")));
    }
    let forward = is_residue(q1, q2);
    let backward = is_residue(q2, q1);
    if forward != backward {
        return Err(Error::Certification(format!(
            "reciprocity failed for ({q1}, {q2})"
        )));
    }
    Ok(forward)
}

/// Primes `≡ 1 mod 4` below a bound, by sieve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendrePool {
    pub bound: u64,
    pub primes: Vec<u64>,
}

impl LegendrePool {
    pub fn new(bound: u64) -> Self {
        let n = bound as usize;
        let mut composite = vec![false; n.max(2)];
        let mut primes = Vec::new();
        for i in 2..n {
            if composite[i] {
                continue;
            }
            if i % 4 == 1 {
                primes.push(i as u64);
            }
            let mut k = i * i;
            while k < n {
                composite[k] = true;
                k += i;
            }
        }
        LegendrePool { bound, primes }
    }

    pub fn contains(&self, q: u64) -> bool {
        self.primes.binary_search(&q).is_ok()
    }
}

impl Default for LegendrePool {
    fn default() -> Self {
        Self::new(DEFAULT_POOL_BOUND)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadoModel {
    /// Vertices are the naturals.
    Bit,
    /// Vertices are the pool primes.
    Legendre { pool: LegendrePool },
}

impl RadoModel {
    pub fn adjacent(&self, u: u64, v: u64) -> Result<bool> {
        match self {
            RadoModel::Bit => Ok(rado_adjacent(u, v)),
            RadoModel::Legendre { .. } => legendre_adjacent(u, v),
        }
    }
}

fn check_disjoint(u: &BTreeSet<u64>, v: &BTreeSet<u64>) -> Result<()> {
    if let Some(x) = u.intersection(v).next() {
        return Err(Error::Domain(format!("U and V must be disjoint; both contain {x}")));
    }
    Ok(())
}

/// The bit-model witness `Σ_{u∈U} 2^u + 2^{M+1}`, `M = max(U ∪ V)`; it
/// exceeds every listed vertex so adjacency is read off its own bits.
pub fn direct_extension(u: &BTreeSet<u64>, v: &BTreeSet<u64>) -> Result<u64> {
    check_disjoint(u, v)?;
    let Some(&m) = u.union(v).max() else {
        return Ok(0);
    };
    if m + 1 >= 64 {
        return Err(Error::Domain(format!("vertex {m} too large for the direct construction")));
    }
    Ok(u.iter().map(|&x| 1u64 << x).sum::<u64>() + (1u64 << (m + 1)))
}

fn is_witness(model: &RadoModel, z: u64, u: &BTreeSet<u64>, v: &BTreeSet<u64>) -> Result<bool> {
    if u.contains(&z) || v.contains(&z) {
        return Ok(false);
    }
    for &x in u {
        if !model.adjacent(z, x)? {
            return Ok(false);
        }
    }
    for &x in v {
        if model.adjacent(z, x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least vertex outside `U ∪ V` adjacent to all of `U` and none of `V`.
pub fn extension_witness(model: &RadoModel, u: &BTreeSet<u64>, v: &BTreeSet<u64>) -> Result<u64> {
    check_disjoint(u, v)?;
    match model {
        RadoModel::Bit => {
            // The direct construction bounds the scan.
            let bound = direct_extension(u, v)?;
            for z in 0..=bound {
                if is_witness(model, z, u, v)? {
                    return Ok(z);
                }
            }
            Err(Error::Certification("direct construction is not a witness".into()))
        }
        RadoModel::Legendre { pool } => {
            for &q in u.iter().chain(v) {
                check_legendre_vertex(q)?;
            }
            for &z in &pool.primes {
                if is_witness(model, z, u, v)? {
                    return Ok(z);
                }
            }
            Err(Error::PoolExhausted { bound: pool.bound })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn bit_adjacency_examples() {
        assert!(rado_adjacent(0, 7));
        assert!((0..100).all(|j| rado_adjacent(0, j) == (j % 2 == 1)));
        assert!(rado_adjacent(1, 6) && !rado_adjacent(1, 4));
        assert!((2..100).all(|j| rado_adjacent(1, j) == matches!(j % 4, 2 | 3)));
        let a = rado_adjacency(5, 5);
        assert!(!a.adjacent && a.loop_query);
        assert!(!rado_adjacent(70, 1 << 40));
    }

    #[test]
    fn legendre_examples() {
        assert!(!legendre_adjacent(5, 13).unwrap());
        assert!(legendre_adjacent(13, 17).unwrap());
        assert_eq!(legendre_adjacent(17, 13).unwrap(), legendre_adjacent(13, 17).unwrap());
        assert!(matches!(legendre_adjacent(5, 5), Err(Error::Domain(_))));
        assert!(matches!(legendre_adjacent(7, 13), Err(Error::Domain(_))));
        assert!(matches!(legendre_adjacent(21, 13), Err(Error::Domain(_))));
    }

    #[test]
    fn pool_contents() {
        let pool = LegendrePool::new(60);
        assert_eq!(pool.primes, vec![5, 13, 17, 29, 37, 41, 53]);
        assert_eq!(LegendrePool::default().bound, 100_000);
    }

    #[test]
    fn extension_examples() {
        let m = RadoModel::Bit;
        assert_eq!(extension_witness(&m, &set(&[0]), &set(&[1])).unwrap(), 5);
        assert_eq!(extension_witness(&m, &set(&[]), &set(&[])).unwrap(), 0);
        assert_eq!(extension_witness(&m, &set(&[0, 1]), &set(&[])).unwrap(), 3);
        assert!(extension_witness(&m, &set(&[1]), &set(&[1])).is_err());
    }

    #[test]
    fn legendre_extension_and_exhaustion() {
        let m = RadoModel::Legendre {
            pool: LegendrePool::new(1000),
        };
        let z = extension_witness(&m, &set(&[5, 13]), &set(&[17])).unwrap();
        assert!(legendre_adjacent(z, 5).unwrap() && legendre_adjacent(z, 13).unwrap());
        assert!(!legendre_adjacent(z, 17).unwrap());
        let tiny = RadoModel::Legendre {
            pool: LegendrePool::new(20),
        };
        assert!(matches!(
            extension_witness(&tiny, &set(&[5, 13, 17]), &set(&[])),
            Err(Error::PoolExhausted { bound: 20 })
        ));
    }
}
