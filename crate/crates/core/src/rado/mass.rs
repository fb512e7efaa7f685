use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::model::rado_adjacent;
use crate::error::{Error, Result};

/// Largest `i` whose tail `1/(2^{2^i}+1)` is materialized as an exact rational.
pub const EXACT_TAIL_MAX: u64 = 16;

/// `2^{-e}`.
pub fn dyadic(e: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e)
}

/// `Q(j) = 2^{-(j+1)}`.
pub fn q_measure(j: u64) -> BigRational {
    dyadic(j + 1)
}

/// `Q(N(i))` split as an exact dyadic head `Σ_{j<i, j~i} Q(j)` plus the tail
/// `Σ_{j>i, j~i} Q(j) = 1/(2^{2^i} + 1)`.
///
/// The tail has about `2^i` bits, so it is materialized only for
/// `i <= EXACT_TAIL_MAX`; beyond that it is carried in closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NeighborhoodMass {
    pub i: u64,
    #[serde(with = "crate::json::rational")]
    pub head: BigRational,
}

pub fn neighborhood_mass(i: u64) -> NeighborhoodMass {
    let mut head = BigRational::zero();
    for j in 0..64.min(i) {
        if (i >> j) & 1 == 1 {
            head += q_measure(j);
        }
    }
    NeighborhoodMass { i, head }
}

/// `1/(2^{2^i}+1)` when `i <= EXACT_TAIL_MAX`.
pub fn tail_exact(i: u64) -> Option<BigRational> {
    (i <= EXACT_TAIL_MAX).then(|| BigRational::new(BigInt::one(), (BigInt::one() << (1u64 << i)) + 1))
}

impl NeighborhoodMass {
    pub fn tail_exact(&self) -> Option<BigRational> {
        tail_exact(self.i)
    }

    pub fn exact(&self) -> Option<BigRational> {
        self.tail_exact().map(|t| &self.head + t)
    }

    pub fn tail_f64(&self) -> f64 {
        if self.i >= 11 {
            0.0
        } else {
            1.0 / (2f64.powi(1 << self.i) + 1.0)
        }
    }

    /// Least neighbor of `i`.
    pub fn min_neighbor(&self) -> u64 {
        if self.i == 0 {
            1
        } else {
            self.i.trailing_zeros() as u64
        }
    }

    /// `(m, r)` with `Q(N(i)) = 2^{-(m+1)} r`, `m` the least neighbor and
    /// `r ∈ [1, 2]`, so kernel entries `2^{m-j}/r` avoid underflow.
    pub fn scaled(&self) -> (u64, f64) {
        let m = self.min_neighbor();
        let mut r = 0.0;
        for j in m..64.min(self.i) {
            if (self.i >> j) & 1 == 1 {
                r += 2f64.powi(-((j - m) as i32));
            }
        }
        // Tail rescaled by 2^{m+1}; only material for small i.
        if self.i < 11 {
            r += self.tail_f64() * 2f64.powi(m as i32 + 1);
        }
        (m, r)
    }

    pub fn to_f64(&self) -> f64 {
        let (m, r) = self.scaled();
        r * 2f64.powi(-(m as i32 + 1))
    }
}

/// A formal monomial `c · Π_k M_k^{e_k}` in the neighborhood masses
/// `M_k = Q(N(k))`, used to check identities where the masses are too large
/// to materialize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassExpr {
    pub coeff: BigRational,
    pub powers: BTreeMap<u64, i32>,
}

impl MassExpr {
    pub fn constant(c: BigRational) -> Self {
        MassExpr {
            coeff: c,
            powers: BTreeMap::new(),
        }
    }

    pub fn mass(i: u64) -> Self {
        MassExpr {
            coeff: BigRational::one(),
            powers: BTreeMap::from([(i, 1)]),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    fn normalized(mut self) -> Self {
        if self.coeff.is_zero() {
            self.powers.clear();
        }
        self.powers.retain(|_, e| *e != 0);
        self
    }

    pub fn mul(&self, other: &MassExpr) -> MassExpr {
        let mut powers = self.powers.clone();
        for (&k, &e) in &other.powers {
            *powers.entry(k).or_insert(0) += e;
        }
        MassExpr {
            coeff: &self.coeff * &other.coeff,
            powers,
        }
        .normalized()
    }

    pub fn inv(&self) -> Result<MassExpr> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        Ok(MassExpr {
            coeff: self.coeff.recip(),
            powers: self.powers.iter().map(|(&k, &e)| (k, -e)).collect(),
        })
    }

    /// Exact value when every mass involved can be materialized.
    pub fn evaluate(&self) -> Option<BigRational> {
        let mut v = self.coeff.clone();
        for (&k, &e) in &self.powers {
            let m = neighborhood_mass(k).exact()?;
            let m = if e < 0 { m.recip() } else { m };
            for _ in 0..e.unsigned_abs() {
                v *= &m;
            }
        }
        Some(v)
    }
}

/// Unnormalized stationary weight `Π(i) = Q(i) Q(N(i))`.
pub fn pi_expr(i: u64) -> MassExpr {
    MassExpr::constant(q_measure(i)).mul(&MassExpr::mass(i))
}

/// `K(i, j) = Q(j)/Q(N(i))` for `j ~ i`, else 0.
pub fn kernel_expr(i: u64, j: u64) -> MassExpr {
    if rado_adjacent(i, j) {
        MassExpr::constant(q_measure(j))
            .mul(&MassExpr::mass(i).inv().expect("nonzero"))
    } else {
        MassExpr::constant(BigRational::zero())
    }
}

/// Evidence that `Π(i)K(i,j) = Π(j)K(j,i)` below a truncation bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetailedBalance {
    pub l: u64,
    pub adjacent_pairs: u64,
    pub nonadjacent_pairs: u64,
    /// Equality as formal monomials for every pair `i < j < L`.
    pub formal_ok: bool,
    /// Both sides reduce to `Q(i)Q(j)` (adjacent) or vanish (nonadjacent).
    pub closed_form_ok: bool,
    /// Pairs additionally compared as fully materialized rationals.
    pub numeric_pairs: u64,
    pub numeric_ok: bool,
}

impl DetailedBalance {
    pub fn holds(&self) -> bool {
        self.formal_ok && self.closed_form_ok && self.numeric_ok
    }
}

/// Unnormalized stationary vector below `L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StationaryVector {
    pub l: u64,
    /// `Π(i) = Q(i)·masses[i]`.
    pub masses: Vec<NeighborhoodMass>,
    pub certificate: DetailedBalance,
}

impl StationaryVector {
    pub fn pi_exact(&self, i: u64) -> Option<BigRational> {
        self.masses.get(i as usize)?.exact().map(|m| m * q_measure(i))
    }

    pub fn pi_f64(&self, i: u64) -> f64 {
        self.masses[i as usize].to_f64() * 2f64.powi(-(i as i32 + 1))
    }
}

pub fn detailed_balance(l: u64) -> DetailedBalance {
    let mut adjacent = 0;
    let mut nonadjacent = 0;
    let mut formal_ok = true;
    let mut closed_ok = true;
    let mut numeric_pairs = 0;
    let mut numeric_ok = true;
    for i in 0..l {
        let pi_i = pi_expr(i);
        for j in i + 1..l {
            let lhs = pi_i.mul(&kernel_expr(i, j));
            let rhs = pi_expr(j).mul(&kernel_expr(j, i));
            formal_ok &= lhs == rhs;
            if rado_adjacent(i, j) {
                adjacent += 1;
                closed_ok &= lhs == MassExpr::constant(q_measure(i) * q_measure(j));
            } else {
                nonadjacent += 1;
                closed_ok &= lhs.is_zero() && rhs.is_zero();
            }
            if i.max(j) <= EXACT_TAIL_MAX {
                numeric_pairs += 1;
                numeric_ok &= lhs.evaluate() == rhs.evaluate() && lhs.evaluate().is_some();
            }
        }
    }
    DetailedBalance {
        l,
        adjacent_pairs: adjacent,
        nonadjacent_pairs: nonadjacent,
        formal_ok,
        closed_form_ok: closed_ok,
        numeric_pairs,
        numeric_ok,
    }
}

pub fn stationary_vector(l: u64) -> StationaryVector {
    StationaryVector {
        l,
        masses: (0..l).map(neighborhood_mass).collect(),
        certificate: detailed_balance(l),
    }
}

/// Exact check of `Σ_j K(i, j) = 1`: the enumerated sum over `j < L` plus
/// the closed-form tail over `j >= L` equals `Q(N(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowSum {
    pub i: u64,
    pub l: u64,
    #[serde(with = "crate::json::rational")]
    pub restricted: BigRational,
    pub holds: bool,
}

pub fn kernel_row_sum(i: u64, l: u64) -> Result<RowSum> {
    if i >= l {
        return Err(Error::Precondition(format!("row {i} is not below the truncation {l}")));
    }
    let mass = neighborhood_mass(i);
    let restricted: BigRational = (0..l).filter(|&j| rado_adjacent(i, j)).map(q_measure).sum();
    let holds = if i >= 64 || (1u64 << i) >= l {
        // Every upper neighbor is at least 2^i >= L, so the whole tail is
        // beyond the truncation and the enumerated part must be the head.
        restricted == mass.head
    } else {
        // Blocks of length B = 2^{i+1}; bit i is set on the upper half of each.
        let t = tail_exact(i).expect("2^i < L keeps i small");
        let b = 2u64 << i;
        let q = l / b;
        let lo = (q * b + (1u64 << i)).max(l);
        let hi = (q + 1) * b;
        let mut beyond = dyadic((q + 1) * b) * &t;
        if lo < hi {
            beyond += dyadic(lo) - dyadic(hi);
        }
        &restricted + beyond == &mass.head + t
    };
    Ok(RowSum {
        i,
        l,
        restricted,
        holds,
    })
}
