//! The Heisenberg group H_{2n+1}(p) on triples `[x, y, z]`.
//!
//! Product law: `[x,y,z][x',y',z'] = [x+x', y+y', z+z'+x·y']`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::{dot_unchecked, symplectic_unchecked, FpVec, PrimeModulus};
use crate::group::{check_cap, digits, pow_u128, undigits, FiniteGroup};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisElem {
    pub x: FpVec,
    pub y: FpVec,
    pub z: u32,
}

impl HeisElem {
    pub fn identity(n: usize) -> Self {
        HeisElem {
            x: FpVec::zeros(n),
            y: FpVec::zeros(n),
            z: 0,
        }
    }

    /// Build from raw integers, reducing mod p.
    pub fn new(x: &[i64], y: &[i64], z: i64, p: PrimeModulus) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                found: y.len(),
            });
        }
        Ok(HeisElem {
            x: FpVec::from_signed(x.iter().copied(), p),
            y: FpVec::from_signed(y.iter().copied(), p),
            z: p.reduce_signed(z),
        })
    }

    pub fn central(n: usize, z: u32) -> Self {
        HeisElem {
            z,
            ..HeisElem::identity(n)
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn is_central(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for HeisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?},{}]", self.x.entries(), self.y.entries(), self.z)
    }
}

fn check_pair(a: &HeisElem, b: &HeisElem) -> Result<()> {
    for (l, r) in [(a.x.len(), b.x.len()), (a.x.len(), a.y.len()), (b.x.len(), b.y.len())] {
        if l != r {
            return Err(Error::Dimension { expected: l, found: r });
        }
    }
    Ok(())
}

pub fn h_mul(a: &HeisElem, b: &HeisElem, p: PrimeModulus) -> Result<HeisElem> {
    check_pair(a, b)?;
    Ok(mul_unchecked(a, b, p))
}

fn mul_unchecked(a: &HeisElem, b: &HeisElem, p: PrimeModulus) -> HeisElem {
    let xy = dot_unchecked(a.x.entries(), b.y.entries(), p);
    HeisElem {
        x: a.x.add(&b.x, p).expect("checked"),
        y: a.y.add(&b.y, p).expect("checked"),
        z: p.add(p.add(a.z, b.z), xy),
    }
}

/// `[x,y,z]^{-1} = [-x, -y, -z + x·y]`.
pub fn h_inv(a: &HeisElem, p: PrimeModulus) -> HeisElem {
    let xy = dot_unchecked(a.x.entries(), a.y.entries(), p);
    HeisElem {
        x: a.x.neg(p),
        y: a.y.neg(p),
        z: p.add(p.neg(a.z), xy),
    }
}

/// `a^{-1} b^{-1} a b = [0, 0, x·b − a·y]`, always central.
pub fn h_commutator(a: &HeisElem, b: &HeisElem, p: PrimeModulus) -> Result<HeisElem> {
    check_pair(a, b)?;
    let z = symplectic_unchecked(a.x.entries(), a.y.entries(), b.x.entries(), b.y.entries(), p);
    Ok(HeisElem::central(a.dim(), z))
}

pub fn h_commutes(a: &HeisElem, b: &HeisElem, p: PrimeModulus) -> Result<bool> {
    check_pair(a, b)?;
    Ok(commutes_unchecked(a, b, p))
}

#[inline]
fn commutes_unchecked(a: &HeisElem, b: &HeisElem, p: PrimeModulus) -> bool {
    symplectic_unchecked(a.x.entries(), a.y.entries(), b.x.entries(), b.y.entries(), p) == 0
}

pub fn h_pow(a: &HeisElem, k: u64, p: PrimeModulus) -> HeisElem {
    let mut acc = HeisElem::identity(a.dim());
    for _ in 0..k {
        acc = mul_unchecked(&acc, a, p);
    }
    acc
}

/// A conjugacy class of H_{2n+1}(p): a central singleton or a coset `[x, y, *]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ClassLabel {
    Central { z: u32 },
    Noncentral { x: FpVec, y: FpVec },
}

impl ClassLabel {
    pub fn noncentral(x: FpVec, y: FpVec) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Domain("noncentral class label with (x, y) = (0, 0)".into()));
        }
        Ok(ClassLabel::Noncentral { x, y })
    }
}

pub fn class_of(a: &HeisElem) -> ClassLabel {
    if a.is_central() {
        ClassLabel::Central { z: a.z }
    } else {
        ClassLabel::Noncentral {
            x: a.x.clone(),
            y: a.y.clone(),
        }
    }
}

/// H_{2n+1}(p) as an indexed finite group. Elements are numbered
/// lexicographically on `(x_1..x_n, y_1..y_n, z)` read as base-p digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heisenberg {
    n: usize,
    p: PrimeModulus,
}

impl Heisenberg {
    pub fn new(n: usize, p: PrimeModulus) -> Self {
        Heisenberg { n, p }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> PrimeModulus {
        self.p
    }

    /// `p^{2n+1}`, saturating.
    pub fn order_u128(&self) -> u128 {
        pow_u128(self.p.get(), 2 * self.n as u32 + 1)
    }

    pub fn class_count(&self) -> u128 {
        pow_u128(self.p.get(), 2 * self.n as u32) + self.p.get() as u128 - 1
    }

    pub fn check(&self, a: &HeisElem) -> Result<()> {
        if a.x.len() != self.n || a.y.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: a.x.len().max(a.y.len()),
            });
        }
        let p = self.p.get();
        if a.z >= p || a.x.entries().iter().chain(a.y.entries()).any(|&e| e >= p) {
            return Err(Error::Domain(format!("{a} has unreduced entries mod {p}")));
        }
        Ok(())
    }

    pub fn center(&self) -> Vec<HeisElem> {
        (0..self.p.get()).map(|z| HeisElem::central(self.n, z)).collect()
    }
}

impl FiniteGroup for Heisenberg {
    type Elem = HeisElem;

    fn order(&self) -> u64 {
        self.order_u128().min(u64::MAX as u128) as u64
    }

    fn element(&self, index: u64) -> HeisElem {
        let p = self.p.get();
        let d = digits(index, p, 2 * self.n + 1);
        HeisElem {
            x: FpVec::from_reduced(d[..self.n].to_vec(), self.p),
            y: FpVec::from_reduced(d[self.n..2 * self.n].to_vec(), self.p),
            z: d[2 * self.n],
        }
    }

    fn index_of(&self, e: &HeisElem) -> u64 {
        let it = e.x.entries().iter().chain(e.y.entries()).copied().chain([e.z]);
        undigits(it, self.p.get())
    }

    fn identity(&self) -> HeisElem {
        HeisElem::identity(self.n)
    }

    fn mul(&self, a: &HeisElem, b: &HeisElem) -> HeisElem {
        mul_unchecked(a, b, self.p)
    }

    fn inv(&self, a: &HeisElem) -> HeisElem {
        h_inv(a, self.p)
    }

    fn generators(&self) -> Vec<HeisElem> {
        let mut gens = Vec::with_capacity(2 * self.n);
        for i in 0..self.n {
            gens.push(HeisElem {
                x: FpVec::basis(self.n, i),
                ..HeisElem::identity(self.n)
            });
            gens.push(HeisElem {
                y: FpVec::basis(self.n, i),
                ..HeisElem::identity(self.n)
            });
        }
        if self.n == 0 {
            gens.push(HeisElem::central(0, 1 % self.p.get()));
        }
        gens
    }

    fn commutes(&self, a: &HeisElem, b: &HeisElem) -> bool {
        commutes_unchecked(a, b, self.p)
    }
}

/// All `p^{2n+1}` elements in canonical order.
pub fn enumerate_group(n: usize, p: PrimeModulus, cap: u64) -> Result<Vec<HeisElem>> {
    let h = Heisenberg::new(n, p);
    check_cap(h.order_u128(), cap)?;
    Ok(h.elements())
}

/// Structure of a generated subgroup, computed by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupReport {
    pub order: u64,
    pub center_size: u64,
    pub derived_equals_center: bool,
    pub exponent_p: bool,
    pub nonabelian: bool,
    pub is_extraspecial: bool,
}

/// Closure of `gens` under multiplication, as element indices of `g`.
pub(crate) fn closure<G: FiniteGroup>(g: &G, gens: &[G::Elem], cap: u64) -> Result<Vec<u64>> {
    let mut seen = HashSet::new();
    let id = g.identity();
    seen.insert(g.index_of(&id));
    let mut frontier = vec![id];
    while let Some(a) = frontier.pop() {
        for s in gens {
            let b = g.mul(&a, s);
            if seen.insert(g.index_of(&b)) {
                check_cap(seen.len() as u128, cap)?;
                frontier.push(b);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Generate a subgroup of H_{2n+1}(p), optionally adjoining the center, and
/// report its center, derived subgroup, exponent and extraspecial status.
pub fn subgroup_generated(
    h: &Heisenberg,
    gens: &[HeisElem],
    include_center: bool,
    cap: u64,
) -> Result<(Vec<HeisElem>, SubgroupReport)> {
    for a in gens {
        h.check(a)?;
    }
    let mut all_gens: Vec<HeisElem> = gens.to_vec();
    if include_center {
        all_gens.push(HeisElem::central(h.n, 1 % h.p.get()));
    }
    let members = closure(h, &all_gens, cap)?;
    let elems: Vec<HeisElem> = members.iter().map(|&i| h.element(i)).collect();

    let center: Vec<u64> = elems
        .iter()
        .filter(|a| all_gens.iter().all(|s| h.commutes(a, s)))
        .map(|a| h.index_of(a))
        .collect();

    // Derived subgroup: normal closure of the generator commutators.
    let mut comm_gens = Vec::new();
    for (i, s) in all_gens.iter().enumerate() {
        for t in &all_gens[i + 1..] {
            let c = mul_unchecked(
                &mul_unchecked(&h_inv(s, h.p), &h_inv(t, h.p), h.p),
                &mul_unchecked(s, t, h.p),
                h.p,
            );
            comm_gens.push(c);
        }
    }
    let derived = normal_closure(h, &comm_gens, &all_gens, cap)?;

    let p = h.p.get() as u64;
    let exponent_p = elems
        .iter()
        .all(|a| h_pow(a, p, h.p) == HeisElem::identity(h.n));
    let nonabelian = all_gens
        .iter()
        .enumerate()
        .any(|(i, s)| all_gens[i + 1..].iter().any(|t| !h.commutes(s, t)));
    let derived_equals_center = derived == center;
    let report = SubgroupReport {
        order: elems.len() as u64,
        center_size: center.len() as u64,
        derived_equals_center,
        exponent_p,
        nonabelian,
        is_extraspecial: center.len() as u64 == p && derived_equals_center && exponent_p && nonabelian,
    };
    Ok((elems, report))
}

fn normal_closure<G: FiniteGroup>(
    g: &G,
    seeds: &[G::Elem],
    conjugators: &[G::Elem],
    cap: u64,
) -> Result<Vec<u64>> {
    let mut gens: Vec<G::Elem> = seeds.to_vec();
    loop {
        let members = closure(g, &gens, cap)?;
        let set: HashSet<u64> = members.iter().copied().collect();
        let mut grew = false;
        for &m in &members {
            let a = g.element(m);
            for s in conjugators {
                let c = g.conjugate(&a, s);
                if !set.contains(&g.index_of(&c)) {
                    gens.push(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(members);
        }
    }
}
