//! Finite-group plumbing shared by the Heisenberg and unitriangular models:
//! indexed enumeration, conjugation orbits, and the commuting-pair identity
//! `e(G) = |G| c(G)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the number of elements any exhaustive pass may touch.
pub const DEFAULT_CAP: u64 = 1 << 22;

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "HEISENLAB_CAP";

/// Enumeration cap, read from `HEISENLAB_CAP` when set and parseable.
pub fn cap_from_env() -> u64 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

pub(crate) fn check_cap(requested: u128, cap: u64) -> Result<()> {
    if requested > cap as u128 {
        Err(Error::SizeCap { requested, cap })
    } else {
        Ok(())
    }
}

/// `p^e` as u128, saturating.
pub(crate) fn pow_u128(p: u32, e: u32) -> u128 {
    (p as u128).checked_pow(e).unwrap_or(u128::MAX)
}

/// A finite group whose elements are numbered `0..order()` in a fixed
/// canonical order.
pub trait FiniteGroup: Sync {
    type Elem: Clone + PartialEq + Send + Sync + std::fmt::Debug;

    fn order(&self) -> u64;
    fn element(&self, index: u64) -> Self::Elem;
    fn index_of(&self, e: &Self::Elem) -> u64;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// A generating set; conjugation closure only needs these.
    fn generators(&self) -> Vec<Self::Elem>;

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    fn conjugate(&self, a: &Self::Elem, by: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(by), a), by)
    }

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }
}

/// Conjugacy classes computed by conjugation closure from each unvisited
/// seed. Returns class sizes in order of their smallest element index.
pub fn conjugacy_class_sizes<G: FiniteGroup>(g: &G, cap: u64) -> Result<Vec<u64>> {
    let n = g.order();
    check_cap(n as u128, cap)?;
    let gens = g.generators();
    let mut seen = vec![false; n as usize];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for seed in 0..n {
        if seen[seed as usize] {
            continue;
        }
        seen[seed as usize] = true;
        stack.push(g.element(seed));
        let mut size = 0u64;
        while let Some(a) = stack.pop() {
            size += 1;
            for s in &gens {
                let b = g.conjugate(&a, s);
                let bi = g.index_of(&b) as usize;
                if !seen[bi] {
                    seen[bi] = true;
                    stack.push(b);
                }
            }
        }
        sizes.push(size);
    }
    Ok(sizes)
}

/// The conjugacy class of one element, as sorted element indices.
pub fn conjugacy_class_of<G: FiniteGroup>(g: &G, a: &G::Elem, cap: u64) -> Result<Vec<u64>> {
    check_cap(g.order() as u128, cap)?;
    let gens = g.generators();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![a.clone()];
    seen.insert(g.index_of(a));
    while let Some(x) = stack.pop() {
        for s in &gens {
            let y = g.conjugate(&x, s);
            if seen.insert(g.index_of(&y)) {
                stack.push(y);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    Ok(out)
}

/// Ordered commuting pairs `(a, b)`, including `a = b`, by exhaustive count.
pub fn commuting_pairs<G: FiniteGroup>(g: &G, cap: u64) -> Result<u128> {
    let n = g.order();
    check_cap((n as u128) * (n as u128), cap.saturating_mul(cap))?;
    check_cap(n as u128, cap)?;
    let elems = g.elements();
    let e: u128 = (0..elems.len())
        .into_par_iter()
        .map(|i| {
            let a = &elems[i];
            // Count j > i once and double, plus the diagonal.
            let off: u128 = elems[i + 1..].iter().filter(|b| g.commutes(a, b)).count() as u128;
            2 * off + 1
        })
        .sum();
    Ok(e)
}

/// Outcome of checking `e(G) = |G| c(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErdosTuranReport {
    pub commuting_pairs: u128,
    pub order: u64,
    pub classes: u64,
    pub holds: bool,
}

/// Count commuting pairs and conjugacy classes independently and compare.
pub fn erdos_turan_check<G: FiniteGroup>(g: &G, cap: u64) -> Result<ErdosTuranReport> {
    let e = commuting_pairs(g, cap)?;
    let c = conjugacy_class_sizes(g, cap)?.len() as u64;
    let order = g.order();
    Ok(ErdosTuranReport {
        commuting_pairs: e,
        order,
        classes: c,
        holds: e == order as u128 * c as u128,
    })
}

/// Decode a mixed-radix index into `len` base-`p` digits, most significant first.
pub(crate) fn digits(mut index: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (index % p as u64) as u32;
        index /= p as u64;
    }
    out
}

pub(crate) fn undigits(ds: impl IntoIterator<Item = u32>, p: u32) -> u64 {
    ds.into_iter().fold(0u64, |acc, d| acc * p as u64 + d as u64)
}
