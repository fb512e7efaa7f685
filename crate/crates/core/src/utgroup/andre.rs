//! A class criterion for two-hook subsets of the shell, and the splitting of
//! U_{n+2} over its shell subgroup.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::matrix::{UnitriangularGroup, UtMatrix};
use super::shell::{from_core_and_shell, u_map};
use crate::error::{Error, Result};
use crate::fp::PrimeModulus;
use crate::group::{check_cap, conjugacy_class_of, FiniteGroup};
use crate::heisenberg::{HeisElem, Heisenberg};

/// Leading entries `a_{1,ℓ}` and `a_{k,n+2}` of the two hooks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HookValues {
    /// Both leading entries range over all nonzero residues.
    AnyNonzero,
    /// Leading entries pinned to the given nonzero residues.
    Fixed(u32, u32),
}

/// The set `C ⊆ H_{2n+1} ⊆ U_{n+2}` of shell matrices with `a_{1,ℓ} ≠ 0`,
/// `a_{1,i} = 0` for `1 < i < ℓ`, `a_{k,n+2} ≠ 0` and `a_{j,n+2} = 0` for
/// `k < j < n+2`. Remaining shell entries are free.
///
/// The row condition is taken on the last column `n+2` of the ambient matrix.
pub fn andre_set(n: usize, p: PrimeModulus, k: usize, l: usize, cap: u64) -> Result<Vec<UtMatrix>> {
    andre_set_with(n, p, k, l, HookValues::AnyNonzero, cap)
}

pub fn andre_set_with(
    n: usize,
    p: PrimeModulus,
    k: usize,
    l: usize,
    values: HookValues,
    cap: u64,
) -> Result<Vec<UtMatrix>> {
    if !(1 < k && k < n + 2 && 1 < l && l < n + 2) {
        return Err(Error::Domain(format!(
            "need 1 < k, l < {}; got k = {k}, l = {l} (the set would be empty)",
            n + 2
        )));
    }
    let lead_ok: Box<dyn Fn(u32, u32) -> bool> = match values {
        HookValues::AnyNonzero => Box::new(|a, b| a != 0 && b != 0),
        HookValues::Fixed(alpha, beta) => {
            let (alpha, beta) = (alpha % p.get(), beta % p.get());
            Box::new(move |a, b| alpha != 0 && beta != 0 && a == alpha && b == beta)
        }
    };
    let h = Heisenberg::new(n, p);
    check_cap(h.order_u128(), cap)?;
    let core = UtMatrix::identity(n);
    let set: Vec<UtMatrix> = h
        .elements()
        .into_iter()
        .filter(|e: &HeisElem| {
            // Shell x_t is column t+2 of the top row, y_t is row t+2 of the last column.
            let top = |c: usize| e.x.entries()[c - 2];
            let right = |r: usize| e.y.entries()[r - 2];
            lead_ok(top(l), right(k))
                && (2..l).all(|i| top(i) == 0)
                && (k + 1..=n + 1).all(|j| right(j) == 0)
        })
        .map(|e| from_core_and_shell(&core, &e).expect("dims"))
        .collect();
    if set.is_empty() {
        return Err(Error::Domain("the selected set is empty".into()));
    }
    Ok(set)
}

/// Whether [`andre_set`] is exactly one conjugacy class of U_{n+2}.
pub fn andre_class_check(n: usize, p: PrimeModulus, k: usize, l: usize, cap: u64) -> Result<bool> {
    andre_class_check_with(n, p, k, l, HookValues::AnyNonzero, cap)
}

pub fn andre_class_check_with(
    n: usize,
    p: PrimeModulus,
    k: usize,
    l: usize,
    values: HookValues,
    cap: u64,
) -> Result<bool> {
    let set = andre_set_with(n, p, k, l, values, cap)?;
    let g = UnitriangularGroup::new(n + 2, p);
    check_cap(g.order_u128(), cap)?;
    let members: BTreeSet<u64> = set.iter().map(|a| g.index_of(a)).collect();
    let orbit: BTreeSet<u64> = conjugacy_class_of(&g, &set[0], cap)?.into_iter().collect();
    Ok(orbit == members)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectReport {
    pub n: usize,
    pub p: u32,
    /// `u` restricted to the zero-frame subgroup is an isomorphism onto U_n.
    pub complement_isomorphic: bool,
    /// The zero-frame subgroup meets the shell subgroup only in the identity.
    pub trivial_intersection: bool,
    /// Every element of U_{n+2} is a product (shell)·(complement).
    pub products_cover: bool,
    /// `|shell|·|complement| = |U_{n+2}|`.
    pub cardinality_matches: bool,
}

impl SemidirectReport {
    pub fn splits(&self) -> bool {
        self.complement_isomorphic && self.trivial_intersection && self.products_cover && self.cardinality_matches
    }
}

/// Exhaustive check that U_{n+2} splits over the shell copy of H_{2n+1}.
pub fn semidirect_check(n: usize, p: PrimeModulus, cap: u64) -> Result<SemidirectReport> {
    let big = UnitriangularGroup::new(n + 2, p);
    check_cap(big.order_u128(), cap)?;
    let small = UnitriangularGroup::new(n, p);
    let zero_shell = HeisElem::identity(n);

    let complement: Vec<UtMatrix> = small
        .elements()
        .iter()
        .map(|a| from_core_and_shell(a, &zero_shell).expect("dims"))
        .collect();
    let shell: Vec<UtMatrix> = Heisenberg::new(n, p)
        .elements()
        .iter()
        .map(|h| from_core_and_shell(&UtMatrix::identity(n), h).expect("dims"))
        .collect();

    // Closed under products, and u is injective and multiplicative on it.
    let comp_set: HashSet<&UtMatrix> = complement.iter().collect();
    let images: HashSet<UtMatrix> = complement.iter().map(|c| u_map(c).expect("n+2 >= 2")).collect();
    let mut complement_isomorphic = images.len() == complement.len() && images.len() as u64 == small.order();
    'outer: for a in &complement {
        for b in &complement {
            let ab = big.mul(a, b);
            if !comp_set.contains(&ab) || u_map(&ab)? != small.mul(&u_map(a)?, &u_map(b)?) {
                complement_isomorphic = false;
                break 'outer;
            }
        }
    }

    let shell_set: HashSet<&UtMatrix> = shell.iter().collect();
    let meet: Vec<&UtMatrix> = complement.iter().filter(|c| shell_set.contains(c)).collect();
    let trivial_intersection = meet.len() == 1 && meet[0].is_identity();

    let mut seen = vec![false; big.order() as usize];
    for h in &shell {
        for c in &complement {
            seen[big.index_of(&big.mul(h, c)) as usize] = true;
        }
    }
    let products_cover = seen.iter().all(|&s| s);
    let cardinality_matches = shell.len() as u128 * complement.len() as u128 == big.order_u128();

    Ok(SemidirectReport {
        n,
        p: p.get(),
        complement_isomorphic,
        trivial_intersection,
        products_cover,
        cardinality_matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn criterion_at_n3_p2() {
        assert!(andre_class_check(3, p(2), 2, 3, DEFAULT_CAP).unwrap());
        assert!(!andre_class_check(3, p(2), 3, 2, DEFAULT_CAP).unwrap());
    }

    // Observed pattern: a single class exactly when k <= l. The k = l
    // diagonal is a class too.
    #[test]
    fn criterion_all_pairs_at_n3_p2() {
        for k in 2..=4 {
            for l in 2..=4 {
                let got = andre_class_check(3, p(2), k, l, DEFAULT_CAP).unwrap();
                assert_eq!(got, k <= l, "k = {k}, l = {l}");
            }
        }
    }

    #[test]
    fn odd_p_needs_pinned_hook_values() {
        // With every nonzero leading value allowed, C splits by those values.
        assert!(!andre_class_check(3, p(3), 2, 3, DEFAULT_CAP).unwrap());
        for k in 2..=4 {
            for l in 2..=4 {
                let got = andre_class_check_with(3, p(3), k, l, HookValues::Fixed(1, 2), DEFAULT_CAP).unwrap();
                assert_eq!(got, k <= l, "k = {k}, l = {l}");
            }
        }
    }

    #[test]
    fn out_of_range_is_domain_error() {
        assert!(matches!(andre_set(3, p(2), 1, 3, DEFAULT_CAP), Err(Error::Domain(_))));
        assert!(matches!(andre_set(3, p(2), 2, 5, DEFAULT_CAP), Err(Error::Domain(_))));
    }

    #[test]
    fn splits_at_desk_scale() {
        for (n, q) in [(2usize, 3u64), (3, 2)] {
            let r = semidirect_check(n, p(q), DEFAULT_CAP).unwrap();
            assert!(r.splits(), "{r:?}");
        }
    }
}
