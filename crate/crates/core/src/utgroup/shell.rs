//! Core/shell decomposition of U_{n+2}: the quotient map `u` onto U_n, the
//! shell map `h` into H_{2n+1}, and the tower of iterated cores.

use serde::{Deserialize, Serialize};

use super::matrix::{commutes_unchecked, UtMatrix};
use crate::error::{Error, Result};
use crate::fp::{FpVec, PrimeModulus};
use crate::group::{check_cap, pow_u128, FiniteGroup};
use crate::heisenberg::{HeisElem, Heisenberg};

/// Erase the first/last row and column of `X ∈ U_{n+2}`, giving `u(X) ∈ U_n`.
pub fn u_map(x: &UtMatrix) -> Result<UtMatrix> {
    if x.n() < 2 {
        return Err(Error::Domain(format!(
            "u is defined on U_m for m >= 2, got m = {}",
            x.n()
        )));
    }
    let n = x.n() - 2;
    let mut a = UtMatrix::identity(n);
    for i in 1..=n {
        for j in i + 1..=n {
            a.set(i, j, x.get(i + 1, j + 1));
        }
    }
    Ok(a)
}

/// The shell of `X ∈ U_{n+2}` as `[x, y, z] ∈ H_{2n+1}`: `x` from the top row,
/// `y` from the last column, `z` the corner.
pub fn h_map(x: &UtMatrix, p: PrimeModulus) -> Result<HeisElem> {
    if x.n() < 2 {
        return Err(Error::Domain(format!(
            "h is defined on U_m for m >= 2, got m = {}",
            x.n()
        )));
    }
    let m = x.n();
    let n = m - 2;
    let xs: Vec<u32> = (2..=n + 1).map(|c| x.get(1, c)).collect();
    let ys: Vec<u32> = (2..=n + 1).map(|r| x.get(r, m)).collect();
    Ok(HeisElem {
        x: FpVec::from_reduced(xs, p),
        y: FpVec::from_reduced(ys, p),
        z: x.get(1, m),
    })
}

/// Reassemble `X` from its core and shell; inverse of `X ↦ (u(X), h(X))`.
pub fn from_core_and_shell(core: &UtMatrix, shell: &HeisElem) -> Result<UtMatrix> {
    let n = core.n();
    if shell.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            found: shell.dim(),
        });
    }
    let m = n + 2;
    let mut x = UtMatrix::identity(m);
    for i in 1..=n {
        for j in i + 1..=n {
            x.set(i + 1, j + 1, core.get(i, j));
        }
    }
    for t in 0..n {
        x.set(1, t + 2, shell.x.entries()[t]);
        x.set(t + 2, m, shell.y.entries()[t]);
    }
    x.set(1, m, shell.z);
    Ok(x)
}

/// The `(n+2)×(n+2)` unitriangular matrix of a Heisenberg element.
pub fn heis_to_ut(a: &HeisElem) -> UtMatrix {
    from_core_and_shell(&UtMatrix::identity(a.dim()), a).expect("dimensions agree")
}

/// Which bottom a tower reaches: U_1 for odd sizes, U_2 for even ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TowerBottom {
    U1,
    /// Even ambient size; the iterated construction is normally run on odd sizes.
    U2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerNode {
    pub matrix: UtMatrix,
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tower {
    pub nodes: Vec<TowerNode>,
    pub bottom: TowerBottom,
}

/// `u^0(X), u^1(X), …` down to U_1 (or U_2).
pub fn tower(x: &UtMatrix) -> Tower {
    let mut nodes = vec![TowerNode {
        matrix: x.clone(),
        level: 0,
    }];
    while nodes.last().unwrap().matrix.n() > 2 {
        let last = nodes.last().unwrap();
        let next = u_map(&last.matrix).expect("n > 2");
        nodes.push(TowerNode {
            matrix: next,
            level: last.level + 1,
        });
    }
    let bottom = if nodes.last().unwrap().matrix.n() % 2 == 1 {
        TowerBottom::U1
    } else {
        TowerBottom::U2
    };
    Tower { nodes, bottom }
}

/// Number of children of any `A ∈ U_m` in U_{m+2}: `p^{2m+1}`.
pub fn children_count(m: usize, p: PrimeModulus) -> u128 {
    pow_u128(p.get(), 2 * m as u32 + 1)
}

/// All `Y ∈ U_{target}` with `u^ℓ(Y) = b`, where `target = b.n() + 2ℓ`.
pub fn descendants(b: &UtMatrix, target: usize, p: PrimeModulus, cap: u64) -> Result<Vec<UtMatrix>> {
    if target < b.n() || (target - b.n()) % 2 != 0 {
        return Err(Error::Domain(format!(
            "U_{} is not an ancestor level of U_{target}",
            b.n()
        )));
    }
    let count = pow_u128(
        p.get(),
        (UtMatrix::free_entries(target) - UtMatrix::free_entries(b.n())) as u32,
    );
    check_cap(count, cap)?;
    let mut layer = vec![b.clone()];
    while layer[0].n() < target {
        let m = layer[0].n();
        let shells = Heisenberg::new(m, p).elements();
        layer = layer
            .iter()
            .flat_map(|a| shells.iter().map(move |s| from_core_and_shell(a, s).expect("dims")))
            .collect();
    }
    Ok(layer)
}

/// `deg(X, B)`: descendants `Y` of `B` at the level of `X` that commute with `X`.
pub fn deg_over(x: &UtMatrix, b: &UtMatrix, p: PrimeModulus, cap: u64) -> Result<u64> {
    let ys = descendants(b, x.n(), p, cap)?;
    Ok(ys.iter().filter(|y| commutes_unchecked(x, y, p)).count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::heisenberg::h_mul;
    use crate::utgroup::{ut_commutes, ut_mul, UnitriangularGroup};

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn identity_maps() {
        let id = UtMatrix::identity(5);
        assert_eq!(u_map(&id).unwrap(), UtMatrix::identity(3));
        assert_eq!(h_map(&id, p(3)).unwrap(), HeisElem::identity(3));
        assert!(u_map(&UtMatrix::identity(1)).is_err());
    }

    #[test]
    fn core_shell_round_trip() {
        let g = UnitriangularGroup::new(5, p(3));
        for i in (0..g.order()).step_by(97) {
            let x = g.element(i);
            let back = from_core_and_shell(&u_map(&x).unwrap(), &h_map(&x, p(3)).unwrap()).unwrap();
            assert_eq!(back, x);
        }
    }

    #[test]
    fn matrix_model_is_isomorphic_on_h3_3() {
        let m = p(3);
        let h = Heisenberg::new(1, m);
        let elems = h.elements();
        for a in &elems {
            for b in &elems {
                let prod = heis_to_ut(&h_mul(a, b, m).unwrap());
                assert_eq!(prod, ut_mul(&heis_to_ut(a), &heis_to_ut(b), m).unwrap());
                assert_eq!(h.commutes(a, b), ut_commutes(&heis_to_ut(a), &heis_to_ut(b), m).unwrap());
            }
        }
    }

    #[test]
    fn tower_shapes() {
        let t = tower(&UtMatrix::identity(7));
        assert_eq!(t.nodes.len(), 4);
        assert!(t.nodes.iter().all(|n| n.matrix.is_identity()));
        assert_eq!(t.bottom, TowerBottom::U1);
        assert_eq!(t.nodes.iter().map(|n| n.matrix.n()).collect::<Vec<_>>(), vec![7, 5, 3, 1]);
        let t = tower(&UtMatrix::identity(6));
        assert_eq!(t.bottom, TowerBottom::U2);
        for w in t.nodes.windows(2) {
            assert_eq!(u_map(&w[0].matrix).unwrap(), w[1].matrix);
        }
    }

    #[test]
    fn uniform_branching() {
        let m = p(3);
        let a = UtMatrix::from_triples(3, &[(1, 2, 1), (1, 3, 2)], m).unwrap();
        let kids = descendants(&a, 5, m, DEFAULT_CAP).unwrap();
        assert_eq!(kids.len() as u128, children_count(3, m));
        assert_eq!(kids.len(), 2187);
        assert!(kids.iter().all(|k| u_map(k).unwrap() == a));
    }

    #[test]
    fn degree_over_examples() {
        let m = p(2);
        let g = UnitriangularGroup::new(4, m);
        assert_eq!(deg_over(&UtMatrix::identity(4), &UtMatrix::identity(0), m, DEFAULT_CAP).unwrap(), 64);
        for i in 0..g.order() {
            let x = g.element(i);
            // Same level: 1 exactly when X commutes with B, here B = X.
            assert_eq!(deg_over(&x, &x, m, DEFAULT_CAP).unwrap(), 1);
            // Bottom level: ordinary degree in the commuting graph.
            let direct = g.elements().iter().filter(|y| g.commutes(&x, y)).count() as u64;
            assert_eq!(deg_over(&x, &UtMatrix::identity(0), m, DEFAULT_CAP).unwrap(), direct);
        }
        // A core that does not commute with u(X) gives degree zero.
        let m3 = p(3);
        let x = from_core_and_shell(
            &UtMatrix::from_triples(3, &[(1, 2, 1)], m3).unwrap(),
            &HeisElem::identity(3),
        )
        .unwrap();
        let b = UtMatrix::from_triples(3, &[(2, 3, 1)], m3).unwrap();
        assert!(!ut_commutes(&u_map(&x).unwrap(), &b, m3).unwrap());
        assert_eq!(deg_over(&x, &b, m3, DEFAULT_CAP).unwrap(), 0);
    }
}
