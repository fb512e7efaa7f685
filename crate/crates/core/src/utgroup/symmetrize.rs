//! Column/row supports of a core, their symmetrization, and the two
//! constructions that locate full Heisenberg commuting graphs above cores.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::equations::{equation_system, shell_vector};
use super::matrix::{commutes_unchecked, UtMatrix};
use super::shell::from_core_and_shell;
use crate::error::{Error, Result};
use crate::fp::{symplectic_unchecked, FpVec, PrimeModulus};
use crate::group::{check_cap, pow_u128, FiniteGroup};
use crate::heisenberg::{HeisElem, Heisenberg};

/// Columns (`sigma ⊆ {3..n+1}`) and rows (`tau ⊆ {2..n}`) carrying a nonzero
/// above-diagonal entry of a core `A ∈ U_n`, indexed in the ambient U_{n+2}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTau {
    pub sigma: BTreeSet<usize>,
    pub tau: BTreeSet<usize>,
}

pub fn sigma_tau(a: &UtMatrix) -> SigmaTau {
    let mut sigma = BTreeSet::new();
    let mut tau = BTreeSet::new();
    for (r, c) in a.nonzero_positions() {
        tau.insert(r + 1);
        sigma.insert(c + 1);
    }
    SigmaTau { sigma, tau }
}

/// `sigma ∪ tau`, used for both the symmetrized column and row sets.
pub fn symmetrize(st: &SigmaTau) -> BTreeSet<usize> {
    st.sigma.union(&st.tau).copied().collect()
}

pub fn symmetrize_all<'a>(sts: impl IntoIterator<Item = &'a SigmaTau>) -> BTreeSet<usize> {
    sts.into_iter().flat_map(symmetrize).collect()
}

/// Ambient indices `2..=n+1` outside `s`, in increasing order.
fn free_indices(n: usize, s: &BTreeSet<usize>) -> Vec<usize> {
    (2..=n + 1).filter(|i| !s.contains(i)).collect()
}

/// Project a shell onto the free indices, giving an element of H_{2m+1}.
fn compress(h: &HeisElem, free: &[usize], p: PrimeModulus) -> HeisElem {
    HeisElem {
        x: FpVec::from_reduced(free.iter().map(|&c| h.x.entries()[c - 2]).collect(), p),
        y: FpVec::from_reduced(free.iter().map(|&r| h.y.entries()[r - 2]).collect(), p),
        z: h.z,
    }
}

/// Inverse of [`compress`], with `fixed` supplying the shell values on `s`.
fn expand(
    small: &HeisElem,
    n: usize,
    free: &[usize],
    fixed_top: &[(usize, u32)],
    fixed_right: &[(usize, u32)],
    p: PrimeModulus,
) -> HeisElem {
    let mut x = vec![0u32; n];
    let mut y = vec![0u32; n];
    for (t, &c) in free.iter().enumerate() {
        x[c - 2] = small.x.entries()[t];
        y[c - 2] = small.y.entries()[t];
    }
    for &(c, v) in fixed_top {
        x[c - 2] = v;
    }
    for &(r, v) in fixed_right {
        y[r - 2] = v;
    }
    HeisElem {
        x: FpVec::from_reduced(x, p),
        y: FpVec::from_reduced(y, p),
        z: small.z,
    }
}

/// Explicit isomorphism from the t-partite graph on the restricted fibers to
/// the t-partite commuting graph of copies of H_{2m+1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartiteCertificate {
    /// `images[i][v]` is the H_{2m+1} element assigned to `parts[i][v]`.
    pub images: Vec<Vec<HeisElem>>,
    pub pairs_checked: u64,
    pub bijective: bool,
    pub edges_match: bool,
}

impl PartiteCertificate {
    pub fn verified(&self) -> bool {
        self.bijective && self.edges_match
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueFibers {
    pub n: usize,
    pub m: usize,
    /// The symmetrized index set `⋃ sigma_i ∪ ⋃ tau_i`.
    pub symmetrized: BTreeSet<usize>,
    /// `parts[i] = { X ∈ U_{n+2} : u(X) = A_i, shell zero on the symmetrized indices }`.
    pub parts: Vec<Vec<UtMatrix>>,
    pub certificate: PartiteCertificate,
}

/// For a commuting clique `A_1..A_t` in U_n, restrict each fiber over `A_i`
/// to shells vanishing on the symmetrized indices and certify, pair by pair,
/// that commuting there is exactly commuting of the compressed shells in H_{2m+1}.
pub fn clique_fibers(cores: &[UtMatrix], p: PrimeModulus, cap: u64) -> Result<CliqueFibers> {
    let Some(first) = cores.first() else {
        return Err(Error::Precondition("need at least one core matrix".into()));
    };
    let n = first.n();
    for (i, a) in cores.iter().enumerate() {
        if a.n() != n {
            return Err(Error::Dimension {
                expected: n,
                found: a.n(),
            });
        }
        for b in &cores[i + 1..] {
            if !commutes_unchecked(a, b, p) {
                return Err(Error::Precondition("core matrices do not form a commuting clique".into()));
            }
        }
    }
    let sts: Vec<SigmaTau> = cores.iter().map(sigma_tau).collect();
    let s = symmetrize_all(&sts);
    let free = free_indices(n, &s);
    let m = free.len();
    let part_size = pow_u128(p.get(), 2 * m as u32 + 1);
    check_cap(part_size * cores.len() as u128, cap)?;

    let small_group = Heisenberg::new(m, p);
    let small: Vec<HeisElem> = small_group.elements();
    let parts: Vec<Vec<UtMatrix>> = cores
        .iter()
        .map(|a| {
            small
                .iter()
                .map(|h| from_core_and_shell(a, &expand(h, n, &free, &[], &[], p)).expect("dims"))
                .collect()
        })
        .collect();

    // Independently recompute images from the matrices via the shell.
    let images: Vec<Vec<HeisElem>> = parts
        .iter()
        .map(|part| {
            part.iter()
                .map(|x| compress(&super::shell::h_map(x, p).expect("n+2 >= 2"), &free, p))
                .collect()
        })
        .collect();
    let bijective = images.iter().all(|imgs| {
        let distinct: HashSet<u64> = imgs.iter().map(|h| small_group.index_of(h)).collect();
        distinct.len() == imgs.len() && imgs.len() as u128 == part_size
    }) && parts.iter().all(|part| {
        // Each member really lies in the restricted fiber.
        part.iter().all(|x| {
            let h = super::shell::h_map(x, p).expect("dims");
            s.iter()
                .all(|&i| h.x.entries()[i - 2] == 0 && h.y.entries()[i - 2] == 0)
        })
    });

    let mut pairs = 0u64;
    let mut edges_match = true;
    for i in 0..parts.len() {
        for j in i..parts.len() {
            for (x, hx) in parts[i].iter().zip(&images[i]) {
                for (y, hy) in parts[j].iter().zip(&images[j]) {
                    pairs += 1;
                    let heis = symplectic_unchecked(
                        hx.x.entries(),
                        hx.y.entries(),
                        hy.x.entries(),
                        hy.y.entries(),
                        p,
                    ) == 0;
                    if commutes_unchecked(x, y, p) != heis {
                        edges_match = false;
                    }
                }
            }
        }
    }
    Ok(CliqueFibers {
        n,
        m,
        symmetrized: s,
        parts,
        certificate: PartiteCertificate {
            images,
            pairs_checked: pairs,
            bijective,
            edges_match,
        },
    })
}

/// Classification of the bipartite commuting graph between two blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "label", rename_all = "snake_case")]
pub enum BlockLabel {
    /// Commuting iff the compressed shells commute: a copy of Γ(H_{2m+1} × H_{2m+1}).
    FullHeisenberg,
    /// No commuting pairs.
    Empty,
    /// Linear equations hold but the fixed coordinates contribute a nonzero
    /// constant `offset` to the corner equation: commuting iff
    /// `ω(free_x, free_y) + offset = 0`. Vertices with zero free part are isolated.
    Twisted { offset: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    /// Fixed values `x_{1,i}` for `i` in the symmetrized set, ascending.
    pub top: Vec<u32>,
    /// Fixed values `x_{j,n+2}` for `j` in the symmetrized set, ascending.
    pub right: Vec<u32>,
    pub members: Vec<UtMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Equipartition {
    pub n: usize,
    pub m: usize,
    pub symmetrized: BTreeSet<usize>,
    pub x_blocks: Vec<Block>,
    pub y_blocks: Vec<Block>,
    /// `labels[i][j]` for block pair `(x_blocks[i], y_blocks[j])`.
    pub labels: Vec<Vec<BlockLabel>>,
    /// Every block pair was checked pair by pair against its label.
    pub verified: bool,
    pub pairs_checked: u64,
}

impl Equipartition {
    /// Every block pair is either a full Heisenberg bipartite graph or empty.
    pub fn dichotomy_holds(&self) -> bool {
        self.labels
            .iter()
            .flatten()
            .all(|l| matches!(l, BlockLabel::FullHeisenberg | BlockLabel::Empty))
    }

    pub fn count(&self, label: BlockLabel) -> usize {
        self.labels.iter().flatten().filter(|&&l| l == label).count()
    }

    pub fn twisted_count(&self) -> usize {
        self.labels
            .iter()
            .flatten()
            .filter(|l| matches!(l, BlockLabel::Twisted { .. }))
            .count()
    }
}

fn blocks_for(
    core: &UtMatrix,
    s: &BTreeSet<usize>,
    free: &[usize],
    p: PrimeModulus,
) -> Vec<Block> {
    let n = core.n();
    let k = s.len();
    let small: Vec<HeisElem> = Heisenberg::new(free.len(), p).elements();
    let labels: Vec<usize> = s.iter().copied().collect();
    let fixed_count = pow_u128(p.get(), 2 * k as u32) as u64;
    (0..fixed_count)
        .map(|code| {
            let vals = crate::group::digits(code, p.get(), 2 * k);
            let top = vals[..k].to_vec();
            let right = vals[k..].to_vec();
            let fixed_top: Vec<(usize, u32)> = labels.iter().copied().zip(top.iter().copied()).collect();
            let fixed_right: Vec<(usize, u32)> =
                labels.iter().copied().zip(right.iter().copied()).collect();
            let members = small
                .iter()
                .map(|h| {
                    from_core_and_shell(core, &expand(h, n, free, &fixed_top, &fixed_right, p))
                        .expect("dims")
                })
                .collect();
            Block { top, right, members }
        })
        .collect()
}

/// Partition the fibers over `a` and `b` by their shell values on the
/// symmetrized indices, label each block pair from the equations, and verify
/// every label against direct matrix commuting.
pub fn equipartition(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus, cap: u64) -> Result<Equipartition> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    let n = a.n();
    let s = symmetrize_all([&sigma_tau(a), &sigma_tau(b)]);
    let free = free_indices(n, &s);
    let m = free.len();
    let fiber = pow_u128(p.get(), 2 * n as u32 + 1);
    check_cap(fiber, cap)?;

    let x_blocks = blocks_for(a, &s, &free, p);
    let y_blocks = blocks_for(b, &s, &free, p);
    let sys = equation_system(a, b, p)?;
    let compressed = |blocks: &[Block]| -> Result<Vec<Vec<HeisElem>>> {
        blocks
            .iter()
            .map(|b| b.members.iter().map(|x| Ok(compress(&super::shell::h_map(x, p)?, &free, p))).collect())
            .collect()
    };
    let x_small = compressed(&x_blocks)?;
    let y_small = compressed(&y_blocks)?;

    let mut labels = Vec::with_capacity(x_blocks.len());
    let mut verified = true;
    let mut pairs = 0u64;
    for (xb, xs) in x_blocks.iter().zip(&x_small) {
        let mut row = Vec::with_capacity(y_blocks.len());
        // Any member represents the fixed coordinates of the block.
        let hx0 = super::shell::h_map(&xb.members[0], p)?;
        for (yb, ys) in y_blocks.iter().zip(&y_small) {
            let hy0 = super::shell::h_map(&yb.members[0], p)?;
            let label = if !sys.cores_commute || !sys.linear_hold(&shell_vector(&hx0), &shell_vector(&hy0)) {
                BlockLabel::Empty
            } else {
                // Corner-equation contribution of the fixed coordinates.
                let mut c = 0u64;
                for t in 0..xb.top.len() {
                    c += xb.top[t] as u64 * yb.right[t] as u64;
                    c += p.neg(yb.top[t]) as u64 * xb.right[t] as u64;
                }
                match p.reduce(c) {
                    0 => BlockLabel::FullHeisenberg,
                    offset => BlockLabel::Twisted { offset },
                }
            };
            for (x, hx) in xb.members.iter().zip(xs) {
                for (y, hy) in yb.members.iter().zip(ys) {
                    pairs += 1;
                    let w = symplectic_unchecked(
                        hx.x.entries(),
                        hx.y.entries(),
                        hy.x.entries(),
                        hy.y.entries(),
                        p,
                    );
                    let predicted = match label {
                        BlockLabel::Empty => false,
                        BlockLabel::FullHeisenberg => w == 0,
                        BlockLabel::Twisted { offset } => p.add(w, offset) == 0,
                    };
                    if predicted != commutes_unchecked(x, y, p) {
                        verified = false;
                    }
                }
            }
            row.push(label);
        }
        labels.push(row);
    }
    Ok(Equipartition {
        n,
        m,
        symmetrized: s,
        x_blocks,
        y_blocks,
        labels,
        verified,
        pairs_checked: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    /// The core of the worked example: nonzero at ambient (3,5), (3,6), (5,6) for n = 5.
    fn example_core(m: PrimeModulus) -> UtMatrix {
        UtMatrix::from_triples(5, &[(2, 4, 1), (2, 5, 1), (4, 5, 1)], m).unwrap()
    }

    #[test]
    fn sigma_tau_of_worked_example() {
        let st = sigma_tau(&example_core(p(2)));
        assert_eq!(st.sigma, BTreeSet::from([5, 6]));
        assert_eq!(st.tau, BTreeSet::from([3, 5]));
        assert_eq!(symmetrize(&st), BTreeSet::from([3, 5, 6]));
        let empty = sigma_tau(&UtMatrix::identity(5));
        assert!(empty.sigma.is_empty() && empty.tau.is_empty());
    }

    #[test]
    fn identity_clique_gives_the_kernel() {
        let m = p(2);
        let f = clique_fibers(&[UtMatrix::identity(3)], m, DEFAULT_CAP).unwrap();
        assert_eq!(f.m, 3);
        assert_eq!(f.parts[0].len(), 128);
        assert!(f.certificate.verified());
    }

    #[test]
    fn non_clique_is_rejected() {
        let m = p(3);
        let a = UtMatrix::from_triples(3, &[(1, 2, 1)], m).unwrap();
        let b = UtMatrix::from_triples(3, &[(2, 3, 1)], m).unwrap();
        assert!(matches!(clique_fibers(&[a, b], m, DEFAULT_CAP), Err(Error::Precondition(_))));
    }

    #[test]
    fn noncommuting_cores_give_empty_blocks() {
        let m = p(2);
        let a = UtMatrix::from_triples(3, &[(1, 2, 1)], m).unwrap();
        let b = UtMatrix::from_triples(3, &[(2, 3, 1)], m).unwrap();
        let e = equipartition(&a, &b, m, DEFAULT_CAP).unwrap();
        assert!(e.verified);
        assert_eq!(e.count(BlockLabel::Empty), e.x_blocks.len() * e.y_blocks.len());
    }

    #[test]
    fn identity_cores_single_block() {
        let m = p(2);
        let id = UtMatrix::identity(3);
        let e = equipartition(&id, &id, m, DEFAULT_CAP).unwrap();
        assert_eq!(e.x_blocks.len(), 1);
        assert_eq!(e.labels, vec![vec![BlockLabel::FullHeisenberg]]);
        assert!(e.verified);
    }
}
