//! Brute-force reference computations. Nothing here calls into the
//! constructions it is used to validate: group laws, adjacency and sums are
//! re-derived from their definitions on plain vectors and dense matrices.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Heisenberg element as plain `(x, y, z)` vectors.
pub type Triple = (Vec<u32>, Vec<u32>, u32);

/// All of H_{2n+1}(p) by nested counting, in no particular order.
pub fn heisenberg_triples(n: usize, p: u32) -> Vec<Triple> {
    let len = 2 * n + 1;
    let total = (p as usize).pow(len as u32);
    (0..total)
        .map(|mut c| {
            let mut v = vec![0u32; len];
            for slot in v.iter_mut() {
                *slot = (c % p as usize) as u32;
                c /= p as usize;
            }
            (v[..n].to_vec(), v[n..2 * n].to_vec(), v[2 * n])
        })
        .collect()
}

/// `[x,y,z][x',y',z'] = [x+x', y+y', z+z'+x·y']`, written out directly.
pub fn triple_mul(a: &Triple, b: &Triple, p: u32) -> Triple {
    let add = |u: &[u32], v: &[u32]| u.iter().zip(v).map(|(s, t)| (s + t) % p).collect::<Vec<_>>();
    let dot: u64 = a.0.iter().zip(&b.1).map(|(s, t)| *s as u64 * *t as u64).sum();
    (add(&a.0, &b.0), add(&a.1, &b.1), ((a.2 as u64 + b.2 as u64 + dot) % p as u64) as u32)
}

/// Dense `(n+2)×(n+2)` matrix of a triple.
pub fn triple_matrix(a: &Triple) -> Vec<Vec<u32>> {
    let n = a.0.len();
    let m = n + 2;
    let mut mat = vec![vec![0u32; m]; m];
    for (i, row) in mat.iter_mut().enumerate() {
        row[i] = 1;
    }
    for t in 0..n {
        mat[0][t + 1] = a.0[t];
        mat[t + 1][m - 1] = a.1[t];
    }
    mat[0][m - 1] = a.2;
    mat
}

pub fn dense_mul(a: &[Vec<u32>], b: &[Vec<u32>], p: u32) -> Vec<Vec<u32>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| ((0..n).map(|k| a[i][k] as u64 * b[k][j] as u64).sum::<u64>() % p as u64) as u32)
                .collect()
        })
        .collect()
}

/// All `n×n` upper-unitriangular matrices over F_p as dense matrices.
pub fn unitriangular_dense(n: usize, p: u32) -> Vec<Vec<Vec<u32>>> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = (p as usize).pow(slots.len() as u32);
    (0..total)
        .map(|mut c| {
            let mut m = vec![vec![0u32; n]; n];
            for (i, row) in m.iter_mut().enumerate() {
                row[i] = 1;
            }
            for &(i, j) in &slots {
                m[i][j] = (c % p as usize) as u32;
                c /= p as usize;
            }
            m
        })
        .collect()
}

/// Number of conjugacy classes: each unvisited element is conjugated by every
/// group element. Needs an inverse for each element, found by search.
pub fn class_count_by_orbits<T, F>(elems: &[T], mul: F) -> usize
where
    T: Clone + Eq + std::hash::Hash,
    F: Fn(&T, &T) -> T,
{
    let index: HashMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let identity = elems
        .iter()
        .find(|e| elems.iter().all(|g| mul(e, g) == *g))
        .expect("group has an identity")
        .clone();
    let inverse: Vec<usize> = elems
        .iter()
        .map(|a| elems.iter().position(|b| mul(a, b) == identity).expect("inverse exists"))
        .collect();
    let mut seen = vec![false; elems.len()];
    let mut classes = 0;
    for a in 0..elems.len() {
        if seen[a] {
            continue;
        }
        classes += 1;
        for (g, gi) in elems.iter().zip(&inverse) {
            let c = mul(&mul(&elems[*gi], &elems[a]), g);
            seen[index[&c]] = true;
        }
    }
    classes
}

/// Ordered pairs `(a, b)` with `ab = ba`.
pub fn commuting_pairs_by_products<T: Eq, F: Fn(&T, &T) -> T>(elems: &[T], mul: F) -> u64 {
    let mut e = 0;
    for a in elems {
        for b in elems {
            if mul(a, b) == mul(b, a) {
                e += 1;
            }
        }
    }
    e
}

/// Γ̃(H_{2k+1}(p)) adjacency from element products: classes `(x, y)` in
/// base-p digit order (x before y, most significant first), joined when
/// the `z = 0` representatives commute. Loops on the diagonal.
pub fn quotient_adjacency(k: usize, p: u32) -> Vec<Vec<bool>> {
    let n = (p as usize).pow(2 * k as u32);
    let label = |mut c: usize| {
        let mut d = vec![0u32; 2 * k];
        for slot in d.iter_mut().rev() {
            *slot = (c % p as usize) as u32;
            c /= p as usize;
        }
        (d[..k].to_vec(), d[k..].to_vec(), 0u32)
    };
    let reps: Vec<Triple> = (0..n).map(label).collect();
    reps.iter()
        .map(|a| reps.iter().map(|b| triple_mul(a, b, p) == triple_mul(b, a, p)).collect())
        .collect()
}

pub fn codegree_by_scan(adj: &[Vec<bool>], v: usize, w: usize) -> u64 {
    (0..adj.len()).filter(|&u| adj[v][u] && adj[w][u]).count() as u64
}

/// Nonzero squares mod `q`, by squaring every residue.
pub fn squares_mod(q: u64) -> BTreeSet<u64> {
    (1..q).map(|a| a * a % q).collect()
}

pub fn is_square_by_enumeration(a: u64, q: u64) -> bool {
    squares_mod(q).contains(&(a % q))
}

/// Bit-model adjacency re-derived: the smaller index picks the bit.
fn bit_edge(i: u64, j: u64) -> bool {
    if i == j {
        return false;
    }
    let (s, l) = if i < j { (i, j) } else { (j, i) };
    s < 64 && l & (1u64 << s) != 0
}

/// `Σ_{j < L, j ~ i} 2^{-(j+1)}`.
pub fn neighborhood_mass_truncated(i: u64, l: u64) -> BigRational {
    let mut s = BigRational::zero();
    for j in 0..l {
        if bit_edge(i, j) {
            s += BigRational::new(BigInt::one(), BigInt::one() << (j + 1));
        }
    }
    s
}

/// Least `z` outside `U ∪ V` joined to all of `U` and none of `V`, scanning
/// up to `limit`.
pub fn extension_scan(u: &BTreeSet<u64>, v: &BTreeSet<u64>, limit: u64) -> Option<u64> {
    (0..=limit).find(|&z| {
        !u.contains(&z) && !v.contains(&z) && u.iter().all(|&x| bit_edge(z, x)) && v.iter().all(|&x| !bit_edge(z, x))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for perm in permutations(n - 1) {
        for pos in 0..=perm.len() {
            let mut q = perm.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative edge list per isomorphism type of graphs on `k`
/// vertices, by minimizing the edge bitmask over all relabelings.
pub fn graph_types(k: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let perms = permutations(k);
    let mut seen = HashSet::new();
    let mut reps = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = perms
            .iter()
            .map(|pi| {
                pairs.iter().enumerate().fold(0u32, |acc, (b, &(i, j))| {
                    if mask >> b & 1 == 1 {
                        let (a, c) = (pi[i].min(pi[j]), pi[i].max(pi[j]));
                        acc | 1 << pairs.iter().position(|&e| e == (a, c)).unwrap()
                    } else {
                        acc
                    }
                })
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            reps.push(pairs.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &e)| e).collect());
        }
    }
    reps
}

/// Total-variation curve by dense floating matrix powering, distance to uniform.
pub fn tv_by_dense_powering(k: &[Vec<f64>], start: usize, steps: usize) -> Vec<f64> {
    let n = k.len();
    let mut mu = vec![0.0; n];
    mu[start] = 1.0;
    let mut out = Vec::with_capacity(steps + 1);
    for s in 0..=steps {
        if s > 0 {
            let mut next = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    next[j] += mu[i] * k[i][j];
                }
            }
            mu = next;
        }
        out.push(0.5 * mu.iter().map(|m| (m - 1.0 / n as f64).abs()).sum::<f64>());
    }
    out
}
