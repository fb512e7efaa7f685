use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::graph::CommGraph;
use crate::error::{Error, Result};
use crate::fp::{symplectic, FpVec, PrimeModulus};
use crate::heisenberg::{class_of, HeisElem};

/// A finite simple graph on vertices `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleGraph {
    k: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn empty(k: usize) -> Self {
        SimpleGraph {
            k,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(k: usize) -> Self {
        let mut g = Self::empty(k);
        for i in 0..k {
            for j in i + 1..k {
                g.edges.insert((i, j));
            }
        }
        g
    }

    pub fn path(k: usize) -> Self {
        let edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
        Self::from_edges(k, &edges).expect("valid path")
    }

    pub fn from_edges(k: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(k);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::Domain(format!("loop at {u} in a simple graph")));
        }
        if u >= self.k || v >= self.k {
            return Err(Error::Domain(format!("edge ({u},{v}) outside 0..{}", self.k)));
        }
        self.edges.insert((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Parse `u v` lines. `#` lines are comments, except that a
    /// `# vertices=N` header fixes the vertex count (needed for isolated
    /// vertices); otherwise it is one more than the largest index.
    pub fn parse_edgelist(text: &str) -> Result<Self> {
        let mut declared = None;
        let mut pairs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("vertices=") {
                    declared = Some(v.trim().parse::<usize>().map_err(|e| {
                        Error::Domain(format!("line {}: bad vertex count: {e}", lineno + 1))
                    })?);
                }
                continue;
            }
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Domain(format!("line {}: {e}", lineno + 1)))?;
            let [u, v] = nums[..] else {
                return Err(Error::Domain(format!(
                    "line {}: expected two vertex ids, got {}",
                    lineno + 1,
                    nums.len()
                )));
            };
            pairs.push((u, v));
        }
        let k = declared.unwrap_or_else(|| pairs.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0));
        Self::from_edges(k, &pairs)
    }
}

/// Images of a `k`-vertex graph in H_{2k+1}(p) and their verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingWitness {
    pub k: usize,
    pub p: u32,
    pub vertex_images: Vec<HeisElem>,
    pub distinct_noncentral_classes: bool,
    pub pattern_matches: bool,
    pub verified: bool,
}

/// Vertex `i` goes to `[e_i, c_i, 0]` where, for `j < i`, `c_i(j) = 0` when
/// `{i, j}` is an edge and `1` otherwise, and `c_i(j) = 0` for `j >= i`.
/// Then `ω(v_i, v_j) = −c_i(j)` for `j < i`, so commuting is exactly adjacency.
pub fn embed_graph(g: &SimpleGraph, p: PrimeModulus) -> Result<EmbeddingWitness> {
    let k = g.vertex_count();
    if k == 0 {
        return Err(Error::Precondition("graph must have at least one vertex".into()));
    }
    let images: Vec<HeisElem> = (0..k)
        .map(|i| {
            let c = (0..k).map(|j| u64::from(j < i && !g.has_edge(i, j)));
            HeisElem {
                x: FpVec::basis(k, i),
                y: FpVec::new(c, p),
                z: 0,
            }
        })
        .collect();
    let classes: BTreeSet<_> = images.iter().map(class_of).collect();
    let distinct = classes.len() == k && images.iter().all(|a| !a.is_central());
    let mut matches = true;
    for i in 0..k {
        for j in 0..i {
            let w = symplectic(&images[i].x, &images[i].y, &images[j].x, &images[j].y, p)?;
            if (w == 0) != g.has_edge(i, j) {
                matches = false;
            }
        }
    }
    Ok(EmbeddingWitness {
        k,
        p: p.get(),
        vertex_images: images,
        distinct_noncentral_classes: distinct,
        pattern_matches: matches,
        verified: distinct && matches,
    })
}

/// Whether the listed vertices of `g` induce exactly `pattern` (loops ignored),
/// vertex `i` of the pattern corresponding to `vertices[i]`.
pub fn induced_subgraph_check(g: &CommGraph, vertices: &[usize], pattern: &SimpleGraph) -> Result<bool> {
    if vertices.len() != pattern.vertex_count() {
        return Err(Error::Dimension {
            expected: pattern.vertex_count(),
            found: vertices.len(),
        });
    }
    if let Some(&bad) = vertices.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(Error::Domain(format!("vertex {bad} out of range")));
    }
    for i in 0..vertices.len() {
        for j in 0..i {
            if g.adjacent(vertices[i], vertices[j]) != pattern.has_edge(i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commgraph::{build_graph, Family, Mode};
    use crate::group::DEFAULT_CAP;

    fn p3() -> PrimeModulus {
        PrimeModulus::new(3).unwrap()
    }

    fn control(w: &EmbeddingWitness, i: usize) -> Vec<u32> {
        w.vertex_images[i].y.entries().to_vec()
    }

    #[test]
    fn triangle_needs_no_control_bits() {
        let w = embed_graph(&SimpleGraph::complete(3), p3()).unwrap();
        assert!(w.verified);
        assert!((0..3).all(|i| control(&w, i).iter().all(|&c| c == 0)));
    }

    #[test]
    fn path_control_bits() {
        let w = embed_graph(&SimpleGraph::path(3), p3()).unwrap();
        assert!(w.verified);
        // 1-based c_3(1) = 1, c_2(1) = 0, c_3(2) = 0.
        assert_eq!(control(&w, 2)[0], 1);
        assert_eq!(control(&w, 1)[0], 0);
        assert_eq!(control(&w, 2)[1], 0);
        let v = &w.vertex_images;
        assert_eq!(symplectic(&v[0].x, &v[0].y, &v[2].x, &v[2].y, p3()).unwrap(), 1);
    }

    #[test]
    fn empty_graph_all_control_bits_set() {
        let w = embed_graph(&SimpleGraph::empty(3), p3()).unwrap();
        assert!(w.verified);
        assert_eq!(control(&w, 1), vec![1, 0, 0]);
        assert_eq!(control(&w, 2), vec![1, 1, 0]);
    }

    #[test]
    fn zero_vertices_rejected() {
        assert!(embed_graph(&SimpleGraph::empty(0), p3()).is_err());
    }

    #[test]
    fn induced_checks_in_quotient_graph() {
        let g = build_graph(Family::Heisenberg { k: 3 }, p3(), Mode::Quotient, true, DEFAULT_CAP).unwrap();
        for pattern in [SimpleGraph::complete(3), SimpleGraph::path(3), SimpleGraph::empty(3)] {
            let w = embed_graph(&pattern, p3()).unwrap();
            let vs: Vec<usize> = w.vertex_images.iter().map(|a| g.vertex_of(a).unwrap()).collect();
            assert!(induced_subgraph_check(&g, &vs, &pattern).unwrap());
        }
        assert!(induced_subgraph_check(&g, &[5], &SimpleGraph::empty(1)).unwrap());
        // [e_1, 0] and [0, e_1] do not commute.
        let a = g.vertex_of(&HeisElem::new(&[1, 0, 0], &[0, 0, 0], 0, p3()).unwrap()).unwrap();
        let b = g.vertex_of(&HeisElem::new(&[0, 0, 0], &[1, 0, 0], 0, p3()).unwrap()).unwrap();
        assert!(!induced_subgraph_check(&g, &[a, b], &SimpleGraph::complete(2)).unwrap());
    }

    #[test]
    fn edgelist_parsing() {
        let g = SimpleGraph::parse_edgelist("# a path\n# vertices=4\n0 1\n1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(g.has_edge(2, 1) && !g.has_edge(0, 2));
        assert!(SimpleGraph::parse_edgelist("0 0\n").is_err());
        assert!(SimpleGraph::parse_edgelist("0 1 2\n").is_err());
        assert!(SimpleGraph::parse_edgelist("0 x\n").is_err());
    }
}
