use std::fmt;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bitmatrix::BitMatrix;
use crate::error::{Error, Result};
use crate::fp::{symplectic_unchecked, FpVec, PrimeModulus};
use crate::group::{check_cap, digits, pow_u128, undigits, FiniteGroup};
use crate::heisenberg::{ClassLabel, HeisElem, Heisenberg};
use crate::utgroup::{UnitriangularGroup, UtMatrix};

/// Largest vertex count stored densely.
pub const DENSE_LIMIT: u64 = 1 << 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// H_{2k+1}(p).
    Heisenberg { k: usize },
    /// UT(n, p).
    Ut { n: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Γ: one vertex per group element.
    Full,
    /// Γ̃: one vertex per coset of the center.
    Quotient,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Heisenberg { k } => write!(f, "heisenberg k={k}"),
            Family::Ut { n } => write!(f, "ut n={n}"),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::Quotient => "quotient",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum VertexTag {
    Heis { elem: HeisElem },
    Ut { matrix: UtMatrix },
    Class { label: ClassLabel },
}

/// A commuting graph with a dense adjacency store.
///
/// Vertices are numbered in the canonical element order of the group (full
/// mode) or by the label `(x, y)` read as base-p digits (quotient mode), so
/// vertex 0 is always the identity / the center.
#[derive(Debug, Clone)]
pub struct CommGraph {
    pub family: Family,
    pub p: PrimeModulus,
    pub mode: Mode,
    pub loops_included: bool,
    adj: BitMatrix,
}

fn rows_from<F>(n: usize, loops: bool, edge: F) -> BitMatrix
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let words = n.div_ceil(64);
    let rows: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..n {
                if (i == j && loops) || (i != j && edge(i, j)) {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    BitMatrix::from_rows(n, rows)
}

/// Build Γ or Γ̃ for a Heisenberg or unitriangular group.
pub fn build_graph(family: Family, p: PrimeModulus, mode: Mode, loops: bool, cap: u64) -> Result<CommGraph> {
    let vertices: u128 = match (family, mode) {
        (Family::Heisenberg { k }, Mode::Full) => pow_u128(p.get(), 2 * k as u32 + 1),
        (Family::Heisenberg { k }, Mode::Quotient) => pow_u128(p.get(), 2 * k as u32),
        (Family::Ut { n }, Mode::Full) => UnitriangularGroup::new(n, p).order_u128(),
        (Family::Ut { .. }, Mode::Quotient) => {
            return Err(Error::Precondition(
                "quotient graphs are only defined for the Heisenberg family".into(),
            ))
        }
    };
    check_cap(vertices, cap.min(DENSE_LIMIT))?;
    let n = vertices as usize;
    let adj = match family {
        Family::Heisenberg { k } => {
            // Both modes only look at (x, y); in full mode z is the last digit.
            let stride = if mode == Mode::Full { p.get() as usize } else { 1 };
            let labels: Vec<Vec<u32>> = (0..n / stride)
                .map(|c| digits(c as u64, p.get(), 2 * k))
                .collect();
            rows_from(n, loops, |i, j| {
                let (a, b) = (&labels[i / stride], &labels[j / stride]);
                symplectic_unchecked(&a[..k], &a[k..], &b[..k], &b[k..], p) == 0
            })
        }
        Family::Ut { n: dim } => {
            let g = UnitriangularGroup::new(dim, p);
            let elems = g.elements();
            rows_from(n, loops, |i, j| g.commutes(&elems[i], &elems[j]))
        }
    };
    Ok(CommGraph {
        family,
        p,
        mode,
        loops_included: loops,
        adj,
    })
}

impl CommGraph {
    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        self.adj.get(v, w)
    }

    /// `|N(v)|`, counting `v` itself when loops are included.
    pub fn degree(&self, v: usize) -> u64 {
        self.adj.row_count(v)
    }

    /// `|N(v) ∩ N(w)|`.
    pub fn codegree(&self, v: usize, w: usize) -> u64 {
        self.adj.and_count(v, w)
    }

    /// Ordered adjacent pairs `(v, w)`, including `(v, v)` for loops.
    pub fn ordered_edges(&self) -> u64 {
        (0..self.vertex_count()).map(|v| self.degree(v)).sum()
    }

    pub fn without_loops(&self) -> CommGraph {
        let mut g = self.clone();
        for v in 0..g.vertex_count() {
            g.adj.set(v, v, false);
        }
        g.loops_included = false;
        g
    }

    pub fn with_loops(&self) -> CommGraph {
        let mut g = self.clone();
        for v in 0..g.vertex_count() {
            g.adj.set(v, v, true);
        }
        g.loops_included = true;
        g
    }

    /// Heisenberg parameter `k`, if this is a Heisenberg graph.
    pub fn heisenberg_k(&self) -> Option<usize> {
        match self.family {
            Family::Heisenberg { k } => Some(k),
            Family::Ut { .. } => None,
        }
    }

    pub fn vertex_tag(&self, v: usize) -> VertexTag {
        match (self.family, self.mode) {
            (Family::Heisenberg { k }, Mode::Full) => VertexTag::Heis {
                elem: Heisenberg::new(k, self.p).element(v as u64),
            },
            (Family::Heisenberg { k }, Mode::Quotient) => {
                let d = digits(v as u64, self.p.get(), 2 * k);
                let x = FpVec::from_reduced(d[..k].to_vec(), self.p);
                let y = FpVec::from_reduced(d[k..].to_vec(), self.p);
                VertexTag::Class {
                    label: if v == 0 {
                        // The zero vertex stands for the whole center.
                        ClassLabel::Central { z: 0 }
                    } else {
                        ClassLabel::Noncentral { x, y }
                    },
                }
            }
            (Family::Ut { n }, _) => VertexTag::Ut {
                matrix: UnitriangularGroup::new(n, self.p).element(v as u64),
            },
        }
    }

    pub fn vertex_tags(&self) -> Vec<VertexTag> {
        (0..self.vertex_count()).map(|v| self.vertex_tag(v)).collect()
    }

    /// Vertex carrying a Heisenberg element: the element itself in full mode,
    /// its class in quotient mode.
    pub fn vertex_of(&self, a: &HeisElem) -> Result<usize> {
        let Family::Heisenberg { k } = self.family else {
            return Err(Error::Precondition("not a Heisenberg graph".into()));
        };
        Heisenberg::new(k, self.p).check(a)?;
        Ok(match self.mode {
            Mode::Full => Heisenberg::new(k, self.p).index_of(a) as usize,
            Mode::Quotient => {
                undigits(a.x.entries().iter().chain(a.y.entries()).copied(), self.p.get()) as usize
            }
        })
    }

    /// Write the graph as an edge list: `#` header lines, then `u v` with
    /// `u <= v`, loops as `v v`.
    pub fn write_edgelist<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let (name, key, val) = match self.family {
            Family::Heisenberg { k } => ("heisenberg", "k", k),
            Family::Ut { n } => ("ut", "n", n),
        };
        writeln!(out, "# family={name}")?;
        writeln!(out, "# p={}", self.p)?;
        writeln!(out, "# {key}={val}")?;
        writeln!(out, "# mode={}", self.mode)?;
        writeln!(out, "# loops={}", self.loops_included)?;
        writeln!(out, "# vertices={}", self.vertex_count())?;
        for u in 0..self.vertex_count() {
            for v in u..self.vertex_count() {
                if self.adj.get(u, v) {
                    writeln!(out, "{u} {v}")?;
                }
            }
        }
        Ok(())
    }
}
