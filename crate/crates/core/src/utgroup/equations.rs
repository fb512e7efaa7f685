//! The commuting equations `E_{i,j}` for `X, Y ∈ U_{n+2}` with fixed cores
//! `A = u(X)`, `B = u(Y)`, as linear forms in the shell variables.
//!
//! Shell variables are ordered `(x_{1,2}, …, x_{1,n+1}, x_{2,n+2}, …, x_{n+1,n+2})`,
//! and the same for `Y`.

use serde::{Deserialize, Serialize};

use super::matrix::{commutes_unchecked, UtMatrix};
use crate::error::{Error, Result};
use crate::fp::{symplectic_unchecked, PrimeModulus};
use crate::heisenberg::HeisElem;

/// Where a shell variable sits in the ambient `(n+2)×(n+2)` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShellVar {
    /// `x_{1,c}` for `2 <= c <= n+1`.
    TopRow(usize),
    /// `x_{r,n+2}` for `2 <= r <= n+1`.
    RightColumn(usize),
}

impl ShellVar {
    /// Position in the pinned ordering.
    pub fn slot(self, n: usize) -> usize {
        match self {
            ShellVar::TopRow(c) => c - 2,
            ShellVar::RightColumn(r) => n + r - 2,
        }
    }

    pub fn from_slot(slot: usize, n: usize) -> Self {
        if slot < n {
            ShellVar::TopRow(slot + 2)
        } else {
            ShellVar::RightColumn(slot - n + 2)
        }
    }

    /// The ambient index that names this variable (column for top row, row for right column).
    pub fn index(self) -> usize {
        match self {
            ShellVar::TopRow(c) => c,
            ShellVar::RightColumn(r) => r,
        }
    }
}

/// `Σ x_coeffs·shell(X) + Σ y_coeffs·shell(Y) ≡ 0 (mod p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearEquation {
    /// The `(i, j)` entry of `XY` and `YX` this equation compares (1-based, ambient).
    pub position: (usize, usize),
    pub x_coeffs: Vec<u32>,
    pub y_coeffs: Vec<u32>,
}

impl LinearEquation {
    pub fn is_trivial(&self) -> bool {
        self.x_coeffs.iter().chain(&self.y_coeffs).all(|&c| c == 0)
    }

    pub fn eval(&self, xs: &[u32], ys: &[u32], p: PrimeModulus) -> u32 {
        let s: u64 = self
            .x_coeffs
            .iter()
            .zip(xs)
            .chain(self.y_coeffs.iter().zip(ys))
            .map(|(&c, &v)| c as u64 * v as u64)
            .sum();
        p.reduce(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationSystem {
    pub n: usize,
    pub p: PrimeModulus,
    /// Whether the cores themselves commute; if not, nothing above them can.
    pub cores_commute: bool,
    /// `E_{1,3}, …, E_{1,n+1}`.
    pub group_a: Vec<LinearEquation>,
    /// `E_{2,n+2}, …, E_{n,n+2}`.
    pub group_b: Vec<LinearEquation>,
}

/// Shell coordinates of a Heisenberg element in the pinned variable order.
pub fn shell_vector(h: &HeisElem) -> Vec<u32> {
    h.x.entries().iter().chain(h.y.entries()).copied().collect()
}

/// `E_{1,j}`: `Σ_{1<k<j} x_{1,k} b_{k,j} − Σ_{1<k<j} y_{1,k} a_{k,j}`.
fn top_row_equation(a: &UtMatrix, b: &UtMatrix, j: usize, p: PrimeModulus) -> LinearEquation {
    let n = a.n();
    let mut x_coeffs = vec![0; 2 * n];
    let mut y_coeffs = vec![0; 2 * n];
    for k in 2..j {
        // Core entries in ambient coordinates sit at (k-1, j-1) of the U_n matrix.
        x_coeffs[ShellVar::TopRow(k).slot(n)] = b.get(k - 1, j - 1);
        y_coeffs[ShellVar::TopRow(k).slot(n)] = p.neg(a.get(k - 1, j - 1));
    }
    LinearEquation {
        position: (1, j),
        x_coeffs,
        y_coeffs,
    }
}

/// `E_{i,n+2}`: `Σ_{i<k≤n+1} a_{i,k} y_{k,n+2} − Σ_{i<k≤n+1} b_{i,k} x_{k,n+2}`.
fn right_column_equation(a: &UtMatrix, b: &UtMatrix, i: usize, p: PrimeModulus) -> LinearEquation {
    let n = a.n();
    let mut x_coeffs = vec![0; 2 * n];
    let mut y_coeffs = vec![0; 2 * n];
    for k in i + 1..=n + 1 {
        y_coeffs[ShellVar::RightColumn(k).slot(n)] = a.get(i - 1, k - 1);
        x_coeffs[ShellVar::RightColumn(k).slot(n)] = p.neg(b.get(i - 1, k - 1));
    }
    LinearEquation {
        position: (i, n + 2),
        x_coeffs,
        y_coeffs,
    }
}

/// Build the shell equations for cores `a = u(X)` and `b = u(Y)`, both in U_n.
pub fn equation_system(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> Result<EquationSystem> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            expected: a.n(),
            found: b.n(),
        });
    }
    let n = a.n();
    Ok(EquationSystem {
        n,
        p,
        cores_commute: commutes_unchecked(a, b, p),
        group_a: (3..=n + 1).map(|j| top_row_equation(a, b, j, p)).collect(),
        group_b: (2..=n).map(|i| right_column_equation(a, b, i, p)).collect(),
    })
}

/// `E_{1,2}` and `E_{n+1,n+2}`, produced by the same rules; always `0 = 0`.
pub fn omitted_equations(a: &UtMatrix, b: &UtMatrix, p: PrimeModulus) -> [LinearEquation; 2] {
    let n = a.n();
    [top_row_equation(a, b, 2, p), right_column_equation(a, b, n + 1, p)]
}

impl EquationSystem {
    /// All (a) and (b) equations hold on the given shells.
    pub fn linear_hold(&self, xs: &[u32], ys: &[u32]) -> bool {
        self.group_a
            .iter()
            .chain(&self.group_b)
            .all(|e| e.eval(xs, ys, self.p) == 0)
    }

    /// The corner equation `E_{1,n+2}`: the shells commute in H_{2n+1}.
    pub fn heisenberg_holds(&self, hx: &HeisElem, hy: &HeisElem) -> bool {
        symplectic_unchecked(hx.x.entries(), hx.y.entries(), hy.x.entries(), hy.y.entries(), self.p) == 0
    }

    /// Cores commute and every shell equation holds.
    pub fn holds(&self, hx: &HeisElem, hy: &HeisElem) -> bool {
        self.cores_commute
            && self.linear_hold(&shell_vector(hx), &shell_vector(hy))
            && self.heisenberg_holds(hx, hy)
    }

    /// Shell variables of `X` (resp. `Y`) whose coefficient vanishes in every
    /// (a) and (b) equation.
    pub fn zero_coefficient_variables(&self) -> (Vec<ShellVar>, Vec<ShellVar>) {
        let n = self.n;
        let dead = |pick: &dyn Fn(&LinearEquation) -> &Vec<u32>| -> Vec<ShellVar> {
            (0..2 * n)
                .filter(|&s| self.group_a.iter().chain(&self.group_b).all(|e| pick(e)[s] == 0))
                .map(|s| ShellVar::from_slot(s, n))
                .collect()
        };
        (dead(&|e| &e.x_coeffs), dead(&|e| &e.y_coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteGroup, DEFAULT_CAP};
    use crate::heisenberg::Heisenberg;
    use crate::utgroup::{descendants, h_map, u_map, ut_commutes, UnitriangularGroup};

    fn p(v: u64) -> PrimeModulus {
        PrimeModulus::new(v).unwrap()
    }

    #[test]
    fn identity_cores_leave_only_the_corner_equation() {
        let m = p(3);
        let id = UtMatrix::identity(3);
        let sys = equation_system(&id, &id, m).unwrap();
        assert!(sys.cores_commute);
        assert_eq!(sys.group_a.len(), 2);
        assert_eq!(sys.group_b.len(), 2);
        assert!(sys.group_a.iter().chain(&sys.group_b).all(|e| e.is_trivial()));
    }

    #[test]
    fn omitted_equations_are_trivial() {
        let m = p(3);
        let g = UnitriangularGroup::new(4, m);
        for i in (0..g.order()).step_by(17) {
            for j in (0..g.order()).step_by(23) {
                let [e12, elast] = omitted_equations(&g.element(i), &g.element(j), m);
                assert_eq!(e12.position, (1, 2));
                assert_eq!(elast.position, (5, 6));
                assert!(e12.is_trivial() && elast.is_trivial());
            }
        }
    }

    #[test]
    fn system_matches_commuting_on_ut4_2() {
        let m = p(2);
        let g = UnitriangularGroup::new(4, m);
        let elems = g.elements();
        for x in &elems {
            for y in &elems {
                let sys = equation_system(&u_map(x).unwrap(), &u_map(y).unwrap(), m).unwrap();
                let lhs = sys.holds(&h_map(x, m).unwrap(), &h_map(y, m).unwrap());
                assert_eq!(lhs, ut_commutes(x, y, m).unwrap());
            }
        }
    }

    #[test]
    fn superdiagonal_core_has_small_shell_degree() {
        let m = p(3);
        // Ambient U_5 (cores in U_3): every shell pair, cross-checked by matrix products.
        let a = UtMatrix::superdiagonal_ones(3);
        let sys = equation_system(&a, &a, m).unwrap();
        let above = descendants(&a, 5, m, DEFAULT_CAP).unwrap();
        let mut max_deg = 0;
        for x in &above {
            let hx = h_map(x, m).unwrap();
            let mut d = 0;
            for y in &above {
                let by_eq = sys.holds(&hx, &h_map(y, m).unwrap());
                assert_eq!(by_eq, ut_commutes(x, y, m).unwrap());
                d += by_eq as usize;
            }
            max_deg = max_deg.max(d);
        }
        assert_eq!(max_deg, 27);

        // Ambient U_7 (cores in U_5): sampled X against every Y shell.
        let a = UtMatrix::superdiagonal_ones(5);
        let sys = equation_system(&a, &a, m).unwrap();
        let shells = Heisenberg::new(5, m).elements();
        let vecs: Vec<Vec<u32>> = shells.iter().map(shell_vector).collect();
        for (hx, xs) in shells.iter().zip(&vecs).step_by(9973) {
            let d = shells
                .iter()
                .zip(&vecs)
                .filter(|(hy, ys)| sys.linear_hold(xs, ys) && sys.heisenberg_holds(hx, hy))
                .count();
            assert!(d <= 27, "shell degree {d} above the superdiagonal core");
        }
    }
}
