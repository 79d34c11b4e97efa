//! Linear algebra over the coefficient field and over presented algebras.

use num_traits::Zero;

use super::algebra::PresentedAlgebra;
use super::field::{Coef, CoeffField};
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// Row-reduces in place; returns pivot columns.
pub fn row_reduce(field: CoeffField, m: &mut [Vec<Coef>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = field.inv(&m[r][c]);
        for v in m[r].iter_mut() {
            *v = field.mul(v, &inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = field.mul(&f, &m[r][j]);
                    m[i][j] = field.sub(&m[i][j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(field: CoeffField, m: &[Vec<Coef>]) -> usize {
    let mut c = m.to_vec();
    row_reduce(field, &mut c).len()
}

/// Basis of `{x : m x = 0}`.
pub fn nullspace(field: CoeffField, m: &[Vec<Coef>], ncols: usize) -> Vec<Vec<Coef>> {
    let mut r = m.to_vec();
    let pivots = row_reduce(field, &mut r);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Coef::zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(&r[row][free]);
        }
        out.push(v);
    }
    out
}

/// A solution of `m x = b`, if any.
pub fn solve(field: CoeffField, m: &[Vec<Coef>], b: &[Coef], ncols: usize) -> Option<Vec<Coef>> {
    let mut aug: Vec<Vec<Coef>> = m
        .iter()
        .zip(b)
        .map(|(row, v)| {
            let mut r = row.clone();
            r.push(v.clone());
            r
        })
        .collect();
    let pivots = row_reduce(field, &mut aug);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Coef::zero(); ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][ncols].clone();
    }
    Some(x)
}

pub type PolyMatrix = Vec<Vec<Poly>>;

/// Ring arithmetic in a presented algebra with reduced results.
pub struct AlgebraRing<'a> {
    pub alg: &'a PresentedAlgebra,
    pub budget: &'a Budget,
}

impl<'a> AlgebraRing<'a> {
    pub fn new(alg: &'a PresentedAlgebra, budget: &'a Budget) -> Self {
        AlgebraRing { alg, budget }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.alg.reduce(&(a * b), self.budget)
    }

    pub fn matmul(&self, a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
        let n = a.len();
        let k = b.len();
        let m = b.first().map_or(0, Vec::len);
        let mut out = vec![vec![self.alg.zero(); m]; n];
        for i in 0..n {
            for j in 0..m {
                let mut acc = self.alg.zero();
                for l in 0..k {
                    acc = &acc + &(&a[i][l] * &b[l][j]);
                }
                out[i][j] = self.alg.reduce(&acc, self.budget)?;
            }
        }
        Ok(out)
    }

    pub fn identity(&self, n: usize) -> PolyMatrix {
        (0..n).map(|i| (0..n).map(|j| if i == j { self.alg.one() } else { self.alg.zero() }).collect()).collect()
    }

    /// Coefficients `[1, c_1, …, c_n]` of `det(t·I − m)`, highest degree
    /// first, by Berkowitz's division-free recursion.
    pub fn charpoly(&self, m: &PolyMatrix) -> Result<Vec<Poly>> {
        let n = m.len();
        let mut v: Vec<Poly> = vec![self.alg.one()];
        for r in 1..=n {
            // leading principal r×r block: previous block, new row/column
            let a = &m[r - 1][r - 1];
            let row: Vec<Poly> = (0..r - 1).map(|j| m[r - 1][j].clone()).collect();
            let mut col: Vec<Poly> = (0..r - 1).map(|i| m[i][r - 1].clone()).collect();
            let mut toep = vec![self.alg.one(), -a];
            for _ in 0..r.saturating_sub(1) {
                let mut s = self.alg.zero();
                for (x, y) in row.iter().zip(&col) {
                    s = &s + &(x * y);
                }
                toep.push(-&self.alg.reduce(&s, self.budget)?);
                // col <- M_{r-1} col
                let mut next = Vec::with_capacity(r - 1);
                for i in 0..r - 1 {
                    let mut s = self.alg.zero();
                    for j in 0..r - 1 {
                        s = &s + &(&m[i][j] * &col[j]);
                    }
                    next.push(self.alg.reduce(&s, self.budget)?);
                }
                col = next;
            }
            let mut nv = Vec::with_capacity(r + 1);
            for i in 0..=r {
                let mut s = self.alg.zero();
                for j in 0..v.len() {
                    if i >= j && i - j < toep.len() {
                        s = &s + &(&toep[i - j] * &v[j]);
                    }
                }
                nv.push(self.alg.reduce(&s, self.budget)?);
            }
            v = nv;
        }
        Ok(v)
    }

    pub fn det(&self, m: &PolyMatrix) -> Result<Poly> {
        let n = m.len();
        let cp = self.charpoly(m)?;
        let c = cp[n].clone();
        Ok(if n.is_multiple_of(2) { c } else { -&c })
    }

    /// Adjugate via Cayley–Hamilton.
    pub fn adjugate(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        let n = m.len();
        if n == 0 {
            return Ok(vec![]);
        }
        let cp = self.charpoly(m)?;
        // adj = (-1)^{n-1} (M^{n-1} + c1 M^{n-2} + ... + c_{n-1} I)
        let mut acc = self.identity(n);
        for c in cp.iter().take(n).skip(1) {
            acc = self.matmul(&acc, m)?;
            for (i, row) in acc.iter_mut().enumerate() {
                row[i] = self.alg.reduce(&(&row[i] + c), self.budget)?;
            }
        }
        if n.is_multiple_of(2) {
            for row in acc.iter_mut() {
                for v in row.iter_mut() {
                    *v = -&*v;
                }
            }
        }
        Ok(acc)
    }

    /// Inverse matrix when the determinant is a unit.
    pub fn inverse(&self, m: &PolyMatrix) -> Result<Option<PolyMatrix>> {
        let d = self.det(m)?;
        let Some(dinv) = self.alg.inverse(&d, self.budget)? else { return Ok(None) };
        let adj = self.adjugate(m)?;
        let mut out = adj;
        for row in out.iter_mut() {
            for v in row.iter_mut() {
                *v = self.mul(v, &dinv)?;
            }
        }
        Ok(Some(out))
    }

    pub fn matrices_equal(&self, a: &PolyMatrix, b: &PolyMatrix) -> Result<bool> {
        if a.len() != b.len() {
            return Ok(false);
        }
        for (ra, rb) in a.iter().zip(b) {
            if ra.len() != rb.len() {
                return Ok(false);
            }
            for (x, y) in ra.iter().zip(rb) {
                if !self.alg.eq_elems(x, y, self.budget)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Jacobian determinant of `rels` with respect to `vars`.
pub fn jacobian_det(ring: &AlgebraRing<'_>, rels: &[Poly], vars: &[usize]) -> Result<Poly> {
    if rels.len() != vars.len() {
        return Err(AlgError::InvalidInput(format!(
            "Jacobian needs a square system: {} relations, {} variables",
            rels.len(),
            vars.len()
        )));
    }
    let m: PolyMatrix = rels.iter().map(|r| vars.iter().map(|&v| r.derivative(v)).collect()).collect();
    ring.det(&m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_companion_matrix() {
        let q = CoeffField::Rationals;
        let b = Budget::default();
        let a = PresentedAlgebra::polynomial_ring(q, &["u"]);
        let r = AlgebraRing::new(&a, &b);
        // multiplication by x on Q[x] over Q[u = x^2], basis {1, x}
        let m = vec![vec![a.zero(), a.var(0)], vec![a.one(), a.zero()]];
        let cp = r.charpoly(&m).unwrap();
        assert_eq!(cp.len(), 3);
        assert!(cp[1].is_zero());
        assert_eq!(a.format(&cp[2]), "-u");
        assert_eq!(a.format(&r.det(&m).unwrap()), "-u");
    }

    #[test]
    fn berkowitz_matches_cofactor_expansion_on_3x3() {
        let q = CoeffField::Rationals;
        let b = Budget::default();
        let a = PresentedAlgebra::polynomial_ring(q, &["x", "y"]);
        let r = AlgebraRing::new(&a, &b);
        let e = |s: &str| a.parse_elem(s).unwrap();
        let m = vec![
            vec![e("x"), e("1"), e("y")],
            vec![e("2"), e("x*y"), e("0")],
            vec![e("y"), e("3"), e("x + 1")],
        ];
        let cof = |i: usize, j: usize| -> Poly {
            let rows: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let cols: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]]) - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]])
        };
        let expect = &(&(&m[0][0] * &cof(0, 0)) - &(&m[0][1] * &cof(0, 1))) + &(&m[0][2] * &cof(0, 2));
        assert_eq!(r.det(&m).unwrap(), expect);
        let adj = r.adjugate(&m).unwrap();
        let prod = r.matmul(&m, &adj).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { expect.clone() } else { a.zero() };
                assert_eq!(prod[i][j], want);
            }
        }
    }

    #[test]
    fn nullspace_and_solve() {
        let f = CoeffField::Prime(5);
        let m = vec![vec![f.from_i64(1), f.from_i64(2)], vec![f.from_i64(2), f.from_i64(4)]];
        let ns = nullspace(f, &m, 2);
        assert_eq!(ns, vec![vec![f.from_i64(3), f.from_i64(1)]]);
        assert!(solve(f, &m, &[f.from_i64(1), f.from_i64(1)], 2).is_none());
        assert_eq!(rank(f, &m), 1);
    }
}
