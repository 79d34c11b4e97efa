//! Brute-force enumeration of `F_q`-points of a presented algebra.

use serde::Serialize;

use super::algebra::PresentedAlgebra;
use super::field::CoeffField;
use super::finite_field::GaloisField;
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// A point with one coordinate per internal variable (companions hold the
/// inverse of their partner).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FqPoint {
    pub coords: Vec<u32>,
}

/// Polynomial with coefficients moved into `GF(q)`.
#[derive(Clone, Debug)]
pub struct FqPoly {
    terms: Vec<(Vec<u32>, u32)>,
}

impl FqPoly {
    pub fn new(f: &Poly, gf: &GaloisField) -> Result<Self> {
        let field = f.field();
        if field.characteristic() != gf.characteristic() as u64 {
            return Err(AlgError::Precondition(format!(
                "coefficient field {field} does not embed in GF({})",
                gf.order()
            )));
        }
        let terms = f
            .terms()
            .map(|(m, c)| (m.0.clone(), gf.from_prime(field.residue(c).unwrap())))
            .collect();
        Ok(FqPoly { terms })
    }

    pub fn eval(&self, gf: &GaloisField, point: &[u32]) -> u32 {
        let mut acc = 0;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = gf.mul(t, gf.pow(point[i], k as u64));
                }
            }
            acc = gf.add(acc, t);
        }
        acc
    }

    fn max_var(&self) -> Option<usize> {
        self.terms.iter().flat_map(|(e, _)| e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i)).max()
    }
}

/// Every point of `Spec alg` over `GF(q)`, in lexicographic order of the
/// visible coordinates.
pub fn rational_points(alg: &PresentedAlgebra, q: u64, budget: &Budget) -> Result<Vec<FqPoint>> {
    let gf = GaloisField::new(q)?;
    rational_points_in(alg, &gf, budget)
}

pub fn rational_points_in(alg: &PresentedAlgebra, gf: &GaloisField, budget: &Budget) -> Result<Vec<FqPoint>> {
    if let CoeffField::Rationals = alg.field() {
        return Err(AlgError::Precondition("the rationals do not embed in a finite field".into()));
    }
    let n = alg.nvars();
    let visible = alg.visible_vars();
    // enumeration step at which each internal variable becomes known
    let mut known_at = vec![0usize; n];
    for (step, &v) in visible.iter().enumerate() {
        known_at[v] = step;
        if let Some(w) = alg.companion_of(v) {
            known_at[w] = step;
        }
    }
    let rels: Vec<FqPoly> = alg.relations().generators().iter().map(|r| FqPoly::new(r, gf)).collect::<Result<_>>()?;
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); visible.len().max(1)];
    let mut constant_rels = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        match r.max_var() {
            Some(v) => checks[known_at[v]].push(k),
            None => constant_rels.push(k),
        }
    }
    if constant_rels.iter().any(|&k| rels[k].eval(gf, &vec![0; n]) != 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut point = vec![0u32; n];
    let mut tried = 0u64;
    if visible.is_empty() {
        return Ok(vec![FqPoint { coords: vec![] }]);
    }
    search(alg, gf, &visible, &rels, &checks, 0, &mut point, &mut out, &mut tried, budget)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    alg: &PresentedAlgebra,
    gf: &GaloisField,
    visible: &[usize],
    rels: &[FqPoly],
    checks: &[Vec<usize>],
    step: usize,
    point: &mut Vec<u32>,
    out: &mut Vec<FqPoint>,
    tried: &mut u64,
    budget: &Budget,
) -> Result<()> {
    let v = visible[step];
    let comp = alg.companion_of(v);
    for a in gf.elements() {
        *tried += 1;
        if *tried > budget.point_cap {
            return Err(AlgError::ResourceExhausted(format!("point enumeration exceeded {} candidates", budget.point_cap)));
        }
        if comp.is_some() && a == 0 {
            continue;
        }
        point[v] = a;
        if let Some(w) = comp {
            point[w] = gf.inv(a);
        }
        if checks[step].iter().any(|&k| rels[k].eval(gf, point) != 0) {
            continue;
        }
        if step + 1 == visible.len() {
            out.push(FqPoint { coords: point.clone() });
        } else {
            search(alg, gf, visible, rels, checks, step + 1, point, out, tried, budget)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_examples() {
        let b = Budget::default();
        let f3 = CoeffField::Prime(3);
        let a = PresentedAlgebra::parse(f3, &["x"], &[], &["x^2 - 1"]).unwrap();
        let pts = rational_points(&a, 3, &b).unwrap();
        assert_eq!(pts, vec![FqPoint { coords: vec![1] }, FqPoint { coords: vec![2] }]);

        let f5 = CoeffField::Prime(5);
        let units = PresentedAlgebra::parse(f5, &["x"], &["x"], &[]).unwrap();
        assert_eq!(rational_points(&units, 5, &b).unwrap().len(), 4);

        let f2 = CoeffField::Prime(2);
        let zero = PresentedAlgebra::parse(f2, &["x", "y"], &[], &["1"]).unwrap();
        assert!(rational_points(&zero, 2, &b).unwrap().is_empty());
    }

    #[test]
    fn extension_field_points() {
        let b = Budget::default();
        let f5 = CoeffField::Prime(5);
        // x^2 - 2 has no roots in F_5 but two in F_25
        let a = PresentedAlgebra::parse(f5, &["x"], &[], &["x^2 - 2"]).unwrap();
        assert!(rational_points(&a, 5, &b).unwrap().is_empty());
        assert_eq!(rational_points(&a, 25, &b).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let f5 = CoeffField::Prime(5);
        let a = PresentedAlgebra::polynomial_ring(f5, &["x", "y", "z"]);
        let tight = Budget { point_cap: 10, ..Budget::default() };
        assert!(rational_points(&a, 5, &tight).unwrap_err().is_budget());
    }
}
