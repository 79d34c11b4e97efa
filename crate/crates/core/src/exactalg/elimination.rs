//! Tag-variable elimination: kernels of ring maps and subalgebra membership.

use super::algebra::PresentedAlgebra;
use super::groebner::{groebner_basis, normal_form};
use super::ideal::Ideal;
use super::order::MonomialOrder;
use super::poly::Poly;
use super::ringmap::RingMap;
use crate::budget::Budget;
use crate::error::Result;

/// Basis of `relations(target) + (t_k − g_k)` in `k[target vars, t]` under
/// the order eliminating the target variables.
pub struct GraphBasis {
    pub basis: Vec<Poly>,
    pub order: MonomialOrder,
    pub nvars: usize,
    pub ntags: usize,
}

impl GraphBasis {
    pub fn new(target: &PresentedAlgebra, gens: &[Poly], budget: &Budget) -> Result<Self> {
        let n = target.nvars();
        let k = gens.len();
        let field = target.field();
        let mut ideal: Vec<Poly> = target.relations().generators().iter().map(|r| r.extend(k)).collect();
        for (j, g) in gens.iter().enumerate() {
            ideal.push(&Poly::var(field, n + k, n + j) - &g.extend(k));
        }
        let order = MonomialOrder::eliminate(n, n + k);
        let basis = groebner_basis(&ideal, &order, budget)?;
        Ok(GraphBasis { basis, order, nvars: n, ntags: k })
    }

    fn tags_only(&self, p: &Poly) -> bool {
        p.monomials().all(|m| m.0[..self.nvars].iter().all(|&e| e == 0))
    }

    /// Drops the target variables from a tag-only polynomial.
    fn to_tag_ring(&self, p: &Poly) -> Poly {
        let mut images = vec![Poly::zero(p.field(), self.ntags); self.nvars];
        images.extend((0..self.ntags).map(|j| Poly::var(p.field(), self.ntags, j)));
        p.substitute(&images)
    }

    /// Elimination ideal, expressed in the tag variables.
    pub fn kernel_generators(&self) -> Vec<Poly> {
        self.basis.iter().filter(|g| self.tags_only(g)).map(|g| self.to_tag_ring(g)).collect()
    }

    /// `P` with `P(gens) = f` in the target, if `f` lies in the subalgebra.
    pub fn express(&self, f: &Poly, budget: &Budget) -> Result<Option<Poly>> {
        let nf = normal_form(&f.extend(self.ntags), &self.basis, &self.order, budget)?;
        if self.tags_only(&nf) {
            Ok(Some(self.to_tag_ring(&nf)))
        } else {
            Ok(None)
        }
    }
}

/// Kernel of a ring map, as an ideal of the source polynomial ring (it
/// contains the source relations).
pub fn kernel_of_map(m: &RingMap, budget: &Budget) -> Result<Ideal> {
    let src = m.source();
    let g = GraphBasis::new(m.target(), m.images(), budget)?;
    let gens = g.kernel_generators();
    let ideal = Ideal::new(src.field(), src.nvars(), gens);
    ideal.groebner(budget)?;
    Ok(ideal)
}

/// Whether `f` lies in the `k`-subalgebra of `alg` generated by `gens`.
pub fn subalgebra_contains(alg: &PresentedAlgebra, gens: &[Poly], f: &Poly, budget: &Budget) -> Result<bool> {
    Ok(subalgebra_express(alg, gens, f, budget)?.is_some())
}

pub fn subalgebra_express(alg: &PresentedAlgebra, gens: &[Poly], f: &Poly, budget: &Budget) -> Result<Option<Poly>> {
    if f.is_constant() {
        return Ok(Some(Poly::constant(f.field(), gens.len(), f.constant_term())));
    }
    GraphBasis::new(alg, gens, budget)?.express(f, budget)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::field::CoeffField;

    fn q() -> CoeffField {
        CoeffField::Rationals
    }

    #[test]
    fn kernel_examples() {
        let b = Budget::default();
        let x = Arc::new(PresentedAlgebra::polynomial_ring(q(), &["x"]));
        let u = Arc::new(PresentedAlgebra::polynomial_ring(q(), &["u"]));
        let m = RingMap::new(u.clone(), x.clone(), vec![x.parse_elem("x^2").unwrap()], &b).unwrap();
        assert!(kernel_of_map(&m, &b).unwrap().generators().is_empty());

        let uv = Arc::new(PresentedAlgebra::polynomial_ring(q(), &["u", "v"]));
        let m = RingMap::new(uv.clone(), x.clone(), vec![x.parse_elem("x^2").unwrap(), x.parse_elem("x^3").unwrap()], &b).unwrap();
        let k = kernel_of_map(&m, &b).unwrap();
        let gb = k.groebner(&b).unwrap();
        assert_eq!(gb.len(), 1);
        assert_eq!(uv.format(&gb[0]), "u^3 - v^2");

        let dual = Arc::new(PresentedAlgebra::parse(q(), &["x"], &[], &["x^2"]).unwrap());
        let m = RingMap::new(u.clone(), dual.clone(), vec![dual.var(0)], &b).unwrap();
        let k = kernel_of_map(&m, &b).unwrap();
        assert_eq!(u.format(&k.groebner(&b).unwrap()[0]), "u^2");
    }

    #[test]
    fn subalgebra_examples() {
        let b = Budget::default();
        let x = PresentedAlgebra::polynomial_ring(q(), &["x"]);
        let sq = vec![x.parse_elem("x^2").unwrap()];
        assert!(subalgebra_contains(&x, &sq, &x.parse_elem("x^4 + x^2").unwrap(), &b).unwrap());
        assert!(!subalgebra_contains(&x, &sq, &x.parse_elem("x^3").unwrap(), &b).unwrap());
        let xy = PresentedAlgebra::polynomial_ring(q(), &["x", "y"]);
        let sym = vec![xy.parse_elem("x + y").unwrap(), xy.parse_elem("x*y").unwrap()];
        let e = subalgebra_express(&xy, &sym, &xy.parse_elem("x^2 + y^2").unwrap(), &b).unwrap().unwrap();
        let names = vec!["s".to_string(), "p".to_string()];
        assert_eq!(e.to_string_with(&names), "s^2 - 2*p");
    }
}
