use std::sync::OnceLock;

use super::field::CoeffField;
use super::groebner::{groebner_basis, groebner_traced, normal_form};
use super::order::MonomialOrder;
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::Result;

/// Ideal of a polynomial ring, with a degrevlex Gröbner basis filled in at
/// most once.
#[derive(Clone, Debug)]
pub struct Ideal {
    field: CoeffField,
    nvars: usize,
    generators: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Ideal {
    pub fn new(field: CoeffField, nvars: usize, generators: Vec<Poly>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { field, nvars, generators, basis: OnceLock::new() }
    }

    pub fn zero(field: CoeffField, nvars: usize) -> Self {
        Ideal::new(field, nvars, Vec::new())
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Reduced degrevlex basis, computed on first use.
    pub fn groebner(&self, budget: &Budget) -> Result<&[Poly]> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis(&self.generators, &MonomialOrder::DegRevLex, budget)?;
        let _ = self.basis.set(b);
        Ok(self.basis.get().unwrap())
    }

    pub fn has_cached_basis(&self) -> bool {
        self.basis.get().is_some()
    }

    pub fn groebner_in(&self, order: &MonomialOrder, budget: &Budget) -> Result<Vec<Poly>> {
        if *order == MonomialOrder::DegRevLex {
            return self.groebner(budget).map(|b| b.to_vec());
        }
        groebner_basis(&self.generators, order, budget)
    }

    pub fn normal_form(&self, f: &Poly, budget: &Budget) -> Result<Poly> {
        let b = self.groebner(budget)?;
        normal_form(f, b, &MonomialOrder::DegRevLex, budget)
    }

    pub fn contains(&self, f: &Poly, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(f, budget)?.is_zero())
    }

    pub fn is_unit_ideal(&self, budget: &Budget) -> Result<bool> {
        let b = self.groebner(budget)?;
        Ok(b.len() == 1 && b[0].is_constant())
    }

    /// Cofactors `h` with `f = Σ h_i g_i` over the stored generators, or
    /// `None` when `f` is not a member.
    pub fn cofactors(&self, f: &Poly, budget: &Budget) -> Result<Option<Vec<Poly>>> {
        if self.generators.is_empty() {
            return Ok(if f.is_zero() { Some(vec![]) } else { None });
        }
        let tb = groebner_traced(&self.generators, &MonomialOrder::DegRevLex, budget)?;
        tb.lift(f, budget)
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut g = self.generators.clone();
        g.extend(extra);
        Ideal::new(self.field, self.nvars, g)
    }
}

/// Membership of `f` in the ideal generated by `gens`.
pub fn ideal_contains(ideal: &Ideal, f: &Poly, budget: &Budget) -> Result<bool> {
    ideal.contains(f, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;

    fn ideal(gens: &[&str], names: &[&str], f: CoeffField) -> (Ideal, Vec<String>) {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let g = gens.iter().map(|s| parse_poly(s, &n, f).unwrap()).collect();
        (Ideal::new(f, n.len(), g), n)
    }

    #[test]
    fn membership_examples() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let (i, n) = ideal(&["x^2", "x*y"], &["x", "y"], q);
        assert!(i.contains(&parse_poly("x^3*y", &n, q).unwrap(), &b).unwrap());
        let (i, n) = ideal(&["x - y"], &["x", "y"], q);
        assert!(!i.contains(&parse_poly("x + y", &n, q).unwrap(), &b).unwrap());
        // 2x vanishes in characteristic two, so the ideal is zero
        let f2 = CoeffField::Prime(2);
        let (i, n) = ideal(&["2*x"], &["x"], f2);
        assert!(!i.contains(&parse_poly("x", &n, f2).unwrap(), &b).unwrap());
    }

    #[test]
    fn cached_basis_is_reused() {
        let q = CoeffField::Rationals;
        let (i, _) = ideal(&["x^2 - 1", "x - 1"], &["x"], q);
        assert!(!i.has_cached_basis());
        let first = i.groebner(&Budget::default()).unwrap().to_vec();
        assert!(i.has_cached_basis());
        assert_eq!(first, i.groebner(&Budget::default()).unwrap());
    }
}
