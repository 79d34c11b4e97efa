//! Finitely presented commutative algebras `k[x_1..x_n, v̄..]/(I)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::field::CoeffField;
use super::groebner::{groebner_basis, normal_form};
use super::ideal::Ideal;
use super::order::MonomialOrder;
use super::parse::parse_poly;
use super::poly::{Monomial, Poly};
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// Suffix of the hidden companion variable of an inverted generator.
pub const INV_SUFFIX: &str = "_inv";

#[derive(Clone, Debug)]
pub struct PresentedAlgebra {
    field: CoeffField,
    vars: Vec<String>,
    /// `(v, v̄)` index pairs with the relation `v·v̄ − 1` among the relations.
    inverted: Vec<(usize, usize)>,
    relations: Ideal,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub field: String,
    pub vars: Vec<String>,
    pub inverted: Vec<String>,
    pub relations: Vec<String>,
}

impl PresentedAlgebra {
    /// Builds `k[vars][inverted⁻¹]/(relations)`. Relations may mention the
    /// companion names `v_inv`.
    pub fn parse(field: CoeffField, vars: &[&str], inverted: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let inverted: Vec<String> = inverted.iter().map(|s| s.to_string()).collect();
        let mut all = vars.clone();
        let mut pairs = Vec::new();
        for v in &inverted {
            let i = vars
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| AlgError::InvalidInput(format!("inverted variable `{v}` is not a generator")))?;
            all.push(format!("{v}{INV_SUFFIX}"));
            pairs.push((i, all.len() - 1));
        }
        let rels = relations.iter().map(|r| parse_poly(r, &all, field)).collect::<Result<Vec<_>>>()?;
        Self::from_parts(field, all, pairs, rels)
    }

    /// `names` lists every internal variable, companions included.
    pub fn from_parts(field: CoeffField, names: Vec<String>, inverted: Vec<(usize, usize)>, relations: Vec<Poly>) -> Result<Self> {
        let uniq: BTreeSet<&String> = names.iter().collect();
        if uniq.len() != names.len() {
            return Err(AlgError::InvalidInput(format!("duplicate variable names in {names:?}")));
        }
        let n = names.len();
        let mut rels: Vec<Poly> = Vec::new();
        for (v, w) in &inverted {
            let r = &(&Poly::var(field, n, *v) * &Poly::var(field, n, *w)) - &Poly::one(field, n);
            rels.push(r);
        }
        for r in relations {
            if r.nvars() != n || r.field() != field {
                return Err(AlgError::InvalidInput("relation lives in a different ring".into()));
            }
            if !rels.contains(&r) {
                rels.push(r);
            }
        }
        Ok(PresentedAlgebra { field, vars: names, inverted, relations: Ideal::new(field, n, rels) })
    }

    pub fn polynomial_ring(field: CoeffField, vars: &[&str]) -> Self {
        Self::parse(field, vars, &[], &[]).expect("plain polynomial ring")
    }

    /// The coefficient field itself, with no generators.
    pub fn base_field(field: CoeffField) -> Self {
        Self::from_parts(field, vec![], vec![], vec![]).unwrap()
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Internal variable names, companions included.
    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn inverted(&self) -> &[(usize, usize)] {
        &self.inverted
    }

    pub fn is_companion(&self, i: usize) -> bool {
        self.inverted.iter().any(|&(_, w)| w == i)
    }

    pub fn companion_of(&self, i: usize) -> Option<usize> {
        self.inverted.iter().find(|&&(v, _)| v == i).map(|&(_, w)| w)
    }

    /// Generators a user sees: everything except the companions.
    pub fn visible_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|&i| !self.is_companion(i)).collect()
    }

    pub fn visible_names(&self) -> Vec<String> {
        self.visible_vars().into_iter().map(|i| self.vars[i].clone()).collect()
    }

    pub fn relations(&self) -> &Ideal {
        &self.relations
    }

    /// Relations other than the `v·v̄ − 1` companions.
    pub fn user_relations(&self) -> Vec<Poly> {
        let k = self.inverted.len();
        self.relations.generators()[k.min(self.relations.generators().len())..].to_vec()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.field, self.nvars(), i)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn var_by_name(&self, name: &str) -> Result<Poly> {
        self.var_index(name)
            .map(|i| self.var(i))
            .ok_or_else(|| AlgError::InvalidInput(format!("unknown variable `{name}`")))
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.field, self.nvars())
    }

    pub fn constant(&self, v: i64) -> Poly {
        Poly::from_i64(self.field, self.nvars(), v)
    }

    pub fn parse_elem(&self, s: &str) -> Result<Poly> {
        parse_poly(s, &self.vars, self.field)
    }

    pub fn format(&self, f: &Poly) -> String {
        f.to_string_with(&self.vars)
    }

    pub fn summary(&self) -> AlgebraSummary {
        AlgebraSummary {
            field: self.field.to_string(),
            vars: self.visible_names(),
            inverted: self.inverted.iter().map(|&(v, _)| self.vars[v].clone()).collect(),
            relations: self.user_relations().iter().map(|r| self.format(r)).collect(),
        }
    }

    pub fn groebner(&self, budget: &Budget) -> Result<&[Poly]> {
        self.relations.groebner(budget)
    }

    /// Canonical representative modulo the relations (degrevlex normal form).
    pub fn reduce(&self, f: &Poly, budget: &Budget) -> Result<Poly> {
        self.relations.normal_form(f, budget)
    }

    pub fn is_zero_elem(&self, f: &Poly, budget: &Budget) -> Result<bool> {
        self.relations.contains(f, budget)
    }

    pub fn eq_elems(&self, f: &Poly, g: &Poly, budget: &Budget) -> Result<bool> {
        self.is_zero_elem(&(f - g), budget)
    }

    pub fn mul(&self, f: &Poly, g: &Poly, budget: &Budget) -> Result<Poly> {
        self.reduce(&(f * g), budget)
    }

    pub fn is_zero_algebra(&self, budget: &Budget) -> Result<bool> {
        self.relations.is_unit_ideal(budget)
    }

    /// True iff `f` is invertible: `1 ∈ (f) + relations`.
    pub fn is_unit(&self, f: &Poly, budget: &Budget) -> Result<bool> {
        if self.is_zero_algebra(budget)? {
            return Ok(true);
        }
        if f.is_constant() && !f.is_zero() {
            return Ok(true);
        }
        self.relations.with_generators([f.clone()]).is_unit_ideal(budget)
    }

    /// An inverse of `f`, reduced, or `None` if `f` is not a unit.
    pub fn inverse(&self, f: &Poly, budget: &Budget) -> Result<Option<Poly>> {
        if f.is_constant() && !f.is_zero() {
            let c = self.field.inv(&f.constant_term());
            return Ok(Some(Poly::constant(self.field, self.nvars(), c)));
        }
        let n = self.nvars();
        // tag variable w in front, eliminated first
        let shift: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Poly> = self.relations.generators().iter().map(|r| r.remap(n + 1, &shift)).collect();
        let w = Poly::var(self.field, n + 1, 0);
        gens.push(&(&f.remap(n + 1, &shift) * &w) - &Poly::one(self.field, n + 1));
        let order = MonomialOrder::eliminate(1, n + 1);
        let gb = groebner_basis(&gens, &order, budget)?;
        let nf = normal_form(&w, &gb, &order, budget)?;
        if nf.degree_in(0) > 0 {
            return Ok(None);
        }
        let back: Vec<Poly> = std::iter::once(self.zero()).chain((0..n).map(|i| self.var(i))).collect();
        let h = nf.substitute(&back);
        if self.eq_elems(&(f * &h), &self.one(), budget)? {
            Ok(Some(self.reduce(&h, budget)?))
        } else {
            Ok(None)
        }
    }

    /// Leading monomials of the degrevlex basis of the relations.
    fn leading_monomials(&self, budget: &Budget) -> Result<Vec<Monomial>> {
        let order = MonomialOrder::DegRevLex;
        Ok(self.groebner(budget)?.iter().map(|g| g.leading(&order).unwrap().0.clone()).collect())
    }

    /// Monomials outside the leading ideal of the relations, when there are
    /// finitely many (a `k`-basis of a finite-dimensional algebra).
    pub fn standard_monomials(&self, budget: &Budget) -> Result<Option<Vec<Monomial>>> {
        let lms = self.leading_monomials(budget)?;
        standard_set(&lms, self.nvars(), budget)
    }

    /// Vector-space dimension over the coefficient field, if finite.
    pub fn dimension(&self, budget: &Budget) -> Result<Option<usize>> {
        Ok(self.standard_monomials(budget)?.map(|v| v.len()))
    }

    /// Coordinates of `f` in the standard monomial basis.
    pub fn coordinates(&self, f: &Poly, basis: &[Monomial], budget: &Budget) -> Result<Vec<super::field::Coef>> {
        let r = self.reduce(f, budget)?;
        Ok(basis.iter().map(|m| r.coefficient(m)).collect())
    }

    /// `self[vars]/(rels)`: new generators are appended after every existing
    /// internal variable, so old polynomials embed via [`Poly::extend`].
    pub fn adjoin(&self, vars: &[&str], rels: &[&str]) -> Result<Self> {
        let mut names = self.vars.clone();
        names.extend(vars.iter().map(|s| s.to_string()));
        let k = vars.len();
        let mut all: Vec<Poly> = self.user_relations().iter().map(|r| r.extend(k)).collect();
        for r in rels {
            all.push(parse_poly(r, &names, self.field)?);
        }
        Self::from_parts(self.field, names, self.inverted.clone(), all)
    }

    /// Like [`adjoin`](Self::adjoin) with relations given as polynomials in
    /// the enlarged ring.
    pub fn adjoin_polys(&self, vars: &[String], rels: Vec<Poly>) -> Result<Self> {
        let mut names = self.vars.clone();
        names.extend(vars.iter().cloned());
        let k = vars.len();
        let mut all: Vec<Poly> = self.user_relations().iter().map(|r| r.extend(k)).collect();
        all.extend(rels);
        Self::from_parts(self.field, names, self.inverted.clone(), all)
    }

    /// Same algebra with extra relations.
    pub fn quotient_by(&self, extra: Vec<Poly>) -> Result<Self> {
        let mut rels = self.user_relations();
        rels.extend(extra);
        Self::from_parts(self.field, self.vars.clone(), self.inverted.clone(), rels)
    }
}

/// Monomials in `n` variables divisible by none of `lms`, in ascending
/// degrevlex order, or `None` when there are infinitely many.
pub(crate) fn standard_set(lms: &[Monomial], n: usize, budget: &Budget) -> Result<Option<Vec<Monomial>>> {
    if lms.iter().any(Monomial::is_one) {
        return Ok(Some(Vec::new()));
    }
    let mut caps = vec![None; n];
    for m in lms {
        let support: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            let e = m.0[i];
            caps[i] = Some(caps[i].map_or(e, |c: u32| c.min(e)));
        }
    }
    if caps.iter().any(Option::is_none) {
        return Ok(None);
    }
    let caps: Vec<u32> = caps.into_iter().map(Option::unwrap).collect();
    let total: u64 = caps.iter().map(|&c| c as u64).product();
    if total > budget.point_cap {
        return Err(AlgError::ResourceExhausted(format!("{total} candidate standard monomials")));
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    loop {
        let m = Monomial(cur.clone());
        if !lms.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        let mut k = 0;
        loop {
            if k == n {
                let order = MonomialOrder::DegRevLex;
                out.sort_by(|a, b| order.cmp(a, b));
                return Ok(Some(out));
            }
            cur[k] += 1;
            if cur[k] < caps[k] {
                break;
            }
            cur[k] = 0;
            k += 1;
        }
    }
}

impl fmt::Display for PresentedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.summary();
        write!(f, "{}[{}", s.field, s.vars.join(", "))?;
        if !s.inverted.is_empty() {
            write!(f, "; inverted {}", s.inverted.join(", "))?;
        }
        write!(f, "]")?;
        if !s.relations.is_empty() {
            write!(f, "/({})", s.relations.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_examples() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let laurent = PresentedAlgebra::parse(q, &["x"], &["x"], &[]).unwrap();
        assert!(laurent.is_unit(&laurent.var(0), &b).unwrap());
        let poly = PresentedAlgebra::polynomial_ring(q, &["x"]);
        assert!(!poly.is_unit(&poly.var(0), &b).unwrap());
        let idem = PresentedAlgebra::parse(q, &["T"], &[], &["T^2 - T"]).unwrap();
        assert!(!idem.is_unit(&idem.var(0), &b).unwrap());
    }

    #[test]
    fn inverse_in_quadratic_extension() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let a = PresentedAlgebra::parse(q, &["T"], &[], &["T^2 - 2"]).unwrap();
        let u = a.parse_elem("1 + T").unwrap();
        let inv = a.inverse(&u, &b).unwrap().unwrap();
        assert_eq!(a.format(&inv), "T - 1");
        let idem = PresentedAlgebra::parse(q, &["T"], &[], &["T^2 - T"]).unwrap();
        assert!(idem.inverse(&idem.var(0), &b).unwrap().is_none());
    }

    #[test]
    fn companions_are_hidden() {
        let a = PresentedAlgebra::parse(CoeffField::Rationals, &["x", "y"], &["x"], &[]).unwrap();
        assert_eq!(a.visible_names(), vec!["x", "y"]);
        assert_eq!(a.var_names().len(), 3);
        assert_eq!(a.to_string(), "QQ[x, y; inverted x]");
    }

    #[test]
    fn dimension_of_finite_algebras() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let a = PresentedAlgebra::parse(q, &["T", "S"], &[], &["T^2 + 1", "S^2 + 1"]).unwrap();
        assert_eq!(a.dimension(&b).unwrap(), Some(4));
        let z = PresentedAlgebra::parse(CoeffField::Prime(2), &["x", "y"], &[], &["1"]).unwrap();
        assert!(z.is_zero_algebra(&b).unwrap());
        assert_eq!(z.dimension(&b).unwrap(), Some(0));
        assert_eq!(PresentedAlgebra::polynomial_ring(q, &["x"]).dimension(&b).unwrap(), None);
    }
}
