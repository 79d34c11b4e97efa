//! `M`-graded algebras, i.e. algebras with an action of the diagonalizable
//! group `D(M)`: homogeneous components, the coaction, monomial ideals of a
//! fixed degree and the invariant subalgebra `A_0`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::abgrp::{Cardinality, FgAbGroup, GroupElement};
use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::elimination::{kernel_of_map, GraphBasis};
use crate::exactalg::linalg::rank;
use crate::exactalg::tensor::{tensor, TensorProduct};
use crate::exactalg::{CoeffField, INV_SUFFIX, Ideal, ModVec, Monomial, MonomialOrder, Poly, PresentedAlgebra, RingMap, SubmoduleBasis};
use crate::groups::DiagonalizableGroupScheme;

#[derive(Clone, Debug)]
pub struct MGrading {
    algebra: Arc<PresentedAlgebra>,
    group: FgAbGroup,
    /// One degree per internal variable.
    degrees: Vec<GroupElement>,
}

impl MGrading {
    /// `degrees` has one entry per visible generator; companions of
    /// inverted generators get the opposite degree. Every relation must be
    /// homogeneous.
    pub fn new(algebra: Arc<PresentedAlgebra>, group: FgAbGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        let vis = algebra.visible_vars();
        if degrees.len() != vis.len() {
            return Err(AlgError::InvalidInput(format!("{} degrees given for {} generators", degrees.len(), vis.len())));
        }
        let mut all = vec![group.zero(); algebra.nvars()];
        for (&v, d) in vis.iter().zip(&degrees) {
            let d = group.element(&d.0)?;
            if let Some(w) = algebra.companion_of(v) {
                all[w] = group.neg(&d);
            }
            all[v] = d;
        }
        let g = MGrading { algebra, group, degrees: all };
        for r in g.algebra.relations().generators() {
            if g.degree_of(r).is_none() && !r.is_zero() {
                return Err(AlgError::InvalidInput(format!("relation {} is not homogeneous", g.algebra.format(r))));
            }
        }
        Ok(g)
    }

    /// Degrees by generator name, each given as coordinates in the
    /// canonical generators of `group`.
    pub fn from_names(algebra: Arc<PresentedAlgebra>, group: FgAbGroup, degrees: &BTreeMap<String, Vec<i64>>) -> Result<Self> {
        let names = algebra.visible_names();
        for k in degrees.keys() {
            if !names.contains(k) {
                return Err(AlgError::InvalidInput(format!("degree given for unknown generator {k}")));
            }
        }
        let degs = names
            .iter()
            .map(|n| {
                let d = degrees.get(n).ok_or_else(|| AlgError::InvalidInput(format!("no degree for generator {n}")))?;
                group.element(d)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, group, degs)
    }

    pub fn trivial(algebra: Arc<PresentedAlgebra>) -> Self {
        let n = algebra.visible_vars().len();
        Self::new(algebra, FgAbGroup::trivial(), vec![GroupElement(vec![]); n]).expect("trivial grading")
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra> {
        &self.algebra
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn variable_degree(&self, v: usize) -> &GroupElement {
        &self.degrees[v]
    }

    /// Degrees of the visible generators.
    pub fn visible_degrees(&self) -> Vec<GroupElement> {
        self.algebra.visible_vars().iter().map(|&v| self.degrees[v].clone()).collect()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> GroupElement {
        let mut acc = vec![0i64; self.group.ngens()];
        for (v, &e) in m.0.iter().enumerate() {
            for (a, d) in acc.iter_mut().zip(&self.degrees[v].0) {
                *a += i64::from(e) * d;
            }
        }
        self.group.element(&acc).expect("degree vector has the group's length")
    }

    /// The common degree of all terms, if `f` is nonzero and homogeneous.
    pub fn degree_of(&self, f: &Poly) -> Option<GroupElement> {
        let mut it = f.monomials().map(|m| self.monomial_degree(m));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self, f: &Poly) -> bool {
        f.is_zero() || self.degree_of(f).is_some()
    }

    pub fn default_bound(&self) -> u32 {
        match self.group.order() {
            Cardinality::Finite(n) => n.max(1) as u32,
            Cardinality::Infinite => 4,
        }
    }

    /// Degree-0 monomials form the lattice points of a cone; every
    /// indecomposable one has total degree at most this bound.
    pub fn hilbert_degree_bound(&self) -> u64 {
        self.minimal_degree_bound(&self.group.zero())
    }

    /// Every divisibility-minimal monomial of degree `i` has total degree at
    /// most this bound.
    pub fn minimal_degree_bound(&self, i: &GroupElement) -> u64 {
        let n = self.algebra.nvars();
        let r = self.group.free_rank();
        let tors = self.group.torsion();
        let ncols = n + 2 * tors.len() + 1;
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for c in 0..r {
            let mut row = vec![0; ncols];
            for v in 0..n {
                row[v] = self.degrees[v].0[c];
            }
            row[ncols - 1] = -i.0[c];
            rows.push(row);
        }
        for (j, &t) in tors.iter().enumerate() {
            let mut row = vec![0; ncols];
            for v in 0..n {
                row[v] = self.degrees[v].0[r + j];
            }
            row[n + 2 * j] = -t;
            row[n + 2 * j + 1] = t;
            row[ncols - 1] = -i.0[r + j];
            rows.push(row);
        }
        let q = CoeffField::Rationals;
        let qrows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| q.from_i64(x)).collect()).collect();
        let rk = rank(q, &qrows) as u32;
        let norm = rows.iter().map(|r| r.iter().map(|x| x.unsigned_abs()).sum::<u64>()).max().unwrap_or(0);
        (1 + norm).saturating_pow(rk)
    }
}

/// `f = Σ_i f_i` with `f_i` homogeneous of degree `i`.
pub fn homogeneous_components(g: &MGrading, f: &Poly) -> BTreeMap<GroupElement, Poly> {
    let mut out: BTreeMap<GroupElement, Poly> = BTreeMap::new();
    for (m, c) in f.terms() {
        out.entry(g.monomial_degree(m))
            .or_insert_with(|| Poly::zero(f.field(), f.nvars()))
            .add_term(m.clone(), c.clone());
    }
    out
}

/// The coaction `A → A ⊗ k[M]`, `v ↦ v ⊗ X^{deg v}`.
#[derive(Clone, Debug)]
pub struct Coaction {
    pub group_scheme: DiagonalizableGroupScheme,
    pub tensor: TensorProduct,
    pub map: RingMap,
}

pub fn coaction_from_grading(g: &MGrading, budget: &Budget) -> Result<Coaction> {
    let a = g.algebra();
    let group_scheme = DiagonalizableGroupScheme::new(g.group().clone(), a.field());
    let km = Arc::new(group_scheme.group_algebra());
    let t = tensor(a, &km, budget)?;
    let images = a
        .visible_vars()
        .into_iter()
        .map(|v| {
            let chi = group_scheme.character(&km, &g.degrees[v]);
            &t.left.images()[v] * &t.right.apply_raw(&chi)
        })
        .collect();
    let map = RingMap::new(a.clone(), t.algebra.clone(), images, budget)?;
    Ok(Coaction { group_scheme, tensor: t, map })
}

impl Coaction {
    /// Coassociativity and the counit law, checked on generators.
    pub fn check_axioms(&self, budget: &Budget) -> Result<bool> {
        let hopf = self.group_scheme.hopf_algebra(budget)?;
        let t = &self.tensor;
        let a = t.left.source().clone();
        let h = t.right.source().clone();
        let t3 = tensor(&t.algebra, &h, budget)?;
        let phi_id = t.induced_map(&self.map.then(&t3.left, budget)?, &t3.right, budget)?;
        let legs23 = hopf.square.induced_map(&t.right.then(&t3.left, budget)?, &t3.right, budget)?;
        let id_delta = t.induced_map(&t.left.then(&t3.left, budget)?, &hopf.comultiplication.then(&legs23, budget)?, budget)?;
        let coassoc = self.map.then(&phi_id, budget)?.equals(&self.map.then(&id_delta, budget)?, budget)?;
        let into_a = RingMap::new(hopf.counit.target().clone(), a.clone(), vec![], budget)?;
        let eps = t.induced_map(&RingMap::identity(a.clone()), &hopf.counit.then(&into_a, budget)?, budget)?;
        let counit = self.map.then(&eps, budget)?.equals(&RingMap::identity(a), budget)?;
        Ok(coassoc && counit)
    }
}

/// Exponent vectors of total degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    if n == 0 {
        return if d == 0 { vec![Monomial(vec![])] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn check_enumeration(n: usize, d: u64, budget: &Budget) -> Result<()> {
    let count = binomial(n as u64 + d, n as u64);
    if count > budget.point_cap as f64 {
        return Err(AlgError::ResourceExhausted(format!("{count} monomials up to degree {d}")));
    }
    Ok(())
}

/// Divisibility-minimal monomials of degree `i`, enumerated up to a total
/// degree bound.
#[derive(Clone, Debug)]
pub struct DegreeMonomials {
    pub monomials: Vec<Monomial>,
    pub ideal: Ideal,
    /// The bound reaches the a priori degree bound, so every minimal
    /// monomial was found.
    pub saturated: bool,
}

pub fn degree_monomial_ideal(g: &MGrading, i: &GroupElement, bound: u32, budget: &Budget) -> Result<DegreeMonomials> {
    if bound < 1 {
        return Err(AlgError::InvalidInput("bound must be at least 1".into()));
    }
    let a = g.algebra();
    let target = g.group().element(&i.0)?;
    let n = a.nvars();
    check_enumeration(n, u64::from(bound), budget)?;
    let mut minimal: Vec<Monomial> = Vec::new();
    for d in 0..=bound {
        for m in monomials_of_degree(n, d) {
            if g.monomial_degree(&m) == target && !minimal.iter().any(|h| h.divides(&m)) {
                minimal.push(m);
            }
        }
    }
    let saturated = u64::from(bound) >= g.minimal_degree_bound(&target);
    let field = a.field();
    let gens = a.relations().generators().iter().cloned().chain(minimal.iter().map(|m| Poly::term(field, m.clone(), field.one())));
    let ideal = Ideal::new(field, n, gens.collect());
    Ok(DegreeMonomials { monomials: minimal, ideal, saturated })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The generators provably generate `A_0`.
    Complete,
    /// Generation is only known for elements up to the search bound.
    CompleteUpToBound,
}

#[derive(Clone, Debug)]
pub struct DegreeZero {
    pub algebra: Arc<PresentedAlgebra>,
    pub inclusion: RingMap,
    pub generators: Vec<Poly>,
    pub certificate: Certificate,
    pub hilbert_bound: u64,
}

/// Indecomposable degree-0 monomials with total degree in `lo..=hi`,
/// extending `found`.
fn indecomposables(g: &MGrading, found: &mut Vec<Monomial>, lo: u32, hi: u32) -> Vec<Monomial> {
    let n = g.algebra().nvars();
    let zero = g.group().zero();
    let mut new = Vec::new();
    for d in lo..=hi {
        for m in monomials_of_degree(n, d) {
            if d > 0 && g.monomial_degree(&m) == zero && !found.iter().any(|h| h.divides(&m)) {
                found.push(m.clone());
                new.push(m);
            }
        }
    }
    new
}

/// The invariant subalgebra `A_0`, generated by degree-0 monomials of
/// total degree at most `bound`, with a presentation and a certificate.
pub fn degree_zero_subalgebra(g: &MGrading, bound: u32, budget: &Budget) -> Result<DegreeZero> {
    if bound < 1 {
        return Err(AlgError::InvalidInput("bound must be at least 1".into()));
    }
    let a = g.algebra();
    let n = a.nvars();
    check_enumeration(n, u64::from(bound), budget)?;
    let mut found = Vec::new();
    let cands = indecomposables(g, &mut found, 0, bound);

    let order = MonomialOrder::DegRevLex;
    let mut gens: Vec<Poly> = Vec::new();
    for m in &cands {
        let f = a.reduce(&Poly::term(a.field(), m.clone(), a.field().one()), budget)?;
        if !f.is_constant() && !gens.contains(&f) {
            gens.push(f);
        }
    }
    gens.sort_by(|x, y| {
        let lx = x.leading(&order).expect("nonzero").0;
        let ly = y.leading(&order).expect("nonzero").0;
        order.cmp(lx, ly)
    });
    let gens = minimize_generators(a, gens, budget)?;

    let hilbert_bound = g.hilbert_degree_bound();
    let certificate = if hilbert_bound <= u64::from(bound) {
        Certificate::Complete
    } else if check_enumeration(n, hilbert_bound, budget).is_ok() {
        let extra = indecomposables(g, &mut found, bound + 1, hilbert_bound as u32);
        let gb = GraphBasis::new(a, &gens, budget)?;
        let mut all = true;
        for m in extra {
            let f = Poly::term(a.field(), m, a.field().one());
            if !f.is_constant() && gb.express(&f, budget)?.is_none() {
                all = false;
                break;
            }
        }
        if all {
            Certificate::Complete
        } else {
            Certificate::CompleteUpToBound
        }
    } else {
        Certificate::CompleteUpToBound
    };

    let (a0, inclusion) = present_subalgebra(a, &gens, budget)?;
    let generators = inclusion.images().to_vec();
    Ok(DegreeZero { algebra: a0, inclusion, generators, certificate, hilbert_bound })
}

/// Drops, from the last one down, every generator lying in the subalgebra
/// generated by the others.
pub fn minimize_generators(a: &PresentedAlgebra, mut gens: Vec<Poly>, budget: &Budget) -> Result<Vec<Poly>> {
    let mut k = gens.len();
    while k > 0 {
        k -= 1;
        let others: Vec<Poly> = gens.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p.clone()).collect();
        if GraphBasis::new(a, &others, budget)?.express(&gens[k], budget)?.is_some() {
            gens.remove(k);
        }
    }
    Ok(gens)
}

/// `k[u]/ker → A` for the subalgebra generated by `gens`. Generators whose
/// product with an earlier one is 1 become its inverted companion.
pub fn present_subalgebra(a: &Arc<PresentedAlgebra>, gens: &[Poly], budget: &Budget) -> Result<(Arc<PresentedAlgebra>, RingMap)> {
    let mut partner: Vec<Option<usize>> = vec![None; gens.len()];
    let mut is_companion = vec![false; gens.len()];
    for i in 0..gens.len() {
        if is_companion[i] {
            continue;
        }
        for j in i + 1..gens.len() {
            if !is_companion[j] && partner[j].is_none() && a.eq_elems(&(&gens[i] * &gens[j]), &a.one(), budget)? {
                partner[i] = Some(j);
                is_companion[j] = true;
                break;
            }
        }
    }
    let visible: Vec<usize> = (0..gens.len()).filter(|&i| !is_companion[i]).collect();
    let mut names: Vec<String> =
        if visible.len() == 1 { vec!["u".into()] } else { (1..=visible.len()).map(|j| format!("u{j}")).collect() };
    let mut images: Vec<Poly> = visible.iter().map(|&i| gens[i].clone()).collect();
    let mut inverted = Vec::new();
    for (k, &i) in visible.iter().enumerate() {
        if let Some(j) = partner[i] {
            inverted.push((k, names.len()));
            names.push(format!("{}{INV_SUFFIX}", names[k]));
            images.push(gens[j].clone());
        }
    }
    let free = Arc::new(PresentedAlgebra::from_parts(a.field(), names.clone(), inverted.clone(), vec![])?);
    let to_a = RingMap::new(free, a.clone(), images.clone(), budget)?;
    let kernel = kernel_of_map(&to_a, budget)?;
    let sub = Arc::new(PresentedAlgebra::from_parts(a.field(), names, inverted, kernel.groebner(budget)?.to_vec())?);
    let inclusion = RingMap::new(sub.clone(), a.clone(), images, budget)?;
    Ok((sub, inclusion))
}

/// A finitely presented graded module: generator degrees and homogeneous
/// relation rows.
#[derive(Clone, Debug)]
pub struct GradedModule {
    pub grading: MGrading,
    pub generator_degrees: Vec<GroupElement>,
    pub relations: Vec<ModVec>,
}

impl GradedModule {
    pub fn new(grading: MGrading, generator_degrees: Vec<GroupElement>, relations: Vec<ModVec>) -> Result<Self> {
        let group = grading.group().clone();
        let generator_degrees = generator_degrees.iter().map(|d| group.element(&d.0)).collect::<Result<Vec<_>>>()?;
        let m = GradedModule { grading, generator_degrees, relations };
        for r in &m.relations {
            if r.len() != m.generator_degrees.len() {
                return Err(AlgError::InvalidInput("relation row has the wrong length".into()));
            }
            if m.vector_degree(r).is_none() && r.iter().any(|x| !x.is_zero()) {
                return Err(AlgError::InvalidInput("relation row is not homogeneous".into()));
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.generator_degrees.len()
    }

    /// Common degree of the nonzero entries shifted by their generators.
    pub fn vector_degree(&self, v: &ModVec) -> Option<GroupElement> {
        let group = self.grading.group();
        let mut out: Option<GroupElement> = None;
        for (x, dg) in v.iter().zip(&self.generator_degrees) {
            if x.is_zero() {
                continue;
            }
            let d = group.add(&self.grading.degree_of(x)?, dg);
            match &out {
                Some(e) if *e != d => return None,
                _ => out = Some(d),
            }
        }
        out
    }
}

/// Generators over `A_0` of the degree-`i` part of `m`, from monomials of
/// total degree at most `bound`.
pub fn graded_module_component(m: &GradedModule, i: &GroupElement, bound: u32, budget: &Budget) -> Result<Vec<ModVec>> {
    let g = &m.grading;
    let a = g.algebra();
    let rank = m.rank();
    if rank == 0 {
        return Ok(vec![]);
    }
    let rels = SubmoduleBasis::new(a, rank, &m.relations, budget)?;
    let mut out = Vec::new();
    for k in 0..rank {
        let shift = g.group().sub(i, &m.generator_degrees[k]);
        let dm = degree_monomial_ideal(g, &shift, bound, budget)?;
        for mono in dm.monomials {
            let mut v = vec![a.zero(); rank];
            v[k] = a.reduce(&Poly::term(a.field(), mono, a.field().one()), budget)?;
            let v = rels.reduce(&v, budget)?;
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoeffField {
        CoeffField::Rationals
    }

    fn el(v: &[i64]) -> GroupElement {
        GroupElement(v.to_vec())
    }

    fn grade(alg: PresentedAlgebra, group: &str, degs: &[&[i64]]) -> MGrading {
        MGrading::new(Arc::new(alg), group.parse().unwrap(), degs.iter().map(|d| el(d)).collect()).unwrap()
    }

    #[test]
    fn homogeneity_is_enforced() {
        let a = PresentedAlgebra::parse(q(), &["x", "y"], &[], &["x^2 - y^2"]).unwrap();
        let g = grade(a, "Z", &[&[1], &[1]]);
        assert!(g.is_homogeneous(&g.algebra().relations().generators()[0]));
        let a = Arc::new(PresentedAlgebra::parse(q(), &["x", "y"], &[], &["x^2 - y"]).unwrap());
        assert!(MGrading::new(a, FgAbGroup::free(1), vec![el(&[1]), el(&[1])]).is_err());
        let a = PresentedAlgebra::parse(q(), &["x"], &["x"], &[]).unwrap();
        let g = grade(a, "Z", &[&[1]]);
        assert_eq!(g.variable_degree(1), &el(&[-1]));
    }

    #[test]
    fn components() {
        let g = grade(PresentedAlgebra::polynomial_ring(q(), &["x"]), "Z", &[&[1]]);
        let f = g.algebra().parse_elem("x^3 + x").unwrap();
        let c = homogeneous_components(&g, &f);
        assert_eq!(c.len(), 2);
        assert_eq!(g.algebra().format(&c[&el(&[3])]), "x^3");
        assert!(homogeneous_components(&g, &g.algebra().zero()).is_empty());

        let g = grade(PresentedAlgebra::polynomial_ring(q(), &["x", "y"]), "Z", &[&[1], &[-1]]);
        let f = g.algebra().parse_elem("x*y + x^2*y^2 + x").unwrap();
        let c = homogeneous_components(&g, &f);
        assert_eq!(c[&el(&[0])], g.algebra().parse_elem("x*y + x^2*y^2").unwrap());
        assert_eq!(c[&el(&[1])], g.algebra().var(0));
    }

    #[test]
    fn coactions() {
        let b = Budget::default();
        let g = grade(PresentedAlgebra::parse(q(), &["x", "y"], &[], &["x^2 - y^2"]).unwrap(), "Z", &[&[1], &[1]]);
        let c = coaction_from_grading(&g, &b).unwrap();
        assert_eq!(c.map.describe()[0].1, "x_1*x_2");
        assert!(c.check_axioms(&b).unwrap());

        let g = MGrading::trivial(Arc::new(PresentedAlgebra::polynomial_ring(q(), &["x"])));
        let c = coaction_from_grading(&g, &b).unwrap();
        assert_eq!(c.map.describe()[0].1, "x");
        assert!(c.check_axioms(&b).unwrap());

        let g = grade(PresentedAlgebra::parse(q(), &["x", "y"], &["x"], &[]).unwrap(), "Z + Z/2", &[&[1, 1], &[2, 0]]);
        assert!(coaction_from_grading(&g, &b).unwrap().check_axioms(&b).unwrap());
    }

    #[test]
    fn monomial_ideals() {
        let b = Budget::default();
        let g = grade(PresentedAlgebra::polynomial_ring(q(), &["x", "y"]), "Z", &[&[1], &[1]]);
        let d = degree_monomial_ideal(&g, &el(&[1]), 4, &b).unwrap();
        assert_eq!(d.monomials.len(), 2);
        assert!(d.saturated);
        let d0 = degree_monomial_ideal(&g, &el(&[0]), 1, &b).unwrap();
        assert!(d0.ideal.is_unit_ideal(&b).unwrap());

        let g = grade(PresentedAlgebra::parse(q(), &["x"], &["x"], &[]).unwrap(), "Z/3", &[&[1]]);
        let d = degree_monomial_ideal(&g, &el(&[1]), 3, &b).unwrap();
        assert!(d.monomials.contains(&Monomial(vec![1, 0])));
        assert!(d.ideal.is_unit_ideal(&b).unwrap());
    }

    #[test]
    fn invariants_of_projective_line_chart() {
        let b = Budget::default();
        let g = grade(PresentedAlgebra::parse(q(), &["x", "y"], &["x"], &[]).unwrap(), "Z", &[&[1], &[1]]);
        let z = degree_zero_subalgebra(&g, 2, &b).unwrap();
        assert_eq!(z.generators.len(), 1);
        assert_eq!(g.algebra().format(&z.generators[0]), "y*x_inv");
        assert!(z.algebra.relations().generators().is_empty());
        assert_eq!(z.certificate, Certificate::Complete);
    }

    #[test]
    fn trivial_grading_keeps_everything() {
        let b = Budget::default();
        let a = PresentedAlgebra::parse(q(), &["x", "y"], &[], &["x^2 - y^3"]).unwrap();
        let z = degree_zero_subalgebra(&MGrading::trivial(Arc::new(a)), 1, &b).unwrap();
        assert_eq!(z.generators.len(), 2);
        assert_eq!(z.algebra.relations().generators().len(), 1);
        assert_eq!(z.certificate, Certificate::Complete);
    }

    #[test]
    fn pgl2_invariants() {
        let b = Budget::default();
        let a = PresentedAlgebra::parse(q(), &["a", "b", "c", "d", "e"], &[], &["(a*d - b*c)*e - 1"]).unwrap();
        let g = grade(a, "Z", &[&[1], &[1], &[1], &[1], &[-2]]);
        let low = degree_zero_subalgebra(&g, 1, &b).unwrap();
        assert_eq!(low.certificate, Certificate::CompleteUpToBound);
        let z = degree_zero_subalgebra(&g, 4, &b).unwrap();
        assert_eq!(z.generators.len(), 6);
        assert_eq!(z.certificate, Certificate::Complete);
        for f in &z.generators {
            assert_eq!(g.degree_of(f), Some(el(&[0])));
        }
    }

    #[test]
    fn roots_of_unity_quotient() {
        let b = Budget::default();
        let g = grade(PresentedAlgebra::parse(q(), &["x"], &["x"], &[]).unwrap(), "Z/3", &[&[1]]);
        let z = degree_zero_subalgebra(&g, 3, &b).unwrap();
        let mut shown: Vec<String> = z.generators.iter().map(|f| g.algebra().format(f)).collect();
        shown.sort();
        assert_eq!(shown, vec!["x^3", "x_inv^3"]);
        assert_eq!(z.algebra.to_string(), "QQ[u; inverted u]");
        assert_eq!(z.certificate, Certificate::Complete);
    }

    #[test]
    fn module_components() {
        let b = Budget::default();
        let g = grade(PresentedAlgebra::polynomial_ring(q(), &["s"]), "Z/2", &[&[1]]);
        let m = GradedModule::new(g.clone(), vec![el(&[1])], vec![]).unwrap();
        let c = graded_module_component(&m, &el(&[0]), 4, &b).unwrap();
        assert_eq!(c, vec![vec![g.algebra().var(0)]]);
        let free = GradedModule::new(g.clone(), vec![el(&[0])], vec![]).unwrap();
        assert_eq!(graded_module_component(&free, &el(&[0]), 4, &b).unwrap(), vec![vec![g.algebra().one()]]);
        let zero = GradedModule::new(g, vec![], vec![]).unwrap();
        assert!(graded_module_component(&zero, &el(&[0]), 4, &b).unwrap().is_empty());
    }
}
