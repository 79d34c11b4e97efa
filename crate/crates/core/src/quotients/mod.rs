//! Quotients of affine schemes: by finite free equivalence relations (the
//! equalizer subring) and by diagonalizable groups (the degree-0 part),
//! with freeness and torsor certificates and a point-count oracle.

mod gallery;
mod iso;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::points::{rational_points_in, FqPoly};
use crate::exactalg::{
    kernel_of_map, tensor, tensor_over, AlgebraSummary, CoeffField, GraphBasis, Ideal, Monomial, MonomialOrder, Poly, PresentedAlgebra, RingMap,
};
use crate::exactalg::{GaloisField, INV_SUFFIX};
use crate::flf::FiniteFreeAlgebra;
use crate::grading::{
    coaction_from_grading, degree_monomial_ideal, degree_zero_subalgebra, minimize_generators, monomials_of_degree, present_subalgebra, Certificate, MGrading,
};
use crate::groups::ConstantGroupScheme;
use num_traits::Zero;

pub use gallery::{gallery, list_gallery, GalleryOptions, GalleryReport, NamedQuotient};
pub use iso::{find_isomorphism, find_isomorphism_over, Isomorphism};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// One certified property with its witness.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub witness: String,
}

impl Check {
    pub fn new(name: &str, verdict: Verdict, witness: impl Into<String>) -> Self {
        Check { name: name.to_string(), verdict, witness: witness.into() }
    }
}

/// Worst verdict of a list: any failure fails, then any inconclusive.
pub fn overall(checks: &[Check]) -> Verdict {
    checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
}

/// Algebra automorphisms `ρ_g` indexed by a finite group, with
/// `ρ_{gh} = ρ_g ∘ ρ_h`.
#[derive(Clone, Debug)]
pub struct ConstantAction {
    pub algebra: Arc<PresentedAlgebra>,
    pub group: ConstantGroupScheme,
    pub automorphisms: Vec<RingMap>,
}

impl ConstantAction {
    pub fn new(algebra: Arc<PresentedAlgebra>, group: ConstantGroupScheme, automorphisms: Vec<RingMap>, budget: &Budget) -> Result<Self> {
        let n = group.order();
        if automorphisms.len() != n {
            return Err(AlgError::InvalidInput(format!("{} automorphisms for a group of order {n}", automorphisms.len())));
        }
        for r in &automorphisms {
            if r.source().var_names() != algebra.var_names() || r.target().var_names() != algebra.var_names() {
                return Err(AlgError::InvalidInput("automorphisms must be endomorphisms of the algebra".into()));
            }
        }
        let id = RingMap::identity(algebra.clone());
        if !automorphisms[group.identity()].equals(&id, budget)? {
            return Err(AlgError::InvalidInput("the identity element must act trivially".into()));
        }
        for g in 0..n {
            for h in 0..n {
                let composite = automorphisms[h].then(&automorphisms[g], budget)?;
                if !composite.equals(&automorphisms[group.mul(g, h)], budget)? {
                    return Err(AlgError::InvalidInput(format!("action is not compatible with the product of {g} and {h}")));
                }
            }
        }
        Ok(ConstantAction { algebra, group, automorphisms })
    }

    /// `ℤ/n` acting through the powers of one automorphism, given by the
    /// images of the visible generators.
    pub fn cyclic(algebra: Arc<PresentedAlgebra>, n: usize, images: Vec<Poly>, budget: &Budget) -> Result<Self> {
        if n == 0 {
            return Err(AlgError::InvalidInput("group order must be positive".into()));
        }
        let rho = RingMap::new(algebra.clone(), algebra.clone(), images, budget)?;
        let mut powers = vec![RingMap::identity(algebra.clone())];
        for k in 1..n {
            let next = powers[k - 1].then(&rho, budget)?;
            powers.push(next);
        }
        if !powers[n - 1].then(&rho, budget)?.equals(&powers[0], budget)? {
            return Err(AlgError::InvalidInput(format!("the automorphism does not have order dividing {n}")));
        }
        Self::new(algebra, ConstantGroupScheme::cyclic(n), powers, budget)
    }
}

#[derive(Clone, Debug)]
pub enum GroupActionAff {
    Constant(ConstantAction),
    Diagonal(MGrading),
}

/// `δ1, δ2 : A → C` with `C` free over `A` through `δ2`.
#[derive(Clone, Debug)]
pub struct EquivalenceRelationAff {
    pub a: Arc<PresentedAlgebra>,
    pub c: Arc<PresentedAlgebra>,
    pub delta1: RingMap,
    pub delta2: RingMap,
    pub free: FiniteFreeAlgebra,
}

/// Whether `A ⊗ A → C`, `a ⊗ a' ↦ δ1(a) δ2(a')`, is surjective.
pub fn pair_map_surjective(delta1: &RingMap, delta2: &RingMap, budget: &Budget) -> Result<bool> {
    let c = delta1.target();
    let mut gens = delta1.images().to_vec();
    gens.extend(delta2.images().iter().cloned());
    let gb = GraphBasis::new(c, &gens, budget)?;
    for v in 0..c.nvars() {
        if gb.express(&c.var(v), budget)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl EquivalenceRelationAff {
    /// Refuses relations whose pair map `A ⊗ A → C` is not surjective.
    pub fn new(delta1: RingMap, delta2: RingMap, budget: &Budget) -> Result<Self> {
        if delta1.source().var_names() != delta2.source().var_names() || !Arc::ptr_eq(delta1.target(), delta2.target()) {
            return Err(AlgError::InvalidInput("δ1 and δ2 must share source and target".into()));
        }
        if !pair_map_surjective(&delta1, &delta2, budget)? {
            return Err(AlgError::Precondition("the pair map A ⊗ A → C is not surjective, so R → X × X is not a closed immersion".into()));
        }
        let free = FiniteFreeAlgebra::from_map(delta2.clone(), None, budget)?;
        Ok(EquivalenceRelationAff { a: delta1.source().clone(), c: delta1.target().clone(), delta1, delta2, free })
    }

    /// The diagonal relation `C = A`.
    pub fn trivial(a: Arc<PresentedAlgebra>, budget: &Budget) -> Result<Self> {
        let id = RingMap::identity(a);
        Self::new(id.clone(), id, budget)
    }

    pub fn rank(&self) -> usize {
        self.free.rank()
    }
}

/// `C = A ⊗ k^G`, `δ2(a) = a ⊗ 1`, `δ1(a) = Σ_g ρ_g(a) ⊗ e_g`.
pub fn relation_from_constant_action(act: &ConstantAction, budget: &Budget) -> Result<EquivalenceRelationAff> {
    let a = &act.algebra;
    let kg = Arc::new(act.group.product_algebra(a.field()));
    let t = tensor(a, &kg, budget)?;
    let images: Vec<Poly> = (0..a.nvars())
        .map(|v| {
            act.automorphisms.iter().enumerate().fold(t.algebra.zero(), |acc, (g, rho)| {
                &acc + &(&t.left.apply_raw(&rho.images()[v]) * &t.right.images()[g])
            })
        })
        .collect();
    let delta1 = RingMap::new(a.clone(), t.algebra.clone(), images, budget)?;
    EquivalenceRelationAff::new(delta1, t.left.clone(), budget)
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    /// First group element with a fixed point, for constant groups.
    pub offending: Option<usize>,
}

/// Free iff for every `g ≠ e` the ideal `(v − ρ_g(v))` is the unit ideal.
pub fn freeness_check_constant(act: &ConstantAction, budget: &Budget) -> Result<FreenessReport> {
    let a = &act.algebra;
    let mut checks = Vec::new();
    let mut offending = None;
    for g in 0..act.group.order() {
        if g == act.group.identity() {
            continue;
        }
        let mut gens = Vec::new();
        for v in a.visible_vars() {
            let d = a.reduce(&(&a.var(v) - &act.automorphisms[g].images()[v]), budget)?;
            if !d.is_zero() {
                gens.push(d);
            }
        }
        let shown: Vec<String> = gens.iter().map(|f| a.format(f)).collect();
        let ideal = a.relations().with_generators(gens);
        let unit = ideal.is_unit_ideal(budget)?;
        let witness = if unit {
            format!("fixed ideal ({}) is the unit ideal", shown.join(", "))
        } else {
            format!("fixed ideal ({}) is proper", shown.join(", "))
        };
        if !unit && offending.is_none() {
            offending = Some(g);
        }
        checks.push(Check::new(&format!("no fixed points of element {g}"), Verdict::from_bool(unit), witness));
    }
    Ok(FreenessReport { verdict: overall(&checks), checks, offending })
}

fn format_cofactors(a: &PresentedAlgebra, ideal: &Ideal, cof: &[Poly]) -> String {
    let mut parts = Vec::new();
    for (c, g) in cof.iter().zip(ideal.generators()) {
        if !c.is_zero() && !a.is_zero_elem(g, &Budget::default()).unwrap_or(false) {
            parts.push(format!("({})*({})", a.format(c), a.format(g)));
        }
    }
    if parts.is_empty() {
        "1 = 1".into()
    } else {
        format!("1 = {} mod relations", parts.join(" + "))
    }
}

/// `1 ∈ A_i·A` for the canonical generator `i`, with its witness; `None`
/// when the monomial enumeration is not saturated.
fn unit_in_degree(g: &MGrading, i: &crate::abgrp::GroupElement, bound: u32, budget: &Budget) -> Result<(Verdict, String, Option<(Vec<Monomial>, Vec<Poly>)>)> {
    let a = g.algebra();
    let dm = degree_monomial_ideal(g, i, bound, budget)?;
    let shown: Vec<String> = dm.monomials.iter().map(|m| a.format(&Poly::term(a.field(), m.clone(), a.field().one()))).collect();
    let one = a.one();
    // generators: relations first, then the monomials
    if let Some(cof) = dm.ideal.cofactors(&one, budget)? {
        let nrel = dm.ideal.generators().len() - dm.monomials.len();
        let witness = format_cofactors(a, &dm.ideal, &cof);
        return Ok((Verdict::Pass, witness, Some((dm.monomials, cof[nrel..].to_vec()))));
    }
    if dm.saturated {
        Ok((Verdict::Fail, format!("J = ({}) is proper", shown.join(", ")), None))
    } else {
        Ok((Verdict::Inconclusive, format!("J = ({}) is proper up to degree {bound}, enumeration not saturated", shown.join(", ")), None))
    }
}

/// Per canonical generator `i` of `M`: `A_i·A = A`.
pub fn freeness_check_diag(g: &MGrading, bound: u32, budget: &Budget) -> Result<FreenessReport> {
    let mut checks = Vec::new();
    for (k, gen) in g.group().generators().iter().enumerate() {
        let (verdict, witness, _) = unit_in_degree(g, gen, bound, budget)?;
        checks.push(Check::new(&format!("A_i A = A for generator {}", k + 1), verdict, witness));
    }
    Ok(FreenessReport { verdict: overall(&checks), checks, offending: None })
}

/// A quotient `B ⊂ A` with its certificates.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub algebra: Arc<PresentedAlgebra>,
    pub inclusion: RingMap,
    pub certificate: Certificate,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientSummary {
    pub algebra: AlgebraSummary,
    pub generators: Vec<String>,
    pub certificate: Certificate,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
}

impl QuotientResult {
    pub fn generators(&self) -> Vec<String> {
        self.inclusion.describe().into_iter().map(|(_, img)| img).collect()
    }

    pub fn verdict(&self) -> Verdict {
        let cert = match self.certificate {
            Certificate::Complete => Verdict::Pass,
            Certificate::CompleteUpToBound => Verdict::Inconclusive,
        };
        overall(&self.checks).max(cert)
    }

    pub fn summary(&self) -> QuotientSummary {
        QuotientSummary {
            algebra: self.algebra.summary(),
            generators: self.generators(),
            certificate: self.certificate,
            checks: self.checks.clone(),
            verdict: self.verdict(),
        }
    }
}

/// Standard monomials of `a` of total degree at most `bound`.
fn standard_monomials_up_to(a: &PresentedAlgebra, bound: u32, budget: &Budget) -> Result<Vec<Monomial>> {
    let order = MonomialOrder::DegRevLex;
    let lms: Vec<Monomial> = a.groebner(budget)?.iter().filter_map(|g| g.leading(&order).map(|t| t.0.clone())).collect();
    let mut out = Vec::new();
    for d in 0..=bound {
        for m in monomials_of_degree(a.nvars(), d) {
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            if out.len() as u64 > budget.point_cap {
                return Err(AlgError::ResourceExhausted("too many monomials in the completion sweep".into()));
            }
        }
    }
    Ok(out)
}

/// Drops the constant term and scales to a monic leading term.
fn normalize(f: &Poly) -> Poly {
    let field = f.field();
    let mut g = f.clone();
    let c = g.constant_term();
    if !c.is_zero() {
        g = &g - &Poly::constant(field, f.nvars(), c);
    }
    match g.leading(&MonomialOrder::DegRevLex) {
        Some((_, lc)) => {
            let inv = field.inv(lc);
            g.scale(&inv)
        }
        None => g,
    }
}

/// The equalizer `B = {a : δ1(a) = δ2(a)}`, seeded with characteristic
/// polynomial coefficients and completed by a linear sweep in degrees up
/// to `bound`.
pub fn quotient_flf(r: &EquivalenceRelationAff, bound: u32, budget: &Budget) -> Result<QuotientResult> {
    let a = &r.a;
    let field = a.field();
    let monos = standard_monomials_up_to(a, bound, budget)?;
    let mut gens: Vec<Poly> = Vec::new();
    let push = |gens: &mut Vec<Poly>, f: Poly| {
        let f = normalize(&f);
        if !f.is_zero() && !gens.contains(&f) {
            gens.push(f);
        }
    };
    for v in 0..a.nvars() {
        let x = a.var(v);
        for c in r.free.charpoly(&r.delta1.apply_raw(&x), budget)?.into_iter().skip(1) {
            push(&mut gens, a.reduce(&c, budget)?);
        }
    }

    let diffs: Vec<Poly> = monos
        .iter()
        .map(|m| {
            let x = Poly::term(field, m.clone(), field.one());
            r.c.reduce(&(&r.delta1.apply_raw(&x) - &r.delta2.apply_raw(&x)), budget)
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Monomial> = diffs.iter().flat_map(|d| d.monomials().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let matrix: Vec<Vec<_>> = rows.iter().map(|m| diffs.iter().map(|d| d.coefficient(m)).collect()).collect();
    let kernel = if rows.is_empty() {
        (0..monos.len()).map(|j| (0..monos.len()).map(|i| if i == j { field.one() } else { field.zero() }).collect()).collect()
    } else {
        nullspace(field, &matrix, monos.len())
    };
    let mut sweep: Vec<Poly> = kernel
        .iter()
        .map(|v| Poly::from_terms(field, a.nvars(), monos.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero())))
        .map(|f| normalize(&f))
        .filter(|f| !f.is_zero())
        .collect();
    sweep.sort_by_key(|x| x.total_degree());
    for f in sweep {
        if gens.is_empty() || GraphBasis::new(a, &gens, budget)?.express(&f, budget)?.is_none() {
            push(&mut gens, f);
        }
    }
    let gens = minimize_generators(a, gens, budget)?;
    let (b, inclusion) = present_subalgebra(a, &gens, budget)?;
    let mut result = QuotientResult { algebra: b, inclusion, certificate: Certificate::CompleteUpToBound, checks: vec![] };
    let report = verify_flf_quotient(r, &result, budget)?;
    if overall(&report) == Verdict::Pass {
        result.certificate = Certificate::Complete;
    }
    result.checks = report;
    Ok(result)
}

fn eval_poly_at(a: &PresentedAlgebra, coeffs: &[Poly], x: &Poly, budget: &Budget) -> Result<Poly> {
    let mut acc = a.zero();
    for c in coeffs {
        acc = a.mul(&acc, x, budget)?;
        acc = &acc + c;
    }
    a.reduce(&acc, budget)
}

/// Equalizer property of the generators, integrality of `A` over `B`,
/// freeness of rank `n`, and `A ⊗_B A ≅ C`. When all pass, `B` is the whole
/// equalizer: `A` is faithfully flat over `B`, so the equalizer of
/// `A ⇉ A ⊗_B A` is `B`.
pub fn verify_flf_quotient(r: &EquivalenceRelationAff, q: &QuotientResult, budget: &Budget) -> Result<Vec<Check>> {
    let a = &r.a;
    let c = &r.c;
    let n = r.rank();
    let bimages = q.inclusion.images().to_vec();
    let mut checks = Vec::new();

    let mut bad = Vec::new();
    for b in &bimages {
        if !c.eq_elems(&r.delta1.apply_raw(b), &r.delta2.apply_raw(b), budget)? {
            bad.push(a.format(b));
        }
    }
    checks.push(Check::new(
        "generators are equalized",
        Verdict::from_bool(bad.is_empty()),
        if bad.is_empty() { format!("δ1 = δ2 on {} generators", bimages.len()) } else { format!("δ1 ≠ δ2 on {}", bad.join(", ")) },
    ));

    let gb = GraphBasis::new(a, &bimages, budget)?;
    let mut integral = true;
    let mut witnesses = Vec::new();
    for v in 0..a.nvars() {
        let x = a.var(v);
        let cp = r.free.charpoly(&r.delta1.apply_raw(&x), budget)?;
        let mut in_b = true;
        for coef in &cp {
            if !coef.is_constant() && gb.express(coef, budget)?.is_none() {
                in_b = false;
            }
        }
        let vanishes = eval_poly_at(a, &cp, &x, budget)?.is_zero();
        integral &= in_b && vanishes;
        let terms: Vec<String> = cp.iter().enumerate().map(|(k, f)| format!("({})*T^{}", a.format(f), n - k)).collect();
        witnesses.push(format!("{}: {}", a.var_names()[v], terms.join(" + ")));
    }
    checks.push(Check::new("integral over the quotient", Verdict::from_bool(integral), witnesses.join("; ")));

    match FiniteFreeAlgebra::from_map(q.inclusion.clone(), None, budget) {
        Ok(ff) => {
            let basis: Vec<String> = ff.basis().iter().map(|e| a.format(e)).collect();
            checks.push(Check::new(
                &format!("free of rank {n}"),
                Verdict::from_bool(ff.rank() == n),
                format!("basis {{{}}} of rank {}", basis.join(", "), ff.rank()),
            ));
        }
        Err(AlgError::BasisNotFree(msg)) => {
            checks.push(Check::new(&format!("free of rank {n}"), Verdict::Inconclusive, format!("integral, rank unverified: {msg}")));
        }
        Err(e) => return Err(e),
    }

    let t = tensor_over(a, a, &bimages, &bimages, ("_1", "_2"), budget)?;
    let pair = t.induced_map(&r.delta1, &r.delta2, budget)?;
    let pgb = GraphBasis::new(c, pair.images(), budget)?;
    let mut surjective = true;
    for v in 0..c.nvars() {
        if pgb.express(&c.var(v), budget)?.is_none() {
            surjective = false;
        }
    }
    checks.push(Check::new("A ⊗_B A → C surjective", Verdict::from_bool(surjective), "every generator of C lies in the image"));
    let ker = kernel_of_map(&pair, budget)?;
    let mut injective = true;
    for k in ker.generators() {
        if !t.algebra.is_zero_elem(k, budget)? {
            injective = false;
        }
    }
    checks.push(Check::new("A ⊗_B A → C injective", Verdict::from_bool(injective), format!("kernel generated by {} elements of the relations", ker.generators().len())));
    Ok(checks)
}

/// `Spec A_0`, with the torsor certificate attached when the action is
/// free. Without `override_freeness` an action certified non-free is
/// refused; an inconclusive freeness check is reported, not refused.
pub fn quotient_diag(g: &MGrading, bound: u32, override_freeness: bool, budget: &Budget) -> Result<QuotientResult> {
    let free = freeness_check_diag(g, bound, budget)?;
    if free.verdict == Verdict::Fail && !override_freeness {
        let w: Vec<String> = free.checks.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| c.witness.clone()).collect();
        return Err(AlgError::Precondition(format!("action is not certified free: {}", w.join("; "))));
    }
    let dz = degree_zero_subalgebra(g, bound, budget)?;
    let mut checks = free.checks.clone();
    if free.verdict == Verdict::Pass {
        checks.extend(torsor_check(g, bound, budget)?);
    }
    Ok(QuotientResult { algebra: dz.algebra, inclusion: dz.inclusion, certificate: dz.certificate, checks })
}

/// Over `X = Spec A_0`: `A_i·A_{−i} = A_0` via `1 ∈ A_i·A` for each canonical
/// generator, and surjectivity of `A ⊗_{A_0} A → A[M]` on the grouplike
/// generators `X^{±i}`.
pub fn torsor_check(g: &MGrading, bound: u32, budget: &Budget) -> Result<Vec<Check>> {
    let a = g.algebra();
    let group = g.group();
    let coaction = coaction_from_grading(g, budget)?;
    let t = &coaction.tensor;
    let km = t.right.source().clone();
    let mut checks = Vec::new();
    for (k, gen) in group.generators().iter().enumerate() {
        let mut degrees = vec![gen.clone()];
        if k < group.free_rank() {
            degrees.push(group.neg(gen));
        }
        for d in degrees {
            let (verdict, witness, data) = unit_in_degree(g, &d, bound, budget)?;
            let label = d.to_string();
            checks.push(Check::new(&format!("1 ∈ A_i A for i = {label}"), verdict, witness));
            let Some((monos, cof)) = data else { continue };
            // Ψ(Σ m_k ⊗ c_k) = Σ φ(m_k)(c_k ⊗ 1) should be 1 ⊗ X^i
            let mut image = t.algebra.zero();
            for (m, c) in monos.iter().zip(&cof) {
                let mp = Poly::term(a.field(), m.clone(), a.field().one());
                image = &image + &(&coaction.map.apply_raw(&mp) * &t.left.apply_raw(c));
            }
            let target = t.right.apply_raw(&coaction.group_scheme.character(&km, &d));
            let hit = t.algebra.eq_elems(&image, &target, budget)?;
            checks.push(Check::new(&format!("X^i in the image of A ⊗_{{A_0}} A for i = {label}"), Verdict::from_bool(hit), "image of the cofactor witness"));
        }
    }
    Ok(checks)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberSquareReport {
    pub q: u64,
    pub points: usize,
    pub fiber_pairs: usize,
    pub relation_pairs: usize,
    pub agree: bool,
}

/// `{(x, y) : π(x) = π(y)}` against the image of `R(F_q)` in `X × X`.
pub fn fiber_square_points_check(r: &EquivalenceRelationAff, q: &QuotientResult, order: u64, budget: &Budget) -> Result<FiberSquareReport> {
    let a = &r.a;
    let gf = GaloisField::new(order)?;
    match a.field() {
        CoeffField::Prime(p) if u64::from(gf.characteristic()) == p => {}
        f => return Err(AlgError::Precondition(format!("{f} does not embed in F_{order}"))),
    }
    let pts = rational_points_in(a, &gf, budget)?;
    if (pts.len() as u64).pow(2) > budget.point_cap {
        return Err(AlgError::ResourceExhausted(format!("{} point pairs", pts.len().pow(2))));
    }
    let pi: Vec<FqPoly> = q.inclusion.images().iter().map(|f| FqPoly::new(f, &gf)).collect::<Result<_>>()?;
    let images: Vec<Vec<u32>> = pts.iter().map(|p| pi.iter().map(|f| f.eval(&gf, &p.coords)).collect()).collect();
    let mut fiber = BTreeSet::new();
    for (i, x) in pts.iter().enumerate() {
        for (j, y) in pts.iter().enumerate() {
            if images[i] == images[j] {
                fiber.insert((x.coords.clone(), y.coords.clone()));
            }
        }
    }
    let d1: Vec<FqPoly> = r.delta1.images().iter().map(|f| FqPoly::new(f, &gf)).collect::<Result<_>>()?;
    let d2: Vec<FqPoly> = r.delta2.images().iter().map(|f| FqPoly::new(f, &gf)).collect::<Result<_>>()?;
    let mut rel = BTreeSet::new();
    for p in rational_points_in(&r.c, &gf, budget)? {
        let x: Vec<u32> = d1.iter().map(|f| f.eval(&gf, &p.coords)).collect();
        let y: Vec<u32> = d2.iter().map(|f| f.eval(&gf, &p.coords)).collect();
        rel.insert((x, y));
    }
    Ok(FiberSquareReport { q: order, points: pts.len(), fiber_pairs: fiber.len(), relation_pairs: rel.len(), agree: fiber == rel })
}

/// Name for an inverted generator's companion.
pub fn inverse_name(v: &str) -> String {
    format!("{v}{INV_SUFFIX}")
}
