use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{
    find_isomorphism_over, fiber_square_points_check, freeness_check_constant, freeness_check_diag, overall, quotient_diag, quotient_flf,
    relation_from_constant_action, Check, ConstantAction, QuotientResult, QuotientSummary, Verdict,
};
use crate::abgrp::{FgAbGroup, GroupHom};
use crate::budget::Budget;
use crate::descent::equivariant_nondescent_demo;
use crate::error::{AlgError, Result};
use crate::exactalg::{CoeffField, Poly, PresentedAlgebra, RingMap};
use crate::flf::FiniteFreeAlgebra;
use crate::grading::{Certificate, MGrading};
use crate::groups::{diag_quotient, primitive_root_of_unity, DiagonalizableGroupScheme};

const ENTRIES: [(&str, &str); 7] = [
    ("pgl2", "GL2 modulo scalars: the degree-0 part of the coordinate ring of GL2 graded by total degree"),
    ("p1_charts", "the projective line as the quotient of the punctured plane by scaling, one affine chart at a time"),
    ("kummer_mu_n", "Gm modulo mu_n, computed from a Z/n grading and from the character group nZ"),
    ("gm_mod_mu2", "Gm modulo the sign action, as a finite free quotient over Q and F_5 with point counts"),
    ("a1_z2_nonfree", "the sign action on the affine line: not free, so no quotient is asserted"),
    ("a2_gm_nonfree", "scaling on the affine plane: not free, the invariant ring is only the constants"),
    ("equivariant_nondescent", "the ideal (s) of k[s] with a Z/n grading does not descend along k[s^n] -> k[s]"),
];

/// Names and one-line descriptions, in a fixed order.
pub fn list_gallery() -> Vec<(&'static str, &'static str)> {
    ENTRIES.to_vec()
}

#[derive(Clone, Debug, Default)]
pub struct GalleryOptions {
    pub bound: Option<u32>,
    pub n: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedQuotient {
    pub label: String,
    #[serde(flatten)]
    pub quotient: QuotientSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct GalleryReport {
    pub name: String,
    pub description: String,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    pub quotients: Vec<NamedQuotient>,
    pub facts: BTreeMap<String, String>,
}

struct Builder {
    checks: Vec<Check>,
    quotients: Vec<NamedQuotient>,
    facts: BTreeMap<String, String>,
}

impl Builder {
    fn new() -> Self {
        Builder { checks: vec![], quotients: vec![], facts: BTreeMap::new() }
    }

    fn check(&mut self, name: &str, verdict: Verdict, witness: impl Into<String>) {
        self.checks.push(Check::new(name, verdict, witness));
    }

    fn quotient(&mut self, label: &str, q: &QuotientResult) {
        for c in &q.checks {
            self.checks.push(Check::new(&format!("{label}: {}", c.name), c.verdict, c.witness.clone()));
        }
        let verdict = match q.certificate {
            Certificate::Complete => Verdict::Pass,
            Certificate::CompleteUpToBound => Verdict::Inconclusive,
        };
        self.check(&format!("{label}: generators complete"), verdict, q.generators().join(", "));
        self.quotients.push(NamedQuotient { label: label.to_string(), quotient: q.summary() });
    }

    fn finish(self, name: &str) -> GalleryReport {
        let description = ENTRIES.iter().find(|e| e.0 == name).map(|e| e.1).unwrap_or_default().to_string();
        GalleryReport { name: name.into(), description, verdict: overall(&self.checks), checks: self.checks, quotients: self.quotients, facts: self.facts }
    }
}

/// Runs one registered example end to end.
pub fn gallery(name: &str, opts: &GalleryOptions, budget: &Budget) -> Result<GalleryReport> {
    let mut b = Builder::new();
    match name {
        "pgl2" => pgl2(&mut b, opts, budget)?,
        "p1_charts" => p1_charts(&mut b, opts, budget)?,
        "kummer_mu_n" => kummer_mu_n(&mut b, opts, budget)?,
        "gm_mod_mu2" => gm_mod_mu2(&mut b, opts, budget)?,
        "a1_z2_nonfree" => a1_z2_nonfree(&mut b, opts, budget)?,
        "a2_gm_nonfree" => a2_gm_nonfree(&mut b, opts, budget)?,
        "equivariant_nondescent" => equivariant_nondescent(&mut b, opts, budget)?,
        _ => {
            let names: Vec<&str> = ENTRIES.iter().map(|e| e.0).collect();
            return Err(AlgError::InvalidInput(format!("unknown gallery entry {name:?}; known: {}", names.join(", "))));
        }
    }
    Ok(b.finish(name))
}

fn graded(alg: &Arc<PresentedAlgebra>, group: FgAbGroup, degrees: &[(&str, i64)]) -> Result<MGrading> {
    let map = degrees.iter().map(|(v, d)| (v.to_string(), vec![*d; group.ngens()])).collect();
    MGrading::from_names(alg.clone(), group, &map)
}

/// `A` free over `B` of the given rank, by an explicit basis.
fn rank_check(label: &str, inclusion: &RingMap, rank: usize, budget: &Budget) -> Result<Check> {
    let name = format!("{label}: free of rank {rank} over the quotient");
    match FiniteFreeAlgebra::from_map(inclusion.clone(), None, budget) {
        Ok(ff) => {
            let a = inclusion.target();
            let basis: Vec<String> = ff.basis().iter().map(|e| a.format(e)).collect();
            Ok(Check::new(&name, Verdict::from_bool(ff.rank() == rank), format!("basis {{{}}}", basis.join(", "))))
        }
        Err(AlgError::BasisNotFree(m)) => Ok(Check::new(&name, Verdict::Inconclusive, m)),
        Err(e) => Err(e),
    }
}

fn agreement(b: &mut Builder, label: &str, i1: &RingMap, i2: &RingMap, budget: &Budget) -> Result<()> {
    match find_isomorphism_over(i1, i2, budget)? {
        Some(iso) => {
            let shown: Vec<String> = iso.describe().into_iter().map(|(v, img)| format!("{v} -> {img}")).collect();
            b.check(label, Verdict::Pass, shown.join(", "));
        }
        None => b.check(label, Verdict::Fail, "the two subalgebras differ"),
    }
    Ok(())
}

fn pgl2(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let q = CoeffField::Rationals;
    let a = Arc::new(PresentedAlgebra::parse(q, &["x11", "x12", "x21", "x22", "dinv"], &[], &["dinv*(x11*x22 - x12*x21) - 1"])?);
    let g = graded(&a, FgAbGroup::free(1), &[("x11", 1), ("x12", 1), ("x21", 1), ("x22", 1), ("dinv", -2)])?;
    let res = quotient_diag(&g, opts.bound.unwrap_or(4), false, budget)?;
    b.facts.insert("generators".into(), res.generators().len().to_string());
    b.quotient("PGL2", &res);
    Ok(())
}

fn p1_charts(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let q = CoeffField::Rationals;
    let bound = opts.bound.unwrap_or(4);
    let mut gens = Vec::new();
    for (label, inv) in [("chart x != 0", "x"), ("chart y != 0", "y")] {
        let a = Arc::new(PresentedAlgebra::parse(q, &["x", "y"], &[inv], &[])?);
        let g = graded(&a, FgAbGroup::free(1), &[("x", 1), ("y", 1)])?;
        let res = quotient_diag(&g, bound, false, budget)?;
        let shape = res.algebra.user_relations().is_empty() && res.algebra.visible_vars().len() == 1 && res.algebra.inverted().is_empty();
        b.check(&format!("{label}: polynomial ring in one variable"), Verdict::from_bool(shape), res.algebra.to_string());
        gens.push(res.generators().join(", "));
        b.quotient(label, &res);
    }
    let overlap = PresentedAlgebra::parse(q, &["x", "y"], &["x", "y"], &[])?;
    let t1 = overlap.parse_elem(&gens[0])?;
    let t2 = overlap.parse_elem(&gens[1])?;
    let inverse = overlap.eq_elems(&(&t1 * &t2), &overlap.one(), budget)?;
    b.check("transition t -> t^-1 on the overlap", Verdict::from_bool(inverse), format!("({})*({}) = 1", gens[0], gens[1]));
    b.facts.insert("transition".into(), "t -> t^-1".into());
    Ok(())
}

fn smallest_prime_with_roots(n: u64) -> u64 {
    (2..).find(|&p: &u64| CoeffField::prime(p).is_ok() && (p - 1) % n == 0).expect("primes are unbounded")
}

fn laurent_line(field: CoeffField) -> Arc<PresentedAlgebra> {
    Arc::new(DiagonalizableGroupScheme::new(FgAbGroup::free(1), field).group_algebra())
}

/// `x ↦ ζ x` for a primitive `n`-th root of unity `ζ ∈ F_p`: quotient,
/// verification, and the point oracle over `F_p` and `F_{p^2}`.
fn constant_mu_n(b: &mut Builder, n: u32, p: u64, bound: u32, budget: &Budget) -> Result<QuotientResult> {
    let field = CoeffField::prime(p)?;
    let a = laurent_line(field);
    let zeta = primitive_root_of_unity(p, u64::from(n)).ok_or_else(|| AlgError::InvalidInput(format!("no {n}-th roots of unity in F_{p}")))?;
    let image = a.parse_elem(&format!("{zeta}*x"))?;
    let act = ConstantAction::cyclic(a, n as usize, vec![image], budget)?;
    let free = freeness_check_constant(&act, budget)?;
    b.checks.extend(free.checks.iter().map(|c| Check::new(&format!("F_{p}: {}", c.name), c.verdict, c.witness.clone())));
    let r = relation_from_constant_action(&act, budget)?;
    let res = quotient_flf(&r, bound, budget)?;
    b.quotient(&format!("F_{p} finite free route"), &res);
    for q in [p, p * p] {
        let fs = fiber_square_points_check(&r, &res, q, budget)?;
        b.check(
            &format!("fiber square over F_{q}"),
            Verdict::from_bool(fs.agree),
            format!("{} points, {} pairs with equal image, {} pairs from the relation", fs.points, fs.fiber_pairs, fs.relation_pairs),
        );
    }
    Ok(res)
}

fn kummer_mu_n(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let n = opts.n.unwrap_or(4);
    if n < 2 {
        return Err(AlgError::InvalidInput("n must be at least 2".into()));
    }
    let q = CoeffField::Rationals;
    let bound = opts.bound.unwrap_or(n);
    let a = laurent_line(q);
    let group = FgAbGroup::cyclic(i64::from(n));
    let g = graded(&a, group.clone(), &[("x", 1)])?;
    let res = quotient_diag(&g, bound, false, budget)?;
    b.quotient("grading route", &res);
    b.checks.push(rank_check("grading route", &res.inclusion, n as usize, budget)?);

    let u = GroupHom::new(FgAbGroup::free(1), group, vec![vec![1]])?;
    let dq = diag_quotient(&u, q, budget)?;
    let shown: Vec<String> = dq.inclusion.describe().into_iter().map(|(v, img)| format!("{v} -> {img}")).collect();
    b.facts.insert("character route".into(), format!("k[{}] -> k[Z]: {}", dq.kernel, shown.join(", ")));
    agreement(b, "grading and character routes agree", &res.inclusion, &dq.inclusion, budget)?;

    let p = smallest_prime_with_roots(u64::from(n));
    constant_mu_n(b, n, p, bound, budget)?;
    Ok(())
}

fn gm_mod_mu2(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let bound = opts.bound.unwrap_or(2);
    let q = CoeffField::Rationals;
    let a = laurent_line(q);
    let act = ConstantAction::cyclic(a.clone(), 2, vec![a.parse_elem("-x")?], budget)?;
    let free = freeness_check_constant(&act, budget)?;
    b.checks.extend(free.checks);
    let r = relation_from_constant_action(&act, budget)?;
    let flf = quotient_flf(&r, bound, budget)?;
    b.quotient("finite free route", &flf);

    let g = graded(&a, FgAbGroup::cyclic(2), &[("x", 1)])?;
    let diag = quotient_diag(&g, bound, false, budget)?;
    b.quotient("grading route", &diag);
    b.checks.push(rank_check("grading route", &diag.inclusion, 2, budget)?);
    agreement(b, "finite free and grading routes agree", &flf.inclusion, &diag.inclusion, budget)?;

    constant_mu_n(b, 2, 5, bound, budget)?;
    Ok(())
}

fn a1_z2_nonfree(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let q = CoeffField::Rationals;
    let a = Arc::new(PresentedAlgebra::polynomial_ring(q, &["x"]));
    let act = ConstantAction::cyclic(a.clone(), 2, vec![a.parse_elem("-x")?], budget)?;
    let free = freeness_check_constant(&act, budget)?;
    b.checks.extend(free.checks);
    match relation_from_constant_action(&act, budget) {
        Err(AlgError::Precondition(m)) => b.check("relation is a closed immersion", Verdict::Fail, m),
        Err(e) => return Err(e),
        Ok(_) => b.check("relation is a closed immersion", Verdict::Pass, "pair map surjective"),
    }
    // invariant ring without any quotient claim
    let g = graded(&a, FgAbGroup::cyclic(2), &[("x", 1)])?;
    let inv = quotient_diag(&g, opts.bound.unwrap_or(4), true, budget)?;
    let target = Arc::new(PresentedAlgebra::polynomial_ring(q, &["u"]));
    let square = RingMap::new(target, a.clone(), vec![a.parse_elem("x^2")?], budget)?;
    let equal = find_isomorphism_over(&inv.inclusion, &square, budget)?.is_some();
    b.check("override: invariant ring equals Q[x^2]", Verdict::from_bool(equal), inv.generators().join(", "));
    b.facts.insert("invariant ring".into(), inv.algebra.to_string());
    Ok(())
}

fn a2_gm_nonfree(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let q = CoeffField::Rationals;
    let a = Arc::new(PresentedAlgebra::polynomial_ring(q, &["x", "y"]));
    let g = graded(&a, FgAbGroup::free(1), &[("x", 1), ("y", 1)])?;
    let bound = opts.bound.unwrap_or(4).max(2);
    let free = freeness_check_diag(&g, bound, budget)?;
    b.checks.extend(free.checks);
    let inv = quotient_diag(&g, bound, true, budget)?;
    let constants = inv.inclusion.images().iter().all(Poly::is_constant);
    b.check("override: invariant ring is the constants", Verdict::from_bool(constants), inv.algebra.to_string());
    Ok(())
}

fn equivariant_nondescent(b: &mut Builder, opts: &GalleryOptions, budget: &Budget) -> Result<()> {
    let ns: Vec<u32> = opts.n.map(|n| vec![n]).unwrap_or_else(|| vec![2, 3]);
    for n in ns {
        let r = equivariant_nondescent_demo(n, CoeffField::Rationals, budget)?;
        b.check(
            &format!("n = {n}: invariant part generates a strictly smaller ideal"),
            Verdict::from_bool(r.strict && !r.s_in_generated),
            format!("invariant part ({}) over {}; s not in it", r.invariant_part.join(", "), r.invariant_ring.join(", ")),
        );
    }
    Ok(())
}
