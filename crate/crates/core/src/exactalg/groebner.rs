//! Buchberger's algorithm with the Gebauer–Möller criteria and the sugar
//! selection strategy.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::field::{Coef, CoeffField};
use super::order::MonomialOrder;
use super::poly::{Monomial, Poly};
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// Terms sorted ascending, so the leading term is last.
#[derive(Clone, Debug)]
struct OPoly {
    terms: Vec<(Monomial, Coef)>,
}

impl OPoly {
    fn lead(&self) -> &(Monomial, Coef) {
        self.terms.last().expect("zero polynomial has no leading term")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

struct Engine<'a> {
    field: CoeffField,
    nvars: usize,
    order: &'a MonomialOrder,
    steps: u64,
    limit: u64,
}

/// A multiplier `coef * mono * basis[idx]` subtracted during reduction.
type TraceStep = (usize, Monomial, Coef);

impl<'a> Engine<'a> {
    fn new(field: CoeffField, nvars: usize, order: &'a MonomialOrder, budget: &Budget) -> Self {
        Engine { field, nvars, order, steps: 0, limit: budget.groebner_steps }
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.limit {
            return Err(AlgError::ResourceExhausted(format!(
                "Gröbner basis exceeded {} reduction steps",
                self.limit
            )));
        }
        Ok(())
    }

    fn from_poly(&self, p: &Poly) -> OPoly {
        let mut terms: Vec<(Monomial, Coef)> = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| self.order.cmp(&a.0, &b.0));
        OPoly { terms }
    }

    fn to_poly(&self, p: &OPoly) -> Poly {
        Poly::from_terms(self.field, self.nvars, p.terms.iter().cloned())
    }

    fn monic(&self, p: &mut OPoly) -> Coef {
        let lc = p.lead().1.clone();
        if lc.is_one() {
            return lc;
        }
        let inv = self.field.inv(&lc);
        for t in p.terms.iter_mut() {
            t.1 = self.field.mul(&t.1, &inv);
        }
        lc
    }

    /// `f - c * m * g`, merging ascending term lists.
    fn sub_mul(&self, f: &[(Monomial, Coef)], c: &Coef, m: &Monomial, g: &OPoly) -> Vec<(Monomial, Coef)> {
        let mut out = Vec::with_capacity(f.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let gm: Vec<(Monomial, Coef)> =
            g.terms.iter().map(|(t, v)| (t.mul(m), self.field.neg(&self.field.mul(v, c)))).collect();
        while i < f.len() && j < gm.len() {
            match self.order.cmp(&f[i].0, &gm[j].0) {
                Ordering::Less => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(gm[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.field.add(&f[i].1, &gm[j].1);
                    if !s.is_zero() {
                        out.push((f[i].0.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&f[i..]);
        out.extend(gm.into_iter().skip(j));
        out
    }

    fn find_divisor(&self, m: &Monomial, basis: &[OPoly], active: &[bool]) -> Option<usize> {
        basis
            .iter()
            .enumerate()
            .find(|(k, g)| active[*k] && g.lead().0.divides(m))
            .map(|(k, _)| k)
    }

    /// Full reduction of `f` modulo the active part of `basis`.
    fn reduce(
        &mut self,
        mut f: OPoly,
        basis: &[OPoly],
        active: &[bool],
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Result<OPoly> {
        let mut rem: Vec<(Monomial, Coef)> = Vec::new();
        while let Some((lm, lc)) = f.terms.last().cloned() {
            match self.find_divisor(&lm, basis, active) {
                Some(k) => {
                    self.tick()?;
                    let g = &basis[k];
                    let q = g.lead().0.quotient_of(&lm);
                    let c = self.field.div(&lc, &g.lead().1);
                    let n = f.terms.len();
                    // drop the lead explicitly; it cancels
                    let mut next = self.sub_mul(&f.terms[..n - 1], &c, &q, &OPoly {
                        terms: g.terms[..g.terms.len() - 1].to_vec(),
                    });
                    std::mem::swap(&mut f.terms, &mut next);
                    if let Some(t) = trace.as_deref_mut() {
                        t.push((k, q, c));
                    }
                }
                None => {
                    rem.push(f.terms.pop().unwrap());
                }
            }
        }
        rem.reverse();
        Ok(OPoly { terms: rem })
    }

    fn spoly(&self, f: &OPoly, g: &OPoly, lcm: &Monomial) -> (OPoly, Monomial, Monomial) {
        // both monic
        let mf = f.lead().0.quotient_of(lcm);
        let mg = g.lead().0.quotient_of(lcm);
        let a: Vec<(Monomial, Coef)> = f.terms[..f.terms.len() - 1].iter().map(|(t, c)| (t.mul(&mf), c.clone())).collect();
        let rest = OPoly { terms: g.terms[..g.terms.len() - 1].to_vec() };
        let terms = self.sub_mul(&a, &Coef::one(), &mg, &rest);
        (OPoly { terms }, mf, mg)
    }
}

struct State {
    basis: Vec<OPoly>,
    sugar: Vec<u64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    cofactors: Option<Vec<Vec<Poly>>>,
}

impl State {
    /// Gebauer–Möller update after adding `basis[h]`.
    fn update(&mut self, h: usize) {
        let lh = self.basis[h].lead().0.clone();
        let others: Vec<usize> = (0..h).filter(|&k| self.active[k]).collect();
        let cands: Vec<(usize, Monomial)> = others.iter().map(|&k| (k, lh.lcm(&self.basis[k].lead().0))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (k, l)) in cands.iter().enumerate() {
            let coprime = lh.coprime(&self.basis[*k].lead().0);
            let dominated = cands
                .iter()
                .enumerate()
                .skip(idx + 1)
                .any(|(_, (_, l2))| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*k, l.clone()));
            }
        }
        // among pairs with equal lcm keep one; drop coprime ones (product criterion)
        let mut new_pairs: Vec<(usize, Monomial)> = Vec::new();
        for (k, l) in kept {
            if lh.coprime(&self.basis[k].lead().0) {
                continue;
            }
            if new_pairs.iter().any(|(_, l2)| *l2 == l) {
                continue;
            }
            new_pairs.push((k, l));
        }
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && lh.lcm(&basis[p.i].lead().0) != p.lcm
                && lh.lcm(&basis[p.j].lead().0) != p.lcm)
        });
        for (k, l) in new_pairs {
            let sk = self.sugar[k] + self.basis[k].lead().0.quotient_of(&l).degree();
            let sh = self.sugar[h] + lh.quotient_of(&l).degree();
            self.pairs.push(Pair { i: k, j: h, lcm: l, sugar: sk.max(sh) });
        }
        for k in others {
            if lh.divides(&self.basis[k].lead().0) {
                self.active[k] = false;
            }
        }
    }
}

fn scale_all(field: CoeffField, v: &[Poly], c: &Coef) -> Vec<Poly> {
    let _ = field;
    v.iter().map(|p| p.scale(c)).collect()
}

fn combine_trace(field: CoeffField, nvars: usize, base: Vec<Poly>, trace: &[TraceStep], cofs: &[Vec<Poly>]) -> Vec<Poly> {
    let mut out = base;
    for (k, m, c) in trace {
        for (o, cf) in out.iter_mut().zip(&cofs[*k]) {
            *o = &*o - &cf.mul_monomial(m, c);
        }
    }
    let _ = (field, nvars);
    out
}

fn run<'a>(gens: &[Poly], order: &'a MonomialOrder, budget: &Budget, traced: bool) -> Result<(Engine<'a>, State)> {
    let first = gens.first().ok_or_else(|| AlgError::InvalidInput("no generators".into()))?;
    let (field, nvars) = (first.field(), first.nvars());
    let mut eng = Engine::new(field, nvars, order, budget);
    let ng = gens.len();
    let mut st = State {
        basis: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        cofactors: if traced { Some(Vec::new()) } else { None },
    };
    for (gi, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut trace = Vec::new();
        let mut h = eng.reduce(eng.from_poly(g), &st.basis, &st.active, traced.then_some(&mut trace))?;
        if h.is_zero() {
            continue;
        }
        let lc = eng.monic(&mut h);
        if let Some(cofs) = st.cofactors.as_mut() {
            let mut unit = vec![Poly::zero(field, nvars); ng];
            unit[gi] = Poly::one(field, nvars);
            let c = combine_trace(field, nvars, unit, &trace, cofs);
            cofs.push(scale_all(field, &c, &field.inv(&lc)));
        }
        st.sugar.push(g.total_degree());
        st.basis.push(h);
        st.active.push(true);
        let idx = st.basis.len() - 1;
        st.update(idx);
    }
    while !st.pairs.is_empty() {
        let (best, _) = st
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.sugar.cmp(&b.sugar).then_with(|| order.cmp(&a.lcm, &b.lcm)))
            .unwrap();
        let pair = st.pairs.swap_remove(best);
        let (s, mf, mg) = eng.spoly(&st.basis[pair.i], &st.basis[pair.j], &pair.lcm);
        eng.tick()?;
        let mut trace = Vec::new();
        let mut h = eng.reduce(s, &st.basis, &st.active, traced.then_some(&mut trace))?;
        if h.is_zero() {
            continue;
        }
        let lc = eng.monic(&mut h);
        if let Some(cofs) = st.cofactors.as_mut() {
            let one = Coef::one();
            let base: Vec<Poly> = cofs[pair.i]
                .iter()
                .zip(&cofs[pair.j])
                .map(|(a, b)| &a.mul_monomial(&mf, &one) - &b.mul_monomial(&mg, &one))
                .collect();
            let c = combine_trace(field, nvars, base, &trace, cofs);
            cofs.push(scale_all(field, &c, &field.inv(&lc)));
        }
        let is_unit = h.lead().0.is_one();
        st.sugar.push(pair.sugar);
        st.basis.push(h);
        st.active.push(true);
        let idx = st.basis.len() - 1;
        st.update(idx);
        if is_unit {
            break;
        }
    }
    Ok((eng, st))
}

/// Reduced, monic Gröbner basis of the ideal generated by `gens`, sorted by
/// ascending leading monomial. The zero ideal gives an empty basis.
pub fn groebner_basis(gens: &[Poly], order: &MonomialOrder, budget: &Budget) -> Result<Vec<Poly>> {
    let nonzero: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let (mut eng, st) = run(&nonzero, order, budget, false)?;
    let mut kept: Vec<OPoly> = Vec::new();
    for (k, g) in st.basis.iter().enumerate() {
        if !st.active[k] {
            continue;
        }
        if g.lead().0.is_one() {
            return Ok(vec![Poly::one(eng.field, eng.nvars)]);
        }
        kept.push(g.clone());
    }
    // minimalize
    let mut minimal: Vec<OPoly> = Vec::new();
    for (k, g) in kept.iter().enumerate() {
        let lm = &g.lead().0;
        let redundant = kept.iter().enumerate().any(|(j, h)| {
            j != k && h.lead().0.divides(lm) && (h.lead().0 != *lm || j < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    // interreduce tails
    let mut out: Vec<OPoly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let active: Vec<bool> = (0..minimal.len()).map(|j| j != k).collect();
        let g = minimal[k].clone();
        let (lead, tail) = g.terms.split_last().unwrap();
        let red = eng.reduce(OPoly { terms: tail.to_vec() }, &minimal, &active, None)?;
        let mut terms = red.terms;
        terms.push(lead.clone());
        let mut p = OPoly { terms };
        eng.monic(&mut p);
        out.push(p);
    }
    out.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
    Ok(out.iter().map(|p| eng.to_poly(p)).collect())
}

/// Normal form of `f` with respect to a Gröbner basis under `order`.
pub fn normal_form(f: &Poly, basis: &[Poly], order: &MonomialOrder, budget: &Budget) -> Result<Poly> {
    if basis.is_empty() || f.is_zero() {
        return Ok(f.clone());
    }
    let mut eng = Engine::new(f.field(), f.nvars(), order, budget);
    let ob: Vec<OPoly> = basis.iter().map(|b| eng.from_poly(b)).collect();
    let active = vec![true; ob.len()];
    let r = eng.reduce(eng.from_poly(f), &ob, &active, None)?;
    Ok(eng.to_poly(&r))
}

/// Gröbner basis that remembers how each element is built from the input
/// generators: `basis[k] = Σ_i cofactors[k][i] * gens[i]`.
pub struct TracedBasis {
    pub basis: Vec<Poly>,
    pub cofactors: Vec<Vec<Poly>>,
    pub order: MonomialOrder,
    ngens: usize,
}

pub fn groebner_traced(gens: &[Poly], order: &MonomialOrder, budget: &Budget) -> Result<TracedBasis> {
    if gens.iter().all(Poly::is_zero) {
        return Ok(TracedBasis { basis: vec![], cofactors: vec![], order: order.clone(), ngens: gens.len() });
    }
    let (eng, st) = run(gens, order, budget, true)?;
    let cofs = st.cofactors.unwrap();
    let mut basis = Vec::new();
    let mut cofactors = Vec::new();
    for k in 0..st.basis.len() {
        if st.active[k] {
            basis.push(eng.to_poly(&st.basis[k]));
            cofactors.push(cofs[k].clone());
        }
    }
    Ok(TracedBasis { basis, cofactors, order: order.clone(), ngens: gens.len() })
}

impl TracedBasis {
    /// Cofactors `h_i` with `f = Σ h_i gens[i]`, or `None` when `f` is not
    /// in the ideal.
    pub fn lift(&self, f: &Poly, budget: &Budget) -> Result<Option<Vec<Poly>>> {
        let (field, nvars) = (f.field(), f.nvars());
        if f.is_zero() {
            return Ok(Some(vec![Poly::zero(field, nvars); self.ngens]));
        }
        if self.basis.is_empty() {
            return Ok(None);
        }
        let mut eng = Engine::new(field, nvars, &self.order, budget);
        let ob: Vec<OPoly> = self.basis.iter().map(|b| eng.from_poly(b)).collect();
        let active = vec![true; ob.len()];
        let mut trace = Vec::new();
        let r = eng.reduce(eng.from_poly(f), &ob, &active, Some(&mut trace))?;
        if !r.is_zero() {
            return Ok(None);
        }
        let mut out = vec![Poly::zero(field, nvars); self.ngens];
        for (k, m, c) in &trace {
            for (o, cf) in out.iter_mut().zip(&self.cofactors[*k]) {
                *o = &*o + &cf.mul_monomial(m, c);
            }
        }
        Ok(Some(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_poly;

    fn p(s: &str, names: &[&str], f: CoeffField) -> Poly {
        let n: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &n, f).unwrap()
    }

    #[test]
    fn hand_reduction_example() {
        let f = CoeffField::Rationals;
        let gb = groebner_basis(&[p("x^2 - 1", &["x"], f), p("x - 1", &["x"], f)], &MonomialOrder::DegRevLex, &Budget::default()).unwrap();
        assert_eq!(gb, vec![p("x - 1", &["x"], f)]);
    }

    #[test]
    fn zero_and_unit_ideals() {
        let f = CoeffField::Rationals;
        let b = Budget::default();
        assert!(groebner_basis(&[Poly::zero(f, 1)], &MonomialOrder::DegRevLex, &b).unwrap().is_empty());
        assert_eq!(groebner_basis(&[Poly::one(f, 1)], &MonomialOrder::Lex, &b).unwrap(), vec![Poly::one(f, 1)]);
    }

    #[test]
    fn cyclic3_basis_is_known() {
        let f = CoeffField::Rationals;
        let n = ["a", "b", "c"];
        let gens = [p("a+b+c", &n, f), p("a*b+b*c+c*a", &n, f), p("a*b*c-1", &n, f)];
        let gb = groebner_basis(&gens, &MonomialOrder::Lex, &Budget::default()).unwrap();
        let expect = [p("c^3 - 1", &n, f), p("b^2 + b*c + c^2", &n, f), p("a + b + c", &n, f)];
        assert_eq!(gb.len(), 3);
        for e in &expect {
            assert!(gb.contains(e), "missing {:?}", e.to_string_with(&n.map(String::from)));
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = CoeffField::Rationals;
        let n = ["a", "b", "c"];
        let gens = [p("a+b+c", &n, f), p("a*b+b*c+c*a", &n, f), p("a*b*c-1", &n, f)];
        let e = groebner_basis(&gens, &MonomialOrder::Lex, &Budget::default().with_steps(3)).unwrap_err();
        assert!(e.is_budget());
    }

    #[test]
    fn traced_lift_reexpands() {
        let f = CoeffField::Rationals;
        let n = ["x", "y"];
        let gens = [p("x^2", &n, f), p("x*y", &n, f)];
        let tb = groebner_traced(&gens, &MonomialOrder::DegRevLex, &Budget::default()).unwrap();
        let target = p("x^3*y + 2*x^2", &n, f);
        let cof = tb.lift(&target, &Budget::default()).unwrap().unwrap();
        let re = &(&cof[0] * &gens[0]) + &(&cof[1] * &gens[1]);
        assert_eq!(re, target);
        assert!(tb.lift(&p("y", &n, f), &Budget::default()).unwrap().is_none());
    }
}
