//! Jacobian criterion for standard étale extensions and prime avoidance.

use super::algebra::PresentedAlgebra;
use super::ideal::Ideal;
use super::linalg::{jacobian_det, AlgebraRing};
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// Whether `base[vars]/(rels)` is étale over `base` by the Jacobian
/// criterion: as many relations as variables, Jacobian determinant a unit.
pub fn jacobian_etale_check(base: &PresentedAlgebra, vars: &[&str], rels: &[&str], budget: &Budget) -> Result<bool> {
    if vars.len() != rels.len() {
        return Err(AlgError::InvalidInput(format!(
            "{} extension variables but {} relations",
            vars.len(),
            rels.len()
        )));
    }
    let ext = base.adjoin(vars, rels)?;
    let n = base.nvars();
    let new_rels = &ext.user_relations()[ext.user_relations().len() - rels.len()..];
    let idx: Vec<usize> = (n..n + vars.len()).collect();
    let ring = AlgebraRing::new(&ext, budget);
    let det = jacobian_det(&ring, new_rels, &idx)?;
    ext.is_unit(&det, budget)
}

fn outside(alg: &PresentedAlgebra, m: &Ideal, f: &Poly, budget: &Budget) -> Result<bool> {
    let full = alg.relations().with_generators(m.generators().iter().cloned());
    Ok(!full.contains(f, budget)?)
}

/// An element of `ideal` lying outside every ideal in `points` (each given
/// by generators, expected maximal). Tries the generators, then pairwise
/// sums, then the combination `Σ a_i c_i` with `a_i ∈ I \ m_i` and
/// `c_i ∈ Π_{j≠i} m_j \ m_i`.
pub fn prime_avoidance(alg: &PresentedAlgebra, ideal: &Ideal, points: &[Vec<Poly>], budget: &Budget) -> Result<Poly> {
    let ms: Vec<Ideal> = points.iter().map(|g| Ideal::new(alg.field(), alg.nvars(), g.clone())).collect();
    for m in &ms {
        if alg.relations().with_generators(m.generators().iter().cloned()).is_unit_ideal(budget)? {
            return Err(AlgError::Precondition("a listed ideal is the unit ideal".into()));
        }
    }
    let gens: Vec<Poly> = ideal.generators().iter().map(|g| alg.reduce(g, budget)).collect::<Result<_>>()?;
    let avoids = |f: &Poly| -> Result<bool> {
        for m in &ms {
            if !outside(alg, m, f, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for g in &gens {
        if avoids(g)? {
            return Ok(g.clone());
        }
    }
    for (i, g) in gens.iter().enumerate() {
        for h in &gens[i + 1..] {
            let s = g + h;
            if !s.is_zero() && avoids(&s)? {
                return Ok(s);
            }
        }
    }
    let mut a = Vec::new();
    for m in &ms {
        let mut found = None;
        for g in &gens {
            if outside(alg, m, g, budget)? {
                found = Some(g.clone());
                break;
            }
        }
        a.push(found.ok_or_else(|| AlgError::Precondition("the ideal lies inside a listed maximal ideal".into()))?);
    }
    let mut f = alg.zero();
    for (i, mi) in ms.iter().enumerate() {
        let mut c = alg.one();
        for (j, mj) in ms.iter().enumerate() {
            if j == i {
                continue;
            }
            let mut pick = None;
            for g in mj.generators() {
                if outside(alg, mi, g, budget)? {
                    pick = Some(g.clone());
                    break;
                }
            }
            let g = pick.ok_or_else(|| AlgError::Precondition("listed maximal ideals are not distinct".into()))?;
            c = &c * &g;
        }
        f = &f + &(&a[i] * &c);
    }
    let f = alg.reduce(&f, budget)?;
    if avoids(&f)? {
        Ok(f)
    } else {
        Err(AlgError::Precondition("listed ideals are not maximal".into()))
    }
}
