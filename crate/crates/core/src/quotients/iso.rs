use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::{kernel_of_map, GraphBasis, Monomial, Poly, PresentedAlgebra, RingMap};
use crate::grading::monomials_of_degree;

/// Mutually inverse ring maps.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub forward: RingMap,
    pub backward: RingMap,
}

impl Isomorphism {
    pub fn describe(&self) -> Vec<(String, String)> {
        self.forward.describe()
    }
}

/// Inverse of `f` when it is bijective; the inverse images come from
/// expressing each source-ring generator of the target through `f`.
fn invert(f: &RingMap, budget: &Budget) -> Result<Option<RingMap>> {
    let (a, b) = (f.source(), f.target());
    let ker = kernel_of_map(f, budget)?;
    for k in ker.generators() {
        if !a.is_zero_elem(k, budget)? {
            return Ok(None);
        }
    }
    let gb = GraphBasis::new(b, f.images(), budget)?;
    let mut back = Vec::with_capacity(b.nvars());
    for v in 0..b.nvars() {
        match gb.express(&b.var(v), budget)? {
            Some(p) => back.push(p),
            None => return Ok(None),
        }
    }
    let g = RingMap::new(b.clone(), a.clone(), back, budget)?;
    let round = f.then(&g, budget)?.equals(&RingMap::identity(a.clone()), budget)? && g.then(f, budget)?.equals(&RingMap::identity(b.clone()), budget)?;
    Ok(if round { Some(g) } else { None })
}

/// An isomorphism `a → b` sending each visible generator to `±` a monomial
/// in the internal variables of `b` of total degree at most `max_degree`.
pub fn find_isomorphism(a: &Arc<PresentedAlgebra>, b: &Arc<PresentedAlgebra>, max_degree: u32, budget: &Budget) -> Result<Option<Isomorphism>> {
    if a.field() != b.field() {
        return Ok(None);
    }
    let field = b.field();
    let mut cands: Vec<Poly> = Vec::new();
    for d in 0..=max_degree {
        for m in monomials_of_degree(b.nvars(), d) {
            if has_cancelling_pair(b, &m) {
                continue;
            }
            let p = Poly::term(field, m, field.one());
            cands.push(p.clone());
            if field.characteristic() != 2 {
                cands.push(-&p);
            }
        }
    }
    let vis = a.visible_vars();
    let total = (cands.len() as f64).powi(vis.len() as i32);
    if total > budget.point_cap as f64 {
        return Err(AlgError::ResourceExhausted(format!("{total} candidate maps")));
    }
    let mut idx = vec![0usize; vis.len()];
    loop {
        let images: Vec<Poly> = idx.iter().map(|&i| cands[i].clone()).collect();
        if let Ok(f) = RingMap::new(a.clone(), b.clone(), images, budget) {
            if let Some(g) = invert(&f, budget)? {
                return Ok(Some(Isomorphism { forward: f, backward: g }));
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(None);
            }
            idx[k] += 1;
            if idx[k] < cands.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn has_cancelling_pair(b: &PresentedAlgebra, m: &Monomial) -> bool {
    b.inverted().iter().any(|&(v, w)| m.0[v] > 0 && m.0[w] > 0)
}

/// The isomorphism `B1 → B2` compatible with two inclusions into the same
/// algebra, when both have the same image.
pub fn find_isomorphism_over(i1: &RingMap, i2: &RingMap, budget: &Budget) -> Result<Option<Isomorphism>> {
    let a = i1.target();
    if a.var_names() != i2.target().var_names() {
        return Err(AlgError::InvalidInput("inclusions into different algebras".into()));
    }
    let express_all = |from: &RingMap, into: &RingMap| -> Result<Option<Vec<Poly>>> {
        let gb = GraphBasis::new(a, into.images(), budget)?;
        let mut out = Vec::new();
        for img in from.images() {
            match gb.express(img, budget)? {
                Some(p) => out.push(p),
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    let (Some(fwd), Some(bwd)) = (express_all(i1, i2)?, express_all(i2, i1)?) else {
        return Ok(None);
    };
    let forward = RingMap::new(i1.source().clone(), i2.source().clone(), fwd, budget)?;
    let backward = RingMap::new(i2.source().clone(), i1.source().clone(), bwd, budget)?;
    Ok(Some(Isomorphism { forward, backward }))
}
