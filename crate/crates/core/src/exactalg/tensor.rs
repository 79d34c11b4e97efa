use std::collections::BTreeSet;
use std::sync::Arc;

use super::algebra::{PresentedAlgebra, INV_SUFFIX};
use super::poly::Poly;
use super::ringmap::RingMap;
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// `A ⊗ B` with its two inclusions.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub algebra: Arc<PresentedAlgebra>,
    pub left: RingMap,
    pub right: RingMap,
}

fn renamed(a: &PresentedAlgebra, suffix: &str) -> Vec<String> {
    let mut names: Vec<String> = a.var_names().iter().map(|n| format!("{n}{suffix}")).collect();
    for &(v, w) in a.inverted() {
        names[w] = format!("{}{suffix}{INV_SUFFIX}", a.var_names()[v]);
    }
    names
}

/// Tensor product over the coefficient field. Clashing names get `_1` /
/// `_2` suffixes.
pub fn tensor(a: &Arc<PresentedAlgebra>, b: &Arc<PresentedAlgebra>, budget: &Budget) -> Result<TensorProduct> {
    let na: BTreeSet<&String> = a.var_names().iter().collect();
    let clash = b.var_names().iter().any(|n| na.contains(n));
    let sfx = if clash { ("_1", "_2") } else { ("", "") };
    tensor_over(a, b, &[], &[], sfx, budget)
}

/// `A ⊗_R B` where `R` is given by the images of its generators in both
/// factors: `base_a[k] ⊗ 1 = 1 ⊗ base_b[k]`.
pub fn tensor_over(
    a: &Arc<PresentedAlgebra>,
    b: &Arc<PresentedAlgebra>,
    base_a: &[Poly],
    base_b: &[Poly],
    suffixes: (&str, &str),
    _budget: &Budget,
) -> Result<TensorProduct> {
    if a.field() != b.field() {
        return Err(AlgError::InvalidInput("tensor factors over different fields".into()));
    }
    if base_a.len() != base_b.len() {
        return Err(AlgError::InvalidInput("base generator images do not pair up".into()));
    }
    let field = a.field();
    let (na, nb) = (a.nvars(), b.nvars());
    let n = na + nb;
    let mut names = renamed(a, suffixes.0);
    names.extend(renamed(b, suffixes.1));
    let mut inverted: Vec<(usize, usize)> = a.inverted().to_vec();
    inverted.extend(b.inverted().iter().map(|&(v, w)| (v + na, w + na)));
    let amap: Vec<usize> = (0..na).collect();
    let bmap: Vec<usize> = (na..n).collect();
    let mut rels: Vec<Poly> = a.user_relations().iter().map(|r| r.remap(n, &amap)).collect();
    rels.extend(b.user_relations().iter().map(|r| r.remap(n, &bmap)));
    for (fa, fb) in base_a.iter().zip(base_b) {
        if fa.nvars() != na || fb.nvars() != nb {
            return Err(AlgError::InvalidInput("base image lives in the wrong ring".into()));
        }
        rels.push(&fa.remap(n, &amap) - &fb.remap(n, &bmap));
    }
    let t = Arc::new(PresentedAlgebra::from_parts(field, names, inverted, rels)?);
    let left = RingMap::new_unchecked(a.clone(), t.clone(), (0..na).map(|i| t.var(i)).collect());
    let right = RingMap::new_unchecked(b.clone(), t.clone(), (na..n).map(|i| t.var(i)).collect());
    Ok(TensorProduct { algebra: t, left, right })
}

impl TensorProduct {
    /// The map out of the tensor product determined by its two legs.
    pub fn induced_map(&self, left: &RingMap, right: &RingMap, budget: &Budget) -> Result<RingMap> {
        if !Arc::ptr_eq(left.target(), right.target()) {
            return Err(AlgError::InvalidInput("leg maps must share a target".into()));
        }
        let mut images = left.images().to_vec();
        images.extend(right.images().iter().cloned());
        RingMap::new(self.algebra.clone(), left.target().clone(), images, budget)
    }
}
