use std::sync::Arc;

use super::algebra::PresentedAlgebra;
use super::poly::Poly;
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// A homomorphism of presented algebras, given by the images of the
/// source generators. Well-definedness is checked at construction.
#[derive(Clone, Debug)]
pub struct RingMap {
    source: Arc<PresentedAlgebra>,
    target: Arc<PresentedAlgebra>,
    /// One image per internal source variable, reduced in the target.
    images: Vec<Poly>,
}

impl RingMap {
    /// `images` gives either one polynomial per visible source generator
    /// (companion images are then computed as inverses) or one per internal
    /// variable.
    pub fn new(source: Arc<PresentedAlgebra>, target: Arc<PresentedAlgebra>, images: Vec<Poly>, budget: &Budget) -> Result<Self> {
        if source.field() != target.field() {
            return Err(AlgError::InvalidInput("ring map between different coefficient fields".into()));
        }
        for p in &images {
            if p.nvars() != target.nvars() {
                return Err(AlgError::InvalidInput("image lives outside the target ring".into()));
            }
        }
        let full = if images.len() == source.nvars() {
            images
        } else if images.len() == source.visible_vars().len() {
            let mut full = vec![target.zero(); source.nvars()];
            for (k, i) in source.visible_vars().into_iter().enumerate() {
                full[i] = images[k].clone();
            }
            for &(v, w) in source.inverted() {
                full[w] = target
                    .inverse(&full[v], budget)?
                    .ok_or_else(|| AlgError::NotAUnit(target.format(&full[v])))?;
            }
            full
        } else {
            return Err(AlgError::InvalidInput(format!(
                "expected {} images, got {}",
                source.visible_vars().len(),
                images.len()
            )));
        };
        let images = full.iter().map(|p| target.reduce(p, budget)).collect::<Result<Vec<_>>>()?;
        let map = RingMap { source, target, images };
        map.check_well_defined(budget)?;
        Ok(map)
    }

    /// Skips the well-definedness check; for maps that hold by construction.
    pub(crate) fn new_unchecked(source: Arc<PresentedAlgebra>, target: Arc<PresentedAlgebra>, images: Vec<Poly>) -> Self {
        RingMap { source, target, images }
    }

    fn check_well_defined(&self, budget: &Budget) -> Result<()> {
        for r in self.source.relations().generators() {
            let img = r.substitute(&self.images);
            if !self.target.is_zero_elem(&img, budget)? {
                return Err(AlgError::IllDefinedMap(self.source.format(r)));
            }
        }
        Ok(())
    }

    pub fn identity(a: Arc<PresentedAlgebra>) -> Self {
        let images = (0..a.nvars()).map(|i| a.var(i)).collect();
        RingMap { source: a.clone(), target: a, images }
    }

    pub fn source(&self) -> &Arc<PresentedAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedAlgebra> {
        &self.target
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Image of a source polynomial (not reduced).
    pub fn apply_raw(&self, f: &Poly) -> Poly {
        if self.source.nvars() == 0 {
            return Poly::constant(self.target.field(), self.target.nvars(), f.constant_term());
        }
        f.substitute(&self.images)
    }

    pub fn apply(&self, f: &Poly, budget: &Budget) -> Result<Poly> {
        self.target.reduce(&self.apply_raw(f), budget)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingMap, budget: &Budget) -> Result<RingMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && self.target.var_names() != other.source.var_names() {
            return Err(AlgError::InvalidInput("maps are not composable".into()));
        }
        let images = self.images.iter().map(|p| other.apply(p, budget)).collect::<Result<Vec<_>>>()?;
        Ok(RingMap { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Equality as maps: generator images agree modulo the target relations.
    pub fn equals(&self, other: &RingMap, budget: &Budget) -> Result<bool> {
        if self.images.len() != other.images.len() {
            return Ok(false);
        }
        for (a, b) in self.images.iter().zip(&other.images) {
            if !self.target.eq_elems(a, b, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Generator images printed in the target's variable names.
    pub fn describe(&self) -> Vec<(String, String)> {
        self.source
            .visible_vars()
            .into_iter()
            .map(|i| (self.source.var_names()[i].clone(), self.target.format(&self.images[i])))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::CoeffField;

    #[test]
    fn rejects_ill_defined_map() {
        let q = CoeffField::Rationals;
        let b = Budget::default();
        let src = Arc::new(PresentedAlgebra::parse(q, &["u"], &[], &["u^2"]).unwrap());
        let tgt = Arc::new(PresentedAlgebra::polynomial_ring(q, &["x"]));
        let e = RingMap::new(src.clone(), tgt.clone(), vec![tgt.var(0)], &b).unwrap_err();
        assert!(matches!(e, AlgError::IllDefinedMap(_)));
        let ok = RingMap::new(src, tgt.clone(), vec![tgt.zero()], &b);
        assert!(ok.is_ok());
    }

    #[test]
    fn companion_images_are_inverses() {
        let q = CoeffField::Rationals;
        let b = Budget::default();
        let a = Arc::new(PresentedAlgebra::parse(q, &["x"], &["x"], &[]).unwrap());
        let sq = RingMap::new(a.clone(), a.clone(), vec![a.parse_elem("x^2").unwrap()], &b).unwrap();
        assert_eq!(a.format(&sq.images()[1]), "x_inv^2");
        let twice = sq.then(&sq, &b).unwrap();
        assert_eq!(a.format(&twice.images()[0]), "x^4");
    }
}
