//! Finitely presented modules `R^g / N` over a presented algebra, handled by
//! encoding vectors as `z`-linear polynomials in `R[z_1..z_g]/(z_i z_j)`.

use std::sync::Arc;

use super::algebra::PresentedAlgebra;
use super::groebner::{groebner_basis, normal_form};
use super::order::MonomialOrder;
use super::poly::{Monomial, Poly};
use crate::budget::Budget;
use crate::error::{AlgError, Result};

/// A vector of ring elements.
pub type ModVec = Vec<Poly>;

/// `z`-variables first, then the ring variables.
fn embed(ring: &PresentedAlgebra, v: &[Poly], offset: usize, total: usize) -> Poly {
    let n = ring.nvars();
    let shift: Vec<usize> = (total - n..total).collect();
    let mut out = Poly::zero(ring.field(), total);
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = &out + &c.remap(total, &shift).mul_monomial(&Monomial::var(total, offset + i), &ring.field().one());
    }
    out
}

/// Coefficients of the `z`-variables `range` in a `z`-linear polynomial.
fn extract(ring: &PresentedAlgebra, p: &Poly, range: std::ops::Range<usize>) -> ModVec {
    let n = ring.nvars();
    let total = p.nvars();
    let mut out = vec![ring.zero(); range.len()];
    for (m, c) in p.terms() {
        let k = range.clone().find(|&i| m.0[i] > 0).expect("z-linear polynomial");
        let e = Monomial(m.0[total - n..].to_vec());
        out[k - range.start].add_term(e, c.clone());
    }
    out
}

fn quadratic_monomials(field: super::field::CoeffField, total: usize, count: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for i in 0..count {
        for j in i..count {
            let mut e = vec![0; total];
            e[i] += 1;
            e[j] += 1;
            out.push(Poly::term(field, Monomial(e), field.one()));
        }
    }
    out
}

/// Gröbner basis of the submodule `N + I·R^r` of `k[x]^r`, in
/// position-over-term order.
pub struct SubmoduleBasis {
    ring: Arc<PresentedAlgebra>,
    rank: usize,
    basis: Vec<Poly>,
    order: MonomialOrder,
}

impl SubmoduleBasis {
    pub fn new(ring: &Arc<PresentedAlgebra>, rank: usize, gens: &[ModVec], budget: &Budget) -> Result<Self> {
        let n = ring.nvars();
        let total = rank + n;
        let field = ring.field();
        let mut ideal = Vec::new();
        for g in gens {
            if g.len() != rank {
                return Err(AlgError::InvalidInput(format!("vector of length {} in a rank-{rank} module", g.len())));
            }
            let p = embed(ring, g, 0, total);
            if !p.is_zero() {
                ideal.push(p);
            }
        }
        let shift: Vec<usize> = (rank..total).collect();
        for r in ring.relations().generators() {
            for i in 0..rank {
                ideal.push(r.remap(total, &shift).mul_monomial(&Monomial::var(total, i), &field.one()));
            }
        }
        ideal.extend(quadratic_monomials(field, total, rank));
        let order = MonomialOrder::eliminate(rank, total);
        let basis = groebner_basis(&ideal, &order, budget)?;
        Ok(SubmoduleBasis { ring: ring.clone(), rank, basis, order })
    }

    /// Canonical representative of `v` modulo the submodule.
    pub fn reduce(&self, v: &[Poly], budget: &Budget) -> Result<ModVec> {
        let total = self.rank + self.ring.nvars();
        let p = embed(&self.ring, v, 0, total);
        let nf = normal_form(&p, &self.basis, &self.order, budget)?;
        Ok(extract(&self.ring, &nf, 0..self.rank))
    }

    pub fn contains(&self, v: &[Poly], budget: &Budget) -> Result<bool> {
        Ok(self.reduce(v, budget)?.iter().all(Poly::is_zero))
    }

    pub fn contains_all(&self, vs: &[ModVec], budget: &Budget) -> Result<bool> {
        for v in vs {
            if !self.contains(v, budget)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Generators of the kernel of `R^a → R^b / N` sending the `j`-th basis
/// vector to `images[j]`.
pub fn module_kernel(
    ring: &Arc<PresentedAlgebra>,
    images: &[ModVec],
    target_rank: usize,
    target_rels: &[ModVec],
    budget: &Budget,
) -> Result<Vec<ModVec>> {
    let a = images.len();
    let b = target_rank;
    let n = ring.nvars();
    let total = b + a + n;
    let field = ring.field();
    let mut ideal = Vec::new();
    for r in target_rels {
        let p = embed(ring, r, 0, total);
        if !p.is_zero() {
            ideal.push(p);
        }
    }
    for (j, img) in images.iter().enumerate() {
        if img.len() != b {
            return Err(AlgError::InvalidInput(format!("image vector of length {} in a rank-{b} module", img.len())));
        }
        ideal.push(&Poly::var(field, total, b + j) - &embed(ring, img, 0, total));
    }
    let shift: Vec<usize> = (b + a..total).collect();
    for r in ring.relations().generators() {
        for i in 0..b + a {
            ideal.push(r.remap(total, &shift).mul_monomial(&Monomial::var(total, i), &field.one()));
        }
    }
    ideal.extend(quadratic_monomials(field, total, b + a));
    let order = MonomialOrder::Block(vec![b, a, n]);
    let basis = groebner_basis(&ideal, &order, budget)?;
    let mut out = Vec::new();
    for g in &basis {
        let linear_in_w = g.monomials().all(|m| {
            m.0[..b].iter().all(|&e| e == 0) && m.0[b..b + a].iter().map(|&e| e as u64).sum::<u64>() == 1
        });
        if !linear_in_w {
            continue;
        }
        let v: ModVec = extract(ring, g, b..b + a).iter().map(|c| ring.reduce(c, budget)).collect::<Result<_>>()?;
        if v.iter().any(|c| !c.is_zero()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// The module `R^g / ⟨relations⟩`.
#[derive(Clone, Debug)]
pub struct FpModule {
    ring: Arc<PresentedAlgebra>,
    ngens: usize,
    relations: Vec<ModVec>,
}

impl FpModule {
    pub fn new(ring: Arc<PresentedAlgebra>, ngens: usize, relations: Vec<ModVec>, budget: &Budget) -> Result<Self> {
        let mut rels = Vec::new();
        for r in relations {
            if r.len() != ngens {
                return Err(AlgError::InvalidInput(format!("relation of length {} for {ngens} generators", r.len())));
            }
            let r: ModVec = r.iter().map(|c| ring.reduce(c, budget)).collect::<Result<_>>()?;
            if r.iter().any(|c| !c.is_zero()) {
                rels.push(r);
            }
        }
        Ok(FpModule { ring, ngens, relations: rels })
    }

    pub fn free(ring: Arc<PresentedAlgebra>, rank: usize) -> Self {
        FpModule { ring, ngens: rank, relations: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<PresentedAlgebra> {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &[ModVec] {
        &self.relations
    }

    pub fn relation_basis(&self, budget: &Budget) -> Result<SubmoduleBasis> {
        SubmoduleBasis::new(&self.ring, self.ngens, &self.relations, budget)
    }

    pub fn unit_vector(&self, i: usize) -> ModVec {
        let mut v = vec![self.ring.zero(); self.ngens];
        v[i] = self.ring.one();
        v
    }

    pub fn is_zero(&self, budget: &Budget) -> Result<bool> {
        let rb = self.relation_basis(budget)?;
        let units: Vec<ModVec> = (0..self.ngens).map(|i| self.unit_vector(i)).collect();
        rb.contains_all(&units, budget)
    }
}

/// A module homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub images: Vec<ModVec>,
}

impl ModuleMap {
    /// Checks that relations of `source` land in the relations of `target`.
    pub fn new(source: &FpModule, target: &FpModule, images: Vec<ModVec>, budget: &Budget) -> Result<Self> {
        if images.len() != source.ngens() || images.iter().any(|v| v.len() != target.ngens()) {
            return Err(AlgError::InvalidInput("module map has the wrong shape".into()));
        }
        let map = ModuleMap { images };
        let rb = target.relation_basis(budget)?;
        for r in source.relations() {
            if !rb.contains(&map.apply(target, r), budget)? {
                return Err(AlgError::IllDefinedMap("a relation is not sent to zero".into()));
            }
        }
        Ok(map)
    }

    pub fn apply(&self, target: &FpModule, v: &[Poly]) -> ModVec {
        let mut out = vec![target.ring().zero(); target.ngens()];
        for (c, img) in v.iter().zip(&self.images) {
            for (o, x) in out.iter_mut().zip(img) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    pub fn is_surjective(&self, target: &FpModule, budget: &Budget) -> Result<bool> {
        let mut gens = self.images.clone();
        gens.extend(target.relations().iter().cloned());
        let sb = SubmoduleBasis::new(target.ring(), target.ngens(), &gens, budget)?;
        let units: Vec<ModVec> = (0..target.ngens()).map(|i| target.unit_vector(i)).collect();
        sb.contains_all(&units, budget)
    }

    pub fn is_injective(&self, source: &FpModule, target: &FpModule, budget: &Budget) -> Result<bool> {
        let ker = module_kernel(source.ring(), &self.images, target.ngens(), target.relations(), budget)?;
        source.relation_basis(budget)?.contains_all(&ker, budget)
    }

    pub fn is_isomorphism(&self, source: &FpModule, target: &FpModule, budget: &Budget) -> Result<bool> {
        Ok(self.is_surjective(target, budget)? && self.is_injective(source, target, budget)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::CoeffField;

    fn ring(vars: &[&str], rels: &[&str]) -> Arc<PresentedAlgebra> {
        Arc::new(PresentedAlgebra::parse(CoeffField::Rationals, vars, &[], rels).unwrap())
    }

    #[test]
    fn membership_in_rank_two() {
        let b = Budget::default();
        let r = ring(&["x", "y"], &[]);
        let (x, y) = (r.var(0), r.var(1));
        let gens = vec![vec![x.clone(), y.clone()]];
        let sb = SubmoduleBasis::new(&r, 2, &gens, &b).unwrap();
        assert!(sb.contains(&[&x * &x, &x * &y], &b).unwrap());
        assert!(!sb.contains(&[x.clone(), r.zero()], &b).unwrap());
    }

    #[test]
    fn kernel_of_koszul_map() {
        let b = Budget::default();
        let r = ring(&["x", "y"], &[]);
        let (x, y) = (r.var(0), r.var(1));
        // R^2 -> R, (a, b) -> a x + b y has kernel generated by (y, -x)
        let ker = module_kernel(&r, &[vec![x.clone()], vec![y.clone()]], 1, &[], &b).unwrap();
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        let sb = SubmoduleBasis::new(&r, 2, &ker, &b).unwrap();
        assert!(sb.contains(&[y.clone(), -&x], &b).unwrap());
        assert!(k[0].total_degree() == 1 && k[1].total_degree() == 1);
    }

    #[test]
    fn kernel_modulo_relations() {
        let b = Budget::default();
        let r = ring(&["x"], &["x^2"]);
        let x = r.var(0);
        // multiplication by x on R = Q[x]/(x^2) has kernel (x)
        let ker = module_kernel(&r, &[vec![x.clone()]], 1, &[], &b).unwrap();
        assert_eq!(ker, vec![vec![x.clone()]]);
        // R -> R/(x), 1 -> 1 has kernel (x)
        let ker = module_kernel(&r, &[vec![r.one()]], 1, &[vec![x.clone()]], &b).unwrap();
        assert_eq!(ker, vec![vec![x]]);
    }

    #[test]
    fn module_maps() {
        let b = Budget::default();
        let r = ring(&["x"], &[]);
        let x = r.var(0);
        let m = FpModule::new(r.clone(), 1, vec![vec![x.clone()]], &b).unwrap();
        let f = FpModule::free(r.clone(), 1);
        assert!(!m.is_zero(&b).unwrap());
        // R -> R/(x) is surjective, not injective
        let p = ModuleMap::new(&f, &m, vec![vec![r.one()]], &b).unwrap();
        assert!(p.is_surjective(&m, &b).unwrap());
        assert!(!p.is_injective(&f, &m, &b).unwrap());
        // R/(x) -> R, 1 -> 1 is ill-defined
        assert!(ModuleMap::new(&m, &f, vec![vec![r.one()]], &b).is_err());
        // multiplication by x on R is injective, not surjective
        let mx = ModuleMap::new(&f, &f, vec![vec![x]], &b).unwrap();
        assert!(mx.is_injective(&f, &f, &b).unwrap());
        assert!(!mx.is_surjective(&f, &b).unwrap());
    }
}
