//! Descent of modules along a free ring extension `A → B`: descent data,
//! the cocycle condition, Amitsur exactness and the equalizer construction.
//!
//! Everything over `B`, `B ⊗_A B` and `B ⊗_A B ⊗_A B` is turned into
//! `A`-linear algebra through the free bases of these algebras over `A`.

use std::sync::Arc;

use serde::Serialize;

use crate::abgrp::FgAbGroup;
use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::linalg::PolyMatrix;
use crate::exactalg::{module_kernel, tensor_over, AlgebraRing, CoeffField, FpModule, ModVec, ModuleMap, Poly, PresentedAlgebra, RingMap, SubmoduleBasis, TensorProduct};
use crate::flf::FiniteFreeAlgebra;
use crate::grading::{degree_zero_subalgebra, graded_module_component, GradedModule, MGrading};

/// `A → B` with `B` free of positive rank over `A`.
#[derive(Clone, Debug)]
pub struct RingExtension {
    cover: FiniteFreeAlgebra,
    /// `B ⊗_A B` with its two leg inclusions.
    pub double: TensorProduct,
    /// `(B ⊗_A B) ⊗_A B`.
    pub triple: TensorProduct,
    double_free: FiniteFreeAlgebra,
    /// `B ⊗ B → B ⊗ B ⊗ B` inserting into legs (1,2), (1,3), (2,3).
    pub p12: RingMap,
    pub p13: RingMap,
    pub p23: RingMap,
}

impl RingExtension {
    /// `images` are the images of the base generators in the cover.
    pub fn new(base: Arc<PresentedAlgebra>, cover: Arc<PresentedAlgebra>, images: Vec<Poly>, budget: &Budget) -> Result<Self> {
        Self::from_free(FiniteFreeAlgebra::new(base, cover, images, None, budget)?, budget)
    }

    /// `B = A[vars]/(rels)`.
    pub fn adjoin(base: Arc<PresentedAlgebra>, vars: &[&str], rels: &[&str], budget: &Budget) -> Result<Self> {
        let cover = Arc::new(base.adjoin(vars, rels)?);
        let images = (0..base.nvars()).map(|i| cover.var(i)).collect();
        Self::new(base, cover, images, budget)
    }

    pub fn from_free(cover: FiniteFreeAlgebra, budget: &Budget) -> Result<Self> {
        if cover.rank() == 0 {
            return Err(AlgError::Precondition("the cover has rank 0, so it is not faithfully flat".into()));
        }
        let b = cover.total().clone();
        let s = cover.structural_map().images().to_vec();
        let double = tensor_over(&b, &b, &s, &s, ("_1", "_2"), budget)?;
        let s1: Vec<Poly> = s.iter().map(|f| double.left.apply_raw(f)).collect();
        let triple = tensor_over(&double.algebra, &b, &s1, &s, ("", "_3"), budget)?;
        let to_double = cover.structural_map().then(&double.left, budget)?;
        let double_free = FiniteFreeAlgebra::from_map(to_double, None, budget)?;
        let p12 = triple.left.clone();
        let p13 = double.induced_map(&double.left.then(&triple.left, budget)?, &triple.right, budget)?;
        let p23 = double.induced_map(&double.right.then(&triple.left, budget)?, &triple.right, budget)?;
        Ok(RingExtension { cover, double, triple, double_free, p12, p13, p23 })
    }

    pub fn base(&self) -> &Arc<PresentedAlgebra> {
        self.cover.base()
    }

    pub fn cover(&self) -> &Arc<PresentedAlgebra> {
        self.cover.total()
    }

    pub fn free_view(&self) -> &FiniteFreeAlgebra {
        &self.cover
    }

    pub fn rank(&self) -> usize {
        self.cover.rank()
    }

    pub fn structural_map(&self) -> &RingMap {
        self.cover.structural_map()
    }

    /// `v ∈ B^g` as a vector in `A^{ng}`, coordinate `i·n + k` for `e_k ε_i`.
    fn expand_cover(&self, v: &[Poly], budget: &Budget) -> Result<ModVec> {
        let mut out = Vec::with_capacity(v.len() * self.rank());
        for x in v {
            out.extend(self.cover.expand(x, budget)?);
        }
        Ok(out)
    }

    fn expand_double(&self, v: &[Poly], budget: &Budget) -> Result<ModVec> {
        let mut out = Vec::with_capacity(v.len() * self.double_free.rank());
        for x in v {
            out.extend(self.double_free.expand(x, budget)?);
        }
        Ok(out)
    }

    fn leg1(&self, v: &[Poly]) -> ModVec {
        v.iter().map(|x| self.double.left.apply_raw(x)).collect()
    }

    fn leg2(&self, v: &[Poly]) -> ModVec {
        v.iter().map(|x| self.double.right.apply_raw(x)).collect()
    }

    /// `M ⊗_A B` for a module over the base.
    pub fn base_change(&self, m: &FpModule, budget: &Budget) -> Result<FpModule> {
        let s = self.structural_map();
        let rels = m.relations().iter().map(|r| r.iter().map(|x| s.apply_raw(x)).collect()).collect();
        FpModule::new(self.cover().clone(), m.ngens(), rels, budget)
    }
}

fn mat_apply(m: &PolyMatrix, map: &RingMap) -> PolyMatrix {
    m.iter().map(|row| row.iter().map(|x| map.apply_raw(x)).collect()).collect()
}

fn column(m: &PolyMatrix, j: usize) -> ModVec {
    m.iter().map(|row| row[j].clone()).collect()
}

fn mat_vec(ring: &PresentedAlgebra, m: &PolyMatrix, v: &[Poly]) -> ModVec {
    m.iter()
        .map(|row| row.iter().zip(v).fold(ring.zero(), |acc, (a, b)| &acc + &(a * b)))
        .collect()
}

/// A module `M'` over `B` with an isomorphism `φ : B ⊗ M' → M' ⊗ B` over
/// `B ⊗_A B`, given by the matrix `Φ` with `φ(ε_j) = Σ_i Φ[i][j] ε_i`.
#[derive(Clone, Debug)]
pub struct DescentDatum {
    pub extension: Arc<RingExtension>,
    pub module: FpModule,
    pub phi: PolyMatrix,
}

impl DescentDatum {
    /// Checks the shape, that `Φ` is invertible and that it maps relations
    /// into relations.
    pub fn new(extension: Arc<RingExtension>, module: FpModule, phi: PolyMatrix, budget: &Budget) -> Result<Self> {
        let g = module.ngens();
        if module.ring().var_names() != extension.cover().var_names() {
            return Err(AlgError::InvalidInput("the module does not live over the cover".into()));
        }
        if phi.len() != g || phi.iter().any(|r| r.len() != g) {
            return Err(AlgError::InvalidInput(format!("phi must be a {g}×{g} matrix")));
        }
        let t2 = &extension.double.algebra;
        let phi: PolyMatrix = phi.iter().map(|r| r.iter().map(|x| t2.reduce(x, budget)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let ring = AlgebraRing::new(t2, budget);
        if !t2.is_unit(&ring.det(&phi)?, budget)? {
            return Err(AlgError::NotAUnit("det(phi) in B ⊗ B".into()));
        }
        let rels: Vec<ModVec> = module.relations().iter().map(|r| extension.leg1(r)).collect();
        let rb = SubmoduleBasis::new(t2, g, &rels, budget)?;
        for r in module.relations() {
            if !rb.contains(&mat_vec(t2, &phi, &extension.leg2(r)), budget)? {
                return Err(AlgError::IllDefinedMap("phi does not preserve the module relations".into()));
            }
        }
        Ok(DescentDatum { extension, module, phi })
    }

    /// The datum `Φ = I` on `M ⊗_A B`.
    pub fn canonical(extension: Arc<RingExtension>, m: &FpModule, budget: &Budget) -> Result<Self> {
        let module = extension.base_change(m, budget)?;
        let id = AlgebraRing::new(&extension.double.algebra, budget).identity(m.ngens());
        Self::new(extension, module, id, budget)
    }

    /// `Φ = W₁ · W₂⁻¹` for an invertible matrix `W` over `B`; satisfies
    /// the cocycle condition by construction.
    pub fn twisted(extension: Arc<RingExtension>, module: FpModule, w: &PolyMatrix, budget: &Budget) -> Result<Self> {
        let b = extension.cover().clone();
        let winv = AlgebraRing::new(&b, budget)
            .inverse(w)?
            .ok_or_else(|| AlgError::NotAUnit("twisting matrix is not invertible".into()))?;
        let t2 = &extension.double.algebra;
        let phi = AlgebraRing::new(t2, budget).matmul(&mat_apply(w, &extension.double.left), &mat_apply(&winv, &extension.double.right))?;
        Self::new(extension, module, phi, budget)
    }
}

/// `Φ₁₃ = Φ₁₂ · Φ₂₃` over `B ⊗ B ⊗ B`, modulo the leg-1 relations.
pub fn cocycle_check(d: &DescentDatum, budget: &Budget) -> Result<bool> {
    let ext = &d.extension;
    let t3 = &ext.triple.algebra;
    let ring = AlgebraRing::new(t3, budget);
    let lhs = mat_apply(&d.phi, &ext.p13);
    let rhs = ring.matmul(&mat_apply(&d.phi, &ext.p12), &mat_apply(&d.phi, &ext.p23))?;
    let g = d.module.ngens();
    let leg1 = ext.double.left.then(&ext.triple.left, budget)?;
    let rels: Vec<ModVec> = d.module.relations().iter().map(|r| r.iter().map(|x| leg1.apply_raw(x)).collect()).collect();
    let rb = SubmoduleBasis::new(t3, g, &rels, budget)?;
    for j in 0..g {
        let diff: ModVec = column(&lhs, j).iter().zip(column(&rhs, j)).map(|(a, b)| a - &b).collect();
        if !rb.contains(&diff, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AmitsurReport {
    /// `M → M ⊗ B` is injective.
    pub injective: bool,
    /// The equalizer of `M ⊗ B ⇉ M ⊗ B ⊗ B` is the image of `M`.
    pub exact_in_middle: bool,
}

impl AmitsurReport {
    pub fn holds(&self) -> bool {
        self.injective && self.exact_in_middle
    }
}

/// Exactness of `0 → M → M ⊗ B ⇉ M ⊗ B ⊗ B`, as `A`-modules.
pub fn amitsur_exactness(ext: &RingExtension, m: &FpModule, budget: &Budget) -> Result<AmitsurReport> {
    let a = ext.base();
    let g = m.ngens();
    let n = ext.rank();
    let nn = ext.double_free.rank();
    let blocks = |k: usize| -> Vec<ModVec> {
        let mut out = Vec::new();
        for r in m.relations() {
            for l in 0..k {
                let mut v = vec![a.zero(); g * k];
                for (i, x) in r.iter().enumerate() {
                    v[i * k + l] = x.clone();
                }
                out.push(v);
            }
        }
        out
    };
    let mb = FpModule::new(a.clone(), g * n, blocks(n), budget)?;
    let one = ext.cover.expand(&ext.cover().one(), budget)?;
    let unit_images: Vec<ModVec> = (0..g)
        .map(|i| {
            let mut v = vec![a.zero(); g * n];
            v[i * n..(i + 1) * n].clone_from_slice(&one);
            v
        })
        .collect();
    let incl = ModuleMap::new(m, &mb, unit_images.clone(), budget)?;
    let injective = incl.is_injective(m, &mb, budget)?;

    let mut diffs = Vec::with_capacity(g * n);
    for i in 0..g {
        for e in ext.cover.basis() {
            let d1 = ext.double_free.expand(&ext.double.left.apply_raw(e), budget)?;
            let d2 = ext.double_free.expand(&ext.double.right.apply_raw(e), budget)?;
            let mut v = vec![a.zero(); g * nn];
            for l in 0..nn {
                v[i * nn + l] = &d1[l] - &d2[l];
            }
            diffs.push(v);
        }
    }
    let ker = module_kernel(a, &diffs, g * nn, &blocks(nn), budget)?;
    let mut span = unit_images;
    span.extend(mb.relations().iter().cloned());
    let exact_in_middle = SubmoduleBasis::new(a, g * n, &span, budget)?.contains_all(&ker, budget)?;
    Ok(AmitsurReport { injective, exact_in_middle })
}

/// The descended module with its comparison map `M ⊗_A B → M'`.
#[derive(Clone, Debug)]
pub struct Descended {
    pub module: FpModule,
    /// Generators of `M` as elements of `M'`, in `A`-coordinates.
    pub generators: Vec<ModVec>,
    pub base_changed: FpModule,
    pub comparison: ModuleMap,
}

/// `M = {m ∈ M' : m ⊗ 1 = φ(1 ⊗ m)}`.
pub fn descend(d: &DescentDatum, budget: &Budget) -> Result<Descended> {
    if !cocycle_check(d, budget)? {
        return Err(AlgError::Precondition("the descent datum violates the cocycle condition".into()));
    }
    let ext = &d.extension;
    let a = ext.base();
    let b = ext.cover();
    let g = d.module.ngens();
    let n = ext.rank();
    let nn = ext.double_free.rank();
    let basis = ext.cover.basis().to_vec();

    let mut n1 = Vec::new();
    for r in d.module.relations() {
        for e in &basis {
            let v: ModVec = r.iter().map(|x| x * e).collect();
            n1.push(ext.expand_cover(&v, budget)?);
        }
    }
    let mut n2 = Vec::new();
    for r in d.module.relations() {
        let r1 = ext.leg1(r);
        for f in ext.double_free.basis() {
            let v: ModVec = r1.iter().map(|x| x * f).collect();
            n2.push(ext.expand_double(&v, budget)?);
        }
    }
    let mut images = Vec::with_capacity(g * n);
    for i in 0..g {
        for e in &basis {
            let e1 = ext.double.left.apply_raw(e);
            let e2 = ext.double.right.apply_raw(e);
            let v: ModVec = (0..g)
                .map(|j| {
                    let beta = &d.phi[j][i] * &e2;
                    if j == i {
                        &e1 - &beta
                    } else {
                        -&beta
                    }
                })
                .collect();
            images.push(ext.expand_double(&v, budget)?);
        }
    }
    let ker = module_kernel(a, &images, g * nn, &n2, budget)?;
    let rb1 = SubmoduleBasis::new(a, g * n, &n1, budget)?;
    let mut gens: Vec<ModVec> = Vec::new();
    for v in ker {
        let v = rb1.reduce(&v, budget)?;
        if v.iter().any(|x| !x.is_zero()) && !gens.contains(&v) {
            gens.push(v);
        }
    }
    let syz = if gens.is_empty() { vec![] } else { module_kernel(a, &gens, g * n, &n1, budget)? };
    let module = FpModule::new(a.clone(), gens.len(), syz, budget)?;
    let base_changed = ext.base_change(&module, budget)?;
    let s = ext.structural_map();
    let cmp_images = gens
        .iter()
        .map(|v| {
            (0..g)
                .map(|i| {
                    let x = (0..n).fold(b.zero(), |acc, k| &acc + &(&s.apply_raw(&v[i * n + k]) * &basis[k]));
                    b.reduce(&x, budget)
                })
                .collect::<Result<ModVec>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let comparison = ModuleMap::new(&base_changed, &d.module, cmp_images, budget)?;
    Ok(Descended { module, generators: gens, base_changed, comparison })
}

/// The comparison `M ⊗_A B → M'` is an isomorphism and intertwines the
/// canonical datum with `φ`.
pub fn verify_effectivity(d: &DescentDatum, m: &Descended, budget: &Budget) -> Result<bool> {
    if !m.comparison.is_isomorphism(&m.base_changed, &d.module, budget)? {
        return Ok(false);
    }
    let ext = &d.extension;
    let t2 = &ext.double.algebra;
    let rels: Vec<ModVec> = d.module.relations().iter().map(|r| ext.leg1(r)).collect();
    let rb = SubmoduleBasis::new(t2, d.module.ngens(), &rels, budget)?;
    for c in &m.comparison.images {
        let lhs = ext.leg1(c);
        let rhs = mat_vec(t2, &d.phi, &ext.leg2(c));
        let diff: ModVec = lhs.iter().zip(&rhs).map(|(x, y)| x - y).collect();
        if !rb.contains(&diff, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The invariant part of an equivariant module failing to generate it.
#[derive(Clone, Debug, Serialize)]
pub struct NonDescentReport {
    pub n: u32,
    /// Generators of `A = A'^G` inside `A' = k[s]`.
    pub invariant_ring: Vec<String>,
    /// Generators over `A` of the invariant part of the ideal `(s)`.
    pub invariant_part: Vec<String>,
    /// Whether `s` lies in the ideal generated by the invariant part.
    pub s_in_generated: bool,
    /// The generated submodule is strictly smaller than `(s)`.
    pub strict: bool,
}

/// `μ_n` acting on `A' = k[s]` by `deg s = 1 ∈ ℤ/n`, and the equivariant
/// module `(s)`.
pub fn equivariant_nondescent_demo(n: u32, field: CoeffField, budget: &Budget) -> Result<NonDescentReport> {
    if n == 0 {
        return Err(AlgError::InvalidInput("n must be positive".into()));
    }
    let a = Arc::new(PresentedAlgebra::polynomial_ring(field, &["s"]));
    let group = FgAbGroup::cyclic(i64::from(n));
    let deg = |k: i64| group.element(&vec![k; group.ngens()]);
    let grading = MGrading::new(a.clone(), group.clone(), vec![deg(1)?])?;
    let inv = degree_zero_subalgebra(&grading, n.max(1), budget)?;
    let module = GradedModule::new(grading, vec![deg(1)?], vec![])?;
    let part = graded_module_component(&module, &group.zero(), n.max(1), budget)?;
    // the generator of (s) is s itself
    let elems: Vec<Poly> = part.iter().map(|v| &v[0] * &a.var(0)).collect();
    let ideal = crate::exactalg::Ideal::new(field, 1, elems.clone());
    let s_in_generated = ideal.contains(&a.var(0), budget)?;
    Ok(NonDescentReport {
        n,
        invariant_ring: inv.generators.iter().map(|f| a.format(f)).collect(),
        invariant_part: elems.iter().map(|f| a.format(f)).collect(),
        s_in_generated,
        strict: !s_in_generated,
    })
}
