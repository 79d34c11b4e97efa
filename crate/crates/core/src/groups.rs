//! Affine group schemes as Hopf algebras: constant groups, diagonalizable
//! groups `D(M)`, `G_a`, `α_p`, and checks of the Kummer, Artin–Schreier and
//! `α_p` sequences on explicit algebras.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::abgrp::{Cardinality, FgAbGroup, GroupElement, GroupHom};
use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::linalg::nullspace;
use crate::exactalg::tensor::{tensor, TensorProduct};
use crate::exactalg::{jacobian_etale_check, AlgebraSummary, Coef, CoeffField, Monomial, Poly, PresentedAlgebra, RingMap};
use crate::flf::FiniteFreeAlgebra;

/// Carrier `H` with `Δ : H → H ⊗ H`, `ε : H → k` and `S : H → H`.
#[derive(Clone, Debug)]
pub struct HopfAlgebraData {
    pub name: String,
    pub carrier: Arc<PresentedAlgebra>,
    pub square: TensorProduct,
    pub comultiplication: RingMap,
    pub counit: RingMap,
    pub antipode: RingMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HopfAxioms {
    pub coassociative: bool,
    pub counit: bool,
    pub antipode: bool,
}

impl HopfAxioms {
    pub fn all(&self) -> bool {
        self.coassociative && self.counit && self.antipode
    }
}

impl HopfAlgebraData {
    /// `images` are given per visible carrier generator, in the variable
    /// names of `H ⊗ H` (first leg suffixed `_1`, second `_2`).
    pub fn new(
        name: &str,
        carrier: Arc<PresentedAlgebra>,
        comult: Vec<Poly>,
        counit: Vec<Poly>,
        antipode: Vec<Poly>,
        budget: &Budget,
    ) -> Result<Self> {
        let square = tensor(&carrier, &carrier, budget)?;
        let k = Arc::new(PresentedAlgebra::base_field(carrier.field()));
        let comultiplication = RingMap::new(carrier.clone(), square.algebra.clone(), comult, budget)?;
        let counit = RingMap::new(carrier.clone(), k, counit, budget)?;
        let antipode = RingMap::new(carrier.clone(), carrier.clone(), antipode, budget)?;
        Ok(HopfAlgebraData { name: name.to_string(), carrier, square, comultiplication, counit, antipode })
    }

    pub fn unit_map(&self) -> RingMap {
        let k = self.counit.target().clone();
        RingMap::identity(k.clone()).then_unchecked_into(self.carrier.clone())
    }

    pub fn check_axioms(&self, budget: &Budget) -> Result<HopfAxioms> {
        let c = &self.carrier;
        let t2 = &self.square;
        let delta = &self.comultiplication;
        let t3 = tensor(&t2.algebra, c, budget)?;
        let id = RingMap::identity(c.clone());

        let delta_id = t2.induced_map(&delta.then(&t3.left, budget)?, &t3.right, budget)?;
        let legs23 = t2.induced_map(&t2.right.then(&t3.left, budget)?, &t3.right, budget)?;
        let id_delta = t2.induced_map(&t2.left.then(&t3.left, budget)?, &delta.then(&legs23, budget)?, budget)?;
        let coassociative = delta.then(&delta_id, budget)?.equals(&delta.then(&id_delta, budget)?, budget)?;

        let eta = self.unit_map();
        let eps = self.counit.then(&eta, budget)?;
        let eps_id = t2.induced_map(&eps, &id, budget)?;
        let id_eps = t2.induced_map(&id, &eps, budget)?;
        let counit = delta.then(&eps_id, budget)?.equals(&id, budget)? && delta.then(&id_eps, budget)?.equals(&id, budget)?;

        let s_id = t2.induced_map(&self.antipode, &id, budget)?;
        let id_s = t2.induced_map(&id, &self.antipode, budget)?;
        let antipode = delta.then(&s_id, budget)?.equals(&eps, budget)? && delta.then(&id_s, budget)?.equals(&eps, budget)?;
        Ok(HopfAxioms { coassociative, counit, antipode })
    }
}

impl RingMap {
    /// The structure map `k → target` when `self` is the identity of `k`.
    fn then_unchecked_into(&self, target: Arc<PresentedAlgebra>) -> RingMap {
        RingMap::new(self.source().clone(), target, vec![], &Budget::default()).expect("constants embed")
    }
}

/// A finite group by its multiplication table on labels `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantGroupScheme {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl ConstantGroupScheme {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(AlgError::InvalidInput("multiplication table must be square with entries in range".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgError::InvalidInput(format!("table is not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| AlgError::InvalidInput("table has no identity".into()))?;
        let inverses = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| table[a][b] == identity && table[b][a] == identity)
                    .ok_or_else(|| AlgError::InvalidInput(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConstantGroupScheme { table, identity, inverses })
    }

    /// The finite abelian group `M` with elements in `M::elements` order.
    pub fn from_abelian(m: &FgAbGroup) -> Result<Self> {
        let elems = m.elements().ok_or_else(|| AlgError::InvalidInput(format!("{m} is infinite")))?;
        let idx = |e: &GroupElement| elems.iter().position(|x| x == e).unwrap();
        let table = elems.iter().map(|a| elems.iter().map(|b| idx(&m.add(a, b))).collect()).collect();
        Self::from_table(table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `k^G = k[e_g]/(e_g e_h − δ e_g, Σ e_g − 1)`.
    pub fn product_algebra(&self, field: CoeffField) -> PresentedAlgebra {
        let n = self.order();
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        PresentedAlgebra::from_parts(field, names, vec![], idempotent_relations(field, n, 0, n)).expect("product algebra")
    }

    pub fn hopf_algebra(&self, field: CoeffField, budget: &Budget) -> Result<HopfAlgebraData> {
        let n = self.order();
        let carrier = Arc::new(self.product_algebra(field));
        let t = tensor(&carrier, &carrier, budget)?;
        let sq = &t.algebra;
        let comult: Vec<Poly> = (0..n)
            .map(|a| {
                let mut s = sq.zero();
                for b in 0..n {
                    for c in 0..n {
                        if self.mul(b, c) == a {
                            s = &s + &(&sq.var(b) * &sq.var(n + c));
                        }
                    }
                }
                s
            })
            .collect();
        let k = PresentedAlgebra::base_field(field);
        let counit = (0..n).map(|a| k.constant(i64::from(a == self.identity))).collect();
        let antipode = (0..n).map(|a| carrier.var(self.inverse(a))).collect();
        HopfAlgebraData::new(&format!("constant group of order {n}"), carrier, comult, counit, antipode, budget)
    }
}

/// `e_i e_j` (i ≠ j), `e_i^2 − e_i` and `Σ e_i − 1` on variables
/// `offset..offset + n` of a ring with `nvars` variables.
pub(crate) fn idempotent_relations(field: CoeffField, nvars: usize, offset: usize, n: usize) -> Vec<Poly> {
    let e = |i: usize| Poly::var(field, nvars, offset + i);
    let mut rels = Vec::new();
    let mut sum = Poly::from_i64(field, nvars, -1);
    for i in 0..n {
        rels.push(&(&e(i) * &e(i)) - &e(i));
        for j in i + 1..n {
            rels.push(&e(i) * &e(j));
        }
        sum = &sum + &e(i);
    }
    rels.push(sum);
    rels
}

/// `D(M) = Spec k[M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalizableGroupScheme {
    pub characters: FgAbGroup,
    pub field: CoeffField,
}

impl DiagonalizableGroupScheme {
    pub fn new(characters: FgAbGroup, field: CoeffField) -> Self {
        DiagonalizableGroupScheme { characters, field }
    }

    /// Names of the generators of `k[M]`: `x` / `x1, x2, …` for the free
    /// part, `u` / `u1, u2, …` for the torsion part.
    pub fn generator_names(&self) -> Vec<String> {
        let m = &self.characters;
        let name = |stem: &str, k: usize, i: usize| if k == 1 { stem.to_string() } else { format!("{stem}{}", i + 1) };
        let mut out: Vec<String> = (0..m.free_rank()).map(|i| name("x", m.free_rank(), i)).collect();
        out.extend((0..m.torsion().len()).map(|i| name("u", m.torsion().len(), i)));
        out
    }

    pub fn group_algebra(&self) -> PresentedAlgebra {
        let m = &self.characters;
        let names = self.generator_names();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let inverted = &refs[..m.free_rank()];
        let rels: Vec<String> = m.torsion().iter().enumerate().map(|(j, n)| format!("{}^{n} - 1", refs[m.free_rank() + j])).collect();
        let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
        PresentedAlgebra::parse(self.field, &refs, inverted, &rels).expect("group algebra")
    }

    /// The monomial `X^m` in the group algebra `alg` (as built by
    /// [`group_algebra`](Self::group_algebra)).
    pub fn character(&self, alg: &PresentedAlgebra, m: &GroupElement) -> Poly {
        character_monomial(alg, &self.characters, &(0..self.characters.ngens()).collect::<Vec<_>>(), m)
    }

    pub fn hopf_algebra(&self, budget: &Budget) -> Result<HopfAlgebraData> {
        let carrier = Arc::new(self.group_algebra());
        let t = tensor(&carrier, &carrier, budget)?;
        let vis = carrier.visible_vars();
        let comult: Vec<Poly> = vis.iter().map(|&v| &t.left.images()[v] * &t.right.images()[v]).collect();
        let k = PresentedAlgebra::base_field(self.field);
        let counit = vis.iter().map(|_| k.one()).collect();
        let m = &self.characters;
        let antipode = vis
            .iter()
            .enumerate()
            .map(|(i, &v)| match carrier.companion_of(v) {
                Some(w) => carrier.var(w),
                None => carrier.var(v).pow(m.generator_order(i) as u64 - 1),
            })
            .collect();
        HopfAlgebraData::new(&format!("D({m})"), carrier, comult, counit, antipode, budget)
    }
}

/// `X^m` where canonical generator `i` of `group` is the variable
/// `vars[i]` of `alg`; negative exponents use the companion.
pub fn character_monomial(alg: &PresentedAlgebra, group: &FgAbGroup, vars: &[usize], m: &GroupElement) -> Poly {
    let mut out = alg.one();
    for (i, &e) in m.0.iter().enumerate() {
        let v = vars[i];
        let f = if e >= 0 {
            alg.var(v).pow(e as u64)
        } else {
            let w = alg.companion_of(v).expect("free generators are inverted");
            alg.var(w).pow((-e) as u64)
        };
        let _ = group;
        out = &out * &f;
    }
    out
}

/// `k[t]` with `t` primitive.
pub fn additive_group(field: CoeffField, budget: &Budget) -> Result<HopfAlgebraData> {
    let carrier = Arc::new(PresentedAlgebra::polynomial_ring(field, &["t"]));
    additive_structure("Ga", carrier, budget)
}

/// `k[t]/(t^p)` with `t` primitive, over `F_p`.
pub fn alpha_p(p: u64, budget: &Budget) -> Result<HopfAlgebraData> {
    let field = CoeffField::prime(p)?;
    let carrier = Arc::new(PresentedAlgebra::parse(field, &["t"], &[], &[&format!("t^{p}")])?);
    additive_structure(&format!("alpha_{p}"), carrier, budget)
}

fn additive_structure(name: &str, carrier: Arc<PresentedAlgebra>, budget: &Budget) -> Result<HopfAlgebraData> {
    let t = tensor(&carrier, &carrier, budget)?;
    let comult = vec![&t.left.images()[0] + &t.right.images()[0]];
    let k = PresentedAlgebra::base_field(carrier.field());
    let antipode = vec![-&carrier.var(0)];
    HopfAlgebraData::new(name, carrier, comult, vec![k.zero()], antipode, budget)
}

/// Group schemes named `Gm`, `Ga`, `mu_n`, `const:<group>`, `diag:<group>`
/// (with `<group>` in the text form of [`FgAbGroup`]).
pub fn group_scheme_from_tag(tag: &str, field: CoeffField, budget: &Budget) -> Result<HopfAlgebraData> {
    let bad = || AlgError::InvalidInput(format!("unknown group scheme `{tag}`"));
    if tag == "Gm" {
        return DiagonalizableGroupScheme::new(FgAbGroup::free(1), field).hopf_algebra(budget);
    }
    if tag == "Ga" {
        return additive_group(field, budget);
    }
    if let Some(n) = tag.strip_prefix("mu_") {
        let n: i64 = n.parse().map_err(|_| bad())?;
        if n < 1 {
            return Err(bad());
        }
        return DiagonalizableGroupScheme::new(FgAbGroup::cyclic(n), field).hopf_algebra(budget);
    }
    if let Some(g) = tag.strip_prefix("diag:") {
        return DiagonalizableGroupScheme::new(g.parse()?, field).hopf_algebra(budget);
    }
    if let Some(g) = tag.strip_prefix("const:") {
        return ConstantGroupScheme::from_abelian(&g.parse()?)?.hopf_algebra(field, budget);
    }
    Err(bad())
}

/// Dimension of `k[M]`, which equals `|M|`.
pub fn diag_degree(d: &DiagonalizableGroupScheme, budget: &Budget) -> Result<usize> {
    if !d.characters.is_finite() {
        return Err(AlgError::Precondition(format!("{} is infinite, so D(M) is not finite", d.characters)));
    }
    d.group_algebra()
        .dimension(budget)?
        .ok_or_else(|| AlgError::InvariantFailure("group algebra of a finite group is infinite-dimensional".into()))
}

/// `D(N) / D(M) = D(ker u)` for `u : N → M` surjective.
#[derive(Clone, Debug)]
pub struct DiagQuotient {
    pub kernel: FgAbGroup,
    pub kernel_inclusion: GroupHom,
    pub scheme: DiagonalizableGroupScheme,
    /// `k[ker u] → k[N]`.
    pub inclusion: RingMap,
}

pub fn diag_quotient(u: &GroupHom, field: CoeffField, budget: &Budget) -> Result<DiagQuotient> {
    if !u.is_surjective() {
        return Err(AlgError::Precondition(format!("{} → {} is not surjective", u.source(), u.target())));
    }
    let (kernel, incl) = u.kernel();
    let scheme = DiagonalizableGroupScheme::new(kernel.clone(), field);
    let big = DiagonalizableGroupScheme::new(u.source().clone(), field);
    let sub_alg = Arc::new(scheme.group_algebra());
    let big_alg = Arc::new(big.group_algebra());
    let images = kernel.generators().iter().map(|g| big.character(&big_alg, &incl.apply(g))).collect();
    let inclusion = RingMap::new(sub_alg, big_alg, images, budget)?;
    Ok(DiagQuotient { kernel, kernel_inclusion: incl, scheme, inclusion })
}

/// A primitive `n`-th root of unity in `F_p`, if there is one.
pub fn primitive_root_of_unity(p: u64, n: u64) -> Option<u64> {
    if !(p - 1).is_multiple_of(n) {
        return None;
    }
    let pw = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        b %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    (1..p).find(|&z| pw(z, n) == 1 && (1..n).all(|k| pw(z, k) != 1))
}

/// The discrete Fourier isomorphism `k^n ≅ k[u]/(u^n − 1)` when `F_p`
/// contains a primitive `n`-th root of unity; returns both directions.
pub fn fourier_isomorphism(p: u64, n: usize, budget: &Budget) -> Result<(RingMap, RingMap)> {
    let field = CoeffField::prime(p)?;
    let zeta = primitive_root_of_unity(p, n as u64)
        .ok_or_else(|| AlgError::Precondition(format!("F_{p} has no primitive {n}-th root of unity")))?;
    let diag = Arc::new(DiagonalizableGroupScheme::new(FgAbGroup::cyclic(n as i64), field).group_algebra());
    let prod = Arc::new(ConstantGroupScheme::cyclic(n).product_algebra(field));
    let z = Coef::from_integer(BigInt::from(zeta));
    let ninv = field.inv(&field.from_i64(n as i64));
    // e_k ↦ (1/n) Σ_j ζ^{-jk} u^j
    let idem: Vec<Poly> = (0..n)
        .map(|k| {
            let mut s = diag.zero();
            for j in 0..n {
                let e = ((n - (j * k) % n) % n) as u64;
                let c = field.mul(&ninv, &field.pow(&z, e));
                s = &s + &Poly::term(field, Monomial::var(1, 0).pow_exp(j as u32), c);
            }
            s
        })
        .collect();
    let to_diag = RingMap::new(prod.clone(), diag.clone(), idem, budget)?;
    // u ↦ Σ ζ^k e_k
    let mut u = prod.zero();
    for k in 0..n {
        u = &u + &prod.var(k).scale(&field.pow(&z, k as u64));
    }
    let to_prod = RingMap::new(diag, prod, vec![u], budget)?;
    Ok((to_diag, to_prod))
}

impl Monomial {
    fn pow_exp(&self, e: u32) -> Monomial {
        Monomial(self.0.iter().map(|x| x * e).collect())
    }
}

/// Outcome of an exact-sequence check on one test algebra.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceReport {
    pub sequence: String,
    pub base: AlgebraSummary,
    pub cover: AlgebraSummary,
    /// Rank of the cover as a free module; positive rank certifies
    /// faithful flatness.
    pub cover_rank: usize,
    pub witness: String,
    pub witness_valid: bool,
    pub etale: bool,
    /// Kernel elements on the base, when it is finite enough to solve.
    pub kernel: Option<Vec<String>>,
    pub kernel_size: Option<u64>,
    /// Primitive idempotents of the kernel (Artin–Schreier only).
    pub idempotents: Option<Vec<String>>,
    /// A solution already in the base, if one was found.
    pub root_in_base: Option<String>,
    pub cover_components: Option<usize>,
}

impl SequenceReport {
    pub fn passes(&self) -> bool {
        self.cover_rank > 0 && self.witness_valid
    }
}

fn fresh_name(alg: &PresentedAlgebra, stem: &str) -> String {
    let mut name = stem.to_string();
    while alg.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Every element of a finite-dimensional algebra over `F_p`.
pub fn all_elements(alg: &PresentedAlgebra, budget: &Budget) -> Result<Vec<Poly>> {
    let CoeffField::Prime(p) = alg.field() else {
        return Err(AlgError::Precondition("element enumeration needs a finite coefficient field".into()));
    };
    let basis = alg
        .standard_monomials(budget)?
        .ok_or_else(|| AlgError::Precondition("algebra is infinite-dimensional".into()))?;
    let count = (p as f64).powi(basis.len() as i32);
    if count > budget.point_cap as f64 {
        return Err(AlgError::ResourceExhausted(format!("{count} elements to enumerate")));
    }
    let field = alg.field();
    let mut out = vec![alg.zero()];
    for m in &basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for f in &out {
            for c in 0..p {
                let mut g = f.clone();
                g.add_term(m.clone(), field.from_i64(c as i64));
                next.push(g);
            }
        }
        out = next;
    }
    Ok(out)
}

fn rational_nth_root(q: &BigRational, n: u32) -> Option<BigRational> {
    if q.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root = |z: &BigInt| -> Option<BigInt> {
        let a = z.abs();
        let r = a.nth_root(n);
        (num_traits::pow(r.clone(), n as usize) == a).then(|| if z.is_negative() { -r } else { r })
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

/// Kummer sequence: an `n`-th root of the unit `xi` exists on the cover
/// `base[T]/(T^n − xi)`, which is free of rank `n`; étale iff `n` is
/// invertible.
pub fn kummer_check(base: &Arc<PresentedAlgebra>, xi: &Poly, n: u32, budget: &Budget) -> Result<SequenceReport> {
    if n == 0 {
        return Err(AlgError::InvalidInput("n must be positive".into()));
    }
    if !base.is_unit(xi, budget)? {
        return Err(AlgError::NotAUnit(base.format(xi)));
    }
    let t = fresh_name(base, "T");
    let rel = format!("{t}^{n} - ({})", base.format(xi));
    let cover = Arc::new(base.adjoin(&[&t], &[&rel])?);
    let images: Vec<Poly> = (0..base.nvars()).map(|i| cover.var(i)).collect();
    let ff = FiniteFreeAlgebra::new(base.clone(), cover.clone(), images, None, budget)?;
    let tv = cover.var(base.nvars());
    let witness_valid = cover.eq_elems(&tv.pow(n as u64), &xi.extend(1), budget)?;
    let etale = jacobian_etale_check(base, &[&t], &[&rel], budget)?;

    let mut kernel = None;
    let mut root_in_base = None;
    match base.field() {
        CoeffField::Prime(_) if base.dimension(budget)?.is_some() => {
            let elems = all_elements(base, budget)?;
            let mut roots = Vec::new();
            for x in &elems {
                if base.eq_elems(&x.pow(n as u64), &base.one(), budget)? {
                    roots.push(base.format(x));
                }
                if root_in_base.is_none() && base.eq_elems(&x.pow(n as u64), xi, budget)? {
                    root_in_base = Some(base.format(x));
                }
            }
            kernel = Some(roots);
        }
        CoeffField::Rationals if base.nvars() == 0 => {
            let mut roots = vec!["1".to_string()];
            if n.is_multiple_of(2) {
                roots.push("-1".to_string());
            }
            kernel = Some(roots);
            root_in_base = rational_nth_root(&xi.constant_term(), n).map(|r| base.format(&Poly::constant(base.field(), 0, r)));
        }
        _ => {}
    }
    Ok(SequenceReport {
        sequence: format!("kummer (n = {n})"),
        base: base.summary(),
        cover: cover.summary(),
        cover_rank: ff.rank(),
        witness: format!("{t}^{n} = {}", base.format(xi)),
        witness_valid,
        etale,
        kernel_size: kernel.as_ref().map(|k| k.len() as u64),
        kernel,
        idempotents: None,
        root_in_base,
        cover_components: None,
    })
}

/// Matrix (columns) of the `F_p`-linear map `x ↦ x^p − x` or `x ↦ x^p` on
/// the standard monomial basis.
fn frobenius_matrix(alg: &PresentedAlgebra, basis: &[Monomial], p: u64, minus_id: bool, budget: &Budget) -> Result<Vec<Vec<Coef>>> {
    let field = alg.field();
    let d = basis.len();
    let mut m = vec![vec![field.zero(); d]; d];
    for (j, mono) in basis.iter().enumerate() {
        let x = Poly::term(field, mono.clone(), field.one());
        let mut img = x.pow(p);
        if minus_id {
            img = &img - &x;
        }
        let coords = alg.coordinates(&img, basis, budget)?;
        for (i, c) in coords.into_iter().enumerate() {
            m[i][j] = c;
        }
    }
    Ok(m)
}

fn combine(alg: &PresentedAlgebra, basis: &[Monomial], v: &[Coef]) -> Poly {
    let field = alg.field();
    Poly::from_terms(field, alg.nvars(), basis.iter().cloned().zip(v.iter().cloned()).filter(|(_, c)| !c.is_zero()))
}

/// `F_p`-basis of `{x : x^p = x}` in a finite-dimensional algebra.
pub fn frobenius_fixed_space(alg: &PresentedAlgebra, budget: &Budget) -> Result<Vec<Poly>> {
    let CoeffField::Prime(p) = alg.field() else {
        return Err(AlgError::Precondition("Frobenius needs characteristic p".into()));
    };
    let basis = alg
        .standard_monomials(budget)?
        .ok_or_else(|| AlgError::Precondition("algebra is infinite-dimensional".into()))?;
    let m = frobenius_matrix(alg, &basis, p, true, budget)?;
    Ok(nullspace(alg.field(), &m, basis.len()).iter().map(|v| combine(alg, &basis, v)).collect())
}

/// Nonzero idempotents not splitting as a sum of two orthogonal nonzero
/// idempotents, found among the `F_p`-span of `fixed`.
pub fn primitive_idempotents(alg: &PresentedAlgebra, fixed: &[Poly], budget: &Budget) -> Result<Vec<Poly>> {
    let CoeffField::Prime(p) = alg.field() else {
        return Err(AlgError::Precondition("idempotent search needs characteristic p".into()));
    };
    let count = (p as f64).powi(fixed.len() as i32);
    if count > budget.point_cap as f64 {
        return Err(AlgError::ResourceExhausted(format!("{count} candidate idempotents")));
    }
    let field = alg.field();
    let mut span = vec![alg.zero()];
    for f in fixed {
        let mut next = Vec::new();
        for g in &span {
            for c in 0..p {
                next.push(alg.reduce(&(g + &f.scale(&field.from_i64(c as i64))), budget)?);
            }
        }
        span = next;
    }
    let mut idem = Vec::new();
    for e in &span {
        if !e.is_zero() && alg.eq_elems(&(e * e), e, budget)? {
            idem.push(e.clone());
        }
    }
    let mut prim = Vec::new();
    for e in &idem {
        let mut splits = false;
        for f in &idem {
            if f != e && alg.eq_elems(&(e * f), f, budget)? {
                splits = true;
                break;
            }
        }
        if !splits {
            prim.push(e.clone());
        }
    }
    prim.sort_by_key(|a| alg.format(a));
    Ok(prim)
}

/// Artin–Schreier sequence: `T^p − T = a` is solved on the étale cover
/// `base[T]/(T^p − T − a)`; on finite-dimensional bases the kernel of
/// `F − Id` is computed with its idempotent decomposition.
pub fn artin_schreier_check(base: &Arc<PresentedAlgebra>, a: &Poly, budget: &Budget) -> Result<SequenceReport> {
    let CoeffField::Prime(p) = base.field() else {
        return Err(AlgError::Precondition("Artin–Schreier needs characteristic p".into()));
    };
    let t = fresh_name(base, "T");
    let rel = format!("{t}^{p} - {t} - ({})", base.format(a));
    let cover = Arc::new(base.adjoin(&[&t], &[&rel])?);
    let images: Vec<Poly> = (0..base.nvars()).map(|i| cover.var(i)).collect();
    let ff = FiniteFreeAlgebra::new(base.clone(), cover.clone(), images, None, budget)?;
    let tv = cover.var(base.nvars());
    let witness_valid = cover.eq_elems(&(&tv.pow(p) - &tv), &a.extend(1), budget)?;
    let etale = jacobian_etale_check(base, &[&t], &[&rel], budget)?;
    let (mut kernel, mut kernel_size, mut idempotents, mut cover_components) = (None, None, None, None);
    if base.dimension(budget)?.is_some() {
        let fixed = frobenius_fixed_space(base, budget)?;
        kernel_size = Some(p.pow(fixed.len() as u32));
        let prim = primitive_idempotents(base, &fixed, budget)?;
        idempotents = Some(prim.iter().map(|e| base.format(e)).collect());
        kernel = Some(fixed.iter().map(|e| base.format(e)).collect());
        cover_components = Some(frobenius_fixed_space(&cover, budget)?.len());
    }
    Ok(SequenceReport {
        sequence: format!("artin-schreier (p = {p})"),
        base: base.summary(),
        cover: cover.summary(),
        cover_rank: ff.rank(),
        witness: format!("{t}^{p} - {t} = {}", base.format(a)),
        witness_valid,
        etale,
        kernel,
        kernel_size,
        idempotents,
        root_in_base: None,
        cover_components,
    })
}

/// `F_p`-basis of `{x : x^p = 0}` in a finite-dimensional algebra.
pub fn alphap_kernel(alg: &PresentedAlgebra, budget: &Budget) -> Result<Vec<Poly>> {
    let CoeffField::Prime(p) = alg.field() else {
        return Err(AlgError::Precondition("Frobenius needs characteristic p".into()));
    };
    let basis = alg
        .standard_monomials(budget)?
        .ok_or_else(|| AlgError::Precondition("algebra is infinite-dimensional".into()))?;
    let m = frobenius_matrix(alg, &basis, p, false, budget)?;
    Ok(nullspace(alg.field(), &m, basis.len()).iter().map(|v| combine(alg, &basis, v)).collect())
}

/// Order of `M` for a diagonalizable group, for convenience in reports.
pub fn character_group_order(d: &DiagonalizableGroupScheme) -> Cardinality {
    d.characters.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_groups() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let z2 = ConstantGroupScheme::cyclic(2).hopf_algebra(q, &b).unwrap();
        assert_eq!(z2.carrier.dimension(&b).unwrap(), Some(2));
        assert!(z2.check_axioms(&b).unwrap().all());
        let triv = ConstantGroupScheme::cyclic(1).hopf_algebra(q, &b).unwrap();
        assert_eq!(triv.carrier.dimension(&b).unwrap(), Some(1));
        assert!(triv.check_axioms(&b).unwrap().all());
        let z3 = ConstantGroupScheme::cyclic(3).hopf_algebra(CoeffField::Prime(2), &b).unwrap();
        assert_eq!(z3.carrier.dimension(&b).unwrap(), Some(3));
        assert!(z3.check_axioms(&b).unwrap().all());
        assert!(ConstantGroupScheme::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn diagonalizable_groups() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let gm = DiagonalizableGroupScheme::new(FgAbGroup::free(1), q);
        assert_eq!(gm.group_algebra().to_string(), "QQ[x; inverted x]");
        assert!(gm.hopf_algebra(&b).unwrap().check_axioms(&b).unwrap().all());
        let mu3 = DiagonalizableGroupScheme::new(FgAbGroup::cyclic(3), q);
        assert_eq!(mu3.group_algebra().to_string(), "QQ[u]/(u^3 - 1)");
        assert!(mu3.hopf_algebra(&b).unwrap().check_axioms(&b).unwrap().all());
        let triv = DiagonalizableGroupScheme::new(FgAbGroup::trivial(), q);
        assert_eq!(triv.group_algebra().nvars(), 0);
        assert_eq!(diag_degree(&triv, &b).unwrap(), 1);
        let klein = DiagonalizableGroupScheme::new("Z/2 + Z/2".parse().unwrap(), q);
        assert_eq!(diag_degree(&klein, &b).unwrap(), 4);
        assert!(diag_degree(&gm, &b).is_err());
    }

    #[test]
    fn additive_groups() {
        let b = Budget::default();
        assert!(additive_group(CoeffField::Rationals, &b).unwrap().check_axioms(&b).unwrap().all());
        assert!(alpha_p(3, &b).unwrap().check_axioms(&b).unwrap().all());
        for tag in ["Gm", "Ga", "mu_4", "diag:Z+Z/2", "const:Z/3"] {
            let h = group_scheme_from_tag(tag, CoeffField::Rationals, &b).unwrap();
            assert!(h.check_axioms(&b).unwrap().all(), "{tag}");
        }
        assert!(group_scheme_from_tag("SL2", CoeffField::Rationals, &b).is_err());
    }

    #[test]
    fn broken_comultiplication_fails_coassociativity() {
        let b = Budget::default();
        let carrier = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["t"]));
        let t = tensor(&carrier, &carrier, &b).unwrap();
        let sq = &t.algebra;
        // t ↦ t⊗1 + 1⊗t + t⊗t + (t⊗1)^2 is not coassociative
        let d = sq.parse_elem("t_1 + t_2 + t_1*t_2 + t_1^2").unwrap();
        let k = PresentedAlgebra::base_field(CoeffField::Rationals);
        let h = HopfAlgebraData::new("bad", carrier.clone(), vec![d], vec![k.zero()], vec![-&carrier.var(0)], &b).unwrap();
        assert!(!h.check_axioms(&b).unwrap().coassociative);
    }

    #[test]
    fn quotients_of_diagonalizable_groups() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let z = FgAbGroup::free(1);
        let u = GroupHom::new(z.clone(), FgAbGroup::cyclic(3), vec![vec![1]]).unwrap();
        let dq = diag_quotient(&u, q, &b).unwrap();
        assert_eq!(dq.kernel, z);
        let img = dq.inclusion.describe();
        assert!(img[0].1 == "x^3" || img[0].1 == "x_inv^3");

        let id = GroupHom::new(z.clone(), z.clone(), vec![vec![1]]).unwrap();
        assert!(diag_quotient(&id, q, &b).unwrap().kernel.is_trivial());

        let z2 = FgAbGroup::free(2);
        let pr = GroupHom::new(z2, z.clone(), vec![vec![1], vec![0]]).unwrap();
        let dq = diag_quotient(&pr, q, &b).unwrap();
        assert_eq!(dq.kernel, z);
        let img = dq.inclusion.describe();
        assert!(img[0].1 == "x2" || img[0].1 == "x2_inv");

        let zero = GroupHom::new(z.clone(), z, vec![vec![2]]).unwrap();
        assert!(diag_quotient(&zero, q, &b).is_err());
    }

    #[test]
    fn fourier_duality() {
        let b = Budget::default();
        let (to_diag, to_prod) = fourier_isomorphism(7, 3, &b).unwrap();
        assert!(to_diag.then(&to_prod, &b).unwrap().equals(&RingMap::identity(to_diag.source().clone()), &b).unwrap());
        assert!(to_prod.then(&to_diag, &b).unwrap().equals(&RingMap::identity(to_prod.source().clone()), &b).unwrap());
        assert!(fourier_isomorphism(5, 3, &b).is_err());
    }

    #[test]
    fn kummer_examples() {
        let b = Budget::default();
        let f5 = Arc::new(PresentedAlgebra::base_field(CoeffField::Prime(5)));
        let r = kummer_check(&f5, &f5.constant(2), 3, &b).unwrap();
        assert!(r.passes() && r.etale);
        assert_eq!(r.cover_rank, 3);
        assert_eq!(r.kernel_size, Some(1));

        let q = Arc::new(PresentedAlgebra::base_field(CoeffField::Rationals));
        let r = kummer_check(&q, &q.one(), 2, &b).unwrap();
        assert_eq!(r.root_in_base.as_deref(), Some("1"));
        assert!(r.etale);

        let f3 = Arc::new(PresentedAlgebra::base_field(CoeffField::Prime(3)));
        let r = kummer_check(&f3, &f3.one(), 3, &b).unwrap();
        assert!(r.passes() && !r.etale);
        assert_eq!(r.cover_rank, 3);

        let qx = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["x"]));
        assert!(kummer_check(&qx, &qx.var(0), 2, &b).is_err());
    }

    #[test]
    fn artin_schreier_examples() {
        let b = Budget::default();
        let f3 = Arc::new(PresentedAlgebra::base_field(CoeffField::Prime(3)));
        let r = artin_schreier_check(&f3, &f3.one(), &b).unwrap();
        assert!(r.passes() && r.etale);
        assert_eq!(r.kernel_size, Some(3));

        let f2 = CoeffField::Prime(2);
        let sq = Arc::new(PresentedAlgebra::parse(f2, &["e"], &[], &["e^2 - e"]).unwrap());
        let r = artin_schreier_check(&sq, &sq.zero(), &b).unwrap();
        assert_eq!(r.kernel_size, Some(4));
        assert_eq!(r.idempotents.as_ref().unwrap().len(), 2);

        let r = artin_schreier_check(&f3, &f3.zero(), &b).unwrap();
        assert_eq!(r.cover_components, Some(3));

        let q = Arc::new(PresentedAlgebra::base_field(CoeffField::Rationals));
        assert!(artin_schreier_check(&q, &q.one(), &b).is_err());
    }

    #[test]
    fn alpha_p_kernels() {
        let b = Budget::default();
        let a = PresentedAlgebra::parse(CoeffField::Prime(2), &["e"], &[], &["e^2"]).unwrap();
        assert_eq!(alphap_kernel(&a, &b).unwrap(), vec![a.var(0)]);
        let f5 = PresentedAlgebra::base_field(CoeffField::Prime(5));
        assert!(alphap_kernel(&f5, &b).unwrap().is_empty());
        let a = PresentedAlgebra::parse(CoeffField::Prime(3), &["e"], &[], &["e^3"]).unwrap();
        let k = alphap_kernel(&a, &b).unwrap();
        assert_eq!(k.len(), 2);
        assert!(k.contains(&a.var(0)) && k.contains(&a.var(0).pow(2)));
    }
}
