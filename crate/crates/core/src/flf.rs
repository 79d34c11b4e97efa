//! Algebras that are free of finite rank over a base: coordinates in a
//! basis, multiplication matrices, norms, traces and characteristic
//! polynomials.

use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{AlgError, Result};
use crate::exactalg::algebra::standard_set;
use crate::exactalg::finite_field::GaloisField;
use crate::exactalg::groebner::{groebner_basis, normal_form};
use crate::exactalg::linalg::{AlgebraRing, PolyMatrix};
use crate::exactalg::order::MonomialOrder;
use crate::exactalg::points::{rational_points_in, FqPoly};
use crate::exactalg::{CoeffField, Monomial, Poly, PresentedAlgebra, RingMap};

/// Normal forms in `k[y, u] / (total(y), base(u), u_i − f_i(y))` under an
/// order eliminating `y`. When every basis element involving `y` has a
/// leading monomial in `y` alone, the standard `y`-monomials form a basis of
/// the total algebra over the base.
#[derive(Clone, Debug)]
struct Expander {
    m: usize,
    n: usize,
    basis: Vec<Poly>,
    order: MonomialOrder,
    standard: Vec<Monomial>,
}

impl Expander {
    fn new(map: &RingMap, budget: &Budget) -> Result<Self> {
        let total = map.target();
        let base = map.source();
        let (m, n) = (total.nvars(), base.nvars());
        let field = total.field();
        let shift: Vec<usize> = (m..m + n).collect();
        let mut gens: Vec<Poly> = total.relations().generators().iter().map(|r| r.extend(n)).collect();
        gens.extend(base.relations().generators().iter().map(|r| r.remap(m + n, &shift)));
        for (i, img) in map.images().iter().enumerate() {
            gens.push(&Poly::var(field, m + n, m + i) - &img.extend(n));
        }
        let order = MonomialOrder::eliminate(m, m + n);
        let basis = groebner_basis(&gens, &order, budget)?;
        let mut lms = Vec::new();
        let to_base: Vec<Poly> = (0..m).map(|_| base.zero()).chain((0..n).map(|i| base.var(i))).collect();
        for g in &basis {
            let lm = g.leading(&order).unwrap().0;
            let y_part = &lm.0[..m];
            if y_part.iter().all(|&e| e == 0) {
                if !base.is_zero_elem(&g.substitute(&to_base), budget)? {
                    return Err(AlgError::BasisNotFree(format!(
                        "the structural map is not injective: {} maps to zero",
                        base.format(&g.substitute(&to_base))
                    )));
                }
                continue;
            }
            if lm.0[m..].iter().any(|&e| e > 0) {
                return Err(AlgError::BasisNotFree(
                    "no monomial basis certificate: a leading monomial mixes base and fibre variables".into(),
                ));
            }
            lms.push(Monomial(y_part.to_vec()));
        }
        let standard = standard_set(&lms, m, budget)?
            .ok_or_else(|| AlgError::BasisNotFree("the total algebra is not finite over the base".into()))?;
        Ok(Expander { m, n, basis, order, standard })
    }

    /// Coordinates on the standard monomials, as reduced base elements.
    fn coords(&self, base: &PresentedAlgebra, b: &Poly, budget: &Budget) -> Result<Vec<Poly>> {
        let nf = normal_form(&b.extend(self.n), &self.basis, &self.order, budget)?;
        let mut out = vec![base.zero(); self.standard.len()];
        for (mono, c) in nf.terms() {
            let y = Monomial(mono.0[..self.m].to_vec());
            let idx = self.standard.iter().position(|s| *s == y).expect("normal form uses standard monomials");
            out[idx].add_term(Monomial(mono.0[self.m..].to_vec()), c.clone());
        }
        Ok(out)
    }
}

/// `total` as a free module over `base` with basis `e_1..e_n`.
#[derive(Clone, Debug)]
pub struct FiniteFreeAlgebra {
    map: RingMap,
    basis: Vec<Poly>,
    expander: Expander,
    /// Inverse of the matrix whose rows are the standard coordinates of the
    /// basis elements; `None` for the standard basis itself.
    change: Option<PolyMatrix>,
}

impl FiniteFreeAlgebra {
    /// `images` are the images of the base generators in `total`. Without an
    /// explicit basis the standard monomial basis is used.
    pub fn new(
        base: Arc<PresentedAlgebra>,
        total: Arc<PresentedAlgebra>,
        images: Vec<Poly>,
        basis: Option<Vec<Poly>>,
        budget: &Budget,
    ) -> Result<Self> {
        let map = RingMap::new(base, total, images, budget)?;
        Self::from_map(map, basis, budget)
    }

    pub fn from_map(map: RingMap, basis: Option<Vec<Poly>>, budget: &Budget) -> Result<Self> {
        if map.source().is_zero_algebra(budget)? {
            return Err(AlgError::BasisNotFree("the base is the zero ring".into()));
        }
        let expander = Expander::new(&map, budget)?;
        let total = map.target().clone();
        let base = map.source().clone();
        let standard: Vec<Poly> = expander
            .standard
            .iter()
            .map(|s| Poly::term(total.field(), s.clone(), total.field().one()))
            .collect();
        let Some(user) = basis else {
            return Ok(FiniteFreeAlgebra { map, basis: standard, expander, change: None });
        };
        if user.len() != standard.len() {
            return Err(AlgError::BasisNotFree(format!(
                "{} basis elements given, but the algebra has rank {}",
                user.len(),
                standard.len()
            )));
        }
        let user: Vec<Poly> = user.iter().map(|e| total.reduce(e, budget)).collect::<Result<_>>()?;
        if user == standard {
            return Ok(FiniteFreeAlgebra { map, basis: standard, expander, change: None });
        }
        let p: PolyMatrix = user.iter().map(|e| expander.coords(&base, e, budget)).collect::<Result<_>>()?;
        let ring = AlgebraRing::new(&base, budget);
        let inv = ring
            .inverse(&p)?
            .ok_or_else(|| AlgError::BasisNotFree("the proposed elements do not form a basis".into()))?;
        Ok(FiniteFreeAlgebra { map, basis: user, expander, change: Some(inv) })
    }

    pub fn base(&self) -> &Arc<PresentedAlgebra> {
        self.map.source()
    }

    pub fn total(&self) -> &Arc<PresentedAlgebra> {
        self.map.target()
    }

    pub fn structural_map(&self) -> &RingMap {
        &self.map
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The unique `c` with `Σ c_i e_i = b`.
    pub fn expand(&self, b: &Poly, budget: &Budget) -> Result<Vec<Poly>> {
        let base = self.base();
        let c = self.expander.coords(base, b, budget)?;
        match &self.change {
            None => Ok(c),
            Some(inv) => {
                let ring = AlgebraRing::new(base, budget);
                let row = ring.matmul(&vec![c], inv)?;
                Ok(row.into_iter().next().unwrap())
            }
        }
    }

    /// `Σ c_i e_i`, reduced in the total algebra.
    pub fn combine(&self, coeffs: &[Poly], budget: &Budget) -> Result<Poly> {
        let mut acc = self.total().zero();
        for (c, e) in coeffs.iter().zip(&self.basis) {
            acc = &acc + &(&self.map.apply_raw(c) * e);
        }
        self.total().reduce(&acc, budget)
    }

    /// Matrix of multiplication by `b`: column `j` holds the coordinates of
    /// `b·e_j`.
    pub fn mult_matrix(&self, b: &Poly, budget: &Budget) -> Result<PolyMatrix> {
        let n = self.rank();
        let mut m = vec![vec![self.base().zero(); n]; n];
        for j in 0..n {
            let col = self.expand(&(b * &self.basis[j]), budget)?;
            for (i, c) in col.into_iter().enumerate() {
                m[i][j] = c;
            }
        }
        Ok(m)
    }

    pub fn norm(&self, b: &Poly, budget: &Budget) -> Result<Poly> {
        AlgebraRing::new(self.base(), budget).det(&self.mult_matrix(b, budget)?)
    }

    pub fn trace(&self, b: &Poly, budget: &Budget) -> Result<Poly> {
        let m = self.mult_matrix(b, budget)?;
        let mut t = self.base().zero();
        for (i, row) in m.iter().enumerate() {
            t = &t + &row[i];
        }
        self.base().reduce(&t, budget)
    }

    /// `[1, c_1, …, c_n]` with `χ(T) = T^n + c_1 T^{n−1} + … + c_n`.
    pub fn charpoly(&self, b: &Poly, budget: &Budget) -> Result<Vec<Poly>> {
        AlgebraRing::new(self.base(), budget).charpoly(&self.mult_matrix(b, budget)?)
    }

    /// `χ(b)` computed in the total algebra (zero by Cayley–Hamilton).
    pub fn eval_charpoly(&self, coeffs: &[Poly], b: &Poly, budget: &Budget) -> Result<Poly> {
        let total = self.total();
        let mut acc = total.zero();
        for c in coeffs {
            acc = total.mul(&acc, b, budget)?;
            acc = &acc + &self.map.apply_raw(c);
        }
        total.reduce(&acc, budget)
    }

    /// `(b is a unit, N(b) is a unit)`; the two must agree.
    pub fn norm_unit_criterion(&self, b: &Poly, budget: &Budget) -> Result<(bool, bool)> {
        let u = self.total().is_unit(b, budget)?;
        let nu = self.base().is_unit(&self.norm(b, budget)?, budget)?;
        if u != nu {
            return Err(AlgError::InvariantFailure(format!(
                "unit criterion violated for {}: unit = {u}, norm unit = {nu}",
                self.total().format(b)
            )));
        }
        Ok((u, nu))
    }

    /// Whether the image of `V(b)` in the base equals `V(N(b))` above every
    /// `F_q`-point of the base. The fiber over a point may have no rational
    /// points, so emptiness is decided in the fiber ring itself.
    pub fn zero_locus_image_check(&self, b: &Poly, q: u64, budget: &Budget) -> Result<bool> {
        let gf = GaloisField::new(q)?;
        if gf.degree() != 1 {
            return Err(AlgError::InvalidInput(format!("zero locus check needs a prime field size, got {q}")));
        }
        if self.base().field() != CoeffField::Prime(q) {
            return Err(AlgError::InvalidInput(format!("zero locus check over F_{q} needs coefficients in F_{q}")));
        }
        let total = self.total();
        let norm = self.norm(b, budget)?;
        let base_points = rational_points_in(self.base(), &gf, budget)?;
        let norm_q = FqPoly::new(&norm, &gf)?;
        for pt in base_points {
            let on_locus = norm_q.eval(&gf, &pt.coords) == 0;
            let mut rels = vec![b.clone()];
            for (img, &c) in self.map.images().iter().zip(&pt.coords) {
                rels.push(img - &total.constant(i64::from(c)));
            }
            let fiber_nonempty = !total.quotient_by(rels)?.is_zero_algebra(budget)?;
            if on_locus != fiber_nonempty {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A fixed family of finite free algebras over `field`, used as a test
/// corpus by the norm-law checks.
pub fn registered_algebras(field: CoeffField, budget: &Budget) -> Result<Vec<(String, FiniteFreeAlgebra)>> {
    let k = Arc::new(PresentedAlgebra::base_field(field));
    let over_k = |rels: &[&str]| -> Result<FiniteFreeAlgebra> {
        let total = Arc::new(PresentedAlgebra::parse(field, &["T"], &[], rels)?);
        FiniteFreeAlgebra::new(k.clone(), total, vec![], None, budget)
    };
    let line = Arc::new(PresentedAlgebra::polynomial_ring(field, &["u"]));
    let cover = Arc::new(PresentedAlgebra::polynomial_ring(field, &["x"]));
    let square = FiniteFreeAlgebra::new(line.clone(), cover.clone(), vec![cover.parse_elem("x^2")?], None, budget)?;
    let cube = FiniteFreeAlgebra::new(line.clone(), cover.clone(), vec![cover.parse_elem("x^3 + x")?], None, budget)?;
    let torus = Arc::new(PresentedAlgebra::parse(field, &["u"], &["u"], &[])?);
    let laurent = Arc::new(PresentedAlgebra::parse(field, &["x"], &["x"], &[])?);
    let kummer = FiniteFreeAlgebra::new(torus, laurent.clone(), vec![laurent.parse_elem("x^2")?], None, budget)?;
    let plane = Arc::new(PresentedAlgebra::parse(field, &["u", "T"], &[], &["T^2 - u*T - 1"])?);
    let ext = FiniteFreeAlgebra::new(line, plane.clone(), vec![plane.var(0)], None, budget)?;
    Ok(vec![
        ("k[T]/(T^2 + 1) over k".into(), over_k(&["T^2 + 1"])?),
        ("k[T]/(T^3 - 2) over k".into(), over_k(&["T^3 - 2"])?),
        ("k[T]/(T^2) over k".into(), over_k(&["T^2"])?),
        ("k[T]/(T^2 - T) over k".into(), over_k(&["T^2 - T"])?),
        ("k[x] over k[x^2]".into(), square),
        ("k[x] over k[x^3 + x]".into(), cube),
        ("k[x, 1/x] over k[x^2, 1/x^2]".into(), kummer),
        ("k[u, T]/(T^2 - uT - 1) over k[u]".into(), ext),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CoeffField;

    fn x_over_x2(field: CoeffField) -> FiniteFreeAlgebra {
        let b = Budget::default();
        let base = Arc::new(PresentedAlgebra::polynomial_ring(field, &["u"]));
        let total = Arc::new(PresentedAlgebra::polynomial_ring(field, &["x"]));
        let img = vec![total.parse_elem("x^2").unwrap()];
        FiniteFreeAlgebra::new(base, total, img, None, &b).unwrap()
    }

    #[test]
    fn expansion_examples() {
        let b = Budget::default();
        let a = x_over_x2(CoeffField::Rationals);
        assert_eq!(a.rank(), 2);
        let c = a.expand(&a.total().parse_elem("x^3").unwrap(), &b).unwrap();
        assert_eq!(c, vec![a.base().zero(), a.base().var(0)]);
        assert_eq!(a.expand(&a.total().one(), &b).unwrap(), vec![a.base().one(), a.base().zero()]);

        let q = CoeffField::Rationals;
        let base = Arc::new(PresentedAlgebra::base_field(q));
        let total = Arc::new(PresentedAlgebra::parse(q, &["T"], &[], &["T^2 + 1"]).unwrap());
        let basis = vec![total.one(), total.var(0)];
        let c = FiniteFreeAlgebra::new(base.clone(), total.clone(), vec![], Some(basis), &b).unwrap();
        let v = c.expand(&total.parse_elem("(1 + T)^2").unwrap(), &b).unwrap();
        assert_eq!(v, vec![base.zero(), base.constant(2)]);
    }

    #[test]
    fn norms_and_charpolys() {
        let b = Budget::default();
        let a = x_over_x2(CoeffField::Rationals);
        let x = a.total().var(0);
        let u = a.base().var(0);
        assert_eq!(a.norm(&x, &b).unwrap(), -&u);
        assert_eq!(a.norm(&a.total().one(), &b).unwrap(), a.base().one());
        assert_eq!(a.charpoly(&x, &b).unwrap(), vec![a.base().one(), a.base().zero(), -&u]);
        let zero = a.charpoly(&a.total().zero(), &b).unwrap();
        assert!(zero[1..].iter().all(Poly::is_zero));
        // scalar c: (T - c)^2 = T^2 - 2c T + c^2
        let three = a.charpoly(&a.total().constant(3), &b).unwrap();
        assert_eq!(three, vec![a.base().one(), a.base().constant(-6), a.base().constant(9)]);

        let q = CoeffField::Rationals;
        let base = Arc::new(PresentedAlgebra::polynomial_ring(q, &["a", "c"]));
        let total = Arc::new(PresentedAlgebra::parse(q, &["a", "c", "T"], &[], &["T^2 + 1"]).unwrap());
        let img = vec![total.var(0), total.var(1)];
        let gauss = FiniteFreeAlgebra::new(base.clone(), total.clone(), img, None, &b).unwrap();
        let n = gauss.norm(&total.parse_elem("a + c*T").unwrap(), &b).unwrap();
        assert_eq!(n, base.parse_elem("a^2 + c^2").unwrap());
    }

    #[test]
    fn explicit_basis_with_units() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let base = Arc::new(PresentedAlgebra::parse(q, &["u"], &["u"], &[]).unwrap());
        let total = Arc::new(PresentedAlgebra::parse(q, &["x"], &["x"], &[]).unwrap());
        let img = vec![total.parse_elem("x^2").unwrap()];
        let basis = vec![total.one(), total.var(0)];
        let a = FiniteFreeAlgebra::new(base.clone(), total.clone(), img, Some(basis), &b).unwrap();
        let x = total.var(0);
        assert_eq!(a.norm_unit_criterion(&x, &b).unwrap(), (true, true));
        assert_eq!(a.norm(&x, &b).unwrap(), -&base.var(0));
        let xi = total.parse_elem("x_inv").unwrap();
        assert_eq!(a.expand(&xi, &b).unwrap(), vec![base.zero(), base.parse_elem("u_inv").unwrap()]);
    }

    #[test]
    fn unit_criterion_and_cayley_hamilton() {
        let b = Budget::default();
        let a = x_over_x2(CoeffField::Rationals);
        let x = a.total().var(0);
        assert_eq!(a.norm_unit_criterion(&x, &b).unwrap(), (false, false));
        assert_eq!(a.norm_unit_criterion(&a.total().one(), &b).unwrap(), (true, true));
        let f = a.total().parse_elem("x^3 - 2*x + 5").unwrap();
        let cp = a.charpoly(&f, &b).unwrap();
        assert!(a.eval_charpoly(&cp, &f, &b).unwrap().is_zero());
        assert_eq!(a.trace(&f, &b).unwrap(), -&cp[1]);
    }

    #[test]
    fn zero_loci() {
        let b = Budget::default();
        let a = x_over_x2(CoeffField::Prime(3));
        assert!(a.zero_locus_image_check(&a.total().var(0), 3, &b).unwrap());
        assert!(a.zero_locus_image_check(&a.total().one(), 3, &b).unwrap());

        let f5 = CoeffField::Prime(5);
        let base = Arc::new(PresentedAlgebra::base_field(f5));
        let total = Arc::new(PresentedAlgebra::parse(f5, &["T"], &[], &["T^2 - 2"]).unwrap());
        let c = FiniteFreeAlgebra::new(base, total.clone(), vec![], None, &b).unwrap();
        let t1 = total.parse_elem("T - 1").unwrap();
        assert_eq!(c.norm(&t1, &b).unwrap(), c.base().constant(-1));
        assert!(c.zero_locus_image_check(&t1, 5, &b).unwrap());
    }

    #[test]
    fn non_free_is_rejected() {
        let b = Budget::default();
        let q = CoeffField::Rationals;
        let base = Arc::new(PresentedAlgebra::polynomial_ring(q, &["u"]));
        let total = Arc::new(PresentedAlgebra::polynomial_ring(q, &["x", "y"]));
        let img = vec![total.var(0)];
        assert!(FiniteFreeAlgebra::new(base, total, img, None, &b).is_err());
    }
}
