//! Sparse multivariate polynomials over a [`CoeffField`].

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::field::{Coef, CoeffField};
use super::order::MonomialOrder;

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }
}

/// Polynomial with a canonical term map; no zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: CoeffField,
    nvars: usize,
    terms: BTreeMap<Monomial, Coef>,
}

impl Poly {
    pub fn zero(field: CoeffField, nvars: usize) -> Self {
        Poly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: CoeffField, nvars: usize, c: Coef) -> Self {
        let mut p = Poly::zero(field, nvars);
        let c = field.normalize(c);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(field: CoeffField, nvars: usize) -> Self {
        Poly::constant(field, nvars, Coef::one())
    }

    pub fn from_i64(field: CoeffField, nvars: usize, v: i64) -> Self {
        Poly::constant(field, nvars, field.from_i64(v))
    }

    pub fn var(field: CoeffField, nvars: usize, i: usize) -> Self {
        Poly::term(field, Monomial::var(nvars, i), Coef::one())
    }

    pub fn term(field: CoeffField, m: Monomial, c: Coef) -> Self {
        let nvars = m.nvars();
        let mut p = Poly::zero(field, nvars);
        let c = field.normalize(c);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(field: CoeffField, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coef)>) -> Self {
        let mut p = Poly::zero(field, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn constant_term(&self) -> Coef {
        self.terms.get(&Monomial::one(self.nvars)).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coef)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Coef) {
        debug_assert_eq!(m.nvars(), self.nvars);
        let c = self.field.normalize(c);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = self.field.add(v, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Leading monomial and coefficient under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coef)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn scale(&self, c: &Coef) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), self.field.mul(v, c)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Poly { field: self.field, nvars: self.nvars, terms }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Coef) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (t, v) in &self.terms {
            out.add_term(t.mul(m), self.field.mul(v, c));
        }
        out
    }

    /// Makes the leading coefficient one.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading(order) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c);
                self.scale(&inv)
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Ring homomorphism `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let (field, nv) = match images.first() {
            Some(p) => (p.field, p.nvars),
            None => (self.field, 0),
        };
        let mut out = Poly::zero(field, nv);
        // cache powers per variable
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(field, nv), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(field, nv, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Re-embeds into a ring with `nvars` variables, sending variable `i`
    /// to variable `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Poly {
        let mut out = Poly::zero(self.field, nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; nvars];
            for (i, &x) in m.0.iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Appends `extra` fresh variables at the end.
    pub fn extend(&self, extra: usize) -> Poly {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap(self.nvars + extra, &map)
    }

    /// Moves the polynomial into `field`, reducing rational coefficients.
    pub fn change_field(&self, field: CoeffField) -> Poly {
        Poly::from_terms(field, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, self.field.mul(c, &self.field.from_i64(e as i64)));
        }
        out
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        format_poly(self, names)
    }
}

fn format_coef(c: &Coef) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn format_poly(p: &Poly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let order = MonomialOrder::DegRevLex;
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| order.cmp(b.0, a.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let neg = c < &Coef::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], e)),
            }
        }
        if factors.is_empty() {
            out.push_str(&format_coef(&abs));
        } else {
            if !abs.is_one() {
                let _ = write!(out, "{}*", format_coef(&abs));
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&self.field.from_i64(-1))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, Coef> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let m = m1.mul(m2);
                let prod = c1 * c2;
                acc.entry(m).and_modify(|v| *v += &prod).or_insert(prod);
            }
        }
        let terms = acc
            .into_iter()
            .map(|(m, c)| (m, self.field.normalize(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { field: self.field, nvars: self.nvars, terms }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arithmetic_and_printing() {
        let f = CoeffField::Rationals;
        let x = Poly::var(f, 2, 0);
        let y = Poly::var(f, 2, 1);
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p.to_string_with(&names(&["x", "y"])), "x^2 - y^2");
        assert_eq!((&p - &p), Poly::zero(f, 2));
    }

    #[test]
    fn substitution_is_a_ring_map() {
        let f = CoeffField::Rationals;
        let x = Poly::var(f, 1, 0);
        let p = &x.pow(3) + &Poly::from_i64(f, 1, 2);
        let img = Poly::var(f, 2, 0) * Poly::var(f, 2, 1);
        let q = p.substitute(std::slice::from_ref(&img));
        assert_eq!(q, &img.pow(3) + &Poly::from_i64(f, 2, 2));
    }

    #[test]
    fn characteristic_kills_multiples_of_p() {
        let f = CoeffField::Prime(2);
        let x = Poly::var(f, 1, 0);
        assert!((&x + &x).is_zero());
    }
}
