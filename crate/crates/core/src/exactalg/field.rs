//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgError, Result};

/// Coefficients are stored as rationals. Over a prime field every stored
/// value is an integer in `[0, p)`.
pub type Coef = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoeffField {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffField {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(CoeffField::Prime(p))
        } else {
            Err(AlgError::InvalidInput(format!("{p} is not prime")))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoeffField::Rationals => 0,
            CoeffField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coef {
        Coef::zero()
    }

    pub fn one(&self) -> Coef {
        Coef::one()
    }

    pub fn from_i64(&self, v: i64) -> Coef {
        self.normalize(Coef::from_integer(BigInt::from(v)))
    }

    /// Brings an arbitrary rational into canonical form for this field.
    /// Panics if a denominator is divisible by `p`.
    pub fn normalize(&self, c: Coef) -> Coef {
        match self {
            CoeffField::Rationals => c,
            CoeffField::Prime(p) => {
                if c.is_integer() && !c.is_negative() && c.numer() < &BigInt::from(*p) {
                    return c;
                }
                let pb = BigInt::from(*p);
                let num = c.numer().mod_floor(&pb).to_u64().unwrap();
                let den = c.denom().mod_floor(&pb).to_u64().unwrap();
                assert!(den != 0, "denominator vanishes modulo {p}");
                let v = (num as u128 * mod_inverse(den, *p) as u128 % *p as u128) as u64;
                Coef::from_integer(BigInt::from(v))
            }
        }
    }

    pub fn add(&self, a: &Coef, b: &Coef) -> Coef {
        self.normalize(a + b)
    }

    pub fn sub(&self, a: &Coef, b: &Coef) -> Coef {
        self.normalize(a - b)
    }

    pub fn mul(&self, a: &Coef, b: &Coef) -> Coef {
        self.normalize(a * b)
    }

    pub fn neg(&self, a: &Coef) -> Coef {
        self.normalize(-a)
    }

    pub fn inv(&self, a: &Coef) -> Coef {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            CoeffField::Rationals => a.recip(),
            CoeffField::Prime(p) => {
                let v = a.numer().to_u64().unwrap();
                Coef::from_integer(BigInt::from(mod_inverse(v, *p)))
            }
        }
    }

    pub fn div(&self, a: &Coef, b: &Coef) -> Coef {
        self.mul(a, &self.inv(b))
    }

    /// Residue of a (normalized) coefficient as an element of `Z/p`, or
    /// `None` over the rationals.
    pub fn residue(&self, a: &Coef) -> Option<u64> {
        match self {
            CoeffField::Rationals => None,
            CoeffField::Prime(_) => a.numer().to_u64(),
        }
    }

    /// All field elements, for a prime field.
    pub fn elements(&self) -> Option<Vec<Coef>> {
        match self {
            CoeffField::Rationals => None,
            CoeffField::Prime(p) => Some((0..*p).map(|v| self.from_i64(v as i64)).collect()),
        }
    }

    pub fn pow(&self, a: &Coef, mut e: u64) -> Coef {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => write!(f, "QQ"),
            CoeffField::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    assert!(e.gcd == 1, "{a} is not invertible modulo {p}");
    e.x.rem_euclid(p as i128) as u64
}
