//! Small Galois fields `GF(p^k)` with log/antilog tables. Elements are
//! encoded as integers `Σ c_i p^i` in `[0, q)`.

use crate::error::{AlgError, Result};

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

const MAX_Q: u32 = 1 << 16;

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl GaloisField {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_Q as u64 {
            return Err(AlgError::InvalidInput(format!("field size {q} exceeds {MAX_Q}")));
        }
        let q = q as u32;
        let (p, k) = prime_power(q).ok_or_else(|| AlgError::InvalidInput(format!("{q} is not a prime power")))?;
        // search monic polynomials of degree k for one with a primitive root x
        for tail in 0..q {
            let mut modulus: Vec<u32> = (0..k).map(|i| tail / p.pow(i) % p).collect();
            modulus.push(1);
            if k > 1 && modulus[0] == 0 {
                continue;
            }
            let mut f = GaloisField { p, k, q, modulus, exp: vec![], log: vec![] };
            if f.build_tables() {
                return Ok(f);
            }
        }
        Err(AlgError::InvariantFailure(format!("no primitive polynomial found for GF({q})")))
    }

    fn digits(&self, a: u32) -> Vec<u32> {
        (0..self.k).map(|i| a / self.p.pow(i) % self.p).collect()
    }

    fn encode(&self, d: &[u32]) -> u32 {
        d.iter().enumerate().map(|(i, &c)| c * self.p.pow(i as u32)).sum()
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let mut prod = vec![0u32; 2 * k];
        for i in 0..k {
            for j in 0..k {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for i in 0..=k {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + self.p * self.p - c * self.modulus[i] % self.p) % self.p;
            }
        }
        self.encode(&prod[..k])
    }

    fn build_tables(&mut self) -> bool {
        let g = if self.k == 1 { None } else { Some(self.p) };
        // try each candidate generator
        let candidates: Vec<u32> = match g {
            Some(x) => vec![x],
            None => (2..self.q).collect(),
        };
        let candidates = if self.q == 2 { vec![1] } else { candidates };
        for g in candidates {
            let mut exp = Vec::with_capacity(self.q as usize);
            let mut log = vec![u32::MAX; self.q as usize];
            let mut cur = 1u32;
            let mut ok = true;
            for e in 0..self.q - 1 {
                if log[cur as usize] != u32::MAX {
                    ok = false;
                    break;
                }
                log[cur as usize] = e;
                exp.push(cur);
                cur = self.mul_slow(cur, g);
            }
            if ok && cur == 1 {
                self.exp = exp;
                self.log = log;
                return true;
            }
        }
        false
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.encode(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in GF({})", self.q);
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// Image of an integer residue of the prime subfield.
    pub fn from_prime(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for q in [2u64, 3, 4, 5, 8, 9, 25, 27] {
            let f = GaloisField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                // Frobenius fixes exactly the prime field elements
                assert_eq!(f.pow(a, q), a);
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(GaloisField::new(6).is_err());
        assert!(GaloisField::new(1).is_err());
    }
}
