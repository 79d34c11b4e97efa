#![allow(dead_code)]

use std::sync::Arc;

use flatquot_core::descent::RingExtension;
use flatquot_core::exactalg::FpModule;
use flatquot_core::{Budget, CoeffField, Poly, PresentedAlgebra};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn budget() -> Budget {
    Budget::default()
}

pub fn field_ext(field: CoeffField, d: i64) -> Arc<RingExtension> {
    let k = Arc::new(PresentedAlgebra::base_field(field));
    Arc::new(RingExtension::adjoin(k, &["T"], &[&format!("T^2 - ({d})")], &budget()).unwrap())
}

pub fn root_ext(rel: &str) -> Arc<RingExtension> {
    let a = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["x"]));
    Arc::new(RingExtension::adjoin(a, &["T"], &[rel], &budget()).unwrap())
}

/// (extension, module over the base) pairs.
pub fn descent_corpus() -> Vec<(String, Arc<RingExtension>, FpModule)> {
    let b = budget();
    let mut out = Vec::new();
    for (label, ext) in [
        ("Q(sqrt 2)/Q", field_ext(CoeffField::Rationals, 2)),
        ("Q(i)/Q", field_ext(CoeffField::Rationals, -1)),
        ("F_5(sqrt 2)/F_5", field_ext(CoeffField::Prime(5), 2)),
    ] {
        for rank in [0, 1, 2] {
            out.push((format!("{label}, free of rank {rank}"), ext.clone(), FpModule::free(ext.base().clone(), rank)));
        }
    }
    for rel in ["T^2 - x", "T^3 - x - 1"] {
        let ext = root_ext(rel);
        let a = ext.base().clone();
        let x = a.var(0);
        let mods = [
            ("A", FpModule::free(a.clone(), 1)),
            ("A/(x)", FpModule::new(a.clone(), 1, vec![vec![x.clone()]], &b).unwrap()),
            ("A^2/(x, 0)", FpModule::new(a.clone(), 2, vec![vec![x.clone(), a.zero()]], &b).unwrap()),
            ("A/(x^2 - 1)", FpModule::new(a.clone(), 1, vec![vec![a.parse_elem("x^2 - 1").unwrap()]], &b).unwrap()),
            ("A^2/(x, -1 + x^2)", FpModule::new(a.clone(), 2, vec![vec![x.clone(), a.parse_elem("x^2 - 1").unwrap()]], &b).unwrap()),
        ];
        for (name, m) in mods {
            out.push((format!("{rel}: {name}"), ext.clone(), m));
        }
    }
    out
}

pub fn small_coef(rng: &mut ChaCha8Rng, field: CoeffField) -> i64 {
    match field {
        CoeffField::Prime(p) => rng.gen_range(0..p as i64),
        CoeffField::Rationals => rng.gen_range(-3..=3),
    }
}

/// Random polynomial of total degree at most `deg` in all internal variables.
pub fn random_elem(rng: &mut ChaCha8Rng, a: &PresentedAlgebra, deg: u32) -> Poly {
    let field = a.field();
    let n = a.nvars();
    let mut f = a.zero();
    for _ in 0..4 {
        let mut m = a.one();
        let d = rng.gen_range(0..=deg);
        for _ in 0..d {
            if n > 0 {
                m = &m * &a.var(rng.gen_range(0..n));
            }
        }
        let c = small_coef(rng, field);
        f = &f + &(&m * &a.constant(c));
    }
    f
}
