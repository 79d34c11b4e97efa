mod common;

use std::sync::Arc;

use common::*;
use flatquot_core::abgrp::{matmul, smith_normal_form, Cardinality, FgAbGroup};
use flatquot_core::descent::{cocycle_check, descend, verify_effectivity, DescentDatum};
use flatquot_core::exactalg::FpModule;
use flatquot_core::flf::FiniteFreeAlgebra;
use flatquot_core::grading::{homogeneous_components, MGrading};
use flatquot_core::{CoeffField, Poly, PresentedAlgebra};
use proptest::prelude::*;

fn poly_from(a: &PresentedAlgebra, coeffs: &[i64]) -> Poly {
    // coefficients of 1, x, x^2, ... in the first variable, plus y-terms
    let mut f = a.zero();
    let mut m = a.one();
    for (i, &c) in coeffs.iter().enumerate() {
        let t = if i % 2 == 1 && a.nvars() > 1 { &m * &a.var(1) } else { m.clone() };
        f = &f + &(&t * &a.constant(c));
        m = &m * &a.var(0);
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_form_factors(rows in prop::collection::vec(prop::collection::vec(-6i64..=6, 3), 1..4)) {
        let s = smith_normal_form(&rows);
        prop_assert_eq!(matmul(&matmul(&s.u, &rows), &s.v), s.d.clone());
        prop_assert_eq!(matmul(&matmul(&s.u_inv, &s.d), &s.v_inv), rows);
        let diag: Vec<i64> = s.diagonal().into_iter().filter(|&x| x != 0).collect();
        for w in diag.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }

    #[test]
    fn finite_group_order(orders in prop::collection::vec(1i64..=8, 1..4)) {
        let g = FgAbGroup::from_cyclic_factors(&orders).0;
        prop_assert_eq!(g.order(), Cardinality::Finite(orders.iter().product::<i64>() as u64));
        prop_assert_eq!(g.elements().unwrap().len() as i64, orders.iter().product::<i64>());
    }

    #[test]
    fn quotient_ring_laws(f in prop::collection::vec(-4i64..=4, 1..5), g in prop::collection::vec(-4i64..=4, 1..5), h in prop::collection::vec(-4i64..=4, 1..5)) {
        let a = PresentedAlgebra::parse(CoeffField::Prime(7), &["x", "y"], &["x"], &["y^2 - x^3 - 1"]).unwrap();
        let b = budget();
        let (f, g, h) = (poly_from(&a, &f), poly_from(&a, &g), poly_from(&a, &h));
        let lhs = a.mul(&f, &(&g + &h), &b).unwrap();
        let rhs = &a.mul(&f, &g, &b).unwrap() + &a.mul(&f, &h, &b).unwrap();
        prop_assert!(a.eq_elems(&lhs, &rhs, &b).unwrap());
        prop_assert!(a.eq_elems(&a.mul(&f, &g, &b).unwrap(), &a.mul(&g, &f, &b).unwrap(), &b).unwrap());
        let x = a.var(0);
        prop_assert!(a.is_unit(&x, &b).unwrap());
    }

    #[test]
    fn norm_is_multiplicative(f in prop::collection::vec(-5i64..=5, 1..5), g in prop::collection::vec(-5i64..=5, 1..5)) {
        let b = budget();
        let base = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["u"]));
        let total = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["x"]));
        let ff = FiniteFreeAlgebra::new(base.clone(), total.clone(), vec![total.parse_elem("x^3 + x").unwrap()], None, &b).unwrap();
        let (f, g) = (poly_from(&total, &f), poly_from(&total, &g));
        let nfg = ff.norm(&total.mul(&f, &g, &b).unwrap(), &b).unwrap();
        let prod = base.mul(&ff.norm(&f, &b).unwrap(), &ff.norm(&g, &b).unwrap(), &b).unwrap();
        prop_assert!(base.eq_elems(&nfg, &prod, &b).unwrap());
        let tr = &ff.trace(&f, &b).unwrap() + &ff.trace(&g, &b).unwrap();
        prop_assert!(base.eq_elems(&ff.trace(&(&f + &g), &b).unwrap(), &tr, &b).unwrap());
    }

    #[test]
    fn components_sum_back(f in prop::collection::vec(-3i64..=3, 1..7)) {
        let a = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["x", "y"]));
        let z3 = FgAbGroup::cyclic(3);
        let g = MGrading::new(a.clone(), z3.clone(), vec![z3.generator(0), z3.scale(2, &z3.generator(0))]).unwrap();
        let f = poly_from(&a, &f);
        let parts = homogeneous_components(&g, &f);
        let mut sum = a.zero();
        for (deg, p) in &parts {
            prop_assert!(g.is_homogeneous(p));
            prop_assert_eq!(g.degree_of(p), Some(deg.clone()));
            sum = &sum + p;
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn scalar_twists_descend(c in 1i64..5, d in 0i64..5) {
        let b = budget();
        let ext = field_ext(CoeffField::Prime(5), 2);
        let bb = ext.cover().clone();
        let w = vec![vec![&bb.constant(c) + &(&bb.var(0) * &bb.constant(d))]];
        if let Ok(datum) = DescentDatum::twisted(ext.clone(), FpModule::free(bb.clone(), 1), &w, &b) {
            prop_assert!(cocycle_check(&datum, &b).unwrap());
            let desc = descend(&datum, &b).unwrap();
            prop_assert!(verify_effectivity(&datum, &desc, &b).unwrap());
        }
    }
}
