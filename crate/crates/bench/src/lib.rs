//! Benchmark fixtures.

use std::sync::Arc;

use flatquot_core::abgrp::FgAbGroup;
use flatquot_core::descent::RingExtension;
use flatquot_core::flf::FiniteFreeAlgebra;
use flatquot_core::grading::MGrading;
use flatquot_core::{Budget, CoeffField, PresentedAlgebra};

pub fn pgl2_grading() -> MGrading {
    let a = PresentedAlgebra::parse(CoeffField::Rationals, &["x11", "x12", "x21", "x22", "dinv"], &[], &["dinv*(x11*x22 - x12*x21) - 1"])
        .expect("valid presentation");
    let z = FgAbGroup::free(1);
    let one = z.generator(0);
    let degs = vec![one.clone(), one.clone(), one.clone(), one.clone(), z.scale(-2, &one)];
    MGrading::new(Arc::new(a), z, degs).expect("valid grading")
}

pub fn quadratic_extension(field: CoeffField, d: i64) -> Arc<RingExtension> {
    let k = Arc::new(PresentedAlgebra::base_field(field));
    Arc::new(RingExtension::adjoin(k, &["T"], &[&format!("T^2 - ({d})")], &Budget::default()).expect("valid extension"))
}

/// `k[x]` over `k[x^n + x]`.
pub fn polynomial_cover(n: u32) -> FiniteFreeAlgebra {
    let base = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["u"]));
    let total = Arc::new(PresentedAlgebra::polynomial_ring(CoeffField::Rationals, &["x"]));
    let img = total.parse_elem(&format!("x^{n} + x")).expect("valid element");
    FiniteFreeAlgebra::new(base, total, vec![img], None, &Budget::default()).expect("finite free")
}
