//! Exact commutative algebra over `Q` and `F_p`.

pub mod algebra;
pub mod elimination;
pub mod etale;
pub mod field;
pub mod finite_field;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod module;
pub mod order;
pub mod parse;
pub mod points;
pub mod poly;
pub mod ringmap;
pub mod tensor;

pub use algebra::{AlgebraSummary, PresentedAlgebra, INV_SUFFIX};
pub use elimination::{kernel_of_map, subalgebra_contains, subalgebra_express, GraphBasis};
pub use etale::{jacobian_etale_check, prime_avoidance};
pub use field::{Coef, CoeffField};
pub use finite_field::GaloisField;
pub use groebner::{groebner_basis, groebner_traced, normal_form, TracedBasis};
pub use ideal::{ideal_contains, Ideal};
pub use linalg::{AlgebraRing, PolyMatrix};
pub use module::{module_kernel, FpModule, ModVec, ModuleMap, SubmoduleBasis};
pub use order::MonomialOrder;
pub use parse::parse_poly;
pub use points::{rational_points, FqPoint};
pub use poly::{Monomial, Poly};
pub use ringmap::RingMap;
pub use tensor::{tensor, tensor_over, TensorProduct};
