//! Exact computations with flat quotients of affine schemes: Gröbner bases,
//! finitely generated abelian groups, diagonalizable and constant group
//! schemes, gradings, finite free algebras, faithfully flat descent and
//! quotients by finite flat equivalence relations.

pub mod abgrp;
pub mod budget;
pub mod descent;
pub mod error;
pub mod exactalg;
pub mod flf;
pub mod grading;
pub mod groups;
pub mod quotients;

pub use budget::Budget;
pub use error::{AlgError, Result};
pub use exactalg::{CoeffField, Ideal, Monomial, MonomialOrder, Poly, PresentedAlgebra, RingMap};
