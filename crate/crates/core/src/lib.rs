//! Exact computational algebra over finite fields: module families for
//! small group algebras and Nakayama algebras, their endomorphism algebras
//! via commutant solving, and machine-checkable classification of the four
//! symmetry conditions (quasi-Frobenius, Frobenius, weakly symmetric,
//! symmetric).

pub mod algebra;
pub mod classify;
pub mod dihedral;
pub mod gf;
pub mod linalg;
pub mod modules;
pub mod nakayama;
pub mod parse;
pub mod poly;
pub mod suites;

pub use gf::{Field, FieldSpec, Scalar};
pub use linalg::{Mat, Subspace};
