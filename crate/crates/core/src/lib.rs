// Checks written as `!(x > 0.0)` are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod linalg;
pub mod matrix;
pub mod affine;
pub mod gaussian;
pub mod fock;
pub mod random;
pub mod skin;
pub mod verify;
