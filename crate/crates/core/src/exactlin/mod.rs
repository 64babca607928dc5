//! Exact linear algebra over small finite fields and over the integers.

mod intmat;
mod matrix;

pub use intmat::{row_lattice_basis, scaled_inverse, smith_normal_form, IntMatrix, SnfResult};
pub use matrix::{span_dim, FieldMatrix};
