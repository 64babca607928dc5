//! Vector, spin and half-spin modules, with nilpotent, torus and unipotent element builders.

mod build;
pub mod io;
mod nilpotent;
mod rep;
mod torus;
mod unipotent;

pub use build::{
    b_type_subalgebra, e8_restriction_halfspin, halfspin_rep, halfspin_rep_on, quadratic_value,
    spinor_weight, standard_anisotropic, vector_index, vector_rep, vector_rep_on, Parity,
};
pub use nilpotent::{jordan_type, nilpotent_from_partition, nilpotent_matrix, Partition};
pub use rep::{direct_sum, Representation, SparseMat};
pub use torus::{
    is_noncentral, torus_classes, torus_fixed_dim, torus_max_eigenspace, triality_torus_image,
    ExponentVector, TrialityImage,
};
pub use unipotent::{root_element_matrix, unipotent_from_roots};
