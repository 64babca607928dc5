//! Root systems of type D and E8, Chevalley structure constants and the
//! resulting Lie algebras over finite fields.

mod algebra;
mod lattice;
mod roots;
mod serial;
mod weyl;

pub use algebra::{chevalley_constants, ChevalleyAlgebra, StructureConstants};
pub use lattice::{coordinates, dual_basis, CharacterLattice, LatticeKind};
pub use roots::{e8_simple_roots, RootSystem, RootSystemKind, RootVec};
pub use serial::{AlgebraJson, RootSystemJson, ALGEBRA_SCHEMA, ROOT_SYSTEM_SCHEMA};
pub use weyl::{weyl_group_elements, weyl_order, SignedPerm, WeylIter};
