//! Exact computations with spin groups over small finite fields.

pub mod chevalley;
pub mod edim;
pub mod error;
pub mod exactlin;
pub mod field;
pub mod premet;
pub mod spinrep;
pub mod stab;

pub use chevalley::{ChevalleyAlgebra, LatticeKind, RootSystem, RootSystemKind, RootVec};
pub use error::{Error, Result};
pub use exactlin::{FieldMatrix, IntMatrix, SnfResult};
pub use field::{Elem, Field, FieldSpec};
