use serde::{Deserialize, Serialize};

use super::algebra::ChevalleyAlgebra;
use super::roots::{RootSystem, RootSystemKind};
use crate::field::FieldSpec;

pub const ROOT_SYSTEM_SCHEMA: &str = "spinstab.root-system/1";
pub const ALGEBRA_SCHEMA: &str = "spinstab.chevalley-algebra/1";

/// JSON form of a root system. Roots are doubled-coordinate arrays in basis order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootSystemJson {
    pub schema: String,
    pub kind: RootSystemKind,
    pub rank: usize,
    pub roots: Vec<Vec<i32>>,
    pub simple: Vec<usize>,
    pub cartan: Vec<Vec<i32>>,
}

/// JSON form of an algebra. Constants are triples `(i, j, N)` over root indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub schema: String,
    pub root_system: RootSystemJson,
    pub lattice: String,
    pub field: FieldSpec,
    pub dim: usize,
    pub character_basis: Vec<Vec<i32>>,
    pub torus_basis: Vec<Vec<i32>>,
    pub constants: Vec<(usize, usize, i32)>,
}

impl From<&RootSystem> for RootSystemJson {
    fn from(rs: &RootSystem) -> Self {
        RootSystemJson {
            schema: ROOT_SYSTEM_SCHEMA.into(),
            kind: rs.kind(),
            rank: rs.rank(),
            roots: rs.roots().iter().map(|r| r.0.clone()).collect(),
            simple: rs.simple().to_vec(),
            cartan: rs.cartan().to_vec(),
        }
    }
}

impl From<&ChevalleyAlgebra> for AlgebraJson {
    fn from(alg: &ChevalleyAlgebra) -> Self {
        AlgebraJson {
            schema: ALGEBRA_SCHEMA.into(),
            root_system: alg.root_system().into(),
            lattice: alg.lattice().kind().tag().into(),
            field: alg.field().spec(),
            dim: alg.dim(),
            character_basis: alg.lattice().basis().iter().map(|r| r.0.clone()).collect(),
            torus_basis: alg
                .lattice()
                .cobasis()
                .iter()
                .map(|r| r.0.clone())
                .collect(),
            constants: alg.constants().triples(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::LatticeKind;
    use crate::field::Field;

    #[test]
    fn round_trip() {
        let alg = ChevalleyAlgebra::new(
            RootSystemKind::D(4),
            LatticeKind::SimplyConnected,
            &Field::prime(3).unwrap(),
        )
        .unwrap();
        let j = AlgebraJson::from(&alg);
        let text = serde_json::to_string(&j).unwrap();
        let back: AlgebraJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.root_system.roots.len(), 24);
        assert!(back.constants.iter().all(|&(_, _, n)| n == 1 || n == -1));
    }
}
