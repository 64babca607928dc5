use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::roots::{RootSystem, RootSystemKind, RootVec};
use crate::error::{Error, Result};
use crate::exactlin::{row_lattice_basis, scaled_inverse, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeKind {
    SimplyConnected,
    HalfSpin,
    Adjoint,
}

impl LatticeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            LatticeKind::SimplyConnected => "simply-connected",
            LatticeKind::HalfSpin => "half-spin",
            LatticeKind::Adjoint => "adjoint",
        }
    }
}

impl fmt::Display for LatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simply-connected" | "sc" | "spin" => Ok(LatticeKind::SimplyConnected),
            "half-spin" | "halfspin" | "hspin" => Ok(LatticeKind::HalfSpin),
            "adjoint" | "ad" => Ok(LatticeKind::Adjoint),
            _ => Err(Error::InvalidLattice(format!("unknown lattice tag {s:?}"))),
        }
    }
}

/// A character lattice X with ZΦ ⊆ X ⊆ P together with its dual Y.
///
/// Both bases are stored as rows of doubled coordinates. The bases are dual:
/// `(x_j | y_k) = δ_jk`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterLattice {
    kind: LatticeKind,
    basis: Vec<RootVec>,
    cobasis: Vec<RootVec>,
}

fn rows_of(m: &IntMatrix) -> Vec<RootVec> {
    m.to_i64_rows()
        .into_iter()
        .map(|r| RootVec(r.into_iter().map(|x| x as i32).collect()))
        .collect()
}

/// Dual basis (in doubled coordinates) of a full-rank lattice given in doubled coordinates.
pub fn dual_basis(basis: &[RootVec]) -> Result<Vec<RootVec>> {
    let m = IntMatrix::from_rows(&basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>())?;
    if m.rows() != m.cols() {
        return Err(Error::InvalidLattice("basis is not square".into()));
    }
    let (adj, det) = scaled_inverse(&m)?;
    if det.is_zero() {
        return Err(Error::InvalidLattice("basis is degenerate".into()));
    }
    // Doubled dual basis is 4 (D^{-1})^T.
    let n = m.rows();
    let mut out = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let num = adj.get(j, i) * BigInt::from(4);
            let (q, r) = num.div_rem(&det);
            if !r.is_zero() {
                return Err(Error::InvalidLattice(
                    "dual lattice is not half-integral".into(),
                ));
            }
            out.set(i, j, q);
        }
    }
    Ok(rows_of(&out))
}

/// Coordinates of `v` in a basis (rows, doubled coordinates), when integral.
pub fn coordinates(basis: &[RootVec], v: &RootVec) -> Option<Vec<i64>> {
    let m = IntMatrix::from_rows(&basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>()).ok()?;
    let (adj, det) = scaled_inverse(&m).ok()?;
    let n = m.rows();
    (0..n)
        .map(|j| {
            let s: BigInt = (0..n).map(|k| BigInt::from(v.0[k]) * adj.get(k, j)).sum();
            let (q, r) = s.div_rem(&det);
            if r.is_zero() {
                i64::try_from(&q).ok()
            } else {
                None
            }
        })
        .collect()
}

fn abs_det(rows: &[RootVec]) -> BigInt {
    IntMatrix::from_rows(&rows.iter().map(|b| b.0.clone()).collect::<Vec<_>>())
        .and_then(|m| m.determinant())
        .map(|d| d.abs())
        .unwrap_or_default()
}

impl CharacterLattice {
    pub fn new(rs: &RootSystem, kind: LatticeKind) -> Result<Self> {
        let simple = rs.simple_roots();
        let basis = match (rs.kind(), kind) {
            (_, LatticeKind::Adjoint) => simple,
            (_, LatticeKind::SimplyConnected) => dual_basis(&simple)?,
            (RootSystemKind::D(r), LatticeKind::HalfSpin) if r % 2 == 0 => {
                let mut gens: Vec<Vec<i32>> = simple.iter().map(|s| s.0.clone()).collect();
                gens.push(vec![1; r]);
                rows_of(&row_lattice_basis(&IntMatrix::from_rows(&gens)?)?)
            }
            (k, LatticeKind::HalfSpin) => {
                return Err(Error::InvalidLattice(format!(
                    "half-spin lattice is undefined for {k}"
                )));
            }
        };
        let cobasis = dual_basis(&basis)?;
        let lat = CharacterLattice {
            kind,
            basis,
            cobasis,
        };
        for root in rs.roots() {
            if lat.coordinates(root).is_none() {
                return Err(Error::InvalidLattice(format!("root {root} not in lattice")));
            }
        }
        Ok(lat)
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Basis of X in doubled coordinates.
    pub fn basis(&self) -> &[RootVec] {
        &self.basis
    }

    /// Basis of the cocharacter lattice Y = X^* in doubled coordinates.
    pub fn cobasis(&self) -> &[RootVec] {
        &self.cobasis
    }

    /// Coordinates of a weight in the X basis, if it lies in X.
    pub fn coordinates(&self, v: &RootVec) -> Option<Vec<i64>> {
        coordinates(&self.basis, v)
    }

    /// Coordinates of a vector in the Y basis, if it lies in Y.
    pub fn cocoordinates(&self, v: &RootVec) -> Option<Vec<i64>> {
        coordinates(&self.cobasis, v)
    }

    pub fn contains(&self, v: &RootVec) -> bool {
        self.coordinates(v).is_some()
    }

    /// Index [X : ZΦ].
    pub fn index_over_roots(&self, rs: &RootSystem) -> BigInt {
        abs_det(&rs.simple_roots()) / abs_det(&self.basis)
    }

    /// Gram matrix `(y_k | y_l)` of the cobasis, as quadruple values.
    pub fn cogram4(&self) -> Vec<Vec<i64>> {
        self.cobasis
            .iter()
            .map(|a| self.cobasis.iter().map(|b| a.dot4(b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::smith_normal_form;

    fn pairing_is_identity(lat: &CharacterLattice) {
        for (j, x) in lat.basis().iter().enumerate() {
            for (k, y) in lat.cobasis().iter().enumerate() {
                assert_eq!(x.dot4(y), if j == k { 4 } else { 0 });
            }
        }
    }

    #[test]
    fn d_lattice_indices() {
        for r in [4, 6, 8, 10] {
            let rs = RootSystem::new(RootSystemKind::D(r)).unwrap();
            let sc = CharacterLattice::new(&rs, LatticeKind::SimplyConnected).unwrap();
            let hs = CharacterLattice::new(&rs, LatticeKind::HalfSpin).unwrap();
            let ad = CharacterLattice::new(&rs, LatticeKind::Adjoint).unwrap();
            assert_eq!(sc.index_over_roots(&rs), BigInt::from(4));
            assert_eq!(hs.index_over_roots(&rs), BigInt::from(2));
            assert_eq!(ad.index_over_roots(&rs), BigInt::from(1));
            for l in [&sc, &hs, &ad] {
                pairing_is_identity(l);
            }
        }
    }

    #[test]
    fn center_order_from_snf() {
        // |P / ZΦ| from the elementary divisors of the simple roots written in the P basis.
        let rs = RootSystem::new(RootSystemKind::D(8)).unwrap();
        let sc = CharacterLattice::new(&rs, LatticeKind::SimplyConnected).unwrap();
        let rows: Vec<Vec<i64>> = rs
            .simple_roots()
            .iter()
            .map(|a| sc.coordinates(a).unwrap())
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows).unwrap());
        assert_eq!(snf.divisors_i64(), vec![1, 1, 1, 1, 1, 1, 2, 2]);
        let rs = RootSystem::new(RootSystemKind::D(7)).unwrap();
        let sc = CharacterLattice::new(&rs, LatticeKind::SimplyConnected).unwrap();
        let rows: Vec<Vec<i64>> = rs
            .simple_roots()
            .iter()
            .map(|a| sc.coordinates(a).unwrap())
            .collect();
        let snf = smith_normal_form(&IntMatrix::from_rows(&rows).unwrap());
        assert_eq!(snf.divisors_i64(), vec![1, 1, 1, 1, 1, 1, 4]);
    }

    #[test]
    fn e8_is_unimodular() {
        let rs = RootSystem::new(RootSystemKind::E8).unwrap();
        let sc = CharacterLattice::new(&rs, LatticeKind::SimplyConnected).unwrap();
        assert_eq!(sc.index_over_roots(&rs), BigInt::from(1));
        assert!(CharacterLattice::new(&rs, LatticeKind::HalfSpin).is_err());
        assert!(CharacterLattice::new(
            &RootSystem::new(RootSystemKind::D(5)).unwrap(),
            LatticeKind::HalfSpin
        )
        .is_err());
    }

    #[test]
    fn sc_cobasis_is_simple_coroots() {
        let rs = RootSystem::new(RootSystemKind::D(6)).unwrap();
        let sc = CharacterLattice::new(&rs, LatticeKind::SimplyConnected).unwrap();
        assert_eq!(sc.cobasis(), rs.simple_roots().as_slice());
    }
}
