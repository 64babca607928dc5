//! Infinitesimal stabilizers, fixed spaces and seeded generic-stabilizer searches.

mod report;
mod targets;

pub use report::{
    decode_witness, encode_witness, search_generic_stab, verify_witness, RngInfo, SearchOptions,
    StabilizerReport, RNG_ALGORITHM, STAB_REPORT_SCHEMA,
};
pub use targets::{
    build_rep, certification_targets, certify, certify_with, field_ladder, group_name,
    odd_characteristic_targets, small_n_targets, verify_targets, Certification, GroupSpec, Isogeny,
    RepSpec, Target, TargetOutcome,
};

use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::field::Elem;
use crate::spinrep::Representation;

/// The map `x ↦ ρ(x) v` as a `dim V × dim g` matrix.
pub fn action_matrix(rep: &Representation, v: &[Elem]) -> Result<FieldMatrix> {
    if v.len() != rep.dim() {
        return Err(Error::Shape("module vector has the wrong length".into()));
    }
    let cols: Vec<Vec<Elem>> = (0..rep.algebra_dim()).map(|j| rep.apply(j, v)).collect();
    FieldMatrix::from_columns(rep.field(), rep.dim(), &cols)
}

/// `dim g_v = dim g − rank(x ↦ ρ(x) v)`.
pub fn stab_dim(rep: &Representation, v: &[Elem]) -> Result<usize> {
    Ok(rep.algebra_dim() - action_matrix(rep, v)?.rank())
}

/// Basis (rows, algebra coordinates) of the infinitesimal stabilizer.
pub fn stab_basis(rep: &Representation, v: &[Elem]) -> Result<FieldMatrix> {
    Ok(action_matrix(rep, v)?.kernel_basis())
}

/// `dim ker ρ(x)`.
pub fn fixed_space_dim(rep: &Representation, x: &[Elem]) -> Result<usize> {
    let m = rep.element_matrix(x)?;
    Ok(rep.dim() - m.rank())
}

/// `dim ker(g − 1)` for an invertible matrix.
pub fn group_fixed_dim(g: &FieldMatrix) -> Result<usize> {
    if g.rows() != g.cols() {
        return Err(Error::Shape("group element must be square".into()));
    }
    if g.rank() != g.rows() {
        return Err(Error::Singular);
    }
    let id = FieldMatrix::identity(g.field(), g.rows());
    Ok(g.rows() - g.sub(&id)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystemKind};
    use crate::field::Field;
    use crate::spinrep::{halfspin_rep, halfspin_rep_on, unipotent_from_roots, Parity};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trivial_cases() {
        let f = Field::prime(2).unwrap();
        let rep = halfspin_rep(4, Parity::Even, LatticeKind::SimplyConnected, &f).unwrap();
        let zero = vec![0; rep.dim()];
        assert!(action_matrix(&rep, &zero).unwrap().is_zero());
        assert_eq!(stab_dim(&rep, &zero).unwrap(), rep.algebra_dim());
        assert_eq!(
            fixed_space_dim(&rep, &vec![0; rep.algebra_dim()]).unwrap(),
            rep.dim()
        );
        assert!(matches!(
            group_fixed_dim(&FieldMatrix::zeros(&f, 2, 2)),
            Err(Error::Singular)
        ));
    }

    #[test]
    fn weight_vector_brute_force() {
        // Root vectors move a weight vector to distinct weights and the torus
        // scales it, so the rank is a count of nonzero images.
        let f = Field::prime(2).unwrap();
        let rep = halfspin_rep(4, Parity::Even, LatticeKind::SimplyConnected, &f).unwrap();
        let nr = rep.algebra().num_roots();
        for k in 0..rep.dim() {
            let mut v = vec![0; rep.dim()];
            v[k] = 1;
            let nonzero = |j: usize| rep.apply(j, &v).iter().any(|&c| c != 0);
            let moved = (0..nr).filter(|&j| nonzero(j)).count();
            let scaled = (nr..rep.algebra_dim()).any(nonzero) as usize;
            assert_eq!(
                stab_dim(&rep, &v).unwrap(),
                rep.algebra_dim() - moved - scaled
            );
        }
    }

    #[test]
    fn long_root_fixed_space_d9() {
        let f = Field::prime(2).unwrap();
        let rep = halfspin_rep(9, Parity::Even, LatticeKind::SimplyConnected, &f).unwrap();
        let alpha = crate::chevalley::RootVec::from_integer(&[1, 1, 0, 0, 0, 0, 0, 0, 0]);
        let i = rep.algebra().root_index(&alpha).unwrap();
        assert_eq!(fixed_space_dim(&rep, &rep.basis_element(i)).unwrap(), 192);
        let g = unipotent_from_roots(&rep, &[alpha]).unwrap();
        assert_eq!(group_fixed_dim(&g).unwrap(), 192);
    }

    #[test]
    fn stab_dim_is_conjugation_invariant() {
        let f = Field::prime(2).unwrap();
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(6), LatticeKind::SimplyConnected, &f).unwrap();
        let rep = halfspin_rep_on(&alg, Parity::Even).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let rs = alg.root_system().clone();
        for t in 0..50 {
            let v: Vec<Elem> = (0..rep.dim()).map(|_| f.random(&mut rng)).collect();
            let alpha = rs.root(t % rs.len()).clone();
            let g = unipotent_from_roots(&rep, &[alpha]).unwrap();
            let gv = g.mul_vec(&v).unwrap();
            assert_eq!(stab_dim(&rep, &v).unwrap(), stab_dim(&rep, &gv).unwrap());
        }
    }
}
