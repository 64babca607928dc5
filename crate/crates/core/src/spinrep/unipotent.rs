use super::rep::Representation;
use crate::chevalley::RootVec;
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;

/// `ρ(e_α)` for a root of the ambient algebra, when `e_α` lies in the acting algebra.
pub fn root_element_matrix(rep: &Representation, alpha: &RootVec) -> Result<FieldMatrix> {
    let alg = rep.algebra();
    let i = alg
        .root_index(alpha)
        .ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
    let local = rep
        .from_ambient(&alg.basis_vector(i))?
        .ok_or_else(|| Error::Domain(format!("e_{alpha} is not in the acting algebra")))?;
    rep.element_matrix(&local)
}

/// `Π (1 + ρ(e_α))` over pairwise orthogonal roots, in characteristic 2.
pub fn unipotent_from_roots(rep: &Representation, roots: &[RootVec]) -> Result<FieldMatrix> {
    let field = rep.field();
    if field.characteristic() != 2 {
        return Err(Error::Unsupported(
            "root-element involutions are built in characteristic 2".into(),
        ));
    }
    for (i, a) in roots.iter().enumerate() {
        for b in &roots[i + 1..] {
            if a.dot4(b) != 0 {
                return Err(Error::NotOrthogonal);
            }
        }
    }
    let id = FieldMatrix::identity(field, rep.dim());
    let mut g = id.clone();
    for a in roots {
        g = g.mul(&id.add(&root_element_matrix(rep, a)?)?)?;
    }
    if g.mul(&g)?.to_rows() != id.to_rows() {
        return Err(Error::Verification(
            "product of root elements is not an involution".into(),
        ));
    }
    Ok(g)
}
