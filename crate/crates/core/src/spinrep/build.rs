use std::collections::HashMap;

use super::rep::{Representation, SparseMat};
use crate::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystemKind, RootVec};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::field::{Elem, Field};

/// Which half-spin module: `Even` has an even number of `-1/2` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

type ZMat = Vec<(u32, u32, i32)>;

fn zmul(a: &ZMat, b: &ZMat) -> HashMap<(u32, u32), i32> {
    let mut by_col: HashMap<u32, Vec<(u32, i32)>> = HashMap::new();
    for &(r, c, v) in a {
        by_col.entry(c).or_default().push((r, v));
    }
    let mut out = HashMap::new();
    for &(k, c, v) in b {
        if let Some(col) = by_col.get(&k) {
            for &(r, u) in col {
                *out.entry((r, c)).or_insert(0) += u * v;
            }
        }
    }
    out
}

fn zcommutator(a: &ZMat, b: &ZMat, scale: i32) -> ZMat {
    let mut ab = zmul(a, b);
    for (k, v) in zmul(b, a) {
        *ab.entry(k).or_insert(0) -= v;
    }
    let mut out: ZMat = ab
        .into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|((r, c), v)| (r, c, scale * v))
        .collect();
    out.sort_by_key(|&(r, c, _)| (c, r));
    out
}

fn reduce(field: &Field, m: &ZMat) -> SparseMat {
    let entries = m
        .iter()
        .map(|&(r, c, v)| (r, c, field.from_int(v as i64)))
        .filter(|&(_, _, v)| v != 0)
        .collect();
    SparseMat { entries }
}

/// Builds a representation over Z from operators for the simple root vectors
/// and their negatives, then reduces it into the algebra's field.
///
/// The negative generators are rescaled by ±1 so that `[X_α, X_{-α}] = ρ(h_α)`;
/// every other root operator is an iterated commutator.
fn from_simple_generators(
    alg: &ChevalleyAlgebra,
    weights: Vec<RootVec>,
    positive: Vec<ZMat>,
    negative: Vec<ZMat>,
    label: &str,
) -> Result<Representation> {
    let rs = alg.root_system();
    let dim = weights.len();
    let rank = alg.rank();
    let cobasis = alg.lattice().cobasis().to_vec();
    let mut torus: Vec<ZMat> = Vec::with_capacity(rank);
    for y in &cobasis {
        let mut m = Vec::new();
        for (i, mu) in weights.iter().enumerate() {
            let c = mu.inner(y).ok_or_else(|| {
                Error::InvalidLattice(format!("weight {mu} is not a character of this torus"))
            })?;
            if c != 0 {
                m.push((i as u32, i as u32, c as i32));
            }
        }
        torus.push(m);
    }
    let diag_of =
        |alpha: &RootVec| -> Vec<i64> { weights.iter().map(|mu| mu.dot4(alpha) / 4).collect() };
    let mut ops: Vec<Option<ZMat>> = vec![None; rs.len()];
    for (k, &s) in rs.simple().iter().enumerate() {
        let pos = positive[k].clone();
        let neg = negative[k].clone();
        let comm: HashMap<(u32, u32), i32> = zcommutator(&pos, &neg, 1)
            .into_iter()
            .map(|(r, c, v)| ((r, c), v))
            .collect();
        let target = diag_of(rs.root(s));
        let mut sign = 0;
        for (i, &t) in target.iter().enumerate() {
            let got = comm.get(&(i as u32, i as u32)).copied().unwrap_or(0) as i64;
            if t != 0 {
                let s = if got == t {
                    1
                } else if got == -t {
                    -1
                } else {
                    0
                };
                if s == 0 || (sign != 0 && s != sign) {
                    return Err(Error::Verification(
                        "simple generators do not close on the torus".into(),
                    ));
                }
                sign = s;
            }
        }
        if sign == 0 {
            return Err(Error::Verification("simple root acts trivially".into()));
        }
        ops[s] = Some(pos);
        ops[rs.negative_of(s)] = Some(neg.into_iter().map(|(r, c, v)| (r, c, sign * v)).collect());
    }
    let npos = rs.num_positive();
    for g in 0..npos {
        if ops[g].is_some() {
            continue;
        }
        let gamma = rs.root(g).clone();
        let (b, s) = rs
            .simple()
            .iter()
            .find_map(|&s| {
                let beta = gamma.sub(rs.root(s));
                rs.index_of(&beta)
                    .filter(|&b| rs.is_positive(b) && ops[b].is_some())
                    .map(|b| (b, s))
            })
            .ok_or_else(|| Error::Verification("root not reachable from simple roots".into()))?;
        // e_γ = N_{β,α} [e_β, e_α] and likewise for the negatives, since N = ±1.
        let n = rs.root(b).add(rs.root(s));
        debug_assert_eq!(n, gamma);
        let nb = alg.constants().get(b, s);
        ops[g] = Some(zcommutator(
            ops[b].as_ref().unwrap(),
            ops[s].as_ref().unwrap(),
            nb,
        ));
        let (nb_, ns_) = (rs.negative_of(b), rs.negative_of(s));
        let nn = alg.constants().get(nb_, ns_);
        ops[rs.negative_of(g)] = Some(zcommutator(
            ops[nb_].as_ref().unwrap(),
            ops[ns_].as_ref().unwrap(),
            nn,
        ));
    }
    let field = alg.field();
    let mut actions: Vec<SparseMat> = ops
        .iter()
        .map(|m| reduce(field, m.as_ref().unwrap()))
        .collect();
    actions.extend(torus.iter().map(|m| reduce(field, m)));
    Representation::from_parts(alg.clone(), None, dim, actions, weights, label)
}

fn d_rank(alg: &ChevalleyAlgebra) -> Result<usize> {
    match alg.root_system().kind() {
        RootSystemKind::D(r) => Ok(r),
        k => Err(Error::UnsupportedType(format!(
            "spin modules need type D, got {k}"
        ))),
    }
}

fn fermion_sign(mask: u32, i: usize) -> i32 {
    if (mask & ((1 << i) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `a_i^† a_j^†`, `a_j a_i` style operators on the exterior algebra, as words
/// applied right to left. `true` creates, `false` annihilates.
fn fermion_op(basis: &[u32], index: &HashMap<u32, usize>, word: &[(bool, usize)]) -> ZMat {
    let mut out = Vec::new();
    for (col, &mask) in basis.iter().enumerate() {
        let mut m = mask;
        let mut sign = 1;
        let mut alive = true;
        for &(create, i) in word.iter().rev() {
            let present = (m >> i) & 1 == 1;
            if create == present {
                alive = false;
                break;
            }
            sign *= fermion_sign(m, i);
            m ^= 1 << i;
        }
        if alive {
            if let Some(&row) = index.get(&m) {
                out.push((row as u32, col as u32, sign));
            }
        }
    }
    out.sort_by_key(|&(r, c, _)| (c, r));
    out
}

/// Weight of the exterior-algebra basis vector indexed by `mask`.
pub fn spinor_weight(r: usize, mask: u32) -> RootVec {
    RootVec(
        (0..r)
            .map(|i| if (mask >> i) & 1 == 1 { 1 } else { -1 })
            .collect(),
    )
}

/// Half-spin module of a type-D algebra in the exterior-algebra model.
pub fn halfspin_rep_on(alg: &ChevalleyAlgebra, parity: Parity) -> Result<Representation> {
    let r = d_rank(alg)?;
    let want_even = parity == Parity::Even;
    let basis: Vec<u32> = (0u32..1 << r)
        .filter(|m| (r as u32 - m.count_ones()).is_multiple_of(2) == want_even)
        .collect();
    let index: HashMap<u32, usize> = basis.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let weights = basis.iter().map(|&m| spinor_weight(r, m)).collect();
    let mut pos = Vec::with_capacity(r);
    let mut neg = Vec::with_capacity(r);
    for i in 0..r - 1 {
        pos.push(fermion_op(&basis, &index, &[(true, i), (false, i + 1)]));
        neg.push(fermion_op(&basis, &index, &[(true, i + 1), (false, i)]));
    }
    pos.push(fermion_op(&basis, &index, &[(true, r - 2), (true, r - 1)]));
    neg.push(fermion_op(
        &basis,
        &index,
        &[(false, r - 1), (false, r - 2)],
    ));
    let label = match parity {
        Parity::Even => "halfspin+",
        Parity::Odd => "halfspin-",
    };
    from_simple_generators(alg, weights, pos, neg, label)
}

/// Half-spin module of D_r over the given lattice and field.
pub fn halfspin_rep(
    r: usize,
    parity: Parity,
    lattice: LatticeKind,
    field: &Field,
) -> Result<Representation> {
    let alg = ChevalleyAlgebra::new(RootSystemKind::D(r), lattice, field)?;
    halfspin_rep_on(&alg, parity)
}

/// Index of `v_i` (i > 0) or `v_{-i}` (i < 0) in the basis `v_1..v_r, v_{-r}..v_{-1}`.
pub fn vector_index(r: usize, i: i32) -> usize {
    if i > 0 {
        (i - 1) as usize
    } else {
        2 * r - (-i) as usize
    }
}

/// Natural 2r-dimensional module of D_r; needs every `ε_i` to be a character.
pub fn vector_rep_on(alg: &ChevalleyAlgebra) -> Result<Representation> {
    let r = d_rank(alg)?;
    let idx = |i: i32| vector_index(r, i) as u32;
    let mut weights = vec![RootVec::zero(r); 2 * r];
    for i in 1..=r as i32 {
        let mut w = vec![0; r];
        w[(i - 1) as usize] = 2;
        weights[idx(i) as usize] = RootVec(w.clone());
        weights[idx(-i) as usize] = RootVec(w.iter().map(|x| -x).collect());
    }
    // E_{a,b} maps v_b to v_a.
    let e = |a: i32, b: i32, s: i32| (idx(a), idx(b), s);
    let minus = |i: i32, j: i32| vec![e(i, j, 1), e(-j, -i, -1)];
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for i in 1..r as i32 {
        pos.push(minus(i, i + 1));
        neg.push(minus(i + 1, i));
    }
    let (a, b) = (r as i32 - 1, r as i32);
    pos.push(vec![e(a, -b, 1), e(b, -a, -1)]);
    neg.push(vec![e(-b, a, 1), e(-a, b, -1)]);
    for m in pos.iter_mut().chain(neg.iter_mut()) {
        m.sort_by_key(|&(r, c, _)| (c, r));
    }
    from_simple_generators(alg, weights, pos, neg, "vector")
}

pub fn vector_rep(r: usize, field: &Field) -> Result<Representation> {
    let alg = ChevalleyAlgebra::new(RootSystemKind::D(r), LatticeKind::SimplyConnected, field)?;
    vector_rep_on(&alg)
}

/// Quadratic form `Σ x_i x_{-i}` on the vector module.
pub fn quadratic_value(field: &Field, r: usize, v: &[Elem]) -> Elem {
    (1..=r as i32).fold(0, |acc, i| {
        field.add(
            acc,
            field.mul(v[vector_index(r, i)], v[vector_index(r, -i)]),
        )
    })
}

/// The D8 subalgebra of E8 (torus and integral root vectors) acting by the
/// bracket on the span of the half-integral root vectors.
pub fn e8_restriction_halfspin(field: &Field) -> Result<Representation> {
    let e8 = ChevalleyAlgebra::new(RootSystemKind::E8, LatticeKind::Adjoint, field)?;
    let rs = e8.root_system().clone();
    let integral = |v: &RootVec| v.0.iter().all(|d| d % 2 == 0);
    let module: Vec<usize> = (0..rs.len()).filter(|&i| !integral(rs.root(i))).collect();
    let pos_in_module: HashMap<usize, usize> =
        module.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut sub: Vec<usize> = (0..rs.len()).filter(|&i| integral(rs.root(i))).collect();
    sub.extend((0..e8.rank()).map(|k| e8.torus_index(k)));
    let mut actions = Vec::with_capacity(sub.len());
    for &b in &sub {
        let mut entries = Vec::new();
        for (col, &m) in module.iter().enumerate() {
            for &(k, c) in e8.bracket_basis(b, m) {
                let row = *pos_in_module
                    .get(&(k as usize))
                    .ok_or_else(|| Error::Verification("module is not stable".into()))?;
                entries.push((row as u32, col as u32, c));
            }
        }
        entries.sort_by_key(|&(r, c, _)| (c, r));
        actions.push(SparseMat { entries });
    }
    let basis: Vec<Vec<Elem>> = sub.iter().map(|&b| e8.basis_vector(b)).collect();
    let weights = module.iter().map(|&i| rs.root(i).clone()).collect();
    Representation::from_parts(
        e8,
        Some(basis),
        module.len(),
        actions,
        weights,
        "e8-halfspin",
    )
}

/// Restriction of `rep` to the annihilator of `y` in the vector module.
///
/// Returns the annihilator basis (rows, ambient coordinates) and the restricted module.
pub fn b_type_subalgebra(
    rep: &Representation,
    y: &[Elem],
) -> Result<(FieldMatrix, Representation)> {
    if rep.subalgebra_basis().is_some() {
        return Err(Error::Unsupported(
            "B-type restriction needs a full type-D module".into(),
        ));
    }
    let alg = rep.algebra();
    let r = d_rank(alg)?;
    let field = alg.field();
    if y.len() != 2 * r {
        return Err(Error::Shape("vector has the wrong length".into()));
    }
    if quadratic_value(field, r, y) == 0 {
        return Err(Error::Isotropic);
    }
    let vec_rep = vector_rep_on(alg)?;
    let cols: Vec<Vec<Elem>> = (0..alg.dim()).map(|j| vec_rep.apply(j, y)).collect();
    let act = FieldMatrix::from_columns(field, 2 * r, &cols)?;
    let basis = act.kernel_basis();
    let rows = basis.to_rows();
    let actions = rows
        .iter()
        .map(|x| {
            let terms: Vec<(Elem, &SparseMat)> =
                x.iter().copied().zip(rep.actions().iter()).collect();
            SparseMat::combination(field, &terms)
        })
        .collect();
    let label = format!("{}|b", rep.label());
    let restricted = Representation::from_parts(
        alg.clone(),
        Some(rows),
        rep.dim(),
        actions,
        rep.weights().to_vec(),
        label,
    )?;
    Ok((basis, restricted))
}

/// The anisotropic vector `v_r + v_{-r}` used for the odd-n embeddings.
pub fn standard_anisotropic(r: usize) -> Vec<Elem> {
    let mut y = vec![0; 2 * r];
    y[vector_index(r, r as i32)] = 1;
    y[vector_index(r, -(r as i32))] = 1;
    y
}
