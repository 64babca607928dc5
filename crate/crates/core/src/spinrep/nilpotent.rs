use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::build::{vector_index, vector_rep_on};
use crate::chevalley::{ChevalleyAlgebra, RootSystemKind};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::field::{Elem, Field};

/// A partition, parts weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// A partition of an orthogonal Lie algebra: even parts occur an even number of times.
    pub fn orthogonal(parts: Vec<usize>) -> Result<Self> {
        let p = Self::new(parts)?;
        for (k, m) in p.multiplicities() {
            if k % 2 == 0 && m % 2 != 0 {
                return Err(Error::InvalidPartition(format!(
                    "even part {k} has odd multiplicity {m}"
                )));
            }
        }
        Ok(p)
    }

    /// Appends parts of size 1 until the total is `n`.
    pub fn padded(&self, n: usize) -> Result<Self> {
        let total = self.total();
        if total > n {
            return Err(Error::InvalidPartition(format!(
                "partition of {total} exceeds {n}"
            )));
        }
        let mut parts = self.0.clone();
        parts.extend(std::iter::repeat_n(1, n - total));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(part, multiplicity)` in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &k in &self.0 {
            match out.last_mut() {
                Some((last, m)) if *last == k => *m += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .multiplicities()
            .into_iter()
            .map(|(k, m)| {
                if m == 1 {
                    k.to_string()
                } else {
                    format!("{k}^{m}")
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `2,2,2,2,1x8`, `2^4,1^8` or `(3,2^4,1^5)`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut parts = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, m) = match tok.split_once(['x', '^']) {
                Some((k, m)) => (k, m),
                None => (tok, "1"),
            };
            let bad = || Error::InvalidPartition(format!("cannot parse {tok:?}"));
            let k: usize = k.trim().parse().map_err(|_| bad())?;
            let m: usize = m.trim().parse().map_err(|_| bad())?;
            parts.extend(std::iter::repeat_n(k, m));
        }
        Partition::new(parts)
    }
}

/// Jordan type of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(m: &FieldMatrix) -> Result<Partition> {
    if m.rows() != m.cols() {
        return Err(Error::Shape("Jordan type needs a square matrix".into()));
    }
    let d = m.rows();
    let mut ranks = vec![d];
    let mut power = FieldMatrix::identity(m.field(), d);
    while *ranks.last().unwrap() > 0 {
        power = power.mul(m)?;
        let r = power.rank();
        if r == *ranks.last().unwrap() {
            return Err(Error::NotNilpotent);
        }
        ranks.push(r);
    }
    // #blocks of size >= k is ranks[k-1] - ranks[k].
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 1..=at_least.len() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k, exact));
    }
    Partition::new(parts)
}

struct Model {
    /// Images of model basis vectors in the 2r-space, as columns.
    images: Vec<Vec<Elem>>,
    /// `x` on the model basis: `x c_i = Σ coeff · c_j`.
    action: Vec<Vec<(usize, Elem)>>,
}

/// Nilpotent of Jordan type `λ` in the matrix model of so_{2r}, on the basis
/// `v_1..v_r, v_{-r}..v_{-1}`. For odd `n = 2r - 1` it kills the complement
/// of the embedded n-space.
pub fn nilpotent_matrix(field: &Field, r: usize, lambda: &Partition) -> Result<FieldMatrix> {
    let p = field.characteristic();
    if p == 2 {
        return Err(Error::Unsupported(
            "partition nilpotents need odd characteristic".into(),
        ));
    }
    let n = lambda.total();
    if n != 2 * r && n + 1 != 2 * r {
        return Err(Error::InvalidPartition(format!(
            "partition of {n} does not fit so_{}",
            2 * r
        )));
    }
    let dim = 2 * r;
    let half = field.inv(2)?;
    let neg1 = field.neg(1);
    let mut model = Model {
        images: Vec::new(),
        action: Vec::new(),
    };
    let mut next_pair = 1i32;
    let unit = |i: i32, c: Elem| {
        let mut v = vec![0; dim];
        v[vector_index(r, i)] = c;
        v
    };
    let mut middles: Vec<(usize, usize)> = Vec::new(); // (first model index, size) of leftover odd blocks
    for (k, m) in lambda.multiplicities() {
        for _ in 0..m / 2 {
            // a_1..a_k, b_1..b_k with x a_i = a_{i+1}, x b_j = -b_{j-1}.
            let base = model.images.len();
            for i in 0..k {
                model.images.push(unit(next_pair + i as i32, 1));
            }
            for i in 0..k {
                model.images.push(unit(-(next_pair + i as i32), 1));
            }
            for i in 0..k {
                model.action.push(if i + 1 < k {
                    vec![(base + i + 1, 1)]
                } else {
                    vec![]
                });
            }
            for j in 0..k {
                model.action.push(if j > 0 {
                    vec![(base + k + j - 1, neg1)]
                } else {
                    vec![]
                });
            }
            next_pair += k as i32;
        }
        if m % 2 == 1 {
            middles.push((model.images.len(), k));
            model.images.extend(std::iter::repeat_n(vec![], k));
            model.action.extend(std::iter::repeat_n(vec![], k));
        }
    }
    // Leftover odd blocks c_0..c_{2m} with B(c_i, c_j) = κ(-1)^i δ_{i+j,2m}; the
    // middle norms κ(-1)^m alternate and end with +1, so they pair hyperbolically.
    let count = middles.len();
    let mut middle_images: Vec<Vec<Elem>> = Vec::new();
    for t in 0..count {
        let nu: i64 = if (count - 1 - t).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let paired_last = t == count - 1 && count % 2 == 1;
        let img = if paired_last {
            let mut v = unit(r as i32, 1);
            v[vector_index(r, -(r as i32))] = half;
            v
        } else {
            let h = next_pair + (t / 2) as i32;
            let mut v = unit(h, half);
            v[vector_index(r, -h)] = if nu == 1 { 1 } else { neg1 };
            v
        };
        middle_images.push(img);
    }
    next_pair += (count / 2) as i32;
    for (t, &(base, size)) in middles.iter().enumerate() {
        let m = (size - 1) / 2;
        let nu: i64 = if (count - 1 - t).is_multiple_of(2) {
            1
        } else {
            -1
        };
        let kappa = nu * if m % 2 == 0 { 1 } else { -1 };
        for i in 0..m {
            let h = next_pair + i as i32;
            let s = kappa * if i % 2 == 0 { 1 } else { -1 };
            model.images[base + i] = unit(h, 1);
            model.images[base + size - 1 - i] = unit(-h, field.from_int(s));
        }
        model.images[base + m] = middle_images[t].clone();
        for i in 0..size {
            model.action[base + i] = if i + 1 < size {
                vec![(base + i + 1, 1)]
            } else {
                vec![]
            };
        }
        next_pair += m as i32;
    }
    let expected_pairs = if n == dim { r } else { r - 1 };
    if (next_pair - 1) as usize != expected_pairs {
        return Err(Error::Verification(
            "hyperbolic decomposition has the wrong size".into(),
        ));
    }
    let mut cols = model.images.clone();
    let mut targets: Vec<Vec<Elem>> = model
        .action
        .iter()
        .map(|terms| {
            let mut v = vec![0; dim];
            for &(j, c) in terms {
                for (o, &x) in v.iter_mut().zip(&model.images[j]) {
                    *o = field.add(*o, field.mul(c, x));
                }
            }
            v
        })
        .collect();
    if n < dim {
        let mut z = unit(r as i32, 1);
        z[vector_index(r, -(r as i32))] = field.neg(half);
        cols.push(z);
        targets.push(vec![0; dim]);
    }
    // N P = T, so N = T P^{-1}; solve P^T N^T = T^T row by row.
    let pt = FieldMatrix::from_rows(field, dim, &cols)?;
    let t = FieldMatrix::from_columns(field, dim, &targets)?;
    let mut rows = Vec::with_capacity(dim);
    for i in 0..dim {
        let row = pt.solve(&t.row(i))?.ok_or(Error::Singular)?;
        rows.push(row);
    }
    FieldMatrix::from_rows(field, dim, &rows)
}

/// Nilpotent element of Jordan type `λ` in a type-D algebra over an odd prime field,
/// in Chevalley coordinates.
pub fn nilpotent_from_partition(alg: &ChevalleyAlgebra, lambda: &Partition) -> Result<Vec<Elem>> {
    let r = match alg.root_system().kind() {
        RootSystemKind::D(r) => r,
        k => return Err(Error::UnsupportedType(format!("{k}"))),
    };
    let lambda = Partition::orthogonal(lambda.parts().to_vec())?;
    let field = alg.field();
    let n_mat = nilpotent_matrix(field, r, &lambda)?;
    let vec_rep = vector_rep_on(alg)?;
    let dim = 2 * r;
    let cols: Vec<Vec<Elem>> = (0..alg.dim())
        .map(|j| vec_rep.matrix(j).to_rows().concat())
        .collect();
    let sys = FieldMatrix::from_columns(field, dim * dim, &cols)?;
    let x = sys
        .solve(&n_mat.to_rows().concat())?
        .ok_or_else(|| Error::Verification("matrix is not in the image of the algebra".into()))?;
    let mut expect = lambda.parts().to_vec();
    if lambda.total() < dim {
        expect.push(1);
    }
    if jordan_type(&vec_rep.element_matrix(&x)?)? != Partition::new(expect)? {
        return Err(Error::Verification(
            "Jordan type changed under transfer".into(),
        ));
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::LatticeKind;
    use crate::spinrep::{halfspin_rep_on, Parity};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn jordan_block(field: &Field, k: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, k, k);
        for i in 0..k.saturating_sub(1) {
            m.set(i + 1, i, 1);
        }
        m
    }

    fn brute_jordan(m: &FieldMatrix) -> Vec<usize> {
        // dim ker(m^k) for all k, straight from kernel bases.
        let d = m.rows();
        let mut kers = vec![0];
        let mut p = FieldMatrix::identity(m.field(), d);
        for _ in 0..d {
            p = p.mul(m).unwrap();
            kers.push(p.kernel_basis().rows());
        }
        let mut parts = Vec::new();
        for k in 1..=d {
            let ge_k = kers[k] - kers[k - 1];
            let ge_k1 = if k < d { kers[k + 1] - kers[k] } else { 0 };
            parts.extend(std::iter::repeat_n(k, ge_k - ge_k1));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "2,2,2,2,1x8".parse().unwrap();
        assert_eq!(p.total(), 16);
        assert_eq!(p.to_string(), "(2^4,1^8)");
        assert_eq!(
            "(3,2^4,1^5)".parse::<Partition>().unwrap().to_string(),
            "(3,2^4,1^5)"
        );
        assert!(Partition::orthogonal(vec![2, 1]).is_err());
        assert!(Partition::new(vec![0]).is_err());
    }

    #[test]
    fn trivial_jordan_types() {
        let f = Field::prime(5).unwrap();
        assert_eq!(
            jordan_type(&FieldMatrix::zeros(&f, 4, 4)).unwrap().parts(),
            &[1, 1, 1, 1]
        );
        assert_eq!(jordan_type(&jordan_block(&f, 5)).unwrap().parts(), &[5]);
        assert!(matches!(
            jordan_type(&FieldMatrix::identity(&f, 3)),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn jordan_matches_kernel_oracle() {
        let f = Field::prime(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            // Conjugate a random block-diagonal nilpotent by a random invertible matrix.
            let mut parts = Vec::new();
            let mut left = rng.gen_range(1..12);
            while left > 0 {
                let k = rng.gen_range(1..=left);
                parts.push(k);
                left -= k;
            }
            let d: usize = parts.iter().sum();
            let mut n = FieldMatrix::zeros(&f, d, d);
            let mut off = 0;
            for &k in &parts {
                for i in 0..k - 1 {
                    n.set(off + i + 1, off + i, 1);
                }
                off += k;
            }
            let g = loop {
                let g = FieldMatrix::random(&f, d, d, &mut rng);
                if g.rank() == d {
                    break g;
                }
            };
            let ginv_rows: Vec<Vec<Elem>> = (0..d)
                .map(|i| {
                    let mut e = vec![0; d];
                    e[i] = 1;
                    g.solve(&e).unwrap().unwrap()
                })
                .collect();
            let ginv = FieldMatrix::from_columns(&f, d, &ginv_rows).unwrap();
            let m = g.mul(&n).unwrap().mul(&ginv).unwrap();
            let jt = jordan_type(&m).unwrap();
            assert_eq!(jt.parts(), brute_jordan(&m).as_slice());
            assert_eq!(jt, Partition::new(parts).unwrap());
        }
    }

    #[test]
    fn model_nilpotents_are_skew() {
        let f = Field::prime(7).unwrap();
        for (r, s) in [
            (5, "2^4,1"),
            (5, "2^2,1^5"),
            (4, "3,1^5"),
            (4, "3^2,1^2"),
            (5, "5,3,1"),
            (9, "2^4,1^10"),
            (4, "4^2"),
        ] {
            let lambda: Partition = s.parse().unwrap();
            let n = nilpotent_matrix(&f, r, &lambda).unwrap();
            // S N^T S = -N with S antidiagonal in the v_1..v_r, v_{-r}..v_{-1} basis.
            let d = 2 * r;
            for i in 0..d {
                for j in 0..d {
                    assert_eq!(n.get(d - 1 - j, d - 1 - i), f.neg(n.get(i, j)), "{s}");
                }
            }
            let mut expect = lambda.parts().to_vec();
            if lambda.total() < d {
                expect.push(1);
            }
            assert_eq!(jordan_type(&n).unwrap(), Partition::new(expect).unwrap());
        }
    }

    #[test]
    fn killing_form_matches_trace_form() {
        let f = Field::prime(7).unwrap();
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(4), LatticeKind::SimplyConnected, &f).unwrap();
        let vec = vector_rep_on(&alg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let trace = |m: &FieldMatrix| (0..m.rows()).fold(0, |a, i| f.add(a, m.get(i, i)));
        for _ in 0..10 {
            let x: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
            let y: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
            let kil = trace(
                &alg.ad_matrix(&x)
                    .unwrap()
                    .mul(&alg.ad_matrix(&y).unwrap())
                    .unwrap(),
            );
            let tr = trace(
                &vec.element_matrix(&x)
                    .unwrap()
                    .mul(&vec.element_matrix(&y).unwrap())
                    .unwrap(),
            );
            assert_eq!(kil, f.mul(f.from_int(6), tr));
        }
    }

    #[test]
    fn spin_jordan_types_so9() {
        let f = Field::prime(7).unwrap();
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(5), LatticeKind::SimplyConnected, &f).unwrap();
        let spin = halfspin_rep_on(&alg, Parity::Even).unwrap();
        let x = nilpotent_from_partition(&alg, &"2^4,1".parse().unwrap()).unwrap();
        assert_eq!(
            jordan_type(&spin.element_matrix(&x).unwrap())
                .unwrap()
                .to_string(),
            "(3,2^4,1^5)"
        );
        let x = nilpotent_from_partition(&alg, &"2^2,1^5".parse().unwrap()).unwrap();
        assert_eq!(
            jordan_type(&spin.element_matrix(&x).unwrap())
                .unwrap()
                .to_string(),
            "(2^4,1^8)"
        );
    }
}
