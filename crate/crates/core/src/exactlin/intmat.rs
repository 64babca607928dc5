use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {} (expected {cols})",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x.into();
            }
        }
        Ok(m)
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(diag: &[T]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: BigInt) {
        self.data[i * self.cols + j] = x;
    }

    /// Entry as i64; panics if it does not fit.
    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        i64::try_from(self.get(i, j)).expect("entry fits in i64")
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get_i64(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape("integer mul: inner dimensions differ".into()));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    out.data[i * other.cols + j] += v;
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        Ok(sign * &a[n * n - 1])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = f * &self.data[src * self.cols + j];
            self.data[dst * self.cols + j] += v;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = f * &self.data[i * self.cols + src];
            self.data[i * self.cols + dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

/// Smith normal form `left * A * right = diag(divisors)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnfResult {
    /// Nonzero elementary divisors in divisibility order, followed by zeros
    /// up to min(rows, cols).
    pub divisors: Vec<BigInt>,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }

    pub fn divisors_i64(&self) -> Vec<i64> {
        self.divisors
            .iter()
            .map(|d| i64::try_from(d).expect("divisor fits in i64"))
            .collect()
    }

    /// Order of the torsion part of the cokernel.
    pub fn torsion_order(&self) -> BigInt {
        self.divisors.iter().filter(|d| !d.is_zero()).product()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot choice: smallest nonzero absolute value in the remaining block,
/// ties broken by the first position in column order.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let steps = rows.min(cols);
    for t in 0..steps {
        loop {
            // pivot search
            let mut best: Option<(usize, usize)> = None;
            for j in t..cols {
                for i in t..rows {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if a.get(bi, bj).abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    a.add_row(i, t, &nq);
                    left.add_row(i, t, &nq);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    a.add_col(j, t, &nq);
                    right.add_col(j, t, &nq);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: pivot must divide the remaining block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    left.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            left.negate_row(t);
        }
    }
    let divisors = (0..steps).map(|i| a.get(i, i).clone()).collect();
    SnfResult {
        divisors,
        left,
        right,
    }
}

/// Basis (as rows) of the lattice spanned by the rows of `m`.
pub fn row_lattice_basis(m: &IntMatrix) -> Result<IntMatrix> {
    let snf = smith_normal_form(m);
    // left * m = diag * right^{-1}: its first `rank` rows span the row
    // lattice and the rest vanish.
    let lm = snf.left.mul(m)?;
    let r = snf.rank();
    let mut basis = IntMatrix::zeros(r, m.cols);
    for i in 0..r {
        for j in 0..m.cols {
            basis.set(i, j, lm.get(i, j).clone());
        }
    }
    Ok(basis)
}

/// Exact inverse of a square integer matrix, scaled: returns `(adj, det)`
/// with `m * adj = det * I`, reduced so that gcd(adj entries, det) = 1 and
/// det > 0.
pub fn scaled_inverse(m: &IntMatrix) -> Result<(IntMatrix, BigInt)> {
    if m.rows != m.cols {
        return Err(Error::Shape("inverse of a non-square matrix".into()));
    }
    let n = m.rows;
    let snf = smith_normal_form(m);
    if snf.rank() < n {
        return Err(Error::Singular);
    }
    // left * m * right = D  =>  m^{-1} = right * D^{-1} * left
    let l = snf.divisors.iter().fold(BigInt::one(), |acc, d| acc.lcm(d));
    let mut dinv = IntMatrix::zeros(n, n);
    for i in 0..n {
        dinv.set(i, i, &l / &snf.divisors[i]);
    }
    let mut adj = snf.right.mul(&dinv)?.mul(&snf.left)?;
    let mut det = l;
    let g = adj.data.iter().fold(det.clone(), |acc, x| acc.gcd(x));
    if !g.is_one() && !g.is_zero() {
        for x in adj.data.iter_mut() {
            *x = &*x / &g;
        }
        det /= g;
    }
    Ok((adj, det))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(m);
        let d = s.left.mul(m).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                if i == j {
                    assert_eq!(d.get(i, i), &s.divisors[i]);
                } else {
                    assert!(d.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(s.left.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.right.determinant().unwrap().abs(), BigInt::one());
        let nz: Vec<_> = s.divisors.iter().filter(|x| !x.is_zero()).collect();
        for w in nz.windows(2) {
            assert!(w[1].is_multiple_of(w[0]));
        }
        s
    }

    #[test]
    fn diag_divisors() {
        let s = check_snf(&IntMatrix::diagonal(&[2i64, 1, 6]));
        assert_eq!(s.divisors_i64(), vec![1, 2, 6]);
        let s = check_snf(&IntMatrix::identity(8));
        assert_eq!(s.divisors_i64(), vec![1; 8]);
    }

    #[test]
    fn rectangular_and_singular() {
        let m =
            IntMatrix::from_rows(&[vec![2i64, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]).unwrap();
        let s = check_snf(&m);
        assert_eq!(s.divisors_i64(), vec![2, 6, 12]);
        let m = IntMatrix::from_rows(&[vec![1i64, 2], vec![2, 4], vec![3, 6]]).unwrap();
        let s = check_snf(&m);
        assert_eq!(s.divisors_i64(), vec![1, 0]);
    }

    #[test]
    fn determinant_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2i64, 1], vec![1, 1]]).unwrap();
        assert_eq!(m.determinant().unwrap(), BigInt::from(1));
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 4]]).unwrap();
        let (adj, det) = scaled_inverse(&m).unwrap();
        assert_eq!(det, BigInt::from(4));
        assert_eq!(m.mul(&adj).unwrap(), IntMatrix::diagonal(&[4i64, 4]));
    }

    #[test]
    fn lattice_basis_of_redundant_generators() {
        let m = IntMatrix::from_rows(&[vec![2i64, 0], vec![0, 2], vec![1, 1], vec![3, 3]]).unwrap();
        let b = row_lattice_basis(&m).unwrap();
        assert_eq!(b.rows(), 2);
        assert_eq!(b.determinant().unwrap().abs(), BigInt::from(2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn snf_reconstructs(entries in proptest::collection::vec(-4i64..=4, 20), rows in 1usize..=4) {
                let cols = 20 / rows.max(1);
                let cols = cols.min(5);
                let data: Vec<Vec<i64>> = (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect();
                let m = IntMatrix::from_rows(&data).unwrap();
                check_snf(&m);
            }
        }
    }
}
