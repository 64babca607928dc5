use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq)]
enum Storage {
    /// GF(2): one bit per entry, each row a run of `stride` words.
    Packed { stride: usize, words: Vec<u64> },
    /// Any other field: one byte per entry, row-major.
    Dense(Vec<Elem>),
}

/// Dense matrix over a small finite field.
///
/// Over GF(2) each row is stored as a contiguous run of 64-bit words; all
/// other fields store one canonical representative per entry.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    storage: Storage,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FieldMatrix {}x{} over {}",
            self.rows,
            self.cols,
            self.field.spec()
        )?;
        if self.rows <= 16 && self.cols <= 32 {
            for i in 0..self.rows {
                let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
                writeln!(f, "  [{}]", row.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Reduced row echelon form with its pivot columns.
struct Echelon {
    m: FieldMatrix,
    pivots: Vec<usize>,
}

impl FieldMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        let storage = if field.is_gf2() {
            let stride = cols.div_ceil(WORD);
            Storage::Packed {
                stride,
                words: vec![0; rows * stride],
            }
        } else {
            Storage::Dense(vec![0; rows * cols])
        };
        FieldMatrix {
            field: field.clone(),
            rows,
            cols,
            storage,
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {i} has length {} (expected {cols})",
                    r.len()
                )));
            }
            for (j, &x) in r.iter().enumerate() {
                if x as usize >= field.order() {
                    return Err(Error::Shape(format!(
                        "entry {x} is not a canonical field element"
                    )));
                }
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(field: &Field, rows: usize, columns: &[Vec<Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::Shape(format!("column {j} has length {}", c.len())));
            }
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        match &mut m.storage {
            Storage::Packed { stride, words } => {
                for i in 0..rows {
                    for w in 0..*stride {
                        let mut x: u64 = rng.gen();
                        if w == *stride - 1 && !cols.is_multiple_of(WORD) {
                            x &= (1u64 << (cols % WORD)) - 1;
                        }
                        words[i * *stride + w] = x;
                    }
                }
            }
            Storage::Dense(d) => {
                for x in d.iter_mut() {
                    *x = field.random(rng);
                }
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_packed(&self) -> bool {
        matches!(self.storage, Storage::Packed { .. })
    }

    /// Words of one packed row (GF(2) only).
    pub fn packed_row(&self, i: usize) -> Option<&[u64]> {
        match &self.storage {
            Storage::Packed { stride, words } => Some(&words[i * stride..(i + 1) * stride]),
            Storage::Dense(_) => None,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        debug_assert!(i < self.rows && j < self.cols);
        match &self.storage {
            Storage::Packed { stride, words } => {
                ((words[i * stride + j / WORD] >> (j % WORD)) & 1) as u8
            }
            Storage::Dense(d) => d[i * self.cols + j],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { stride, words } => {
                let w = &mut words[i * *stride + j / WORD];
                let bit = 1u64 << (j % WORD);
                if x & 1 == 1 {
                    *w |= bit;
                } else {
                    *w &= !bit;
                }
            }
            Storage::Dense(d) => d[i * cols + j] = x,
        }
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        (0..self.cols).map(|j| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.storage {
            Storage::Packed { words, .. } => words.iter().all(|&w| w == 0),
            Storage::Dense(d) => d.iter().all(|&x| x == 0),
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    t.set(j, i, x);
                }
            }
        }
        t
    }

    fn check_same(&self, other: &FieldMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Shape("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("add: shapes differ".into()));
        }
        let mut out = self.clone();
        match (&mut out.storage, &other.storage) {
            (Storage::Packed { words: a, .. }, Storage::Packed { words: b, .. }) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            (Storage::Dense(a), Storage::Dense(b)) => {
                for (x, &y) in a.iter_mut().zip(b) {
                    *x = self.field.add(*x, y);
                }
            }
            _ => unreachable!("storage is determined by the field"),
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.add(&other.scale(self.field.neg(1)))
    }

    pub fn scale(&self, c: Elem) -> FieldMatrix {
        let mut out = self.clone();
        match &mut out.storage {
            Storage::Packed { words, .. } => {
                if c & 1 == 0 {
                    words.iter_mut().for_each(|w| *w = 0);
                }
            }
            Storage::Dense(d) => {
                let row = self.field.mul_row(c);
                d.iter_mut().for_each(|x| *x = row[*x as usize]);
            }
        }
        out
    }

    pub fn mul(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "mul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        match (&mut out.storage, &other.storage) {
            (
                Storage::Packed {
                    stride: so,
                    words: wo,
                },
                Storage::Packed {
                    stride: sb,
                    words: wb,
                },
            ) => {
                for i in 0..self.rows {
                    let dst = &mut wo[i * *so..(i + 1) * *so];
                    for k in 0..self.cols {
                        if self.get(i, k) == 1 {
                            let src = &wb[k * sb..(k + 1) * sb];
                            for (d, s) in dst.iter_mut().zip(src) {
                                *d ^= s;
                            }
                        }
                    }
                }
            }
            (Storage::Dense(o), Storage::Dense(b)) => {
                let n = other.cols;
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = self.get(i, k);
                        if a == 0 {
                            continue;
                        }
                        let mrow = self.field.mul_row(a);
                        let src = &b[k * n..(k + 1) * n];
                        let dst = &mut o[i * n..(i + 1) * n];
                        for (d, &s) in dst.iter_mut().zip(src) {
                            *d = self.field.add(*d, mrow[s as usize]);
                        }
                    }
                }
            }
            _ => unreachable!("storage is determined by the field"),
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "mul_vec: vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| (0..self.cols).fold(0u8, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect())
    }

    pub fn pow(&self, k: u32) -> Result<FieldMatrix> {
        if self.rows != self.cols {
            return Err(Error::Shape("pow of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &FieldMatrix) -> Result<FieldMatrix> {
        self.check_same(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack: column counts differ".into()));
        }
        let mut out = self.clone();
        out.rows += other.rows;
        match (&mut out.storage, &other.storage) {
            (Storage::Packed { words: a, .. }, Storage::Packed { words: b, .. }) => {
                a.extend_from_slice(b)
            }
            (Storage::Dense(a), Storage::Dense(b)) => a.extend_from_slice(b),
            _ => unreachable!("storage is determined by the field"),
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let cols = self.cols;
        match &mut self.storage {
            Storage::Packed { stride, words } => {
                for w in 0..*stride {
                    words.swap(a * *stride + w, b * *stride + w);
                }
            }
            Storage::Dense(d) => {
                for j in 0..cols {
                    d.swap(a * cols + j, b * cols + j);
                }
            }
        }
    }

    /// Gaussian elimination with first-nonzero pivoting. With `full` the
    /// result is reduced (entries above pivots cleared too).
    fn echelon(&self, full: bool) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let rows = m.rows;
        let cols = m.cols;
        let field = m.field.clone();
        let mut r = 0;
        match &mut m.storage {
            Storage::Packed { stride, words } => {
                let stride = *stride;
                for c in 0..cols {
                    if r == rows {
                        break;
                    }
                    let (w, bit) = (c / WORD, 1u64 << (c % WORD));
                    let Some(p) = (r..rows).find(|&i| words[i * stride + w] & bit != 0) else {
                        continue;
                    };
                    if p != r {
                        for k in 0..stride {
                            words.swap(p * stride + k, r * stride + k);
                        }
                    }
                    let (head, tail) = words.split_at_mut((r + 1) * stride);
                    let pivot_row = &head[r * stride..];
                    for row in tail.chunks_exact_mut(stride) {
                        if row[w] & bit != 0 {
                            for k in w..stride {
                                row[k] ^= pivot_row[k];
                            }
                        }
                    }
                    if full {
                        let (above, rest) = head.split_at_mut(r * stride);
                        for row in above.chunks_exact_mut(stride) {
                            if row[w] & bit != 0 {
                                for k in w..stride {
                                    row[k] ^= rest[k];
                                }
                            }
                        }
                    }
                    pivots.push(c);
                    r += 1;
                }
            }
            Storage::Dense(d) => {
                for c in 0..cols {
                    if r == rows {
                        break;
                    }
                    let Some(p) = (r..rows).find(|&i| d[i * cols + c] != 0) else {
                        continue;
                    };
                    if p != r {
                        for k in 0..cols {
                            d.swap(p * cols + k, r * cols + k);
                        }
                    }
                    let inv = field.inv(d[r * cols + c]).expect("pivot is nonzero");
                    if inv != 1 {
                        let mrow = field.mul_row(inv);
                        for k in c..cols {
                            d[r * cols + k] = mrow[d[r * cols + k] as usize];
                        }
                    }
                    let (head, tail) = d.split_at_mut((r + 1) * cols);
                    let pivot_row = &head[r * cols..];
                    for row in tail.chunks_exact_mut(cols) {
                        eliminate(&field, row, pivot_row, c);
                    }
                    if full {
                        let (above, rest) = head.split_at_mut(r * cols);
                        for row in above.chunks_exact_mut(cols) {
                            eliminate(&field, row, rest, c);
                        }
                    }
                    pivots.push(c);
                    r += 1;
                }
            }
        }
        Echelon { m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon(false).pivots.len()
    }

    /// Rows form a basis of the right kernel {x : self * x = 0}.
    pub fn kernel_basis(&self) -> FieldMatrix {
        let Echelon { m, pivots } = self.echelon(true);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Self::zeros(&self.field, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            k.set(b, fc, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                let x = m.get(i, fc);
                if x != 0 {
                    k.set(b, pc, self.field.neg(x));
                }
            }
        }
        k
    }

    /// One solution of `self * x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Elem]) -> Result<Option<Vec<Elem>>> {
        if rhs.len() != self.rows {
            return Err(Error::Shape(format!(
                "solve: rhs of length {} for {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if x != 0 {
                    aug.set(i, j, x);
                }
            }
            aug.set(i, self.cols, rhs[i]);
        }
        let Echelon { m, pivots } = aug.echelon(true);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0u8; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = m.get(i, self.cols);
        }
        Ok(Some(x))
    }

    /// Row space basis in reduced echelon form.
    pub fn row_space_basis(&self) -> FieldMatrix {
        let Echelon { m, pivots } = self.echelon(true);
        let mut out = Self::zeros(&self.field, pivots.len(), self.cols);
        for i in 0..pivots.len() {
            for j in 0..self.cols {
                let x = m.get(i, j);
                if x != 0 {
                    out.set(i, j, x);
                }
            }
        }
        out
    }

    pub fn swap(&mut self, a: usize, b: usize) {
        self.swap_rows(a, b)
    }
}

#[inline]
fn eliminate(field: &Field, row: &mut [Elem], pivot_row: &[Elem], c: usize) {
    let f = row[c];
    if f == 0 {
        return;
    }
    let mrow = field.mul_row(field.neg(f));
    if field.is_binary() {
        for (x, &s) in row[c..].iter_mut().zip(&pivot_row[c..]) {
            *x ^= mrow[s as usize];
        }
    } else {
        for (x, &s) in row[c..].iter_mut().zip(&pivot_row[c..]) {
            *x = field.add(*x, mrow[s as usize]);
        }
    }
}

/// Dimension of the span of a set of vectors.
pub fn span_dim(field: &Field, len: usize, vectors: &[Vec<Elem>]) -> Result<usize> {
    Ok(FieldMatrix::from_rows(field, len, vectors)?.rank())
}
