use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{scaled_inverse, IntMatrix};

/// A root or weight in doubled coordinates: the true coordinates are `d_i / 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootVec(pub Vec<i32>);

impl RootVec {
    pub fn zero(rank: usize) -> Self {
        RootVec(vec![0; rank])
    }

    /// `(ε_i + ε_j)`-style constructor from true integer coordinates.
    pub fn from_integer(coords: &[i32]) -> Self {
        RootVec(coords.iter().map(|c| 2 * c).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Four times the true inner product.
    pub fn dot4(&self, other: &RootVec) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }

    /// True inner product, when it is an integer.
    pub fn inner(&self, other: &RootVec) -> Option<i64> {
        let d = self.dot4(other);
        (d % 4 == 0).then_some(d / 4)
    }

    /// Doubled squared norm.
    pub fn norm2(&self) -> i64 {
        self.dot4(self) / 2
    }

    pub fn add(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RootVec {
        RootVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i32) -> RootVec {
        RootVec(self.0.iter().map(|a| k * a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&d| {
                if d % 2 == 0 {
                    (d / 2).to_string()
                } else {
                    format!("{d}/2")
                }
            })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootSystemKind {
    D(usize),
    E8,
}

impl RootSystemKind {
    pub fn rank(&self) -> usize {
        match *self {
            RootSystemKind::D(r) => r,
            RootSystemKind::E8 => 8,
        }
    }
}

impl fmt::Display for RootSystemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootSystemKind::D(r) => write!(f, "D{r}"),
            RootSystemKind::E8 => write!(f, "E8"),
        }
    }
}

/// A simply laced root system in Bourbaki coordinates.
///
/// Roots are ordered: positive roots by height, then doubled coordinates,
/// followed by their negatives in the same order.
#[derive(Debug, Clone)]
pub struct RootSystem {
    kind: RootSystemKind,
    roots: Vec<RootVec>,
    simple: Vec<usize>,
    /// Coefficients of each root in the simple-root basis.
    coefficients: Vec<Vec<i32>>,
    cartan: Vec<Vec<i32>>,
    index: HashMap<RootVec, usize>,
}

fn d_roots(r: usize) -> Vec<RootVec> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = vec![0; r];
                v[i] = si;
                v[j] = sj;
                out.push(RootVec(v));
            }
        }
    }
    out
}

fn d_simple(r: usize) -> Vec<RootVec> {
    let mut s = Vec::new();
    for i in 0..r - 1 {
        let mut v = vec![0; r];
        v[i] = 2;
        v[i + 1] = -2;
        s.push(RootVec(v));
    }
    let mut v = vec![0; r];
    v[r - 2] = 2;
    v[r - 1] = 2;
    s.push(RootVec(v));
    s
}

fn e8_roots() -> Vec<RootVec> {
    let mut out = d_roots(8);
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            out.push(RootVec(
                (0..8)
                    .map(|i| if (mask >> i) & 1 == 1 { -1 } else { 1 })
                    .collect(),
            ));
        }
    }
    out
}

/// Simple roots of E8 as listed in Bourbaki's tables.
pub fn e8_simple_roots() -> Vec<RootVec> {
    let mut s = vec![RootVec(vec![1, -1, -1, -1, -1, -1, -1, 1])];
    let mut a2 = vec![0; 8];
    a2[0] = 2;
    a2[1] = 2;
    s.push(RootVec(a2));
    for i in 0..6 {
        let mut v = vec![0; 8];
        v[i] = -2;
        v[i + 1] = 2;
        s.push(RootVec(v));
    }
    s
}

impl RootSystem {
    pub fn new(kind: RootSystemKind) -> Result<Self> {
        let (all, simple_roots) = match kind {
            RootSystemKind::D(r) if r >= 3 => (d_roots(r), d_simple(r)),
            RootSystemKind::D(r) => {
                return Err(Error::UnsupportedType(format!("D{r} (need rank >= 3)")))
            }
            RootSystemKind::E8 => (e8_roots(), e8_simple_roots()),
        };
        let rank = kind.rank();
        let smat =
            IntMatrix::from_rows(&simple_roots.iter().map(|s| s.0.clone()).collect::<Vec<_>>())?;
        let (adj, det) = scaled_inverse(&smat)?;
        let adj = adj.to_i64_rows();
        let det = i64::try_from(&det).expect("small determinant");
        let coeffs_of = |v: &RootVec| -> Vec<i32> {
            (0..rank)
                .map(|j| {
                    let s: i64 = (0..rank).map(|k| v.0[k] as i64 * adj[k][j]).sum();
                    assert_eq!(s % det, 0, "root not in the simple-root lattice");
                    (s / det) as i32
                })
                .collect()
        };
        let mut positive: Vec<(Vec<i32>, RootVec)> = all
            .iter()
            .map(|v| (coeffs_of(v), v.clone()))
            .filter(|(c, _)| c.iter().all(|&x| x >= 0))
            .collect();
        positive.sort_by(|(ca, va), (cb, vb)| {
            let ha: i32 = ca.iter().sum();
            let hb: i32 = cb.iter().sum();
            ha.cmp(&hb).then_with(|| va.cmp(vb))
        });
        if positive.len() * 2 != all.len() {
            return Err(Error::UnsupportedType(
                "simple roots do not split the root system".into(),
            ));
        }
        let mut roots = Vec::with_capacity(all.len());
        let mut coefficients = Vec::with_capacity(all.len());
        for (c, v) in &positive {
            roots.push(v.clone());
            coefficients.push(c.clone());
        }
        for (c, v) in &positive {
            roots.push(v.neg());
            coefficients.push(c.iter().map(|x| -x).collect());
        }
        let index: HashMap<RootVec, usize> = roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let simple: Vec<usize> = simple_roots.iter().map(|s| index[s]).collect();
        let cartan = simple_roots
            .iter()
            .map(|a| {
                simple_roots
                    .iter()
                    .map(|b| (a.dot4(b) / 4) as i32)
                    .collect()
            })
            .collect();
        Ok(RootSystem {
            kind,
            roots,
            simple,
            coefficients,
            cartan,
            index,
        })
    }

    pub fn kind(&self) -> RootSystemKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank()
    }

    pub fn roots(&self) -> &[RootVec] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn root(&self, i: usize) -> &RootVec {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &RootVec) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Indices of the simple roots, in Bourbaki order.
    pub fn simple(&self) -> &[usize] {
        &self.simple
    }

    pub fn simple_roots(&self) -> Vec<RootVec> {
        self.simple.iter().map(|&i| self.roots[i].clone()).collect()
    }

    pub fn coefficients(&self, i: usize) -> &[i32] {
        &self.coefficients[i]
    }

    pub fn height(&self, i: usize) -> i32 {
        self.coefficients[i].iter().sum()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }
}
