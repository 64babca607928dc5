use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chevalley::RootVec;
use crate::error::{Error, Result};

/// A torus element `t_i = ζ^{c_i}` with `ζ` a primitive m-th root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector {
    pub c: Vec<i64>,
    pub modulus: u64,
}

impl ExponentVector {
    pub fn new(c: Vec<i64>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Domain("modulus must be positive".into()));
        }
        let m = modulus as i64;
        Ok(ExponentVector {
            c: c.into_iter().map(|x| x.rem_euclid(m)).collect(),
            modulus,
        })
    }

    pub fn rank(&self) -> usize {
        self.c.len()
    }

    /// Equality of the underlying torus points: `c_i / m ≡ c'_i / m' (mod 1)`.
    pub fn same_point(&self, other: &ExponentVector) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        let l = (self.modulus as i64).lcm(&(other.modulus as i64));
        let (a, b) = (l / self.modulus as i64, l / other.modulus as i64);
        self.c
            .iter()
            .zip(&other.c)
            .all(|(&x, &y)| (x * a - y * b).rem_euclid(l) == 0)
    }

    /// The point multiplied by `-1`.
    pub fn negated(&self) -> ExponentVector {
        let (c, m) = if self.modulus.is_multiple_of(2) {
            (self.c.clone(), self.modulus)
        } else {
            (self.c.iter().map(|x| 2 * x).collect(), 2 * self.modulus)
        };
        let h = (m / 2) as i64;
        ExponentVector {
            c: c.iter().map(|&x| (x + h).rem_euclid(m as i64)).collect(),
            modulus: m,
        }
        .reduced()
    }

    /// Halves the modulus when every exponent is even.
    pub fn reduced(&self) -> ExponentVector {
        let mut v = self.clone();
        while v.modulus.is_multiple_of(2) && v.c.iter().all(|x| x % 2 == 0) {
            v = ExponentVector {
                c: v.c.iter().map(|x| x / 2).collect(),
                modulus: v.modulus / 2,
            };
        }
        v
    }
}

/// Images of a Spin_8 torus element under triality and its square, each known up to a global sign ε.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialityImage {
    pub sigma: ExponentVector,
    pub sigma2: ExponentVector,
    /// Always true: both images are determined only up to multiplication by ε = ±1.
    pub epsilon_ambiguous: bool,
}

const SIGMA: [[i64; 4]; 4] = [[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [1, -1, -1, -1]];
const SIGMA2: [[i64; 4]; 4] = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [-1, 1, 1, -1]];

fn half_transform(m: &[[i64; 4]; 4], c: &ExponentVector) -> Result<ExponentVector> {
    let d: Vec<i64> = (0..4)
        .map(|i| (0..4).map(|j| m[i][j] * c.c[j]).sum())
        .collect();
    // Square roots live in the exponents of a primitive 2m-th root.
    Ok(ExponentVector::new(d, 2 * c.modulus)?.reduced())
}

/// Exponents of `σ(g)` and `σ²(g)` for `g = (t_1, t_2, t_3, t_4, …)` in the SO_8 torus.
pub fn triality_torus_image(c: &ExponentVector) -> Result<TrialityImage> {
    if c.rank() != 4 {
        return Err(Error::Domain(
            "triality acts on rank-4 exponent vectors".into(),
        ));
    }
    Ok(TrialityImage {
        sigma: half_transform(&SIGMA, c)?,
        sigma2: half_transform(&SIGMA2, c)?,
        epsilon_ambiguous: true,
    })
}

/// Eigenvalue classes of a torus element on a weight basis: the class of a
/// doubled weight `d` is `Σ d_i c_i mod 2m`.
pub fn torus_classes(weights: &[RootVec], c: &ExponentVector) -> Result<BTreeMap<i64, usize>> {
    let m2 = 2 * c.modulus as i64;
    let mut out = BTreeMap::new();
    for w in weights {
        if w.rank() != c.rank() {
            return Err(Error::Shape("weight and exponent ranks differ".into()));
        }
        let s: i64 = w.0.iter().zip(&c.c).map(|(&d, &x)| d as i64 * x).sum();
        *out.entry(s.rem_euclid(m2)).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn torus_fixed_dim(weights: &[RootVec], c: &ExponentVector) -> Result<usize> {
    Ok(torus_classes(weights, c)?.get(&0).copied().unwrap_or(0))
}

pub fn torus_max_eigenspace(weights: &[RootVec], c: &ExponentVector) -> Result<usize> {
    Ok(torus_classes(weights, c)?
        .values()
        .copied()
        .max()
        .unwrap_or(0))
}

/// Whether the element acts nontrivially on some root: `(α|c) ≢ 0 mod m`.
pub fn is_noncentral(roots: &[RootVec], c: &ExponentVector) -> bool {
    let m = c.modulus as i64;
    roots.iter().any(|a| {
        let s: i64 = a.0.iter().zip(&c.c).map(|(&d, &x)| d as i64 * x).sum();
        (s / 2).rem_euclid(m) != 0
    })
}
