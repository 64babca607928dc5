use serde::{Deserialize, Serialize};

use crate::chevalley::{RootSystem, RootSystemKind, RootVec};
use crate::error::{Error, Result};
use crate::exactlin::{smith_normal_form, IntMatrix, SnfResult};

/// The 8 × 8 pairing matrix `[(γ_i | α_j)]` with the simple roots `α_1 = ½(ε_1 + ε_8 − ε_2 − … − ε_7)`,
/// `α_2 = ε_1 + ε_2`, `α_{k} = ε_{k−1} − ε_{k−2}` for `k ≥ 3`.
pub const PRINTED_M: [[i64; 8]; 8] = [
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, -1, 1, -1, 1],
    [0, 1, 0, -1, 0, 1, 0, -1],
    [1, 0, -1, 0, 1, 0, -1, 0],
    [0, 1, 0, 0, 0, -1, 0, 0],
    [1, 0, -1, 1, -1, 0, 1, -1],
    [1, 1, 0, -1, 0, 0, 0, 1],
    [0, 0, -1, 0, 1, -1, 1, 0],
];

/// `H_{2^k}` by iterated Kronecker products with `H_2`.
pub fn sylvester(k: u32) -> Vec<Vec<i32>> {
    let mut h = vec![vec![1]];
    for _ in 0..k {
        let n = h.len();
        let mut next = vec![vec![0; 2 * n]; 2 * n];
        for (i, row) in h.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                next[i][j] = x;
                next[i][j + n] = x;
                next[i + n][j] = x;
                next[i + n][j + n] = -x;
            }
        }
        h = next;
    }
    h
}

fn kron(a: &[Vec<i32>], b: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![0; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Bourbaki simple roots of E8 in doubled coordinates, in the order used for `M`.
pub fn bourbaki_e8_simple_roots() -> Vec<RootVec> {
    let mut out = vec![
        RootVec(vec![1, -1, -1, -1, -1, -1, -1, 1]),
        RootVec::from_integer(&[1, 1, 0, 0, 0, 0, 0, 0]),
    ];
    for k in 0..6 {
        let mut v = vec![0; 8];
        v[k] = -1;
        v[k + 1] = 1;
        out.push(RootVec::from_integer(&v));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

fn check(name: &str, passed: bool) -> Check {
    Check {
        name: name.into(),
        passed,
    }
}

/// Eight mutually orthogonal half-spin roots from the rows of a Hadamard matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaSystem {
    pub h8: Vec<Vec<i32>>,
    /// `γ_i = ½ Σ_k H8[i][k] ε_k`, so the doubled coordinates are the rows.
    pub gammas: Vec<RootVec>,
    /// `M[i][j] = (γ_i | α_j)`.
    pub m: Vec<Vec<i64>>,
}

impl GammaSystem {
    /// Builds the system from any 8 × 8 sign matrix without validating it.
    pub fn from_hadamard(h8: Vec<Vec<i32>>) -> Result<Self> {
        if h8.len() != 8 || h8.iter().any(|r| r.len() != 8) {
            return Err(Error::Shape("H8 must be 8 × 8".into()));
        }
        let gammas: Vec<RootVec> = h8.iter().map(|r| RootVec(r.clone())).collect();
        let simple = bourbaki_e8_simple_roots();
        let m = gammas
            .iter()
            .map(|g| simple.iter().map(|a| g.dot4(a) / 4).collect())
            .collect();
        Ok(GammaSystem { h8, gammas, m })
    }

    /// Every invariant of the construction, as named pass/fail checks.
    pub fn checks(&self) -> Vec<Check> {
        let h = &self.h8;
        let h2 = sylvester(1);
        let signs = h.iter().flatten().all(|&x| x == 1 || x == -1);
        let tensor = *h == kron(&h2, &kron(&h2, &h2));
        let gram_ok = (0..8).all(|i| {
            (0..8).all(|j| {
                let s: i32 = (0..8).map(|k| h[i][k] * h[j][k]).sum();
                s == if i == j { 8 } else { 0 }
            })
        });
        let rs = RootSystem::new(RootSystemKind::E8).ok();
        let half_roots = rs.as_ref().is_some_and(|rs| {
            self.gammas
                .iter()
                .all(|g| rs.index_of(g).is_some() && g.0.iter().all(|d| d.abs() == 1))
        });
        let orth = (0..8).all(|i| {
            (0..8).all(|j| self.gammas[i].dot4(&self.gammas[j]) == if i == j { 8 } else { 0 })
        });
        let no_sums = rs.as_ref().is_some_and(|rs| {
            (0..8).all(|i| {
                (0..8).filter(|&j| j != i).all(|j| {
                    let (a, b) = (&self.gammas[i], &self.gammas[j]);
                    [a.add(b), a.sub(b), a.neg().add(b), a.neg().sub(b)]
                        .iter()
                        .all(|v| rs.index_of(v).is_none())
                })
            })
        });
        let printed = self
            .m
            .iter()
            .zip(PRINTED_M.iter())
            .all(|(a, b)| a.as_slice() == b.as_slice());
        vec![
            check("H8 has entries ±1", signs),
            check("H8 = H2 ⊗ H2 ⊗ H2", tensor),
            check("H8 · H8^T = 8 I", gram_ok),
            check("γ_i are half-spin roots of E8", half_roots),
            check("(γ_i | γ_j) = 2 δ_ij", orth),
            check("±γ_i ± γ_j is not a root for i ≠ j", no_sums),
            check("M matches the printed matrix", printed),
        ]
    }

    pub fn is_valid(&self) -> bool {
        self.checks().iter().all(|c| c.passed)
    }

    /// Coordinates of `γ_i` in the simple roots (rows).
    pub fn root_coordinates(&self) -> Result<IntMatrix> {
        let simple = bourbaki_e8_simple_roots();
        let smat = IntMatrix::from_rows(&simple.iter().map(|s| s.0.clone()).collect::<Vec<_>>())?;
        let (adj, det) = crate::exactlin::scaled_inverse(&smat)?;
        let adj = adj.to_i64_rows();
        let det =
            i64::try_from(&det).map_err(|_| Error::Verification("determinant overflow".into()))?;
        let mut rows = Vec::with_capacity(8);
        for g in &self.gammas {
            let mut row = Vec::with_capacity(8);
            for j in 0..8 {
                let s: i64 = (0..8).map(|k| g.0[k] as i64 * adj[k][j]).sum();
                if s % det != 0 {
                    return Err(Error::Verification(format!(
                        "{g} is not in the root lattice"
                    )));
                }
                row.push(s / det);
            }
            rows.push(row);
        }
        IntMatrix::from_rows(&rows)
    }
}

/// The system built from `H_2 ⊗ H_2 ⊗ H_2`, with every invariant verified.
pub fn build_gamma_system() -> Result<GammaSystem> {
    let g = GammaSystem::from_hadamard(sylvester(3))?;
    if let Some(c) = g.checks().into_iter().find(|c| !c.passed) {
        return Err(Error::Verification(format!("gamma system: {}", c.name)));
    }
    Ok(g)
}

/// Smith form of `ZΓ ⊂ ZΦ̃`: divisors `(1, 1, 1, 1, 2, 2, 2, 2)`.
pub fn mu2_part() -> Result<SnfResult> {
    let g = build_gamma_system()?;
    Ok(smith_normal_form(&g.root_coordinates()?))
}
