use serde::{Deserialize, Serialize};

use super::roots::{RootSystem, RootVec};
use crate::error::{Error, Result};

/// An element of W(D_r): `ε_k ↦ signs[k] · ε_{perm[k]}` with an even number of sign changes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(r: usize) -> Self {
        SignedPerm {
            perm: (0..r).collect(),
            signs: vec![1; r],
        }
    }

    /// `-Id`, which lies in W(D_r) for even r.
    pub fn negation(r: usize) -> Result<Self> {
        if !r.is_multiple_of(2) {
            return Err(Error::Domain(format!("-Id is not in W(D{r})")));
        }
        Ok(SignedPerm {
            perm: (0..r).collect(),
            signs: vec![-1; r],
        })
    }

    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let r = perm.len();
        let mut seen = vec![false; r];
        for &p in &perm {
            if p >= r || seen[p] {
                return Err(Error::Domain("not a permutation".into()));
            }
            seen[p] = true;
        }
        if signs.len() != r || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Domain("bad sign vector".into()));
        }
        if signs.iter().filter(|&&s| s == -1).count() % 2 != 0 {
            return Err(Error::Domain("odd number of sign changes".into()));
        }
        Ok(SignedPerm { perm, signs })
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn apply(&self, v: &RootVec) -> RootVec {
        let mut out = vec![0; v.rank()];
        for (k, &c) in v.0.iter().enumerate() {
            out[self.perm[k]] = self.signs[k] as i32 * c;
        }
        RootVec(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut signs = vec![1; r];
        for k in 0..r {
            let j = other.perm[k];
            perm[k] = self.perm[j];
            signs[k] = other.signs[k] * self.signs[j];
        }
        SignedPerm { perm, signs }
    }

    pub fn inverse(&self) -> SignedPerm {
        let r = self.rank();
        let mut perm = vec![0; r];
        let mut signs = vec![1; r];
        for k in 0..r {
            perm[self.perm[k]] = k;
            signs[self.perm[k]] = self.signs[k];
        }
        SignedPerm { perm, signs }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    /// The reflection in a D-type root.
    pub fn reflection(alpha: &RootVec) -> Result<SignedPerm> {
        let nz: Vec<usize> = (0..alpha.rank()).filter(|&k| alpha.0[k] != 0).collect();
        if nz.len() != 2 || nz.iter().any(|&k| alpha.0[k].abs() != 2) {
            return Err(Error::Domain(format!("{alpha} is not a D-type root")));
        }
        let (i, j) = (nz[0], nz[1]);
        let mut w = SignedPerm::identity(alpha.rank());
        w.perm[i] = j;
        w.perm[j] = i;
        // ε_i - ε_j swaps the two coordinates; ε_i + ε_j also negates them.
        if alpha.0[i] != alpha.0[j] {
            return Ok(w);
        }
        w.signs[i] = -1;
        w.signs[j] = -1;
        Ok(w)
    }
}

/// Streaming enumeration of W(D_r): permutations in lexicographic order, each
/// with all even sign patterns.
pub struct WeylIter {
    r: usize,
    perm: Option<Vec<usize>>,
    mask: u32,
}

impl Iterator for WeylIter {
    type Item = SignedPerm;

    fn next(&mut self) -> Option<SignedPerm> {
        loop {
            let perm = self.perm.as_mut()?;
            if self.mask >= 1 << self.r {
                if !next_permutation(perm) {
                    self.perm = None;
                    return None;
                }
                self.mask = 0;
            }
            let m = self.mask;
            self.mask += 1;
            if m.count_ones().is_multiple_of(2) {
                let signs = (0..self.r)
                    .map(|k| if (m >> k) & 1 == 1 { -1 } else { 1 })
                    .collect();
                return Some(SignedPerm {
                    perm: perm.clone(),
                    signs,
                });
            }
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Enumerates W(D_r) for `r <= 8`. E8 coordinates are accepted through its D8 subsystem.
pub fn weyl_group_elements(rs: &RootSystem) -> Result<WeylIter> {
    let r = rs.rank();
    if r > 8 {
        return Err(Error::Unsupported(format!(
            "Weyl enumeration for rank {r} exceeds the guard"
        )));
    }
    Ok(WeylIter {
        r,
        perm: Some((0..r).collect()),
        mask: 0,
    })
}

pub fn weyl_order(r: usize) -> u64 {
    (1..=r as u64).product::<u64>() << (r - 1)
}
