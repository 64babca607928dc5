use std::collections::HashMap;
use std::sync::Arc;

use crate::chevalley::{ChevalleyAlgebra, RootVec};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::field::{Elem, Field};

/// A sparse square matrix over a field, entries `(row, col, value)` sorted by column.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMat {
    pub entries: Vec<(u32, u32, Elem)>,
}

impl SparseMat {
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self, field: &Field, dim: usize) -> FieldMatrix {
        let mut m = FieldMatrix::zeros(field, dim, dim);
        for &(r, c, v) in &self.entries {
            m.set(r as usize, c as usize, v);
        }
        m
    }

    pub fn from_dense(m: &FieldMatrix) -> SparseMat {
        let mut entries = Vec::new();
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                let v = m.get(r, c);
                if v != 0 {
                    entries.push((r as u32, c as u32, v));
                }
            }
        }
        SparseMat { entries }
    }

    /// Accumulates `scale · self · v` into `out`.
    pub fn apply_into(&self, field: &Field, scale: Elem, v: &[Elem], out: &mut [Elem]) {
        for &(r, c, a) in &self.entries {
            let x = v[c as usize];
            if x != 0 {
                let r = r as usize;
                out[r] = field.add(out[r], field.mul(scale, field.mul(a, x)));
            }
        }
    }

    fn normalize(map: HashMap<(u32, u32), Elem>) -> SparseMat {
        let mut entries: Vec<(u32, u32, Elem)> = map
            .into_iter()
            .filter(|&(_, v)| v != 0)
            .map(|((r, c), v)| (r, c, v))
            .collect();
        entries.sort_by_key(|&(r, c, _)| (c, r));
        SparseMat { entries }
    }

    /// `Σ c_j M_j`.
    pub fn combination(field: &Field, terms: &[(Elem, &SparseMat)]) -> SparseMat {
        let mut map: HashMap<(u32, u32), Elem> = HashMap::new();
        for &(c, m) in terms {
            if c == 0 {
                continue;
            }
            for &(r, col, v) in &m.entries {
                let e = map.entry((r, col)).or_insert(0);
                *e = field.add(*e, field.mul(c, v));
            }
        }
        Self::normalize(map)
    }
}

/// A representation of a (sub)algebra of a Chevalley algebra.
///
/// One sparse action matrix per algebra basis element. When `subalgebra` is
/// set, the algebra basis consists of those ambient vectors; otherwise it is
/// the Chevalley basis of `algebra`.
#[derive(Debug, Clone)]
pub struct Representation {
    algebra: ChevalleyAlgebra,
    subalgebra: Option<Arc<Vec<Vec<Elem>>>>,
    dim: usize,
    actions: Arc<Vec<SparseMat>>,
    weights: Vec<RootVec>,
    label: String,
}

impl Representation {
    pub fn from_parts(
        algebra: ChevalleyAlgebra,
        subalgebra: Option<Vec<Vec<Elem>>>,
        dim: usize,
        actions: Vec<SparseMat>,
        weights: Vec<RootVec>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let expected = subalgebra.as_ref().map_or(algebra.dim(), |b| b.len());
        if actions.len() != expected {
            return Err(Error::Shape(format!(
                "{} action matrices for a {expected}-dimensional algebra",
                actions.len()
            )));
        }
        if let Some(b) = &subalgebra {
            if b.iter().any(|v| v.len() != algebra.dim()) {
                return Err(Error::Shape(
                    "subalgebra basis vectors have the wrong length".into(),
                ));
            }
        }
        for m in &actions {
            if m.entries
                .iter()
                .any(|&(r, c, _)| r as usize >= dim || c as usize >= dim)
            {
                return Err(Error::Shape("action matrix entry out of range".into()));
            }
        }
        Ok(Representation {
            algebra,
            subalgebra: subalgebra.map(Arc::new),
            dim,
            actions: Arc::new(actions),
            weights,
            label: label.into(),
        })
    }

    pub fn algebra(&self) -> &ChevalleyAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the acting algebra.
    pub fn algebra_dim(&self) -> usize {
        self.actions.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn weights(&self) -> &[RootVec] {
        &self.weights
    }

    pub fn subalgebra_basis(&self) -> Option<&[Vec<Elem>]> {
        self.subalgebra.as_deref().map(|v| v.as_slice())
    }

    pub fn actions(&self) -> &[SparseMat] {
        &self.actions
    }

    pub fn action(&self, j: usize) -> &SparseMat {
        &self.actions[j]
    }

    /// Dense matrix of the j-th basis element.
    pub fn matrix(&self, j: usize) -> FieldMatrix {
        self.actions[j].to_dense(self.field(), self.dim)
    }

    fn check_element(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.algebra_dim() {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    /// `ρ(x)` for `x` in algebra-basis coordinates.
    pub fn element_matrix(&self, x: &[Elem]) -> Result<FieldMatrix> {
        self.check_element(x)?;
        let terms: Vec<(Elem, &SparseMat)> = x.iter().copied().zip(self.actions.iter()).collect();
        Ok(SparseMat::combination(self.field(), &terms).to_dense(self.field(), self.dim))
    }

    /// `ρ(b_j) v`.
    pub fn apply(&self, j: usize, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; self.dim];
        self.actions[j].apply_into(self.field(), 1, v, &mut out);
        out
    }

    /// `ρ(x) v`.
    pub fn apply_element(&self, x: &[Elem], v: &[Elem]) -> Result<Vec<Elem>> {
        self.check_element(x)?;
        if v.len() != self.dim {
            return Err(Error::Shape("module vector has the wrong length".into()));
        }
        let mut out = vec![0; self.dim];
        for (j, &c) in x.iter().enumerate() {
            if c != 0 {
                self.actions[j].apply_into(self.field(), c, v, &mut out);
            }
        }
        Ok(out)
    }

    /// Ambient coordinates of an algebra element.
    pub fn to_ambient(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.check_element(x)?;
        match &self.subalgebra {
            None => Ok(x.to_vec()),
            Some(b) => {
                let f = self.field();
                let mut out = self.algebra.zero();
                for (c, v) in x.iter().zip(b.iter()) {
                    if *c != 0 {
                        for (o, &vi) in out.iter_mut().zip(v) {
                            *o = f.add(*o, f.mul(*c, vi));
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Algebra-basis coordinates of an ambient element, if it lies in the acting algebra.
    pub fn from_ambient(&self, x: &[Elem]) -> Result<Option<Vec<Elem>>> {
        match &self.subalgebra {
            None => Ok(Some(x.to_vec())),
            Some(b) => {
                let m = FieldMatrix::from_columns(self.field(), self.algebra.dim(), b)?;
                m.solve(x)
            }
        }
    }

    /// `[x, y]` computed in the ambient algebra, returned in algebra-basis coordinates.
    pub fn bracket(&self, x: &[Elem], y: &[Elem]) -> Result<Vec<Elem>> {
        let z = self
            .algebra
            .bracket(&self.to_ambient(x)?, &self.to_ambient(y)?)?;
        self.from_ambient(&z)?
            .ok_or_else(|| Error::Verification("subalgebra is not closed under the bracket".into()))
    }

    /// `x^{[p]}` in algebra-basis coordinates.
    pub fn p_power(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        let z = self.algebra.p_power(&self.to_ambient(x)?)?;
        self.from_ambient(&z)?
            .ok_or_else(|| Error::Verification("subalgebra is not restricted".into()))
    }

    pub fn basis_element(&self, j: usize) -> Vec<Elem> {
        let mut v = vec![0; self.algebra_dim()];
        v[j] = 1;
        v
    }

    /// Checks `ρ([x,y]) = [ρ(x), ρ(y)]`.
    pub fn respects_bracket(&self, x: &[Elem], y: &[Elem]) -> Result<bool> {
        let lhs = self.element_matrix(&self.bracket(x, y)?)?;
        let a = self.element_matrix(x)?;
        let b = self.element_matrix(y)?;
        let rhs = a.mul(&b)?.sub(&b.mul(&a)?)?;
        Ok(lhs.to_rows() == rhs.to_rows())
    }

    /// Checks `ρ(x^{[p]}) = ρ(x)^p`.
    pub fn respects_p_map(&self, x: &[Elem]) -> Result<bool> {
        let p = self.field().characteristic();
        let lhs = self.element_matrix(&self.p_power(x)?)?;
        let rhs = self.element_matrix(x)?.pow(p)?;
        Ok(lhs.to_rows() == rhs.to_rows())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

fn same_acting_algebra(a: &Representation, b: &Representation) -> bool {
    if !a.algebra.same_algebra(&b.algebra) {
        return false;
    }
    match (&a.subalgebra, &b.subalgebra) {
        (None, None) => true,
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x == y,
        _ => false,
    }
}

/// Block-diagonal sum; `a` occupies the first coordinates.
pub fn direct_sum(a: &Representation, b: &Representation) -> Result<Representation> {
    if !same_acting_algebra(a, b) {
        return Err(Error::MixedAlgebras);
    }
    let off = a.dim as u32;
    let actions = a
        .actions
        .iter()
        .zip(b.actions.iter())
        .map(|(x, y)| {
            let mut entries = x.entries.clone();
            entries.extend(y.entries.iter().map(|&(r, c, v)| (r + off, c + off, v)));
            entries.sort_by_key(|&(r, c, _)| (c, r));
            SparseMat { entries }
        })
        .collect();
    let mut weights = a.weights.clone();
    weights.extend(b.weights.iter().cloned());
    Ok(Representation {
        algebra: a.algebra.clone(),
        subalgebra: a.subalgebra.clone(),
        dim: a.dim + b.dim,
        actions: Arc::new(actions),
        weights,
        label: format!("{}+{}", a.label, b.label),
    })
}
