use std::collections::HashMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gamma::{build_gamma_system, GammaSystem};
use crate::chevalley::{ChevalleyAlgebra, RootVec, SignedPerm};
use crate::error::{Error, Result};
use crate::exactlin::{span_dim, FieldMatrix};
use crate::field::{Elem, Field};
use crate::spinrep::{e8_restriction_halfspin, Representation};
use crate::stab::stab_basis;

const MAX_SAMPLE_ATTEMPTS: usize = 10_000;

/// `x = Σ λ_i e_{γ_i} + μ_i e_{−γ_i}` in the span of the `e_{±γ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RCircElement {
    pub lambda: Vec<Elem>,
    pub mu: Vec<Elem>,
}

impl RCircElement {
    pub fn products(&self, field: &Field) -> Vec<Elem> {
        self.lambda
            .iter()
            .zip(&self.mu)
            .map(|(&l, &m)| field.mul(l, m))
            .collect()
    }
}

/// `w · h`: the torus point `h` (given by `γ_i(h) = t_i`) followed by the Weyl element `w`,
/// acting by `e_β ↦ β(h) e_{w(β)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonomialElement {
    pub w: SignedPerm,
    pub t: Vec<Elem>,
}

/// A monomial map on the 128-dimensional module: coordinate `m` goes to `target[m]` scaled by `scale[m]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleMap {
    pub target: Vec<u32>,
    pub scale: Vec<Elem>,
}

impl ModuleMap {
    pub fn identity(dim: usize) -> Self {
        ModuleMap {
            target: (0..dim as u32).collect(),
            scale: vec![1; dim],
        }
    }

    pub fn apply(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        let mut out = vec![0; v.len()];
        for (m, &c) in v.iter().enumerate() {
            out[self.target[m] as usize] = field.mul(self.scale[m], c);
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, field: &Field, other: &ModuleMap) -> ModuleMap {
        let dim = self.target.len();
        let mut target = vec![0; dim];
        let mut scale = vec![0; dim];
        for m in 0..dim {
            let mid = other.target[m] as usize;
            target[m] = self.target[mid];
            scale[m] = field.mul(self.scale[mid], other.scale[m]);
        }
        ModuleMap { target, scale }
    }

    pub fn inverse(&self, field: &Field) -> Result<ModuleMap> {
        let dim = self.target.len();
        let mut target = vec![0; dim];
        let mut scale = vec![0; dim];
        for m in 0..dim {
            let t = self.target[m] as usize;
            target[t] = m as u32;
            scale[t] = field.inv(self.scale[m])?;
        }
        Ok(ModuleMap { target, scale })
    }

    pub fn is_identity(&self) -> bool {
        self.target.iter().enumerate().all(|(m, &t)| m as u32 == t)
            && self.scale.iter().all(|&s| s == 1)
    }
}

/// The E8 algebra in characteristic 2 with its D8 subalgebra, the half-spin module
/// spanned by the half-integral root vectors, and the orthogonal roots `±γ_i`.
pub struct E8Model {
    field: Field,
    gamma: GammaSystem,
    rep: Representation,
    /// E8 root indices of `γ_i` and `−γ_i`.
    pos: Vec<usize>,
    neg: Vec<usize>,
    /// Module index of each half-integral root.
    module_index: HashMap<RootVec, usize>,
    /// `(β | γ_i)` for each module weight β.
    pairings: Vec<Vec<i64>>,
    t0: FieldMatrix,
    weyl: OnceLock<Vec<SignedPerm>>,
}

impl E8Model {
    pub fn new(field: &Field) -> Result<Self> {
        if field.characteristic() != 2 {
            return Err(Error::Unsupported(
                "the E8 model is built in characteristic 2".into(),
            ));
        }
        let gamma = build_gamma_system()?;
        let rep = e8_restriction_halfspin(field)?;
        let e8 = rep.algebra();
        let idx = |v: &RootVec| {
            e8.root_index(v)
                .ok_or_else(|| Error::Verification(format!("{v} is not a root")))
        };
        let pos = gamma.gammas.iter().map(idx).collect::<Result<Vec<_>>>()?;
        let neg = gamma
            .gammas
            .iter()
            .map(|g| idx(&g.neg()))
            .collect::<Result<Vec<_>>>()?;
        let module_index = rep
            .weights()
            .iter()
            .enumerate()
            .map(|(m, w)| (w.clone(), m))
            .collect();
        let pairings = rep
            .weights()
            .iter()
            .map(|w| gamma.gammas.iter().map(|g| w.dot4(g) / 4).collect())
            .collect();
        let hs = pos
            .iter()
            .map(|&i| Self::h_of(e8, i))
            .collect::<Result<Vec<_>>>()?;
        let f2 = Field::prime(2)?;
        // The h_γ have entries in GF(2), so an F2-basis of their span is a basis over any extension.
        let t0 = FieldMatrix::from_rows(&f2, e8.dim(), &hs)?.row_space_basis();
        let t0 = FieldMatrix::from_rows(field, e8.dim(), &t0.to_rows())?;
        Ok(E8Model {
            field: field.clone(),
            gamma,
            rep,
            pos,
            neg,
            module_index,
            pairings,
            t0,
            weyl: OnceLock::new(),
        })
    }

    fn h_of(e8: &ChevalleyAlgebra, i: usize) -> Result<Vec<Elem>> {
        e8.h(e8.root_system().root(i))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn gamma(&self) -> &GammaSystem {
        &self.gamma
    }

    pub fn e8(&self) -> &ChevalleyAlgebra {
        self.rep.algebra()
    }

    /// The D8 subalgebra acting on the half-spin module.
    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    /// `h_{γ_i}` in E8 coordinates.
    pub fn h_gamma(&self, i: usize) -> Result<Vec<Elem>> {
        Self::h_of(self.e8(), self.pos[i])
    }

    /// Basis (rows, E8 coordinates) of `t_0 = span{h_{γ_i}}`, taken inside the F2-span.
    pub fn t0_basis(&self) -> &FieldMatrix {
        &self.t0
    }

    /// `(dim t_0, totally isotropic, maximal isotropic)`.
    pub fn t0_properties(&self) -> Result<(usize, bool, bool)> {
        let e8 = self.e8();
        let nr = e8.num_roots();
        let rows = self.t0.to_rows();
        let mut iso = true;
        for a in &rows {
            for b in &rows {
                iso &= e8.symplectic_form(a, b)? == 0;
            }
        }
        // The perp of t_0 in t is cut out by ⟨u, ·⟩ for u in t_0.
        let gram = e8.symplectic_gram()?;
        let conds: Vec<Vec<Elem>> = rows
            .iter()
            .map(|u| gram.transpose().mul_vec(&u[nr..]))
            .collect::<Result<_>>()?;
        let perp = FieldMatrix::from_rows(&self.field, e8.rank(), &conds)?.kernel_basis();
        let maximal = iso && perp.rows() == rows.len() && perp.rows() == e8.rank() / 2;
        Ok((rows.len(), iso, maximal))
    }

    /// Validates membership in r°: nonzero coefficients, distinct products and a spanning 2-power tower.
    pub fn r_circ(&self, lambda: Vec<Elem>, mu: Vec<Elem>) -> Result<RCircElement> {
        if lambda.len() != 8 || mu.len() != 8 {
            return Err(Error::Shape("r° elements have 8 + 8 coefficients".into()));
        }
        let q = self.field.order();
        if lambda.iter().chain(&mu).any(|&c| c as usize >= q) {
            return Err(Error::Domain("coefficient outside the field".into()));
        }
        if lambda.iter().chain(&mu).any(|&c| c == 0) {
            return Err(Error::Domain(
                "r° sample coefficients must be nonzero".into(),
            ));
        }
        let x = RCircElement { lambda, mu };
        let p = x.products(&self.field);
        for i in 0..8 {
            for j in 0..i {
                if p[i] == p[j] {
                    return Err(Error::Domain("products λ_i μ_i are not distinct".into()));
                }
            }
        }
        let tower: Vec<Vec<Elem>> = (1..=4)
            .map(|k| self.tower_closed_form(&x, k))
            .collect::<Result<_>>()?;
        if span_dim(&self.field, self.e8().dim(), &tower)? != 4 {
            return Err(Error::Domain("the 2-power tower does not span t_0".into()));
        }
        Ok(x)
    }

    /// Rejection-samples an element of r° from a ChaCha8 stream.
    pub fn sample_r_circ(&self, seed: u64) -> Result<RCircElement> {
        if self.field.order() < 9 {
            return Err(Error::FieldTooSmall(format!(
                "{} has fewer than 9 elements, so 8 distinct nonzero products are impossible",
                self.field.spec()
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = self.field.order() as u32;
        let draw = |rng: &mut ChaCha8Rng| -> Vec<Elem> {
            (0..8)
                .map(|_| (1 + rand::Rng::gen_range(rng, 0..q - 1)) as Elem)
                .collect()
        };
        for _ in 0..MAX_SAMPLE_ATTEMPTS {
            let lambda = draw(&mut rng);
            let mu = draw(&mut rng);
            if let Ok(x) = self.r_circ(lambda, mu) {
                return Ok(x);
            }
        }
        Err(Error::Verification("no r° sample found".into()))
    }

    /// `x` as an E8 element.
    pub fn algebra_element(&self, x: &RCircElement) -> Vec<Elem> {
        let mut v = self.e8().zero();
        for i in 0..8 {
            v[self.pos[i]] = x.lambda[i];
            v[self.neg[i]] = x.mu[i];
        }
        v
    }

    /// `x` as a vector of the half-spin module.
    pub fn module_vector(&self, x: &RCircElement) -> Vec<Elem> {
        let mut v = vec![0; self.rep.dim()];
        for (i, g) in self.gamma.gammas.iter().enumerate() {
            v[self.module_index[g]] = x.lambda[i];
            v[self.module_index[&g.neg()]] = x.mu[i];
        }
        v
    }

    /// `x^{[2]^k}` by iterating the restricted square map of E8.
    pub fn two_power_tower(&self, x: &RCircElement, k: u32) -> Result<Vec<Elem>> {
        if k == 0 {
            return Err(Error::Domain("the tower starts at k = 1".into()));
        }
        let mut y = self.algebra_element(x);
        for _ in 0..k {
            y = self.e8().p_power(&y)?;
        }
        Ok(y)
    }

    /// `Σ (λ_i μ_i)^{2^{k−1}} h_{γ_i}`.
    pub fn tower_closed_form(&self, x: &RCircElement, k: u32) -> Result<Vec<Elem>> {
        if k == 0 {
            return Err(Error::Domain("the tower starts at k = 1".into()));
        }
        let f = &self.field;
        let mut out = self.e8().zero();
        for (i, c) in x.products(f).into_iter().enumerate() {
            let c = f.pow(c, 1u64 << (k - 1));
            for (o, h) in out.iter_mut().zip(self.h_gamma(i)?) {
                *o = f.add(*o, f.mul(c, h));
            }
        }
        Ok(out)
    }

    /// Centralizer of `t_0` in E8 and in the D8 subalgebra, as row bases in E8 coordinates.
    pub fn centralizer_of_t0(&self) -> Result<(FieldMatrix, FieldMatrix)> {
        let e8 = self.e8();
        let full = e8.centralizer(&self.t0.to_rows())?;
        let sub = self.rep.subalgebra_basis().expect("restricted module");
        let mut stacked = FieldMatrix::zeros(&self.field, 0, sub.len());
        for t in self.t0.to_rows() {
            let cols: Vec<Vec<Elem>> = sub
                .iter()
                .map(|b| e8.bracket(&t, b))
                .collect::<Result<_>>()?;
            stacked = stacked.vstack(&FieldMatrix::from_columns(&self.field, e8.dim(), &cols)?)?;
        }
        let ker = stacked.kernel_basis();
        let rows = ker
            .to_rows()
            .iter()
            .map(|c| self.rep.to_ambient(c))
            .collect::<Result<Vec<_>>>()?;
        Ok((full, FieldMatrix::from_rows(&self.field, e8.dim(), &rows)?))
    }

    /// The predicted centralizer in E8: the torus and the `e_{±γ_i}`.
    pub fn predicted_e8_centralizer(&self) -> FieldMatrix {
        let e8 = self.e8();
        let mut rows: Vec<Vec<Elem>> = (0..e8.rank())
            .map(|k| e8.basis_vector(e8.torus_index(k)))
            .collect();
        rows.extend(
            self.pos
                .iter()
                .chain(&self.neg)
                .map(|&i| e8.basis_vector(i)),
        );
        FieldMatrix::from_rows(&self.field, e8.dim(), &rows).expect("basis vectors")
    }

    /// The torus of E8 (rows).
    pub fn torus(&self) -> FieldMatrix {
        let e8 = self.e8();
        let rows: Vec<Vec<Elem>> = (0..e8.rank())
            .map(|k| e8.basis_vector(e8.torus_index(k)))
            .collect();
        FieldMatrix::from_rows(&self.field, e8.dim(), &rows).expect("basis vectors")
    }

    /// Infinitesimal stabilizer of `x` in the D8 subalgebra (rows, E8 coordinates).
    pub fn infinitesimal_stab(&self, x: &RCircElement) -> Result<FieldMatrix> {
        let basis = stab_basis(&self.rep, &self.module_vector(x))?;
        let rows = basis
            .to_rows()
            .iter()
            .map(|c| self.rep.to_ambient(c))
            .collect::<Result<Vec<_>>>()?;
        FieldMatrix::from_rows(&self.field, self.e8().dim(), &rows)
    }

    /// Whether a span is closed under the square map.
    pub fn is_restricted(&self, rows: &FieldMatrix) -> Result<bool> {
        let d = rows.rank();
        for u in rows.to_rows() {
            let sq = self.e8().p_power(&u)?;
            let mut all = rows.to_rows();
            all.push(sq);
            if span_dim(&self.field, self.e8().dim(), &all)? != d {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Weyl elements of D8 mapping `±Γ` onto itself, by backtracking over coordinate images.
    pub fn gamma_preserving_weyl(&self) -> &[SignedPerm] {
        self.weyl
            .get_or_init(|| gamma_preserving_weyl(&self.gamma.h8))
    }

    /// `β(h)` for a module weight, from `β = ½ Σ (β|γ_i) γ_i`.
    fn weight_value(&self, m: usize, t: &[Elem]) -> Result<Elem> {
        let f = &self.field;
        let mut acc: Elem = 1;
        for (i, &e) in self.pairings[m].iter().enumerate() {
            let base = if e < 0 { f.inv(t[i])? } else { t[i] };
            acc = f.mul(acc, f.pow(base, e.unsigned_abs()));
        }
        f.sqrt(acc)
    }

    pub fn module_map(&self, n: &MonomialElement) -> Result<ModuleMap> {
        let dim = self.rep.dim();
        let mut target = vec![0; dim];
        let mut scale = vec![0; dim];
        for (m, w) in self.rep.weights().iter().enumerate() {
            let img = n.w.apply(w);
            target[m] = *self.module_index.get(&img).ok_or_else(|| {
                Error::Verification("Weyl element leaves the module weights".into())
            })? as u32;
            scale[m] = self.weight_value(m, &n.t)?;
        }
        Ok(ModuleMap { target, scale })
    }

    /// The unique torus point making `w h` fix `x`, if any.
    pub fn solve_torus(&self, w: &SignedPerm, x: &RCircElement) -> Result<Option<Vec<Elem>>> {
        let f = &self.field;
        let coef = |v: &RootVec| -> Option<Elem> {
            self.gamma
                .gammas
                .iter()
                .position(|g| g == v)
                .map(|i| x.lambda[i])
                .or_else(|| {
                    self.gamma
                        .gammas
                        .iter()
                        .position(|g| g.neg() == *v)
                        .map(|i| x.mu[i])
                })
        };
        let mut t = Vec::with_capacity(8);
        for (i, g) in self.gamma.gammas.iter().enumerate() {
            let img = w.apply(g);
            let (Some(a), Some(b)) = (coef(&img), coef(&img.neg())) else {
                return Ok(None);
            };
            // λ_i t_i = coef(wγ_i) and μ_i / t_i = coef(−wγ_i).
            let ti = f.div(a, x.lambda[i])?;
            if f.mul(b, ti) != x.mu[i] {
                return Ok(None);
            }
            t.push(ti);
        }
        Ok(Some(t))
    }

    /// All `w h ∈ N_G(T)` fixing `x`, sorted by `(w, h)`, each checked on the module.
    pub fn group_stab_enum(&self, x: &RCircElement) -> Result<Vec<MonomialElement>> {
        let v = self.module_vector(x);
        let mut out = Vec::new();
        for w in self.gamma_preserving_weyl() {
            if let Some(t) = self.solve_torus(w, x)? {
                let n = MonomialElement { w: w.clone(), t };
                if self.module_map(&n)?.apply(&self.field, &v) != v {
                    return Err(Error::Verification("solved element does not fix x".into()));
                }
                out.push(n);
            }
        }
        out.sort();
        Ok(out)
    }

    /// The lifts `n_0` of `w_0 = −Id` and `n_1, n_2, n_3` of `σ_1, σ_2, σ_3`.
    pub fn named_lifts(&self, x: &RCircElement) -> Result<Vec<MonomialElement>> {
        let f = &self.field;
        let t0: Vec<Elem> = (0..8)
            .map(|i| f.div(x.mu[i], x.lambda[i]))
            .collect::<Result<_>>()?;
        let mut out = vec![MonomialElement {
            w: SignedPerm::negation(8)?,
            t: t0,
        }];
        for sigma in named_involutions() {
            let t = self.solve_torus(&sigma, x)?.ok_or_else(|| {
                Error::Verification("named involution has no lift fixing x".into())
            })?;
            out.push(MonomialElement { w: sigma, t });
        }
        Ok(out)
    }

    /// `b_i = sqrt((μ_i λ'_i) / (λ_i μ'_i))`, so that `h(b) G_x h(b)^{-1} = G_{x'}`.
    pub fn conjugating_point(&self, x: &RCircElement, y: &RCircElement) -> Result<Vec<Elem>> {
        let f = &self.field;
        (0..8)
            .map(|i| {
                let num = f.mul(x.mu[i], y.lambda[i]);
                let den = f.mul(x.lambda[i], y.mu[i]);
                f.sqrt(f.div(num, den)?)
            })
            .collect()
    }

    /// Checks `h G_x h^{-1} = G_y` element by element for `h = h(b)`.
    pub fn conjugate_witnesses(
        &self,
        x: &RCircElement,
        y: &RCircElement,
    ) -> Result<(Vec<Elem>, bool)> {
        let b = self.conjugating_point(x, y)?;
        let f = &self.field;
        let h = self.module_map(&MonomialElement {
            w: SignedPerm::identity(8),
            t: b.clone(),
        })?;
        let h_inv = h.inverse(f)?;
        let gx = self.group_stab_enum(x)?;
        let gy: Vec<ModuleMap> = self
            .group_stab_enum(y)?
            .iter()
            .map(|n| self.module_map(n))
            .collect::<Result<_>>()?;
        let mut hit = vec![false; gy.len()];
        let mut ok = gx.len() == gy.len();
        for n in &gx {
            let c = h.compose(f, &self.module_map(n)?.compose(f, &h_inv));
            match gy.iter().position(|g| *g == c) {
                Some(k) if !hit[k] => hit[k] = true,
                _ => ok = false,
            }
        }
        Ok((b, ok && hit.iter().all(|&h| h)))
    }
}

/// `σ_1 = (1,5)(2,6)(3,7)(4,8)`, `σ_2 = (1,4)(2,3)(5,8)(6,7)`, `σ_3 = (1,2)(3,4)(5,6)(7,8)`.
pub fn named_involutions() -> Vec<SignedPerm> {
    let cycles: [[(usize, usize); 4]; 3] = [
        [(1, 5), (2, 6), (3, 7), (4, 8)],
        [(1, 4), (2, 3), (5, 8), (6, 7)],
        [(1, 2), (3, 4), (5, 6), (7, 8)],
    ];
    cycles
        .iter()
        .map(|cs| {
            let mut perm: Vec<usize> = (0..8).collect();
            for &(a, b) in cs {
                perm[a - 1] = b - 1;
                perm[b - 1] = a - 1;
            }
            SignedPerm {
                perm,
                signs: vec![1; 8],
            }
        })
        .collect()
}

/// Backtracking search for signed permutations with an even number of sign changes
/// sending every row of `h` to plus or minus a row.
pub fn gamma_preserving_weyl(h: &[Vec<i32>]) -> Vec<SignedPerm> {
    let rows: Vec<Vec<i32>> = h
        .iter()
        .flat_map(|r| [r.clone(), r.iter().map(|x| -x).collect()])
        .collect();
    let n = h.len();
    let first: Vec<(usize, i8)> = (0..n).flat_map(|p| [(p, 1i8), (p, -1i8)]).collect();
    let mut out: Vec<SignedPerm> = std::thread::scope(|s| {
        let handles: Vec<_> = first
            .iter()
            .map(|&(p, sgn)| {
                let rows = &rows;
                s.spawn(move || {
                    let mut found = Vec::new();
                    let mut perm = vec![usize::MAX; n];
                    let mut signs = vec![1i8; n];
                    let mut used = vec![false; n];
                    perm[0] = p;
                    signs[0] = sgn;
                    used[p] = true;
                    if consistent(h, rows, &perm, &signs, 1) {
                        extend(h, rows, &mut perm, &mut signs, &mut used, 1, &mut found);
                    }
                    found
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("search worker"))
            .collect()
    });
    out.sort();
    out
}

fn consistent(h: &[Vec<i32>], rows: &[Vec<i32>], perm: &[usize], signs: &[i8], k: usize) -> bool {
    h.iter().all(|r| {
        rows.iter()
            .any(|c| (0..k).all(|j| c[perm[j]] == r[j] * signs[j] as i32))
    })
}

fn extend(
    h: &[Vec<i32>],
    rows: &[Vec<i32>],
    perm: &mut Vec<usize>,
    signs: &mut Vec<i8>,
    used: &mut Vec<bool>,
    k: usize,
    out: &mut Vec<SignedPerm>,
) {
    let n = perm.len();
    if k == n {
        if signs.iter().filter(|&&s| s == -1).count() % 2 == 0 {
            out.push(SignedPerm {
                perm: perm.clone(),
                signs: signs.clone(),
            });
        }
        return;
    }
    for p in 0..n {
        if used[p] {
            continue;
        }
        for s in [1i8, -1] {
            perm[k] = p;
            signs[k] = s;
            if consistent(h, rows, perm, signs, k + 1) {
                used[p] = true;
                extend(h, rows, perm, signs, used, k + 1, out);
                used[p] = false;
            }
        }
    }
    perm[k] = usize::MAX;
    signs[k] = 1;
}
