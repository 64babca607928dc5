use std::sync::Arc;

use super::lattice::{CharacterLattice, LatticeKind};
use super::roots::{RootSystem, RootSystemKind, RootVec};
use crate::error::{Error, Result};
use crate::exactlin::FieldMatrix;
use crate::field::{Elem, Field};

/// Integral structure constants `N_{α,β}` of a simply laced root system.
///
/// Signs come from the bimultiplicative cocycle `ε(α,β) = (-1)^{a·C·b}`, where
/// `C` is the upper-triangular part of the Cartan matrix mod 2 with ones on the
/// diagonal, rescaled so that `[e_α, e_{-α}] = h_α` for every root.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    n: usize,
    table: Vec<i8>,
}

impl StructureConstants {
    pub fn new(rs: &RootSystem) -> Self {
        let rank = rs.rank();
        let cartan = rs.cartan();
        let n = rs.len();
        let cocycle = |a: &[i32], b: &[i32]| -> i32 {
            let mut s = 0i32;
            for i in 0..rank {
                for j in i..rank {
                    let c = i == j || cartan[i][j] == -1;
                    if c {
                        s += a[i] * b[j];
                    }
                }
            }
            if s.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }
        };
        let sign = |i: usize| if rs.is_positive(i) { 1 } else { -1 };
        let mut table = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                let sum = rs.root(i).add(rs.root(j));
                if let Some(k) = rs.index_of(&sum) {
                    let e = cocycle(rs.coefficients(i), rs.coefficients(j));
                    table[i * n + j] = (sign(i) * sign(j) * sign(k) * e) as i8;
                }
            }
        }
        StructureConstants { n, table }
    }

    /// `N_{α_i, α_j}`; zero unless `α_i + α_j` is a root.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.table[i * self.n + j] as i32
    }

    /// Nonzero constants as triples `(i, j, N)`.
    pub fn triples(&self) -> Vec<(usize, usize, i32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let c = self.get(i, j);
                if c != 0 {
                    out.push((i, j, c));
                }
            }
        }
        out
    }
}

/// Shorthand for [`StructureConstants::new`].
pub fn chevalley_constants(rs: &RootSystem) -> StructureConstants {
    StructureConstants::new(rs)
}

/// The Chevalley Z-form: everything that does not depend on the field.
#[derive(Debug)]
pub struct ZForm {
    roots: RootSystem,
    lattice: CharacterLattice,
    constants: StructureConstants,
    /// `[b_i, b_j]` as sparse integer vectors, row-major over the basis.
    table: Vec<Vec<(u32, i32)>>,
    /// `h_α` in cobasis coordinates.
    coroots: Vec<Vec<i64>>,
    /// `(α | y_k)`.
    pairings: Vec<Vec<i64>>,
}

impl ZForm {
    fn new(roots: RootSystem, lattice: CharacterLattice) -> Result<Self> {
        let nr = roots.len();
        let rank = roots.rank();
        let dim = nr + rank;
        let constants = StructureConstants::new(&roots);
        let mut coroots = Vec::with_capacity(nr);
        let mut pairings = Vec::with_capacity(nr);
        for a in roots.roots() {
            let c = lattice.cocoordinates(a).ok_or_else(|| {
                Error::InvalidLattice(format!("coroot {a} not in the cocharacter lattice"))
            })?;
            coroots.push(c);
            let p = lattice
                .cobasis()
                .iter()
                .map(|y| {
                    a.inner(y).ok_or_else(|| {
                        Error::InvalidLattice(format!("root {a} pairs non-integrally"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            pairings.push(p);
        }
        let mut table = vec![Vec::new(); dim * dim];
        for i in 0..nr {
            for j in 0..nr {
                let entry = &mut table[i * dim + j];
                if j == roots.negative_of(i) {
                    for (k, &c) in coroots[i].iter().enumerate() {
                        if c != 0 {
                            entry.push(((nr + k) as u32, c as i32));
                        }
                    }
                } else {
                    let n = constants.get(i, j);
                    if n != 0 {
                        let k = roots
                            .index_of(&roots.root(i).add(roots.root(j)))
                            .expect("sum is a root");
                        entry.push((k as u32, n));
                    }
                }
            }
            for k in 0..rank {
                let c = pairings[i][k] as i32;
                if c != 0 {
                    table[i * dim + nr + k].push((i as u32, -c));
                    table[(nr + k) * dim + i].push((i as u32, c));
                }
            }
        }
        Ok(ZForm {
            roots,
            lattice,
            constants,
            table,
            coroots,
            pairings,
        })
    }
}

/// A Chevalley Lie algebra over a finite field.
///
/// The basis is `e_α` for the roots in [`RootSystem`] order, followed by the
/// cobasis `t_1..t_r` of the cocharacter lattice. Elements are coordinate
/// vectors of length [`ChevalleyAlgebra::dim`].
#[derive(Debug, Clone)]
pub struct ChevalleyAlgebra {
    z: Arc<ZForm>,
    field: Field,
    reduced: Arc<Vec<Vec<(u32, Elem)>>>,
}

impl ChevalleyAlgebra {
    pub fn new(kind: RootSystemKind, lattice: LatticeKind, field: &Field) -> Result<Self> {
        let rs = RootSystem::new(kind)?;
        let lat = CharacterLattice::new(&rs, lattice)?;
        Self::from_parts(rs, lat, field)
    }

    pub fn from_parts(rs: RootSystem, lattice: CharacterLattice, field: &Field) -> Result<Self> {
        let z = Arc::new(ZForm::new(rs, lattice)?);
        Ok(Self::with_zform(z, field))
    }

    fn with_zform(z: Arc<ZForm>, field: &Field) -> Self {
        let reduced = z
            .table
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|&(k, c)| (k, field.from_int(c as i64)))
                    .filter(|&(_, c)| c != 0)
                    .collect()
            })
            .collect();
        ChevalleyAlgebra {
            z,
            field: field.clone(),
            reduced: Arc::new(reduced),
        }
    }

    /// The same Z-form reduced over another field.
    pub fn over(&self, field: &Field) -> Self {
        Self::with_zform(self.z.clone(), field)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.z.roots
    }

    pub fn lattice(&self) -> &CharacterLattice {
        &self.z.lattice
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.z.constants
    }

    pub fn rank(&self) -> usize {
        self.z.roots.rank()
    }

    pub fn num_roots(&self) -> usize {
        self.z.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.num_roots() + self.rank()
    }

    pub fn same_algebra(&self, other: &ChevalleyAlgebra) -> bool {
        Arc::ptr_eq(&self.z, &other.z) && self.field.spec() == other.field.spec()
    }

    /// Basis index of `e_α`.
    pub fn root_index(&self, alpha: &RootVec) -> Option<usize> {
        self.z.roots.index_of(alpha)
    }

    /// Basis index of the torus element `t_k`.
    pub fn torus_index(&self, k: usize) -> usize {
        self.num_roots() + k
    }

    pub fn is_torus_index(&self, i: usize) -> bool {
        i >= self.num_roots()
    }

    pub fn zero(&self) -> Vec<Elem> {
        vec![0; self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    /// `h_α = [e_α, e_{-α}]` in cobasis coordinates over Z.
    pub fn coroot_coordinates(&self, i: usize) -> &[i64] {
        &self.z.coroots[i]
    }

    /// `(α_i | y_k)` for every torus basis element.
    pub fn root_pairings(&self, i: usize) -> &[i64] {
        &self.z.pairings[i]
    }

    /// `h_α` as an algebra element.
    pub fn h(&self, alpha: &RootVec) -> Result<Vec<Elem>> {
        let i = self
            .root_index(alpha)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a root")))?;
        let mut v = self.zero();
        for (k, &c) in self.z.coroots[i].iter().enumerate() {
            v[self.num_roots() + k] = self.field.from_int(c);
        }
        Ok(v)
    }

    /// `[b_i, b_j]` with coefficients reduced into the field.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(u32, Elem)] {
        &self.reduced[i * self.dim() + j]
    }

    /// `[b_i, b_j]` over Z.
    pub fn bracket_basis_z(&self, i: usize, j: usize) -> &[(u32, i32)] {
        &self.z.table[i * self.dim() + j]
    }

    fn check(&self, x: &[Elem]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::MixedAlgebras);
        }
        Ok(())
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.iter()
            .zip(b)
            .map(|(&x, &y)| self.field.add(x, y))
            .collect())
    }

    pub fn scale(&self, c: Elem, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn bracket(&self, a: &[Elem], b: &[Elem]) -> Result<Vec<Elem>> {
        self.check(a)?;
        self.check(b)?;
        let f = &self.field;
        let mut out = self.zero();
        let bs: Vec<(usize, Elem)> = b
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for &(j, bj) in &bs {
                let c = f.mul(ai, bj);
                for &(k, s) in self.bracket_basis(i, j) {
                    let k = k as usize;
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        Ok(out)
    }

    /// Matrix of `ad(x)`: column j is `[x, b_j]`.
    pub fn ad_matrix(&self, x: &[Elem]) -> Result<FieldMatrix> {
        self.check(x)?;
        let f = &self.field;
        let dim = self.dim();
        let mut m = FieldMatrix::zeros(f, dim, dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..dim {
                for &(k, s) in self.bracket_basis(i, j) {
                    let k = k as usize;
                    let cur = m.get(k, j);
                    m.set(k, j, f.add(cur, f.mul(xi, s)));
                }
            }
        }
        Ok(m)
    }

    /// The restricted p-th power map.
    pub fn p_power(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.check(x)?;
        if self.field.characteristic() == 2 {
            Ok(self.square_map(x))
        } else {
            self.p_power_from_ad(x)
        }
    }

    // Jacobson expansion: (Σ c_i b_i)^[2] = Σ c_i² b_i^[2] + Σ_{i<j} c_i c_j [b_i, b_j],
    // with e_α^[2] = 0 and t_k^[2] = t_k.
    fn square_map(&self, x: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let nr = self.num_roots();
        let mut out = self.zero();
        let support: Vec<(usize, Elem)> = x
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, c)| c != 0)
            .collect();
        for &(i, c) in &support {
            if i >= nr {
                out[i] = f.add(out[i], f.mul(c, c));
            }
        }
        for (a, &(i, ci)) in support.iter().enumerate() {
            for &(j, cj) in &support[a + 1..] {
                let c = f.mul(ci, cj);
                for &(k, s) in self.bracket_basis(i, j) {
                    let k = k as usize;
                    out[k] = f.add(out[k], f.mul(c, s));
                }
            }
        }
        out
    }

    // For odd p the map is determined by ad(x^[p]) = ad(x)^p on a centerless algebra.
    fn p_power_from_ad(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        let f = &self.field;
        let p = f.characteristic();
        let nr = self.num_roots();
        let rank = self.rank();
        let target = self.ad_matrix(x)?.pow(p)?;
        let mut y = self.zero();
        // Root part from the images of torus elements: [y, t_k] = -Σ y_α (α|y_k) e_α.
        for a in 0..nr {
            let k = (0..rank)
                .find(|&k| f.from_int(self.z.pairings[a][k]) != 0)
                .ok_or_else(|| {
                    Error::Unsupported("root vanishes on the torus; p-map undetermined".into())
                })?;
            let pair = f.from_int(self.z.pairings[a][k]);
            y[a] = f.div(f.neg(target.get(a, nr + k)), pair)?;
        }
        // Torus part from [y, e_{α_i}] on e_{α_i}: Σ_k y_k (α_i|y_k).
        let simple = self.z.roots.simple();
        let rows: Vec<Vec<Elem>> = simple
            .iter()
            .map(|&s| {
                (0..rank)
                    .map(|k| f.from_int(self.z.pairings[s][k]))
                    .collect()
            })
            .collect();
        let sys = FieldMatrix::from_rows(f, rank, &rows)?;
        let rhs: Vec<Elem> = simple.iter().map(|&s| target.get(s, s)).collect();
        let t = sys
            .solve(&rhs)?
            .ok_or_else(|| Error::Verification("no torus part reproduces ad(x)^p".into()))?;
        y[nr..].copy_from_slice(&t);
        if self.ad_matrix(&y)?.to_rows() != target.to_rows() {
            return Err(Error::Verification("ad(x)^p is not inner".into()));
        }
        Ok(y)
    }

    /// Basis (rows) of the center, the common kernel of ad over a generating set.
    ///
    /// `e_{±α_i}` and the torus basis generate the algebra over Z, so their
    /// centralizer is the center.
    pub fn center(&self) -> Result<FieldMatrix> {
        let rs = &self.z.roots;
        let mut gens: Vec<usize> = rs.simple().to_vec();
        gens.extend(rs.simple().iter().map(|&s| rs.negative_of(s)));
        gens.extend((0..self.rank()).map(|k| self.torus_index(k)));
        self.centralizer_of_basis(&gens)
    }

    /// Basis (rows) of the centralizer of a set of basis elements.
    pub fn centralizer_of_basis(&self, gens: &[usize]) -> Result<FieldMatrix> {
        let elems: Vec<Vec<Elem>> = gens.iter().map(|&g| self.basis_vector(g)).collect();
        self.centralizer(&elems)
    }

    /// Basis (rows) of the centralizer of arbitrary elements.
    pub fn centralizer(&self, elems: &[Vec<Elem>]) -> Result<FieldMatrix> {
        let dim = self.dim();
        let mut stacked = FieldMatrix::zeros(&self.field, 0, dim);
        for g in elems {
            stacked = stacked.vstack(&self.ad_matrix(g)?)?;
        }
        Ok(stacked.kernel_basis())
    }

    /// Gram matrix `(y_k | y_l)` reduced mod 2.
    pub fn symplectic_gram(&self) -> Result<FieldMatrix> {
        if self.field.characteristic() != 2 {
            return Err(Error::Unsupported(
                "the torus form is defined in characteristic 2 only".into(),
            ));
        }
        let g4 = self.z.lattice.cogram4();
        let rank = self.rank();
        let mut rows = Vec::with_capacity(rank);
        for row in &g4 {
            let mut r = Vec::with_capacity(rank);
            for &v in row {
                if v % 4 != 0 {
                    return Err(Error::InvalidLattice(
                        "cocharacter lattice is not integral".into(),
                    ));
                }
                r.push(self.field.from_int(v / 4));
            }
            rows.push(r);
        }
        FieldMatrix::from_rows(&self.field, rank, &rows)
    }

    /// The alternating form `⟨t1, t2⟩` on torus elements in characteristic 2.
    pub fn symplectic_form(&self, t1: &[Elem], t2: &[Elem]) -> Result<Elem> {
        self.check(t1)?;
        self.check(t2)?;
        let nr = self.num_roots();
        if t1[..nr].iter().chain(&t2[..nr]).any(|&c| c != 0) {
            return Err(Error::Domain("symplectic form takes torus elements".into()));
        }
        let g = self.symplectic_gram()?;
        let f = &self.field;
        let gt = g.mul_vec(&t2[nr..])?;
        Ok(t1[nr..]
            .iter()
            .zip(&gt)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z_jacobi(alg: &ChevalleyAlgebra, i: usize, j: usize, k: usize) -> Vec<i64> {
        let dim = alg.dim();
        let br = |u: &[i64], b: usize| -> Vec<i64> {
            let mut out = vec![0i64; dim];
            for (a, &c) in u.iter().enumerate() {
                if c != 0 {
                    for &(t, s) in alg.bracket_basis_z(a, b) {
                        out[t as usize] += c * s as i64;
                    }
                }
            }
            out
        };
        let unit = |a: usize| {
            let mut v = vec![0i64; dim];
            v[a] = 1;
            v
        };
        // [[i,j],k] + [[j,k],i] + [[k,i],j]
        let a = br(&br(&unit(i), j), k);
        let b = br(&br(&unit(j), k), i);
        let c = br(&br(&unit(k), i), j);
        (0..dim).map(|t| a[t] + b[t] + c[t]).collect()
    }

    #[test]
    fn constants_basic_properties() {
        let rs = RootSystem::new(RootSystemKind::E8).unwrap();
        let n = StructureConstants::new(&rs);
        for i in 0..rs.len() {
            for j in 0..rs.len() {
                let c = n.get(i, j);
                let is_root = rs.index_of(&rs.root(i).add(rs.root(j))).is_some();
                assert_eq!(c != 0, is_root);
                assert!(c.abs() <= 1);
                assert_eq!(c, -n.get(j, i));
            }
        }
    }

    #[test]
    fn jacobi_exhaustive_d4() {
        let alg = ChevalleyAlgebra::new(
            RootSystemKind::D(4),
            LatticeKind::SimplyConnected,
            &Field::prime(7).unwrap(),
        )
        .unwrap();
        let dim = alg.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    assert!(
                        z_jacobi(&alg, i, j, k).iter().all(|&x| x == 0),
                        "({i},{j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn jacobi_sampled_e8() {
        let alg = ChevalleyAlgebra::new(
            RootSystemKind::E8,
            LatticeKind::Adjoint,
            &Field::prime(2).unwrap(),
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10_000 {
            let (i, j, k) = (
                rng.gen_range(0..248),
                rng.gen_range(0..248),
                rng.gen_range(0..248),
            );
            assert!(z_jacobi(&alg, i, j, k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn dimensions() {
        let f2 = Field::prime(2).unwrap();
        for (kind, dim) in [
            (RootSystemKind::D(8), 120),
            (RootSystemKind::D(10), 190),
            (RootSystemKind::E8, 248),
        ] {
            let alg = ChevalleyAlgebra::new(kind, LatticeKind::SimplyConnected, &f2).unwrap();
            assert_eq!(alg.dim(), dim);
        }
    }

    #[test]
    fn coroot_brackets() {
        let f = Field::prime(7).unwrap();
        let alg = ChevalleyAlgebra::new(RootSystemKind::D(5), LatticeKind::Adjoint, &f).unwrap();
        let rs = alg.root_system().clone();
        for i in 0..rs.len() {
            let e = alg.basis_vector(i);
            let fneg = alg.basis_vector(rs.negative_of(i));
            let h = alg.bracket(&e, &fneg).unwrap();
            assert_eq!(h, alg.h(rs.root(i)).unwrap());
            // [h_α, e_α] = 2 e_α
            let he = alg.bracket(&h, &e).unwrap();
            assert_eq!(he, alg.scale(2, &e));
        }
    }

    #[test]
    fn square_map_on_basis() {
        let f = Field::prime(2).unwrap();
        let alg = ChevalleyAlgebra::new(RootSystemKind::E8, LatticeKind::Adjoint, &f).unwrap();
        for i in 0..alg.num_roots() {
            assert!(alg
                .p_power(&alg.basis_vector(i))
                .unwrap()
                .iter()
                .all(|&c| c == 0));
            let h = alg.h(alg.root_system().root(i)).unwrap();
            assert_eq!(alg.p_power(&h).unwrap(), h);
        }
    }

    #[test]
    fn jacobson_formula_random_pairs() {
        let f = Field::prime(2).unwrap();
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(6), LatticeKind::SimplyConnected, &f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let x: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
            let y: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
            let lhs = alg.p_power(&alg.add(&x, &y).unwrap()).unwrap();
            let rhs = alg
                .add(
                    &alg.add(&alg.p_power(&x).unwrap(), &alg.p_power(&y).unwrap())
                        .unwrap(),
                    &alg.bracket(&x, &y).unwrap(),
                )
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn p_map_matches_ad_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, kind, lat) in [
            (2, RootSystemKind::D(5), LatticeKind::SimplyConnected),
            (2, RootSystemKind::D(4), LatticeKind::HalfSpin),
            (3, RootSystemKind::D(4), LatticeKind::Adjoint),
            (7, RootSystemKind::D(5), LatticeKind::SimplyConnected),
        ] {
            let f = Field::prime(p).unwrap();
            let alg = ChevalleyAlgebra::new(kind, lat, &f).unwrap();
            for _ in 0..20 {
                let x: Vec<Elem> = (0..alg.dim()).map(|_| f.random(&mut rng)).collect();
                let xp = alg.p_power(&x).unwrap();
                let lhs = alg.ad_matrix(&xp).unwrap();
                let rhs = alg.ad_matrix(&x).unwrap().pow(p).unwrap();
                assert_eq!(lhs.to_rows(), rhs.to_rows());
            }
        }
    }

    #[test]
    fn centers() {
        let f2 = Field::prime(2).unwrap();
        let e8 = ChevalleyAlgebra::new(RootSystemKind::E8, LatticeKind::Adjoint, &f2).unwrap();
        assert_eq!(e8.center().unwrap().rows(), 0);
        let sc =
            ChevalleyAlgebra::new(RootSystemKind::D(8), LatticeKind::SimplyConnected, &f2).unwrap();
        assert_eq!(sc.center().unwrap().rows(), 2);
        let hs = ChevalleyAlgebra::new(RootSystemKind::D(8), LatticeKind::HalfSpin, &f2).unwrap();
        assert_eq!(hs.center().unwrap().rows(), 1);
        let f7 = Field::prime(7).unwrap();
        assert_eq!(sc.over(&f7).center().unwrap().rows(), 0);
    }

    #[test]
    fn symplectic_form_properties() {
        let f2 = Field::prime(2).unwrap();
        let e8 = ChevalleyAlgebra::new(RootSystemKind::E8, LatticeKind::Adjoint, &f2).unwrap();
        assert_eq!(e8.symplectic_gram().unwrap().rank(), 8);
        let rs = e8.root_system();
        for i in 0..rs.len() {
            let hi = e8.h(rs.root(i)).unwrap();
            assert_eq!(e8.symplectic_form(&hi, &hi).unwrap(), 0);
            for j in (0..rs.len()).step_by(7) {
                let hj = e8.h(rs.root(j)).unwrap();
                let expected = (rs.root(i).dot4(rs.root(j)) / 4).rem_euclid(2) as Elem;
                assert_eq!(e8.symplectic_form(&hi, &hj).unwrap(), expected);
            }
        }
        // On the simply connected D8 torus the radical is the center.
        let sc =
            ChevalleyAlgebra::new(RootSystemKind::D(8), LatticeKind::SimplyConnected, &f2).unwrap();
        assert_eq!(sc.symplectic_gram().unwrap().rank(), 6);
        let hs = ChevalleyAlgebra::new(RootSystemKind::D(8), LatticeKind::HalfSpin, &f2).unwrap();
        assert_eq!(hs.symplectic_gram().unwrap().rank(), 8);
        let f7 = Field::prime(7).unwrap();
        assert!(e8.over(&f7).symplectic_gram().is_err());
    }

    #[test]
    fn mixed_operands_rejected() {
        let f2 = Field::prime(2).unwrap();
        let a = ChevalleyAlgebra::new(RootSystemKind::D(4), LatticeKind::Adjoint, &f2).unwrap();
        assert!(matches!(
            a.bracket(&[0; 3], &a.zero()),
            Err(Error::MixedAlgebras)
        ));
    }
}
