use serde::{Deserialize, Serialize};

use super::gamma::{mu2_part, sylvester, Check, GammaSystem};
use super::model::{named_involutions, E8Model, ModuleMap, RCircElement};
use crate::error::Result;
use crate::exactlin::FieldMatrix;
use crate::field::{Elem, Field, FieldSpec};

pub const E8_CERTIFICATE_SCHEMA: &str = "spinstab.e8-certificate/1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateOptions {
    pub field: FieldSpec,
    pub seed: u64,
    pub samples: usize,
    /// Highest k for the two-sided check of the 2-power tower.
    pub tower_depth: u32,
    /// Replaces `H_2 ⊗ H_2 ⊗ H_2`; used to confirm that a corrupted matrix is rejected.
    pub hadamard: Option<Vec<Vec<i32>>>,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            field: FieldSpec::binary(5),
            seed: 0,
            samples: 20,
            tower_depth: 8,
            hadamard: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub lambda: Vec<Elem>,
    pub mu: Vec<Elem>,
    pub tower_matches: bool,
    pub stab_dim: usize,
    pub stab_equals_t0: bool,
    pub stab_restricted: bool,
    pub group_order: usize,
    pub elementary_abelian: bool,
    pub named_lifts_present: bool,
    pub weyl_part_diagonal: bool,
    pub weyl_elements_in_a: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartResult {
    pub part: String,
    pub statement: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct E8Certificate {
    pub schema: String,
    pub field: FieldSpec,
    pub seed: u64,
    pub gamma: GammaSystem,
    pub gamma_checks: Vec<Check>,
    pub snf_divisors: Vec<i64>,
    pub t0_dim: usize,
    pub t0_isotropic: bool,
    pub t0_maximal: bool,
    pub centralizer_e8_dim: usize,
    pub centralizer_e8_predicted: bool,
    pub centralizer_d8_dim: usize,
    pub centralizer_d8_is_torus: bool,
    pub gamma_preserving_weyl: usize,
    pub samples: Vec<SampleRecord>,
    pub conjugate_pairs: usize,
    pub conjugate_pairs_verified: usize,
    pub parts: Vec<PartResult>,
}

impl E8Certificate {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.passed)
    }
}

/// Whether two row bases span the same subspace.
pub fn same_span(a: &FieldMatrix, b: &FieldMatrix) -> Result<bool> {
    let ra = a.rank();
    Ok(ra == b.rank() && a.vstack(b)?.rank() == ra)
}

fn part(part: &str, statement: &str, passed: bool) -> PartResult {
    PartResult {
        part: part.into(),
        statement: statement.into(),
        passed,
    }
}

fn sample(model: &E8Model, seed: u64, x: &RCircElement, depth: u32) -> Result<SampleRecord> {
    let f = model.field();
    let mut tower_matches = true;
    for k in 1..=depth {
        tower_matches &= model.two_power_tower(x, k)? == model.tower_closed_form(x, k)?;
    }
    let stab = model.infinitesimal_stab(x)?;
    let stab_equals_t0 = same_span(&stab, model.t0_basis())?;
    let stab_restricted = model.is_restricted(&stab)?;
    let group = model.group_stab_enum(x)?;
    let maps: Vec<ModuleMap> = group
        .iter()
        .map(|n| model.module_map(n))
        .collect::<Result<_>>()?;
    let mut elementary_abelian = maps.iter().all(|m| m.compose(f, m).is_identity());
    for a in &maps {
        for b in &maps {
            elementary_abelian &= a.compose(f, b) == b.compose(f, a);
        }
    }
    let lifts = model.named_lifts(x)?;
    let named_lifts_present = lifts.iter().all(|l| group.contains(l));
    let gammas = &model.gamma().gammas;
    let weyl_part_diagonal = group.iter().all(|n| {
        gammas.iter().all(|g| {
            let img = n.w.apply(g);
            img == *g || img == g.neg()
        })
    });
    let weyl_elements_in_a = group
        .iter()
        .filter(|n| n.w.perm.iter().enumerate().all(|(i, &p)| i == p))
        .count();
    Ok(SampleRecord {
        seed,
        lambda: x.lambda.clone(),
        mu: x.mu.clone(),
        tower_matches,
        stab_dim: stab.rank(),
        stab_equals_t0,
        stab_restricted,
        group_order: group.len(),
        elementary_abelian,
        named_lifts_present,
        weyl_part_diagonal,
        weyl_elements_in_a,
    })
}

/// Runs every check on the orthogonal-root construction and on seeded samples of r°.
pub fn e8_certificate(opts: &CertificateOptions) -> Result<E8Certificate> {
    let field = Field::new(opts.field)?;
    let h8 = opts.hadamard.clone().unwrap_or_else(|| sylvester(3));
    let gamma = GammaSystem::from_hadamard(h8)?;
    let gamma_checks = gamma.checks();
    let gamma_ok = gamma_checks.iter().all(|c| c.passed);
    let snf = mu2_part()?;
    let snf_divisors = snf.divisors_i64();
    let snf_ok = snf_divisors == [1, 1, 1, 1, 2, 2, 2, 2];
    let mut cert = E8Certificate {
        schema: E8_CERTIFICATE_SCHEMA.into(),
        field: opts.field,
        seed: opts.seed,
        gamma,
        gamma_checks,
        snf_divisors,
        t0_dim: 0,
        t0_isotropic: false,
        t0_maximal: false,
        centralizer_e8_dim: 0,
        centralizer_e8_predicted: false,
        centralizer_d8_dim: 0,
        centralizer_d8_is_torus: false,
        gamma_preserving_weyl: 0,
        samples: Vec::new(),
        conjugate_pairs: 0,
        conjugate_pairs_verified: 0,
        parts: Vec::new(),
    };
    if gamma_ok {
        let model = E8Model::new(&field)?;
        let (d, iso, max) = model.t0_properties()?;
        cert.t0_dim = d;
        cert.t0_isotropic = iso;
        cert.t0_maximal = max;
        let (ce8, cd8) = model.centralizer_of_t0()?;
        cert.centralizer_e8_dim = ce8.rank();
        cert.centralizer_e8_predicted = same_span(&ce8, &model.predicted_e8_centralizer())?;
        cert.centralizer_d8_dim = cd8.rank();
        cert.centralizer_d8_is_torus = same_span(&cd8, &model.torus())?;
        cert.gamma_preserving_weyl = model.gamma_preserving_weyl().len();
        let mut xs = Vec::with_capacity(opts.samples);
        for s in 0..opts.samples as u64 {
            let seed = opts.seed.wrapping_add(s);
            let x = model.sample_r_circ(seed)?;
            cert.samples
                .push(sample(&model, seed, &x, opts.tower_depth)?);
            xs.push(x);
        }
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                cert.conjugate_pairs += 1;
                if model.conjugate_witnesses(&xs[i], &xs[j])?.1 {
                    cert.conjugate_pairs_verified += 1;
                }
            }
        }
    }
    let s = &cert.samples;
    let have = gamma_ok && !s.is_empty();
    let all = |p: fn(&SampleRecord) -> bool| have && s.iter().all(p);
    let t0_ok = cert.t0_dim == 4 && cert.t0_isotropic && cert.t0_maximal;
    let centralizers = cert.centralizer_e8_dim == 24
        && cert.centralizer_e8_predicted
        && cert.centralizer_d8_dim == 8
        && cert.centralizer_d8_is_torus;
    cert.parts = vec![
        part(
            "i",
            "the stabilizer of x in HSpin16 is elementary abelian of order 16",
            all(|r| {
                r.group_order == 16
                    && r.elementary_abelian
                    && r.named_lifts_present
                    && r.weyl_part_diagonal
                    && r.weyl_elements_in_a == 2
            }) && centralizers,
        ),
        part(
            "ii",
            "the infinitesimal stabilizer of x is the 4-dimensional toral subalgebra t0",
            t0_ok
                && all(|r| {
                    r.tower_matches && r.stab_dim == 4 && r.stab_equals_t0 && r.stab_restricted
                }),
        ),
        part(
            "iii",
            "stabilizers of two elements of r° are conjugate under the torus",
            have && cert.conjugate_pairs_verified == cert.conjugate_pairs,
        ),
        part(
            "iv",
            "the scheme-theoretic stabilizer is (Z/2)^4 × (μ2)^4: ZΦ/ZΓ ≅ (Z/2)^4",
            gamma_ok && snf_ok,
        ),
    ];
    Ok(cert)
}

/// The three involutions and `−Id` as plain signed permutations, for reporting.
pub fn named_weyl_elements() -> Vec<crate::chevalley::SignedPerm> {
    let mut out = vec![crate::chevalley::SignedPerm::negation(8).expect("even rank")];
    out.extend(named_involutions());
    out
}
