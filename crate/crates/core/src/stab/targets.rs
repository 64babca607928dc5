use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::report::{search_generic_stab, SearchOptions, StabilizerReport};
use crate::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystemKind};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::spinrep::{
    b_type_subalgebra, direct_sum, halfspin_rep_on, standard_anisotropic, vector_rep_on, Parity,
    Representation,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isogeny {
    Spin,
    HSpin,
}

impl fmt::Display for Isogeny {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Isogeny::Spin => "spin",
            Isogeny::HSpin => "hspin",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub n: usize,
    pub isogeny: Isogeny,
}

impl GroupSpec {
    pub fn spin(n: usize) -> Self {
        GroupSpec {
            n,
            isogeny: Isogeny::Spin,
        }
    }

    pub fn hspin(n: usize) -> Self {
        GroupSpec {
            n,
            isogeny: Isogeny::HSpin,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 6 {
            return Err(Error::Domain(format!("n = {} is below 6", self.n)));
        }
        if self.isogeny == Isogeny::HSpin && !self.n.is_multiple_of(4) {
            return Err(Error::InvalidLattice(format!(
                "HSpin_{} needs n divisible by 4",
                self.n
            )));
        }
        Ok(())
    }
}

pub fn group_name(g: &GroupSpec) -> String {
    match g.isogeny {
        Isogeny::Spin => format!("Spin{}", g.n),
        Isogeny::HSpin => format!("HSpin{}", g.n),
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&group_name(self))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace(['_', '-'], "");
        let (iso, digits) = if let Some(d) = t.strip_prefix("hspin") {
            (Isogeny::HSpin, d)
        } else if let Some(d) = t.strip_prefix("spin") {
            (Isogeny::Spin, d)
        } else {
            return Err(Error::Domain(format!("unknown group {s}")));
        };
        let n = digits
            .parse()
            .map_err(|_| Error::Domain(format!("unknown group {s}")))?;
        let g = GroupSpec { n, isogeny: iso };
        g.validate()?;
        Ok(g)
    }
}

/// Module tags. `Spin` and `HalfSpin` both name the (half) spin module, whose
/// type is fixed by the parity of n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepSpec {
    #[serde(rename = "spin")]
    Spin,
    #[serde(rename = "halfspin")]
    HalfSpin,
    #[serde(rename = "vector+halfspin")]
    VectorPlusHalfSpin,
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepSpec::Spin => "spin",
            RepSpec::HalfSpin => "halfspin",
            RepSpec::VectorPlusHalfSpin => "vector+halfspin",
        })
    }
}

impl FromStr for RepSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['_', '-', ' '], "")
            .as_str()
        {
            "spin" => Ok(RepSpec::Spin),
            "halfspin" => Ok(RepSpec::HalfSpin),
            "vector+halfspin" | "vectorhalfspin" | "vector+spin" | "sum" => {
                Ok(RepSpec::VectorPlusHalfSpin)
            }
            _ => Err(Error::Domain(format!("unknown representation {s}"))),
        }
    }
}

/// Builds the module of `group` over `field`.
///
/// Even `n = 2r` uses D_r and its even half-spin module; odd `n = 2r + 1`
/// restricts the D_{r+1} half-spin module to the annihilator of an anisotropic
/// vector.
pub fn build_rep(group: &GroupSpec, rep: RepSpec, field: &Field) -> Result<Representation> {
    group.validate()?;
    let n = group.n;
    let lattice = match group.isogeny {
        Isogeny::Spin => LatticeKind::SimplyConnected,
        Isogeny::HSpin => LatticeKind::HalfSpin,
    };
    if n.is_multiple_of(2) {
        let alg = ChevalleyAlgebra::new(RootSystemKind::D(n / 2), lattice, field)?;
        let half = halfspin_rep_on(&alg, Parity::Even)?;
        match rep {
            RepSpec::Spin | RepSpec::HalfSpin => Ok(half),
            RepSpec::VectorPlusHalfSpin => {
                if group.isogeny == Isogeny::HSpin {
                    return Err(Error::Unsupported(
                        "the vector module is not a representation of HSpin".into(),
                    ));
                }
                direct_sum(&vector_rep_on(&alg)?, &half)
            }
        }
    } else {
        if rep == RepSpec::VectorPlusHalfSpin {
            return Err(Error::Unsupported(
                "vector plus half-spin needs even n".into(),
            ));
        }
        let r = n.div_ceil(2);
        let alg = ChevalleyAlgebra::new(RootSystemKind::D(r), LatticeKind::SimplyConnected, field)?;
        let half = halfspin_rep_on(&alg, Parity::Even)?;
        let (_, restricted) = b_type_subalgebra(&half, &standard_anisotropic(r))?;
        Ok(restricted.with_label("spin"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Target {
    pub group: GroupSpec,
    pub rep: RepSpec,
    pub characteristic: u32,
    pub expected: usize,
    /// Named generic stabilizer, when known.
    pub stabilizer: Option<String>,
    /// The claim this target checks.
    pub claim: String,
}

impl Target {
    pub fn name(&self) -> String {
        format!(
            "{}/{}/char{}",
            group_name(&self.group),
            self.rep,
            self.characteristic
        )
    }
}

fn target(
    group: GroupSpec,
    rep: RepSpec,
    p: u32,
    expected: usize,
    stab: Option<&str>,
    claim: &str,
) -> Target {
    Target {
        group,
        rep,
        characteristic: p,
        expected,
        stabilizer: stab.map(Into::into),
        claim: claim.into(),
    }
}

/// Generic stabilizers of the (half) spin modules for `6 ≤ n ≤ 14` in characteristic 2.
pub fn small_n_targets() -> Vec<Target> {
    let rows: [(usize, usize, &str); 9] = [
        (6, 11, "(SL3)·(Ga)^3"),
        (7, 14, "G2"),
        (8, 21, "Spin7"),
        (9, 21, "Spin7"),
        (10, 29, "(Spin7)·(Ga)^8"),
        (11, 24, "SL5 ⋊ Z/2"),
        (12, 35, "SL6 ⋊ Z/2"),
        (13, 16, "(SL3 × SL3) ⋊ Z/2"),
        (14, 28, "(G2 × G2) ⋊ Z/2"),
    ];
    rows.iter()
        .map(|&(n, d, s)| {
            let claim = format!(
                "generic stabilizer in Spin{n} over characteristic 2 is {s}, of dimension {d}"
            );
            target(GroupSpec::spin(n), RepSpec::Spin, 2, d, Some(s), &claim)
        })
        .collect()
}

/// Cases whose generic stabilizer is certified trivial by a characteristic-2 witness with `Lie(G_v) = 0`.
pub fn certification_targets() -> Vec<Target> {
    let claim = "some vector over a field of characteristic 2 has zero infinitesimal stabilizer";
    let mut out: Vec<Target> = [15, 17, 19]
        .iter()
        .map(|&n| {
            target(
                GroupSpec::spin(n),
                RepSpec::Spin,
                2,
                0,
                Some("trivial"),
                claim,
            )
        })
        .collect();
    out.push(target(
        GroupSpec::spin(18),
        RepSpec::HalfSpin,
        2,
        0,
        Some("trivial"),
        claim,
    ));
    out.push(target(
        GroupSpec::spin(16),
        RepSpec::VectorPlusHalfSpin,
        2,
        0,
        Some("trivial"),
        claim,
    ));
    out.push(target(
        GroupSpec::spin(20),
        RepSpec::VectorPlusHalfSpin,
        2,
        0,
        Some("trivial"),
        claim,
    ));
    out.push(target(
        GroupSpec::hspin(20),
        RepSpec::HalfSpin,
        2,
        0,
        Some("trivial"),
        claim,
    ));
    out
}

/// Spot checks away from characteristic 2, over GF(7).
pub fn odd_characteristic_targets() -> Vec<Target> {
    vec![
        target(
            GroupSpec::hspin(16),
            RepSpec::HalfSpin,
            7,
            0,
            Some("(Z/2)^8"),
            "generic stabilizer of HSpin16 on a half-spin module is finite",
        ),
        target(
            GroupSpec::spin(14),
            RepSpec::Spin,
            7,
            28,
            Some("G2 × G2"),
            "generic stabilizer of Spin14 on a half-spin module is G2 × G2",
        ),
    ]
}

/// Fields tried in order: GF(2), GF(4), GF(16) in characteristic 2, and GF(p) otherwise.
pub fn field_ladder(p: u32) -> Vec<FieldSpec> {
    if p == 2 {
        vec![
            FieldSpec::prime(2),
            FieldSpec::binary(2),
            FieldSpec::binary(4),
        ]
    } else {
        vec![FieldSpec::prime(p)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub target: Target,
    pub passed: bool,
    pub min_dim: usize,
    /// Field of the report that reached the target, if any.
    pub certified_by: Option<FieldSpec>,
    /// One report per field tried.
    pub reports: Vec<StabilizerReport>,
}

/// Runs the field ladder for one target, stopping at the first field whose minimum equals the expectation.
/// The search target in `opts` is replaced by the target's expectation.
pub fn certify_with<F>(
    t: &Target,
    ladder: &[FieldSpec],
    opts: &SearchOptions,
    mut build: F,
) -> Result<Certification>
where
    F: FnMut(&Field) -> Result<Representation>,
{
    if ladder.is_empty() {
        return Err(Error::Domain("empty field ladder".into()));
    }
    let opts = opts.clone().with_target(t.expected);
    let mut reports = Vec::new();
    let mut certified_by = None;
    for spec in ladder {
        let field = Field::new(*spec)?;
        let rep = build(&field)?;
        let mut report = search_generic_stab(&rep, &opts)?;
        report.group = group_name(&t.group);
        report.n = Some(t.group.n);
        report.isogeny = Some(t.group.isogeny.to_string());
        report.rep = t.rep.to_string();
        let hit = report.min_dim <= t.expected;
        reports.push(report);
        if hit {
            certified_by = Some(*spec);
            break;
        }
    }
    let min_dim = reports
        .iter()
        .map(|r| r.min_dim)
        .min()
        .expect("ladder is nonempty");
    Ok(Certification {
        target: t.clone(),
        passed: min_dim == t.expected,
        min_dim,
        certified_by,
        reports,
    })
}

pub fn certify(t: &Target, trials: usize, seed: u64) -> Result<Certification> {
    let ladder = field_ladder(t.characteristic);
    certify_with(t, &ladder, &SearchOptions::new(trials, seed), |f| {
        build_rep(&t.group, t.rep, f)
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetOutcome {
    pub target: String,
    pub expected: usize,
    pub min_dim: usize,
    pub passed: bool,
    pub certified_by: Option<FieldSpec>,
}

impl From<&Certification> for TargetOutcome {
    fn from(c: &Certification) -> Self {
        TargetOutcome {
            target: c.target.name(),
            expected: c.target.expected,
            min_dim: c.min_dim,
            passed: c.passed,
            certified_by: c.certified_by,
        }
    }
}

/// Certifies every target; failures to reach a target are outcomes, not errors.
pub fn verify_targets(targets: &[Target], trials: usize, seed: u64) -> Result<Vec<Certification>> {
    targets.iter().map(|t| certify(t, trials, seed)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!(
            "HSpin20".parse::<GroupSpec>().unwrap(),
            GroupSpec::hspin(20)
        );
        assert_eq!("spin_14".parse::<GroupSpec>().unwrap(), GroupSpec::spin(14));
        assert!("hspin18".parse::<GroupSpec>().is_err());
        assert!("so14".parse::<GroupSpec>().is_err());
        assert_eq!(
            "vector+halfspin".parse::<RepSpec>().unwrap(),
            RepSpec::VectorPlusHalfSpin
        );
        assert_eq!("half-spin".parse::<RepSpec>().unwrap(), RepSpec::HalfSpin);
    }

    #[test]
    fn table_dimensions() {
        let dims: Vec<usize> = small_n_targets().iter().map(|t| t.expected).collect();
        assert_eq!(dims, [11, 14, 21, 21, 29, 24, 35, 16, 28]);
        // Dimensions recomputed from the named groups.
        let (sl3, g2, spin7, sl5, sl6) = (8, 14, 21, 24, 35);
        assert_eq!(
            dims,
            [
                sl3 + 3,
                g2,
                spin7,
                spin7,
                spin7 + 8,
                sl5,
                sl6,
                2 * sl3,
                2 * g2
            ]
        );
    }

    #[test]
    fn module_dimensions() {
        let f = Field::prime(2).unwrap();
        let cases = [
            (GroupSpec::spin(7), RepSpec::Spin, 8, 21),
            (GroupSpec::spin(8), RepSpec::HalfSpin, 8, 28),
            (GroupSpec::spin(12), RepSpec::VectorPlusHalfSpin, 44, 66),
            (GroupSpec::spin(13), RepSpec::Spin, 64, 78),
            (GroupSpec::hspin(12), RepSpec::HalfSpin, 32, 66),
        ];
        for (g, r, dim, adim) in cases {
            let rep = build_rep(&g, r, &f).unwrap();
            assert_eq!((rep.dim(), rep.algebra_dim()), (dim, adim), "{g}");
        }
        assert!(build_rep(&GroupSpec::hspin(12), RepSpec::VectorPlusHalfSpin, &f).is_err());
        assert!(build_rep(&GroupSpec::spin(13), RepSpec::VectorPlusHalfSpin, &f).is_err());
    }

    #[test]
    fn small_table_entries() {
        for t in small_n_targets().iter().filter(|t| t.group.n <= 9) {
            let c = certify(t, 64, 1).unwrap();
            assert!(c.passed, "{}: {}", t.name(), c.min_dim);
        }
    }
}
