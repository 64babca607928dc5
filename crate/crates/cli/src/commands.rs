use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use clap::Parser;
use serde::Serialize;
use spinstab::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystemKind};
use spinstab::edim::{
    ed_hspin_range, ed_range, format_csv, format_table, large_n_inequality, EdResult,
};
use spinstab::premet::{e8_certificate, CertificateOptions, E8Certificate};
use spinstab::spinrep::io::{sha256_hex, CacheEntry, RepCache};
use spinstab::spinrep::{
    halfspin_rep_on, jordan_type, nilpotent_from_partition, spinor_weight, torus_classes,
    unipotent_from_roots, ExponentVector, Parity, Partition, Representation,
};
use spinstab::stab::{
    build_rep, certification_targets, certify_with, field_ladder, fixed_space_dim, group_fixed_dim,
    group_name, odd_characteristic_targets, search_generic_stab, small_n_targets, Certification,
    GroupSpec, RepSpec, SearchOptions, StabilizerReport, Target, TargetOutcome,
};
use spinstab::{Field, FieldSpec, RootVec};

use crate::manifest::RunManifest;
use crate::{
    concordance, Cli, Command, E8Args, EdGroup, EddimArgs, FixedArgs, Outcome, StabArgs, TableArgs,
    TargetSet, EXIT_ERROR, EXIT_MET, EXIT_MISSED,
};

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Stab(a) => stab(cli, a),
        Command::FixedSpace(a) => fixed_space(a),
        Command::Eddim(a) => eddim(a),
        Command::E8Verify(a) => e8_verify(a),
        Command::SpinTable(a) => spin_table(cli, a),
        Command::Concordance => concordance(),
        Command::Replay(_) => bail!("replay cannot be nested"),
    }
}

/// Builds representations, through the cache when one is configured.
struct Builder {
    cache: Option<RepCache>,
    used: Vec<CacheEntry>,
}

impl Builder {
    fn new(cli: &Cli) -> Result<Self> {
        let cache = cli.cache_dir.as_ref().map(RepCache::new).transpose()?;
        Ok(Builder {
            cache,
            used: Vec::new(),
        })
    }

    fn build(
        &mut self,
        group: &GroupSpec,
        rep: RepSpec,
        field: &Field,
    ) -> spinstab::Result<Representation> {
        let Some(cache) = &self.cache else {
            return build_rep(group, rep, field);
        };
        let descriptor = format!("{}/{}/{}", group_name(group), rep, field.spec());
        let (r, entry) = cache.get_or_build(&descriptor, || build_rep(group, rep, field))?;
        if !self.used.contains(&entry) {
            self.used.push(entry);
        }
        Ok(r)
    }
}

fn all_targets() -> Vec<Target> {
    let mut t = small_n_targets();
    t.extend(certification_targets());
    t.extend(odd_characteristic_targets());
    t
}

/// `spin` and `halfspin` name the same module; which one is meant follows from n.
fn same_module(a: RepSpec, b: RepSpec) -> bool {
    let class = |r: RepSpec| r == RepSpec::VectorPlusHalfSpin;
    class(a) == class(b)
}

fn resolve_group(a: &StabArgs) -> Result<GroupSpec> {
    let g = match (a.group.as_deref().map(str::to_ascii_lowercase), a.n) {
        (Some(g), n) if g == "spin" || g == "hspin" => {
            let n = n.ok_or_else(|| anyhow!("--group {g} needs --n"))?;
            if g == "spin" {
                GroupSpec::spin(n)
            } else {
                GroupSpec::hspin(n)
            }
        }
        (Some(g), n) => {
            let spec: GroupSpec = g.parse()?;
            if n.is_some_and(|n| n != spec.n) {
                bail!("--n disagrees with --group {g}");
            }
            spec
        }
        (None, Some(n)) => GroupSpec::spin(n),
        (None, None) => bail!("give --n, --group or --target"),
    };
    g.validate()?;
    Ok(g)
}

fn ladder_for(p: u32, ext: Option<u32>) -> Result<Vec<FieldSpec>> {
    let ladder = match ext {
        None => field_ladder(p),
        Some(1) => vec![FieldSpec::prime(p)],
        Some(e) if p == 2 => vec![FieldSpec::binary(e)],
        Some(e) => bail!("extension fields GF({p}^{e}) are only supported for p = 2"),
    };
    for spec in &ladder {
        Field::new(*spec)?;
    }
    Ok(ladder)
}

#[derive(Serialize)]
struct StabRun {
    schema: &'static str,
    target: String,
    expected: Option<usize>,
    passed: bool,
    min_dim: usize,
    certified_by: Option<FieldSpec>,
    reports: Vec<StabilizerReport>,
}

fn report_line(r: &StabilizerReport) -> String {
    format!(
        "{:<10} module {:>4}  algebra {:>3}  trials {}/{}  min dim {}\n",
        r.field.to_string(),
        r.module_dim,
        r.algebra_dim,
        r.trials_run,
        r.trials,
        r.min_dim
    )
}

pub fn stab(cli: &Cli, a: &StabArgs) -> Result<Outcome> {
    let (target, p) = match &a.target {
        Some(name) => {
            let t = all_targets()
                .into_iter()
                .find(|t| t.name().eq_ignore_ascii_case(name))
                .ok_or_else(|| anyhow!("unknown target {name}"))?;
            let p = t.characteristic;
            (t, p)
        }
        None => {
            let group = resolve_group(a)?;
            let rep: RepSpec = a.rep.parse()?;
            let p = a.characteristic;
            let builtin = all_targets()
                .into_iter()
                .find(|t| t.group == group && t.characteristic == p && same_module(t.rep, rep));
            let t = builtin.unwrap_or(Target {
                group,
                rep,
                characteristic: p,
                expected: usize::MAX,
                stabilizer: None,
                claim: "user-specified".into(),
            });
            (Target { rep, ..t }, p)
        }
    };
    let expected = a
        .expect
        .or((target.expected != usize::MAX).then_some(target.expected));
    let ladder = ladder_for(p, a.field_ext)?;
    let opts = SearchOptions::new(a.trials as usize, a.seed).with_threads(a.threads);
    let mut builder = Builder::new(cli)?;
    let cert = match expected {
        Some(e) => {
            let t = Target {
                expected: e,
                ..target.clone()
            };
            certify_with(&t, &ladder, &opts, |f| builder.build(&t.group, t.rep, f))?
        }
        None => {
            let field = Field::new(ladder[0])?;
            let rep = builder.build(&target.group, target.rep, &field)?;
            let mut r = search_generic_stab(&rep, &opts)?;
            r.group = group_name(&target.group);
            r.n = Some(target.group.n);
            r.isogeny = Some(target.group.isogeny.to_string());
            r.rep = target.rep.to_string();
            Certification {
                target: target.clone(),
                passed: true,
                min_dim: r.min_dim,
                certified_by: None,
                reports: vec![r],
            }
        }
    };
    let run = StabRun {
        schema: "spinstab.stab-run/1",
        target: target.name(),
        expected,
        passed: cert.passed,
        min_dim: cert.min_dim,
        certified_by: cert.certified_by,
        reports: cert.reports,
    };
    let mut text = format!("target    {}\n", run.target);
    if let Some(e) = expected {
        let _ = writeln!(text, "expected  {e}");
    }
    for r in &run.reports {
        text.push_str(&report_line(r));
    }
    match (expected, run.certified_by) {
        (None, _) => {
            let _ = writeln!(text, "result    min dim {} (no target)", run.min_dim);
        }
        (Some(_), Some(f)) if run.passed => {
            let _ = writeln!(text, "result    PASS (reached over {f})");
        }
        _ => {
            let _ = writeln!(text, "result    FAIL (min dim {})", run.min_dim);
        }
    }
    Ok(Outcome {
        passed: run.passed,
        text,
        csv: None,
        json: to_json(&run)?,
        representations: builder.used,
    })
}

#[derive(Serialize)]
struct FixedReport {
    schema: &'static str,
    n: usize,
    mode: &'static str,
    input: String,
    module: &'static str,
    module_dim: usize,
    field: Option<FieldSpec>,
    measure: &'static str,
    value: usize,
    /// Sizes of all eigenspaces (torus mode), largest first.
    eigenspaces: Option<Vec<usize>>,
    jordan_type: Option<String>,
    expected: Option<usize>,
    passed: bool,
}

fn d_algebra(r: usize, field: &Field) -> Result<ChevalleyAlgebra> {
    Ok(ChevalleyAlgebra::new(
        RootSystemKind::D(r),
        LatticeKind::SimplyConnected,
        field,
    )?)
}

/// Weights of the spin module of so_n: half-spin of D_{n/2}, or all ±½ vectors for odd n.
fn spin_weights(n: usize) -> Vec<RootVec> {
    let r = n / 2;
    let all = (0u32..1 << r).map(|m| spinor_weight(r, m));
    if n.is_multiple_of(2) {
        all.filter(|w| w.0.iter().filter(|&&d| d < 0).count() % 2 == 0)
            .collect()
    } else {
        all.collect()
    }
}

pub fn fixed_space(a: &FixedArgs) -> Result<Outcome> {
    if a.n < 5 {
        bail!("fixed-space needs n ≥ 5");
    }
    let module = if a.n.is_multiple_of(2) {
        "halfspin"
    } else {
        "spin"
    };
    let mut rep_out = FixedReport {
        schema: "spinstab.fixed-space/1",
        n: a.n,
        mode: "",
        input: String::new(),
        module,
        module_dim: 0,
        field: None,
        measure: "fixed",
        value: 0,
        eigenspaces: None,
        jordan_type: None,
        expected: a.expect,
        passed: true,
    };
    let mut text = String::new();
    if let Some(p) = &a.partition {
        let field = Field::prime(a.characteristic)?;
        if a.characteristic == 2 {
            bail!("partition mode needs an odd characteristic");
        }
        let lambda: Partition = p.parse::<Partition>()?.padded(a.n)?;
        let alg = d_algebra(a.n.div_ceil(2), &field)?;
        let rep = halfspin_rep_on(&alg, Parity::Even)?;
        let x = nilpotent_from_partition(&alg, &lambda)?;
        let jt = jordan_type(&rep.element_matrix(&x)?)?;
        rep_out.mode = "partition";
        rep_out.input = lambda.to_string();
        rep_out.module_dim = rep.dim();
        rep_out.field = Some(field.spec());
        rep_out.value = fixed_space_dim(&rep, &x)?;
        rep_out.jordan_type = Some(jt.to_string());
        let _ = writeln!(
            text,
            "x         nilpotent {} in so{} over {}",
            lambda,
            a.n,
            field.spec()
        );
        let _ = writeln!(
            text,
            "Jordan    {jt} on the {}-dimensional {module} module",
            rep.dim()
        );
        let _ = writeln!(text, "dim V^x   {}", rep_out.value);
    } else if let Some(c) = &a.torus {
        let c: Vec<i64> = c
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .context("--torus takes comma-separated integers")?;
        let r = a.n / 2;
        if c.len() != r {
            bail!("--torus needs {r} exponents for n = {}", a.n);
        }
        let m = a
            .order
            .unwrap_or(1 + c.iter().map(|x| x.unsigned_abs()).sum::<u64>());
        let ev = ExponentVector::new(c, m)?;
        let weights = spin_weights(a.n);
        let mut sizes: Vec<usize> = torus_classes(&weights, &ev)?.into_values().collect();
        sizes.sort_unstable_by(|x, y| y.cmp(x));
        rep_out.mode = "torus";
        rep_out.input = format!("{:?} mod {m}", ev.c);
        rep_out.module_dim = weights.len();
        rep_out.value = if a.max {
            rep_out.measure = "max-eigenspace";
            sizes[0]
        } else {
            torus_classes(&weights, &ev)?.get(&0).copied().unwrap_or(0)
        };
        rep_out.eigenspaces = Some(sizes.clone());
        let _ = writeln!(
            text,
            "t         exponents {} on the {}-dimensional {module} module",
            rep_out.input,
            weights.len()
        );
        let _ = writeln!(text, "eigen     {sizes:?}");
        let _ = writeln!(
            text,
            "{:<9} {}",
            if a.max { "max" } else { "dim V^t" },
            rep_out.value
        );
    } else if let Some(k) = a.orthogonal_roots {
        if !a.n.is_multiple_of(2) || k == 0 || 2 * k > a.n / 2 {
            bail!("--orthogonal-roots needs even n and 1 ≤ k ≤ n/4");
        }
        let r = a.n / 2;
        let field = Field::prime(2)?;
        let rep = halfspin_rep_on(&d_algebra(r, &field)?, Parity::Even)?;
        let roots: Vec<RootVec> = (0..k)
            .map(|i| {
                let mut v = vec![0; r];
                v[2 * i] = 1;
                v[2 * i + 1] = -1;
                RootVec::from_integer(&v)
            })
            .collect();
        let g = unipotent_from_roots(&rep, &roots)?;
        rep_out.mode = "orthogonal-roots";
        rep_out.input = roots
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        rep_out.module_dim = rep.dim();
        rep_out.field = Some(field.spec());
        rep_out.value = group_fixed_dim(&g)?;
        let _ = writeln!(
            text,
            "g         product of {k} root elements ({}) over GF(2)",
            rep_out.input
        );
        let _ = writeln!(text, "dim V^g   {} of {}", rep_out.value, rep.dim());
    } else {
        bail!("give one of --partition, --torus, --orthogonal-roots");
    }
    if let Some(e) = a.expect {
        rep_out.passed = rep_out.value == e;
        let _ = writeln!(text, "expected  {e}: {}", pass(rep_out.passed));
    }
    Ok(Outcome {
        passed: rep_out.passed,
        text,
        csv: None,
        json: to_json(&rep_out)?,
        representations: Vec::new(),
    })
}

fn parse_range(s: &str) -> Result<(u64, u64)> {
    let bad = || anyhow!("range must look like 15..20, 15..=20 or 17");
    if let Some((lo, hi)) = s.split_once("..") {
        let hi = hi.trim_start_matches('=');
        Ok((
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
        ))
    } else {
        let n = s.trim().parse().map_err(|_| bad())?;
        Ok((n, n))
    }
}

#[derive(Serialize)]
struct InequalityRow {
    n: u64,
    holds: bool,
}

#[derive(Serialize)]
struct EdTable {
    schema: &'static str,
    group: &'static str,
    rows: Vec<EdResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    inequality: Option<Vec<InequalityRow>>,
}

pub fn eddim(a: &EddimArgs) -> Result<Outcome> {
    let (lo, hi) = parse_range(&a.range)?;
    let (group, rows) = match a.group {
        EdGroup::Spin => ("spin", ed_range(lo, hi)?),
        EdGroup::Hspin => ("hspin", ed_hspin_range(lo, hi)?),
    };
    let mut text = format_table(&rows);
    let mut csv = format_csv(&rows);
    let mut passed = true;
    let inequality = if a.inequality {
        let ineq: Vec<InequalityRow> = (lo.max(21)..=hi)
            .map(|n| {
                Ok(InequalityRow {
                    n,
                    holds: large_n_inequality(n)?,
                })
            })
            .collect::<Result<_>>()?;
        if ineq.is_empty() {
            bail!("--inequality needs some n ≥ 21 in the range");
        }
        passed = ineq.iter().all(|r| r.holds);
        let failing: Vec<u64> = ineq.iter().filter(|r| !r.holds).map(|r| r.n).collect();
        let _ = writeln!(
            text,
            "3/4 dim V + dim G - rank < dim V for n in {}..={}: {}{}",
            lo.max(21),
            hi,
            pass(passed),
            if failing.is_empty() {
                String::new()
            } else {
                format!(" (fails at {failing:?})")
            }
        );
        csv.push_str("\nn,inequality_holds\n");
        for r in &ineq {
            let _ = writeln!(csv, "{},{}", r.n, r.holds);
        }
        Some(ineq)
    } else {
        None
    };
    let table = EdTable {
        schema: "spinstab.ed-table/1",
        group,
        rows,
        inequality,
    };
    Ok(Outcome {
        passed,
        text,
        csv: Some(csv),
        json: to_json(&table)?,
        representations: Vec::new(),
    })
}

fn read_hadamard(path: &Path) -> Result<Vec<Vec<i32>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let rows: Vec<Vec<i32>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i32>().with_context(|| format!("bad entry {t:?}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok(rows)
}

fn certificate_text(c: &E8Certificate) -> String {
    let mut t = format!("field     {}  seed {}\n", c.field, c.seed);
    for chk in &c.gamma_checks {
        let _ = writeln!(t, "check     {:<40} {}", chk.name, pass(chk.passed));
    }
    let _ = writeln!(t, "SNF       {:?}", c.snf_divisors);
    let _ = writeln!(
        t,
        "t0        dim {} isotropic {} maximal {}",
        c.t0_dim, c.t0_isotropic, c.t0_maximal
    );
    let _ = writeln!(
        t,
        "centralizers  E8 {}  D8 {}",
        c.centralizer_e8_dim, c.centralizer_d8_dim
    );
    let _ = writeln!(
        t,
        "Weyl elements preserving ±Γ: {}",
        c.gamma_preserving_weyl
    );
    let orders: Vec<usize> = c.samples.iter().map(|s| s.group_order).collect();
    let _ = writeln!(
        t,
        "samples   {}  stabilizer orders {:?}",
        c.samples.len(),
        orders
    );
    let _ = writeln!(
        t,
        "conjugate pairs verified {}/{}",
        c.conjugate_pairs_verified, c.conjugate_pairs
    );
    for p in &c.parts {
        let _ = writeln!(t, "part {:<4} {}: {}", p.part, pass(p.passed), p.statement);
    }
    t
}

pub fn e8_verify(a: &E8Args) -> Result<Outcome> {
    if a.field_ext < 4 {
        bail!(
            "GF(2^{}) has fewer than 9 elements; use --field-ext 4 or more",
            a.field_ext
        );
    }
    let hadamard = a.hadamard.as_deref().map(read_hadamard).transpose()?;
    let opts = CertificateOptions {
        field: FieldSpec::binary(a.field_ext),
        seed: a.seed,
        samples: a.samples as usize,
        tower_depth: a.tower_depth,
        hadamard,
    };
    let cert = e8_certificate(&opts)?;
    Ok(Outcome {
        passed: cert.passed(),
        text: certificate_text(&cert),
        csv: None,
        json: to_json(&cert)?,
        representations: Vec::new(),
    })
}

#[derive(Serialize)]
struct Campaign {
    schema: &'static str,
    set: String,
    seed: u64,
    trials: usize,
    outcomes: Vec<TargetOutcome>,
    certifications: Vec<Certification>,
}

pub fn spin_table(cli: &Cli, a: &TableArgs) -> Result<Outcome> {
    let targets = match a.set {
        TargetSet::SmallN => small_n_targets(),
        TargetSet::Certification => certification_targets(),
        TargetSet::OddChar => odd_characteristic_targets(),
        TargetSet::All => all_targets(),
    };
    let opts = SearchOptions::new(a.trials as usize, a.seed).with_threads(a.threads);
    let mut builder = Builder::new(cli)?;
    let mut certs = Vec::new();
    for t in &targets {
        let ladder = field_ladder(t.characteristic);
        certs.push(certify_with(t, &ladder, &opts, |f| {
            builder.build(&t.group, t.rep, f)
        })?);
    }
    let outcomes: Vec<TargetOutcome> = certs.iter().map(TargetOutcome::from).collect();
    let w = outcomes
        .iter()
        .map(|o| o.target.len())
        .max()
        .unwrap_or(6)
        .max(6);
    let mut text = format!(
        "{:<w$}  {:>8}  {:>7}  {:<9}  result\n",
        "target", "expected", "min dim", "field"
    );
    let mut csv = String::from("target,expected,min_dim,field,passed\n");
    for o in &outcomes {
        let field = o
            .certified_by
            .map(|f| f.to_string())
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            text,
            "{:<w$}  {:>8}  {:>7}  {:<9}  {}",
            o.target,
            o.expected,
            o.min_dim,
            field,
            pass(o.passed)
        );
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            o.target, o.expected, o.min_dim, field, o.passed
        );
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let set = format!("{:?}", a.set).to_ascii_lowercase();
    let campaign = Campaign {
        schema: "spinstab.campaign/1",
        set,
        seed: a.seed,
        trials: a.trials as usize,
        outcomes,
        certifications: certs,
    };
    Ok(Outcome {
        passed,
        text,
        csv: Some(csv),
        json: to_json(&campaign)?,
        representations: builder.used,
    })
}

#[derive(Serialize)]
struct Concordance {
    schema: &'static str,
    rows: &'static [concordance::Row],
}

pub fn concordance() -> Result<Outcome> {
    let json = to_json(&Concordance {
        schema: "spinstab.concordance/1",
        rows: concordance::ROWS,
    })?;
    Ok(Outcome {
        passed: true,
        text: concordance::text(),
        csv: Some(concordance::csv()),
        json,
        representations: Vec::new(),
    })
}

/// Re-runs the manifest's arguments and compares the report digest.
pub fn replay(path: &Path) -> u8 {
    let run = || -> Result<bool> {
        let m: RunManifest = serde_json::from_slice(
            &fs::read(path).with_context(|| format!("reading {}", path.display()))?,
        )?;
        let argv = std::iter::once("spinstab".to_string()).chain(m.args.iter().cloned());
        let cli = Cli::try_parse_from(argv).map_err(|e| anyhow!("manifest arguments: {e}"))?;
        if matches!(cli.command, Command::Replay(_)) {
            bail!("replay cannot be nested");
        }
        let out = execute(&cli)?;
        let digest = sha256_hex(out.json.as_bytes());
        let want = m
            .artifacts
            .iter()
            .find(|a| a.name == "report.json")
            .ok_or_else(|| anyhow!("manifest has no report"))?;
        let same = want.sha256 == digest;
        println!(
            "report.json  {}  {}",
            if same { "identical" } else { "DIFFERS" },
            digest
        );
        Ok(same)
    };
    match run() {
        Ok(true) => EXIT_MET,
        Ok(false) => EXIT_MISSED,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
