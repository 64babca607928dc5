//! Acceptance suite: one PASS/FAIL line per criterion, each within its time limit.

use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use spinstab::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystem, RootSystemKind};
use spinstab::edim::ed_range;
use spinstab::spinrep::{
    direct_sum, halfspin_rep_on, is_noncentral, torus_max_eigenspace, ExponentVector, Parity,
};
use spinstab::stab::{build_rep, decode_witness, fixed_space_dim, stab_dim, GroupSpec, RepSpec};
use spinstab::{Elem, Field, FieldSpec};

const BIN: &str = env!("CARGO_BIN_EXE_spinstab");

fn spinstab(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .output()
        .expect("spawn spinstab")
}

fn json_of(out: &Output) -> Result<Value, String> {
    if !out.status.success() {
        return Err(format!(
            "exit {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(
        elapsed <= limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn min_dims(v: &Value) -> Vec<(String, u64, bool)> {
    v["outcomes"]
        .as_array()
        .map(|a| {
            a.iter()
                .map(|o| {
                    (
                        o["target"].as_str().unwrap_or("").to_string(),
                        o["min_dim"].as_u64().unwrap_or(u64::MAX),
                        o["passed"] == true,
                    )
                })
                .collect()
        })
        .unwrap_or_default()
}

fn ed_table() -> Result<(), String> {
    let want = ["23", "24", "120", "103", "341", "326"];
    let t = Instant::now();
    let rows = ed_range(15, 20).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let got: Vec<String> = rows.iter().map(|r| r.value.to_string()).collect();
    check(got == want, format!("library gave {got:?}"))?;
    within(elapsed, Duration::from_millis(1))?;
    let v = json_of(&spinstab(&["eddim", "15..20", "--json"]))?;
    let cli: Vec<&str> = v["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .filter_map(|r| r["value"].as_str())
        .collect();
    check(cli == want, format!("CLI gave {cli:?}"))?;
    let text = String::from_utf8_lossy(&spinstab(&["eddim", "15..20"]).stdout).to_string();
    check(
        text.lines()
            .nth(1)
            .is_some_and(|l| l.split_whitespace().skip(2).eq(want)),
        "text table row",
    )
}

fn reverify(v: &Value) -> Result<(), String> {
    for cert in v["certifications"].as_array().ok_or("no certifications")? {
        let t = &cert["target"];
        let group = GroupSpec {
            n: t["group"]["n"].as_u64().ok_or("n")? as usize,
            isogeny: serde_json::from_value(t["group"]["isogeny"].clone())
                .map_err(|e| e.to_string())?,
        };
        let rep: RepSpec = serde_json::from_value(t["rep"].clone()).map_err(|e| e.to_string())?;
        let report = cert["reports"]
            .as_array()
            .and_then(|r| r.last())
            .ok_or("no report")?;
        let spec: FieldSpec =
            serde_json::from_value(report["field"].clone()).map_err(|e| e.to_string())?;
        let field = Field::new(spec).map_err(|e| e.to_string())?;
        let module = build_rep(&group, rep, &field).map_err(|e| e.to_string())?;
        let w = decode_witness(
            &field,
            module.dim(),
            report["witness"].as_str().ok_or("witness")?,
        )
        .map_err(|e| e.to_string())?;
        let d = stab_dim(&module, &w).map_err(|e| e.to_string())?;
        check(
            d == 0,
            format!("{}: witness re-verifies to {d}", cert["target"]["group"]),
        )?;
    }
    Ok(())
}

fn certification() -> Result<(), String> {
    let cache = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = cache.path().to_str().ok_or("path")?;
    let t = Instant::now();
    let v = json_of(&spinstab(&[
        "spin-table",
        "--set",
        "certification",
        "--seed",
        "1",
        "--cache-dir",
        dir,
        "--json",
    ]))?;
    let rows = min_dims(&v);
    check(rows.len() == 7, format!("{} targets", rows.len()))?;
    for (name, d, ok) in &rows {
        check(*d == 0 && *ok, format!("{name}: min dim {d}"))?;
    }
    reverify(&v)?;
    within(t.elapsed(), Duration::from_secs(120))
}

fn small_n() -> Result<(), String> {
    let t = Instant::now();
    let v = json_of(&spinstab(&["spin-table", "--seed", "1", "--json"]))?;
    let got: Vec<u64> = min_dims(&v).iter().map(|r| r.1).collect();
    check(
        got == [11, 14, 21, 21, 29, 24, 35, 16, 28],
        format!("minimum dimensions {got:?}"),
    )?;
    within(t.elapsed(), Duration::from_secs(30))
}

fn odd_characteristic() -> Result<(), String> {
    let t = Instant::now();
    let v = json_of(&spinstab(&[
        "spin-table",
        "--set",
        "odd-char",
        "--seed",
        "1",
        "--json",
    ]))?;
    let rows = min_dims(&v);
    let want = [("HSpin16/halfspin/char7", 0), ("Spin14/spin/char7", 28)];
    check(rows.len() == 2, "two targets")?;
    for ((name, d, _), (wn, wd)) in rows.iter().zip(want) {
        check(
            name == wn && *d == wd,
            format!("{name}: {d}, want {wn}: {wd}"),
        )?;
    }
    for cert in v["certifications"].as_array().ok_or("certifications")? {
        let f = &cert["reports"][0]["field"];
        check(f["p"] == 7 && f["e"] == 1, "field is GF(7)")?;
    }
    within(t.elapsed(), Duration::from_secs(10))
}

fn jordan_facts() -> Result<(), String> {
    let t = Instant::now();
    let cases = [
        (
            vec!["--n", "9", "--partition", "2^4,1"],
            "(3,2^4,1^5)",
            None,
        ),
        (
            vec!["--n", "9", "--partition", "2^2,1^5"],
            "(2^4,1^8)",
            None,
        ),
        (
            vec!["--n", "18", "--partition", "2,2,2,2,1x8"],
            "(3^16,2^64,1^80)",
            Some(160),
        ),
    ];
    for (args, jt, dim) in cases {
        let mut full = vec!["fixed-space"];
        full.extend(args);
        full.push("--json");
        let v = json_of(&spinstab(&full))?;
        check(
            v["jordan_type"] == jt,
            format!("{full:?}: Jordan type {}", v["jordan_type"]),
        )?;
        if let Some(d) = dim {
            check(v["value"] == d, format!("dim V^x = {}", v["value"]))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(5))
}

fn random_element(alg: &ChevalleyAlgebra, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let f = alg.field();
    let mut x = alg.zero();
    if rng.gen_bool(0.25) {
        x.iter_mut().for_each(|c| *c = f.random(rng));
    } else {
        for _ in 0..rng.gen_range(1..=4) {
            let j = rng.gen_range(0..alg.dim());
            x[j] = f.add(x[j], 1 + rng.gen_range(0..f.order() as u8 - 1));
        }
    }
    x
}

fn property_suites() -> Result<(), String> {
    let mut violations = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let f7 = Field::prime(7).map_err(|e| e.to_string())?;
    for r in 4..=7 {
        let alg = ChevalleyAlgebra::new(RootSystemKind::D(r), LatticeKind::SimplyConnected, &f7)
            .map_err(|e| e.to_string())?;
        let even = halfspin_rep_on(&alg, Parity::Even).map_err(|e| e.to_string())?;
        let spin = direct_sum(
            &even,
            &halfspin_rep_on(&alg, Parity::Odd).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let mut n = 0;
        while n < 200 {
            let x = random_element(&alg, &mut rng);
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            for rep in [&even, &spin] {
                let d = fixed_space_dim(rep, &x).map_err(|e| e.to_string())?;
                if 4 * d > 3 * rep.dim() {
                    violations.push(format!("3/4 bound: D{r} {}", rep.label()));
                }
            }
            n += 1;
        }
    }
    let f2 = Field::prime(2).map_err(|e| e.to_string())?;
    for r in 5..=7 {
        let roots = RootSystem::new(RootSystemKind::D(r))
            .map_err(|e| e.to_string())?
            .roots()
            .to_vec();
        let alg = ChevalleyAlgebra::new(RootSystemKind::D(r), LatticeKind::SimplyConnected, &f2)
            .map_err(|e| e.to_string())?;
        for parity in [Parity::Even, Parity::Odd] {
            let rep = halfspin_rep_on(&alg, parity).map_err(|e| e.to_string())?;
            for m in [2u64, 3] {
                for k in 0..(m as usize).pow(r as u32) {
                    let c: Vec<i64> = (0..r)
                        .map(|i| ((k / (m as usize).pow(i as u32)) % m as usize) as i64)
                        .collect();
                    let ev = ExponentVector::new(c, m).map_err(|e| e.to_string())?;
                    if is_noncentral(&roots, &ev)
                        && 8 * torus_max_eigenspace(rep.weights(), &ev)
                            .map_err(|e| e.to_string())?
                            > 5 * rep.dim()
                    {
                        violations.push(format!("5/8 bound: D{r} {:?}", ev.c));
                    }
                }
            }
        }
    }
    for (r, lat, spec) in [
        (5, LatticeKind::SimplyConnected, FieldSpec::prime(2)),
        (6, LatticeKind::HalfSpin, FieldSpec::binary(2)),
        (5, LatticeKind::SimplyConnected, FieldSpec::prime(7)),
    ] {
        let f = Field::new(spec).map_err(|e| e.to_string())?;
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(r), lat, &f).map_err(|e| e.to_string())?;
        let rep = halfspin_rep_on(&alg, Parity::Even).map_err(|e| e.to_string())?;
        for _ in 0..40 {
            let rnd = |rng: &mut ChaCha8Rng| -> Vec<Elem> {
                (0..alg.dim()).map(|_| f.random(rng)).collect()
            };
            let (x, y, z) = (rnd(&mut rng), rnd(&mut rng), rnd(&mut rng));
            let br = |a: &[Elem], b: &[Elem]| alg.bracket(a, b).expect("bracket");
            let jac = alg
                .add(
                    &alg.add(&br(&x, &br(&y, &z)), &br(&y, &br(&z, &x)))
                        .expect("add"),
                    &br(&z, &br(&x, &y)),
                )
                .expect("add");
            if jac.iter().any(|&c| c != 0) {
                violations.push(format!("Jacobi: D{r} over {spec}"));
            }
            if f.characteristic() == 2 {
                let lhs = alg.p_power(&alg.add(&x, &y).expect("add")).expect("p");
                let rhs = alg
                    .add(
                        &alg.add(&alg.p_power(&x).expect("p"), &alg.p_power(&y).expect("p"))
                            .expect("add"),
                        &br(&x, &y),
                    )
                    .expect("add");
                if lhs != rhs {
                    violations.push(format!("Jacobson: D{r} over {spec}"));
                }
            }
            let lhs = rep
                .element_matrix(&x)
                .and_then(|m| m.pow(f.characteristic()))
                .map_err(|e| e.to_string())?;
            let rhs = alg
                .p_power(&x)
                .and_then(|xp| rep.element_matrix(&xp))
                .map_err(|e| e.to_string())?;
            if lhs.to_rows() != rhs.to_rows() {
                violations.push(format!("restrictedness: D{r} over {spec}"));
            }
        }
    }
    check(
        violations.is_empty(),
        format!(
            "{} violations, first {:?}",
            violations.len(),
            violations.first()
        ),
    )
}

const PRINTED_M: [[i64; 8]; 8] = [
    [-1, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 1, -1, 1, -1, 1],
    [0, 1, 0, -1, 0, 1, 0, -1],
    [1, 0, -1, 0, 1, 0, -1, 0],
    [0, 1, 0, 0, 0, -1, 0, 0],
    [1, 0, -1, 1, -1, 0, 1, -1],
    [1, 1, 0, -1, 0, 0, 0, 1],
    [0, 0, -1, 0, 1, -1, 1, 0],
];

fn e8_certificate() -> Result<(), String> {
    let t = Instant::now();
    let v = json_of(&spinstab(&["e8-verify", "--seed", "0", "--json"]))?;
    let elapsed = t.elapsed();
    check(
        v["field"]["p"] == 2 && v["field"]["e"] == 5,
        "field is GF(32)",
    )?;
    let m: Vec<Vec<i64>> =
        serde_json::from_value(v["gamma"]["m"].clone()).map_err(|e| e.to_string())?;
    check(
        m.iter()
            .zip(PRINTED_M.iter())
            .all(|(a, b)| a.as_slice() == b.as_slice())
            && m.len() == 8,
        "M differs from the printed matrix",
    )?;
    check(
        v["snf_divisors"] == serde_json::json!([1, 1, 1, 1, 2, 2, 2, 2]),
        "Smith divisors",
    )?;
    check(
        v["t0_dim"] == 4 && v["t0_isotropic"] == true && v["t0_maximal"] == true,
        "t0 properties",
    )?;
    let samples = v["samples"].as_array().ok_or("samples")?;
    check(samples.len() >= 20, "at least 20 samples")?;
    for s in samples {
        check(s["tower_matches"] == true, "tower identity for k ≤ 8")?;
        check(
            s["stab_equals_t0"] == true && s["stab_dim"] == 4,
            "infinitesimal stabilizer is t0",
        )?;
        check(
            s["group_order"] == 16
                && s["elementary_abelian"] == true
                && s["named_lifts_present"] == true,
            "group stabilizer",
        )?;
    }
    check(
        v["conjugate_pairs"] == v["conjugate_pairs_verified"] && v["conjugate_pairs"] == 190,
        "pairwise conjugacy",
    )?;
    let parts = v["parts"].as_array().ok_or("parts")?;
    check(
        parts.len() == 4 && parts.iter().all(|p| p["passed"] == true),
        "theorem parts",
    )?;
    within(elapsed, Duration::from_secs(60))
}

fn reproducibility(dir: &Path) -> Result<(), String> {
    let runs: [&[&str]; 5] = [
        &["stab", "--n", "14", "--seed", "3", "--json"],
        &[
            "stab", "--group", "hspin20", "--rep", "halfspin", "--seed", "9", "--json",
        ],
        &["spin-table", "--set", "all", "--seed", "5", "--json"],
        &["e8-verify", "--seed", "11", "--samples", "4", "--json"],
        &[
            "fixed-space",
            "--n",
            "10",
            "--torus",
            "1,1,1,1,0",
            "--max",
            "--json",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let manifest = dir.join(format!("m{i}.json"));
        let mut first: Vec<&str> = vec!["--manifest", manifest.to_str().ok_or("path")?];
        first.extend_from_slice(args);
        let a = spinstab(&first);
        let b = spinstab(args);
        check(
            a.status.success() && a.stdout == b.stdout,
            format!("{args:?}: outputs differ"),
        )?;
        let replay = spinstab(&["replay", manifest.to_str().ok_or("path")?]);
        check(
            replay.status.success(),
            format!(
                "{args:?}: replay {}",
                String::from_utf8_lossy(&replay.stdout)
            ),
        )?;
    }
    Ok(())
}

type Criterion = Box<dyn Fn() -> Result<(), String>>;

fn main() {
    let dir = tempfile::tempdir().expect("tempdir");
    let criteria: Vec<(&str, Criterion)> = vec![
        ("ed table 15..20", Box::new(ed_table)),
        ("generic freeness witnesses", Box::new(certification)),
        (
            "Spin6..Spin14 campaign in characteristic 2",
            Box::new(small_n),
        ),
        ("GF(7) spot checks", Box::new(odd_characteristic)),
        ("Jordan and fixed-space facts", Box::new(jordan_facts)),
        ("property suites", Box::new(property_suites)),
        ("E8 certificate", Box::new(e8_certificate)),
        (
            "reproducibility",
            Box::new(move || reproducibility(dir.path())),
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let ms = t.elapsed().as_millis();
        match r {
            Ok(()) => println!("criterion {}: PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
