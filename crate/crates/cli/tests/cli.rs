use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_spinstab");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> Value {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(
        run(&["stab", "--n", "14", "--seed", "1", "--trials", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["stab", "--n", "14"]).status.code(), Some(2));
    assert_eq!(
        run(&["stab", "--target", "Spin99/spin/char2", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["e8-verify", "--seed", "0", "--field-ext", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["eddim", "15..20", "--json", "--csv"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn missed_expectation_exits_1() {
    let o = run(&["stab", "--n", "14", "--seed", "1", "--expect", "27"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "fixed-space",
        "--n",
        "18",
        "--orthogonal-roots",
        "1",
        "--expect",
        "192",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn eddim_csv() {
    let o = run(&["eddim", "15..20", "--csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("n,"));
    let values: Vec<String> = lines
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(values, ["23", "24", "120", "103", "341", "326"]);
}

#[test]
fn eddim_hspin_and_inequality() {
    let v = json(&["eddim", "20..32", "--group", "hspin", "--json"]);
    let vals: Vec<&str> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_str().unwrap())
        .collect();
    assert_eq!(vals, ["322", "1772", "7814", "32272"]);
    assert!(run(&["eddim", "21..64", "--inequality"]).status.success());
}

#[test]
fn concordance_lists_claims() {
    let v = json(&["concordance", "--json"]);
    assert!(v["rows"].as_array().unwrap().len() >= 20);
    let csv = stdout(&run(&["concordance", "--csv"]));
    assert!(csv.starts_with("id,claim,command,expected\n"));
}

#[test]
fn tampered_hadamard_fails_orthogonality() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h.txt");
    let mut rows = vec![vec![1i32; 8]; 8];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if (i & j).count_ones() % 2 == 1 {
                *x = -1;
            }
        }
    }
    let write = |rows: &Vec<Vec<i32>>| {
        let text: String = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
                    + "\n"
            })
            .collect();
        fs::write(&path, text).unwrap();
    };
    write(&rows);
    let p = path.to_str().unwrap();
    assert!(run(&[
        "e8-verify",
        "--seed",
        "0",
        "--samples",
        "1",
        "--hadamard",
        p
    ])
    .status
    .success());
    rows[3][5] = -rows[3][5];
    write(&rows);
    let o = run(&[
        "e8-verify",
        "--seed",
        "0",
        "--samples",
        "1",
        "--hadamard",
        p,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let line = stdout(&o)
        .lines()
        .find(|l| l.contains("H8^T = 8 I"))
        .unwrap()
        .to_string();
    assert!(line.ends_with("FAIL"), "{line}");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(
        &cfg,
        "# Spin14 search\nn = 14\nseed = 2\ntrials = 8\njson = true\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let v = json(&["stab", "--config", c]);
    assert_eq!(v["min_dim"], 28);
    let v = json(&["stab", "--config", c, "--n", "7"]);
    assert_eq!(v["min_dim"], 14);
    fs::write(&cfg, "partition = 2,2\n").unwrap();
    assert_eq!(
        run(&["stab", "--config", c, "--n", "7", "--seed", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn manifest_replays() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let out = dir.path().join("r.json");
    let ms = m.to_str().unwrap();
    let o = run(&[
        "--manifest",
        ms,
        "--out",
        out.to_str().unwrap(),
        "spin-table",
        "--set",
        "odd-char",
        "--seed",
        "4",
    ]);
    assert!(o.status.success());
    let manifest: Value = serde_json::from_slice(&fs::read(&m).unwrap()).unwrap();
    assert_eq!(manifest["schema"], "spinstab.run-manifest/1");
    assert_eq!(manifest["command"], "spin-table");
    assert_eq!(manifest["config"]["set"], "odd-char");
    assert_eq!(manifest["exit_code"], 0);
    let report = fs::read(&out).unwrap();
    assert_eq!(manifest["artifacts"][0]["bytes"], report.len() as u64);
    let r = run(&["replay", ms]);
    assert_eq!(r.status.code(), Some(0));
    assert!(stdout(&r).contains("identical"));
}

#[test]
fn cache_is_reused() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = json(&[
        "stab",
        "--n",
        "12",
        "--seed",
        "1",
        "--cache-dir",
        d,
        "--json",
    ]);
    assert!(fs::read_dir(dir.path()).unwrap().count() > 0);
    let b = json(&[
        "stab",
        "--n",
        "12",
        "--seed",
        "1",
        "--cache-dir",
        d,
        "--json",
    ]);
    assert_eq!(a, b);
    assert_eq!(a["min_dim"], 35);
}

#[test]
fn fixed_space_examples() {
    let cases: [(&[&str], u64); 5] = [
        (&["--n", "18", "--orthogonal-roots", "1"], 192),
        (&["--n", "18", "--orthogonal-roots", "2"], 160),
        (&["--n", "10", "--torus", "1,1,1,1,0", "--max"], 6),
        (&["--n", "18", "--partition", "2,2,2,2,1x8"], 160),
        (&["--n", "9", "--partition", "2^4,1"], 10),
    ];
    for (args, want) in cases {
        let mut a = vec!["fixed-space", "--json"];
        a.extend_from_slice(args);
        assert_eq!(json(&a)["value"], want, "{args:?}");
    }
}

#[test]
fn threads_do_not_change_results() {
    let one = run(&["spin-table", "--seed", "3", "--threads", "1", "--json"]);
    let many = run(&["spin-table", "--seed", "3", "--threads", "4", "--json"]);
    assert_eq!(one.stdout, many.stdout);
}
