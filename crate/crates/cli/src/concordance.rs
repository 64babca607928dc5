//! Each checked claim and the command that checks it.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub id: &'static str,
    pub claim: &'static str,
    pub command: &'static str,
    pub expected: &'static str,
}

const fn row(
    id: &'static str,
    claim: &'static str,
    command: &'static str,
    expected: &'static str,
) -> Row {
    Row {
        id,
        claim,
        command,
        expected,
    }
}

pub const ROWS: &[Row] = &[
    row(
        "ed-spin-15-20",
        "ed(Spin_n) for 15 ≤ n ≤ 20",
        "spinstab eddim 15..20",
        "23 24 120 103 341 326",
    ),
    row(
        "ed-hspin",
        "ed(HSpin_n) = 2^((n-2)/2) - n(n-1)/2 for n ≥ 20, 4 | n",
        "spinstab eddim 20..32 --group hspin",
        "322 1772 7814 32272",
    ),
    row(
        "ed-domain",
        "the closed form for ed(Spin_n) needs n > 14",
        "spinstab eddim 12..16",
        "n ≤ 14 marked *",
    ),
    row(
        "count-large-n",
        "3/4 dim V + dim G - rank < dim V for n ≥ 21",
        "spinstab eddim 21..64 --inequality",
        "holds for every n",
    ),
    row(
        "gen-stab-6",
        "Spin6 generic stabilizer (SL3)·(Ga)^3, dim 11",
        "spinstab stab --n 6 --rep spin --char 2 --seed 1",
        "11",
    ),
    row(
        "gen-stab-7",
        "Spin7 generic stabilizer G2, dim 14",
        "spinstab stab --n 7 --rep spin --char 2 --seed 1",
        "14",
    ),
    row(
        "gen-stab-8",
        "Spin8 generic stabilizer Spin7, dim 21",
        "spinstab stab --n 8 --rep spin --char 2 --seed 1",
        "21",
    ),
    row(
        "gen-stab-9",
        "Spin9 generic stabilizer Spin7, dim 21",
        "spinstab stab --n 9 --rep spin --char 2 --seed 1",
        "21",
    ),
    row(
        "gen-stab-10",
        "Spin10 generic stabilizer (Spin7)·(Ga)^8, dim 29",
        "spinstab stab --n 10 --rep spin --char 2 --seed 1",
        "29",
    ),
    row(
        "gen-stab-11",
        "Spin11 generic stabilizer SL5 ⋊ Z/2, dim 24",
        "spinstab stab --n 11 --rep spin --char 2 --seed 1",
        "24",
    ),
    row(
        "gen-stab-12",
        "Spin12 generic stabilizer SL6 ⋊ Z/2, dim 35",
        "spinstab stab --n 12 --rep spin --char 2 --seed 1",
        "35",
    ),
    row(
        "gen-stab-13",
        "Spin13 generic stabilizer has dimension at most 16",
        "spinstab stab --n 13 --rep spin --char 2 --seed 1",
        "16",
    ),
    row(
        "gen-stab-14",
        "Spin14 generic stabilizer (G2 × G2) ⋊ Z/2, dim 28",
        "spinstab stab --n 14 --rep spin --char 2 --seed 1",
        "28",
    ),
    row(
        "gen-stab-table",
        "all of the above in one campaign",
        "spinstab spin-table --seed 1",
        "9 rows PASS",
    ),
    row(
        "free-15",
        "Spin15 acts generically freely on its spin module",
        "spinstab stab --n 15 --rep spin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-17",
        "Spin17 acts generically freely on its spin module",
        "spinstab stab --n 17 --rep spin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-19",
        "Spin19 acts generically freely on its spin module",
        "spinstab stab --n 19 --rep spin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-18",
        "Spin18 acts generically freely on a half-spin module",
        "spinstab stab --n 18 --rep halfspin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-16-sum",
        "Spin16 acts generically freely on vector ⊕ half-spin",
        "spinstab stab --n 16 --rep vector+halfspin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-20-sum",
        "Spin20 acts generically freely on vector ⊕ half-spin",
        "spinstab stab --n 20 --rep vector+halfspin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-hspin20",
        "HSpin20 acts generically freely on a half-spin module",
        "spinstab stab --group hspin20 --rep halfspin --char 2 --seed 1",
        "0",
    ),
    row(
        "free-set",
        "all generic-freeness witnesses in one campaign",
        "spinstab spin-table --set certification --seed 1",
        "7 rows PASS",
    ),
    row(
        "odd-hspin16",
        "HSpin16 half-spin generic stabilizer is finite away from 2",
        "spinstab stab --group hspin16 --rep halfspin --char 7 --seed 1",
        "0",
    ),
    row(
        "odd-spin14",
        "Spin14 half-spin generic stabilizer is G2 × G2 away from 2",
        "spinstab stab --n 14 --rep spin --char 7 --seed 1",
        "28",
    ),
    row(
        "bound-3-4",
        "dim V^x ≤ 3/4 dim V for noncentral x",
        "cargo test -p spinstab --test fixed_space three_quarter",
        "no violations",
    ),
    row(
        "bound-5-8",
        "dim V^g ≤ 5/8 dim V for noncentral semisimple g, n > 8",
        "cargo test -p spinstab --test fixed_space five_eighths",
        "no violations",
    ),
    row(
        "long-root",
        "a long-root element of Spin18 fixes 3/4 of a half-spin module",
        "spinstab fixed-space --n 18 --orthogonal-roots 1",
        "192",
    ),
    row(
        "two-roots",
        "two orthogonal long roots fix at most 5/8",
        "spinstab fixed-space --n 18 --orthogonal-roots 2",
        "160 (= 5/8 dim V)",
    ),
    row(
        "eigen-6",
        "largest eigenspace of the (1,1,1,1,0) torus element on a Spin10 half-spin module",
        "spinstab fixed-space --n 10 --torus 1,1,1,1,0 --max",
        "6",
    ),
    row(
        "jordan-so9-a",
        "(2^4,1) in so9 acts on the spin module as (3,2^4,1^5)",
        "spinstab fixed-space --n 9 --partition 2^4,1",
        "(3,2^4,1^5)",
    ),
    row(
        "jordan-so9-b",
        "(2^2,1^5) in so9 acts on the spin module as (2^4,1^8)",
        "spinstab fixed-space --n 9 --partition 2^2,1^5",
        "(2^4,1^8)",
    ),
    row(
        "so18-160",
        "(2^4,1^8) padded in so18 fixes 160 half-spin vectors",
        "spinstab fixed-space --n 18 --partition 2,2,2,2,1x8",
        "160",
    ),
    row(
        "e8-gamma",
        "H2 ⊗ H2 ⊗ H2 gives eight orthogonal half-spin roots; M as printed",
        "spinstab e8-verify --seed 0",
        "Γ checks PASS",
    ),
    row(
        "e8-lattice",
        "ZΦ/ZΓ ≅ (Z/2)^4, Smith divisors (1^4, 2^4)",
        "spinstab e8-verify --seed 0",
        "part iv PASS",
    ),
    row(
        "e8-stab-group",
        "the generic HSpin16 stabilizer on the half-spin module in char 2 is (Z/2)^4",
        "spinstab e8-verify --seed 0",
        "part i PASS",
    ),
    row(
        "e8-stab-lie",
        "its Lie algebra is the 4-dimensional toral t0",
        "spinstab e8-verify --seed 0",
        "part ii PASS",
    ),
    row(
        "e8-conj",
        "stabilizers of points of r° are torus-conjugate",
        "spinstab e8-verify --seed 0",
        "part iii PASS",
    ),
];

pub fn csv() -> String {
    let mut out = String::from("id,claim,command,expected\n");
    for r in ROWS {
        out.push_str(&[r.id, r.claim, r.command, r.expected].map(quote).join(","));
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn text() -> String {
    let w = ROWS.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in ROWS {
        out.push_str(&format!(
            "{:<w$}  {}\n{:<w$}  $ {}  => {}\n",
            r.id, r.claim, "", r.command, r.expected
        ));
    }
    out
}
