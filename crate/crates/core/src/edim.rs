//! Closed-form essential dimensions of spin and half-spin groups.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const N_MAX: u64 = 1_000_000;

/// Values for `5 ≤ n ≤ 14`, where the closed form does not apply.
const SMALL_N: [i64; 10] = [0, 0, 4, 5, 5, 4, 5, 6, 6, 7];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Spin,
    HSpin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `n ≡ 1, 3 mod 4`: `2^{(n−1)/2} − n(n−1)/2`.
    #[serde(rename = "n=1,3 mod 4")]
    Odd,
    /// `n ≡ 2 mod 4`: `2^{(n−2)/2} − n(n−1)/2`.
    #[serde(rename = "n=2 mod 4")]
    TwoMod4,
    /// `n ≡ 0 mod 4`: `2^{(n−2)/2} − n(n−1)/2 + 2^m`.
    #[serde(rename = "n=0 mod 4")]
    ZeroMod4,
}

fn as_string<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdResult {
    pub n: u64,
    pub group: GroupKind,
    #[serde(serialize_with = "as_string")]
    pub value: BigInt,
    pub branch: Branch,
    /// Largest power of 2 dividing n, in the `0 mod 4` branch of `Spin_n`.
    pub two_power: Option<u64>,
    /// Whether n lies in the range where the closed form is established.
    pub in_domain: bool,
    /// Tabulated value for `5 ≤ n ≤ 14`.
    pub tabulated: Option<i64>,
}

impl EdResult {
    /// The value to display: the tabulated one outside the domain when available.
    pub fn reported(&self) -> BigInt {
        match (self.in_domain, self.tabulated) {
            (false, Some(t)) => BigInt::from(t),
            _ => self.value.clone(),
        }
    }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

fn choose2(n: u64) -> BigInt {
    BigInt::from(n) * BigInt::from(n - 1) / 2
}

fn guard(n: u64) -> Result<()> {
    if n > N_MAX {
        return Err(Error::Domain(format!("n = {n} exceeds {N_MAX}")));
    }
    Ok(())
}

/// Largest power of 2 dividing `n > 0`.
pub fn two_adic_part(n: u64) -> u64 {
    1 << n.trailing_zeros()
}

pub fn ed_spin(n: u64) -> Result<EdResult> {
    guard(n)?;
    if n <= 4 {
        return Err(Error::Domain(format!(
            "ed(Spin_n) is not tabulated for n = {n} ≤ 4"
        )));
    }
    let (branch, value, two_power) = match n % 4 {
        1 | 3 => (Branch::Odd, pow2((n - 1) / 2) - choose2(n), None),
        2 => (Branch::TwoMod4, pow2((n - 2) / 2) - choose2(n), None),
        _ => {
            let m = two_adic_part(n);
            (
                Branch::ZeroMod4,
                pow2((n - 2) / 2) - choose2(n) + BigInt::from(m),
                Some(m),
            )
        }
    };
    let tabulated = (n <= 14).then(|| SMALL_N[(n - 5) as usize]);
    Ok(EdResult {
        n,
        group: GroupKind::Spin,
        value,
        branch,
        two_power,
        in_domain: n > 14,
        tabulated,
    })
}

pub fn ed_hspin(n: u64) -> Result<EdResult> {
    guard(n)?;
    if n < 20 || !n.is_multiple_of(4) {
        return Err(Error::Domain(format!(
            "ed(HSpin_n) needs n ≥ 20 divisible by 4, got {n}"
        )));
    }
    Ok(EdResult {
        n,
        group: GroupKind::HSpin,
        value: pow2((n - 2) / 2) - choose2(n),
        branch: Branch::ZeroMod4,
        two_power: None,
        in_domain: true,
        tabulated: None,
    })
}

/// `dim Spin_n = n(n−1)/2`.
pub fn dim_group(n: u64) -> Result<BigInt> {
    guard(n)?;
    if n < 2 {
        return Err(Error::Domain("n must be at least 2".into()));
    }
    let r = BigInt::from(n / 2);
    Ok(if n.is_multiple_of(2) {
        &r * (BigInt::from(2) * &r - 1)
    } else {
        BigInt::from(2) * &r * &r + &r
    })
}

/// Dimension of a half-spin module (n even) or the spin module (n odd).
pub fn dim_halfspin(n: u64) -> Result<BigInt> {
    guard(n)?;
    if n < 2 {
        return Err(Error::Domain("n must be at least 2".into()));
    }
    let r = n / 2;
    Ok(if n.is_multiple_of(2) {
        pow2(r - 1)
    } else {
        pow2(r)
    })
}

/// `¾ dim V + (dim G − r) < dim V`, the count behind generic freeness for `n ≥ 21`.
pub fn large_n_inequality(n: u64) -> Result<bool> {
    let v = dim_halfspin(n)?;
    let g = dim_group(n)?;
    let r = BigInt::from(n / 2);
    Ok(BigInt::from(3) * &v + BigInt::from(4) * (g - r) < BigInt::from(4) * v)
}

pub fn ed_range(lo: u64, hi: u64) -> Result<Vec<EdResult>> {
    if lo > hi {
        return Err(Error::Domain(format!("empty range {lo}..{hi}")));
    }
    (lo..=hi).map(ed_spin).collect()
}

/// `ed(HSpin_n)` for the admissible `n` in `lo..=hi`.
pub fn ed_hspin_range(lo: u64, hi: u64) -> Result<Vec<EdResult>> {
    let rows: Vec<EdResult> = (lo.max(20)..=hi)
        .filter(|n| n % 4 == 0)
        .map(ed_hspin)
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Domain(format!(
            "no n ≥ 20 divisible by 4 in {lo}..{hi}"
        )));
    }
    Ok(rows)
}

/// Two-row table: `n` and `ed(G_n)`, with `*` marking values outside the closed form's domain.
pub fn format_table(rows: &[EdResult]) -> String {
    let label = match rows.first().map(|r| r.group) {
        Some(GroupKind::HSpin) => "ed(HSpin_n)",
        _ => "ed(Spin_n)",
    };
    let cells: Vec<(String, String)> = rows
        .iter()
        .map(|r| {
            (
                r.n.to_string(),
                format!("{}{}", r.reported(), if r.in_domain { "" } else { "*" }),
            )
        })
        .collect();
    let head = ["n", label];
    let w0 = head.iter().map(|h| h.len()).max().unwrap_or(0);
    let mut line1 = format!("{:<w0$} |", head[0]);
    let mut line2 = format!("{:<w0$} |", head[1]);
    for (a, b) in &cells {
        let w = a.len().max(b.len());
        let _ = write!(line1, " {a:>w$}");
        let _ = write!(line2, " {b:>w$}");
    }
    let mut out = format!("{line1}\n{line2}\n");
    if rows.iter().any(|r| !r.in_domain) {
        out.push_str(
            "* n ≤ 14: outside the closed form's domain (n > 14); tabulated value shown\n",
        );
    }
    out
}

pub fn format_csv(rows: &[EdResult]) -> String {
    let column = match rows.first().map(|r| r.group) {
        Some(GroupKind::HSpin) => "ed_hspin",
        _ => "ed_spin",
    };
    let mut out = format!("n,{column},branch,two_power,in_domain\n");
    for r in rows {
        let branch = match r.branch {
            Branch::Odd => "1,3 mod 4",
            Branch::TwoMod4 => "2 mod 4",
            Branch::ZeroMod4 => "0 mod 4",
        };
        let tp = r.two_power.map(|t| t.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},\"{}\",{},{}",
            r.n,
            r.reported(),
            branch,
            tp,
            r.in_domain
        );
    }
    out
}

impl EdResult {
    /// Recomputes the value from the module and group dimensions.
    pub fn from_dimensions(&self) -> Result<BigInt> {
        let n = self.n;
        let base = match self.group {
            GroupKind::Spin if n.is_multiple_of(4) => {
                dim_halfspin(n)? - dim_group(n)? + BigInt::from(self.two_power.unwrap_or(0))
            }
            _ => dim_halfspin(n)? - dim_group(n)?,
        };
        Ok(base)
    }
}
