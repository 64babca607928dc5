//! Run manifests: what was run, with which settings, and digests of what it produced.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use spinstab::spinrep::io::{sha256_hex, CacheEntry};

pub const RUN_MANIFEST_SCHEMA: &str = "spinstab.run-manifest/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub name: String,
    pub sha256: String,
    pub bytes: u64,
}

impl Artifact {
    pub fn of(name: &str, content: &str) -> Self {
        Artifact {
            name: name.into(),
            sha256: sha256_hex(content.as_bytes()),
            bytes: content.len() as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub tool_version: String,
    pub command: String,
    /// Arguments after merging the config file, without `--manifest` and `--config`.
    pub args: Vec<String>,
    /// The same settings keyed by flag name.
    pub config: BTreeMap<String, String>,
    pub artifacts: Vec<Artifact>,
    /// Cached representations used by the run.
    pub representations: Vec<CacheEntry>,
    pub wall_clock_ms: u64,
    pub passed: bool,
    pub exit_code: i32,
}

/// Drops `--manifest`/`--config` (and their values) from an argument list.
pub fn replayable_args(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if a == "--manifest" || a == "--config" {
            skip = true;
            continue;
        }
        if a.starts_with("--manifest=") || a.starts_with("--config=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

/// Flag settings: `--key value` pairs, bare switches as `true`, positionals under `arg<i>`.
pub fn settings(args: &[String], command: &str) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut positional = 0;
    let mut i = 0;
    let mut rest = args.to_vec();
    if let Some(k) = rest.iter().position(|a| a == command) {
        rest.remove(k);
    }
    while i < rest.len() {
        let a = &rest[i];
        if let Some(flag) = a.strip_prefix("--") {
            if let Some((k, v)) = flag.split_once('=') {
                out.insert(k.to_string(), v.to_string());
            } else if rest.get(i + 1).is_some_and(|n| !n.starts_with("--")) {
                out.insert(flag.to_string(), rest[i + 1].clone());
                i += 1;
            } else {
                out.insert(flag.to_string(), "true".into());
            }
        } else {
            out.insert(format!("arg{positional}"), a.clone());
            positional += 1;
        }
        i += 1;
    }
    out
}
