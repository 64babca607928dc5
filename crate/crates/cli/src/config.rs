//! `key = value` configuration files mirroring the command-line flags.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::CommandFactory;

use crate::Cli;

/// Flags that take no value; `true` enables them and `false` leaves them off.
const SWITCHES: [&str; 5] = ["json", "csv", "max", "inequality", "verbose"];

pub fn parse(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            bail!("line {}: expected key = value", i + 1);
        };
        let key = k.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            bail!("line {}: empty key", i + 1);
        }
        out.insert(key, v.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

pub fn load(path: &Path) -> Result<BTreeMap<String, String>> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    parse(&text).with_context(|| format!("in config {}", path.display()))
}

/// Value of `--name` in raw arguments, in either `--name v` or `--name=v` form.
pub fn flag_value(args: &[String], name: &str) -> Option<String> {
    let long = format!("--{name}");
    let eq = format!("--{name}=");
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if *a == long {
            return it.next().cloned();
        }
        if let Some(v) = a.strip_prefix(&eq) {
            return Some(v.to_string());
        }
    }
    None
}

fn has_flag(args: &[String], name: &str) -> bool {
    let long = format!("--{name}");
    let eq = format!("--{name}=");
    args.iter().any(|a| *a == long || a.starts_with(&eq))
}

/// The subcommand name: the first argument naming one.
pub fn subcommand(args: &[String]) -> Option<String> {
    let cmd = Cli::command();
    args.iter()
        .skip(1)
        .find(|a| cmd.find_subcommand(a.as_str()).is_some())
        .cloned()
}

/// Appends config entries the command line does not already set. Flags override the file.
pub fn merge(args: &[String], config: &BTreeMap<String, String>) -> Result<Vec<String>> {
    let cmd = Cli::command();
    let mut known: Vec<String> = cmd
        .get_arguments()
        .filter_map(|a| a.get_long().map(String::from))
        .collect();
    if let Some(sub) = subcommand(args).and_then(|s| cmd.find_subcommand(&s).cloned()) {
        known.extend(
            sub.get_arguments()
                .filter_map(|a| a.get_long().map(String::from)),
        );
    }
    let mut out = args.to_vec();
    for (k, v) in config {
        if k == "config" || k == "manifest" {
            continue;
        }
        if !known.contains(k) {
            bail!("config key {k:?} is not a flag of this command");
        }
        if has_flag(args, k) {
            continue;
        }
        if SWITCHES.contains(&k.as_str()) {
            match v.as_str() {
                "true" | "1" | "yes" => out.push(format!("--{k}")),
                "false" | "0" | "no" => {}
                _ => bail!("config key {k:?} expects true or false"),
            }
        } else {
            out.push(format!("--{k}"));
            out.push(v.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn parses_comments_and_spacing() {
        let c =
            parse("# campaign\nseed = 3\ntrials=16  # fewer\n\ncache_dir = \"/tmp/x\"\n").unwrap();
        assert_eq!(c["seed"], "3");
        assert_eq!(c["trials"], "16");
        assert_eq!(c["cache-dir"], "/tmp/x");
        assert!(parse("seed 3").is_err());
    }

    #[test]
    fn flags_override_file() {
        let c = parse("seed = 3\ntrials = 16\njson = true\n").unwrap();
        let merged = merge(&argv("spinstab stab --n 14 --seed 9"), &c).unwrap();
        assert_eq!(flag_value(&merged, "seed").unwrap(), "9");
        assert_eq!(flag_value(&merged, "trials").unwrap(), "16");
        assert!(merged.contains(&"--json".to_string()));
        let merged = merge(&argv("spinstab stab --n 14 --seed=9"), &c).unwrap();
        assert_eq!(merged.iter().filter(|a| a.starts_with("--seed")).count(), 1);
    }

    #[test]
    fn rejects_foreign_keys() {
        let c = parse("samples = 3").unwrap();
        assert!(merge(&argv("spinstab stab --n 14"), &c).is_err());
        assert!(merge(&argv("spinstab e8-verify"), &c).is_ok());
    }
}
