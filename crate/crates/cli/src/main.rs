//! `spinstab`: verification campaigns for generic stabilizers of spin groups.

mod commands;
mod concordance;
mod config;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use manifest::{Artifact, RunManifest, RUN_MANIFEST_SCHEMA};

/// Exit codes: 0 target met, 1 target missed, 2 usage or build error.
pub const EXIT_MET: u8 = 0;
pub const EXIT_MISSED: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "spinstab",
    version,
    about = "Generic stabilizers and essential dimension of spin groups"
)]
pub struct Cli {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print CSV where the command has a table.
    #[arg(long, global = true, conflicts_with = "json")]
    pub csv: bool,
    /// Directory for cached representation builds.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache_dir: Option<PathBuf>,
    /// `key = value` file with default flag values; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write a run manifest here.
    #[arg(long, global = true, value_name = "FILE")]
    pub manifest: Option<PathBuf>,
    /// Also write the JSON report here.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Seeded search for a vector with small infinitesimal stabilizer.
    Stab(StabArgs),
    /// Fixed-space and eigenspace dimensions on (half) spin modules.
    FixedSpace(FixedArgs),
    /// Essential dimension of Spin_n and HSpin_n.
    Eddim(EddimArgs),
    /// Certificate for the generic stabilizer of HSpin16 in characteristic 2.
    E8Verify(E8Args),
    /// Runs a set of built-in stabilizer targets.
    SpinTable(TableArgs),
    /// Lists each checked claim with the command that checks it.
    Concordance,
    /// Re-runs a manifest and compares report digests.
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct StabArgs {
    /// n for Spin_n (or HSpin_n with `--group hspin`).
    #[arg(long)]
    pub n: Option<usize>,
    /// `spin`, `hspin`, or a full name such as `hspin20`.
    #[arg(long)]
    pub group: Option<String>,
    /// `spin`, `halfspin` or `vector+halfspin`.
    #[arg(long, default_value = "spin")]
    pub rep: String,
    #[arg(long = "char", default_value_t = 2)]
    pub characteristic: u32,
    /// Work over GF(p^e) only, instead of escalating GF(2) → GF(4) → GF(16).
    #[arg(long)]
    pub field_ext: Option<u32>,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    /// A built-in target such as `HSpin20/halfspin/char2`.
    #[arg(long)]
    pub target: Option<String>,
    /// Expected minimum dimension, overriding the built-in table.
    #[arg(long)]
    pub expect: Option<usize>,
    /// Worker threads (0 = all cores); results do not depend on it.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct FixedArgs {
    #[arg(long)]
    pub n: usize,
    /// Nilpotent of this Jordan type in so_n, padded with 1s to n.
    #[arg(long, group = "mode")]
    pub partition: Option<String>,
    /// Torus element with these exponents.
    #[arg(long, group = "mode", allow_hyphen_values = true)]
    pub torus: Option<String>,
    /// Product of k root elements for orthogonal long roots, in characteristic 2.
    #[arg(long, group = "mode")]
    pub orthogonal_roots: Option<usize>,
    /// Report the largest eigenspace instead of the fixed space (torus mode).
    #[arg(long)]
    pub max: bool,
    /// Order m of the torus element (exponents are multiples of a primitive m-th root);
    /// defaults to one large enough that no eigenvalues collide.
    #[arg(long)]
    pub order: Option<u64>,
    /// Characteristic for partition mode.
    #[arg(long = "char", default_value_t = 7)]
    pub characteristic: u32,
    /// Expected value; the exit code reports whether it matched.
    #[arg(long)]
    pub expect: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdGroup {
    Spin,
    Hspin,
}

#[derive(Debug, Args)]
pub struct EddimArgs {
    /// `lo..hi` (inclusive), `lo..=hi`, or a single n.
    pub range: String,
    #[arg(long, value_enum, default_value = "spin")]
    pub group: EdGroup,
    /// Check 3/4 dim V + dim G − rank < dim V for every n ≥ 21 in the range.
    #[arg(long)]
    pub inequality: bool,
}

#[derive(Debug, Args)]
pub struct E8Args {
    #[arg(long)]
    pub seed: u64,
    /// Work over GF(2^e).
    #[arg(long, default_value_t = 5)]
    pub field_ext: u32,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 8)]
    pub tower_depth: u32,
    /// File with an 8 × 8 ±1 matrix to use in place of H2 ⊗ H2 ⊗ H2.
    #[arg(long)]
    pub hadamard: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetSet {
    SmallN,
    Certification,
    OddChar,
    All,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "small-n")]
    pub set: TargetSet,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest_file: PathBuf,
}

/// What a command produced.
pub struct Outcome {
    pub passed: bool,
    pub text: String,
    pub csv: Option<String>,
    /// The versioned JSON report.
    pub json: String,
    pub representations: Vec<spinstab::spinrep::io::CacheEntry>,
}

fn emit(cli: &Cli, out: &Outcome) -> anyhow::Result<()> {
    if cli.json {
        print!("{}", out.json);
    } else if cli.csv {
        print!("{}", out.csv.as_deref().unwrap_or(&out.text));
    } else {
        print!("{}", out.text);
    }
    if let Some(path) = &cli.out {
        std::fs::write(path, &out.json)?;
    }
    Ok(())
}

fn run(raw: Vec<String>) -> u8 {
    let started = Instant::now();
    let args = match config::flag_value(&raw, "config") {
        Some(path) => match config::load(path.as_ref()).and_then(|c| config::merge(&raw, &c)) {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: {e:#}");
                return EXIT_ERROR;
            }
        },
        None => raw,
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_MET };
        }
    };
    if let Command::Replay(r) = &cli.command {
        return commands::replay(&r.manifest_file);
    }
    let outcome = match commands::execute(&cli).and_then(|o| emit(&cli, &o).map(|_| o)) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return EXIT_ERROR;
        }
    };
    let code = if outcome.passed {
        EXIT_MET
    } else {
        EXIT_MISSED
    };
    if let Some(path) = &cli.manifest {
        let replay = manifest::replayable_args(&args);
        let m = RunManifest {
            schema: RUN_MANIFEST_SCHEMA.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: config::subcommand(&args).unwrap_or_default(),
            config: manifest::settings(&replay, &config::subcommand(&args).unwrap_or_default()),
            args: replay,
            artifacts: vec![Artifact::of("report.json", &outcome.json)],
            representations: outcome.representations.clone(),
            wall_clock_ms: started.elapsed().as_millis() as u64,
            passed: outcome.passed,
            exit_code: code as i32,
        };
        let written = serde_json::to_string_pretty(&m)
            .map_err(anyhow::Error::from)
            .and_then(|s| {
                std::fs::write(path, s + "\n")?;
                Ok(())
            });
        if let Err(e) = written {
            eprintln!("error: writing manifest: {e:#}");
            return EXIT_ERROR;
        }
    }
    code
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args().collect()))
}
