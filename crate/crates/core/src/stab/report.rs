use std::collections::BTreeMap;

use base64::engine::general_purpose::STANDARD as B64;
use base64::Engine;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::stab_dim;
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldSpec};
use crate::spinrep::Representation;

pub const STAB_REPORT_SCHEMA: &str = "spinstab.stabilizer-report/1";
pub const RNG_ALGORITHM: &str = "chacha8";
const STREAM_RULE: &str = "ChaCha8Rng::seed_from_u64(seed), stream = trial index";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngInfo {
    pub algorithm: String,
    pub seed: u64,
    pub stream: String,
}

impl RngInfo {
    pub fn new(seed: u64) -> Self {
        RngInfo {
            algorithm: RNG_ALGORITHM.into(),
            seed,
            stream: STREAM_RULE.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerReport {
    pub schema: String,
    pub group: String,
    pub n: Option<usize>,
    pub isogeny: Option<String>,
    pub rep: String,
    pub field: FieldSpec,
    pub module_dim: usize,
    pub algebra_dim: usize,
    pub rng: RngInfo,
    /// Trial budget.
    pub trials: usize,
    /// Trials actually drawn before the target was reached.
    pub trials_run: usize,
    pub target: Option<usize>,
    pub min_dim: usize,
    pub histogram: BTreeMap<usize, usize>,
    /// Base-64 of the packed witness coordinates: bits for GF(2), one byte each otherwise.
    pub witness: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl StabilizerReport {
    pub fn target_met(&self) -> Option<bool> {
        self.target.map(|t| self.min_dim == t)
    }

    pub fn witness_vector(&self) -> Result<Vec<Elem>> {
        decode_witness(&Field::new(self.field)?, self.module_dim, &self.witness)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub trials: usize,
    pub seed: u64,
    /// Stop as soon as a trial reaches this dimension.
    pub target: Option<usize>,
    /// Worker threads; zero means the available parallelism.
    pub threads: usize,
}

impl SearchOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        SearchOptions {
            trials,
            seed,
            target: None,
            threads: 0,
        }
    }

    pub fn with_target(mut self, target: usize) -> Self {
        self.target = Some(target);
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }
}

pub fn encode_witness(field: &Field, v: &[Elem]) -> String {
    if field.is_gf2() {
        let mut bytes = vec![0u8; v.len().div_ceil(8)];
        for (i, &x) in v.iter().enumerate() {
            if x != 0 {
                bytes[i / 8] |= 1 << (i % 8);
            }
        }
        B64.encode(bytes)
    } else {
        B64.encode(v)
    }
}

pub fn decode_witness(field: &Field, dim: usize, s: &str) -> Result<Vec<Elem>> {
    let bytes = B64
        .decode(s)
        .map_err(|e| Error::Format(format!("witness: {e}")))?;
    if field.is_gf2() {
        if bytes.len() != dim.div_ceil(8) {
            return Err(Error::Format("witness has the wrong length".into()));
        }
        if !dim.is_multiple_of(8) && bytes[bytes.len() - 1] >> (dim % 8) != 0 {
            return Err(Error::Format("witness has stray padding bits".into()));
        }
        Ok((0..dim).map(|i| (bytes[i / 8] >> (i % 8)) & 1).collect())
    } else {
        if bytes.len() != dim {
            return Err(Error::Format("witness has the wrong length".into()));
        }
        if bytes.iter().any(|&b| b as usize >= field.order()) {
            return Err(Error::Format("witness entry outside the field".into()));
        }
        Ok(bytes)
    }
}

/// Recomputes the stabilizer dimension of the stored witness.
pub fn verify_witness(rep: &Representation, report: &StabilizerReport) -> Result<bool> {
    if rep.field().spec() != report.field
        || rep.dim() != report.module_dim
        || rep.algebra_dim() != report.algebra_dim
    {
        return Ok(false);
    }
    let v = report.witness_vector()?;
    Ok(stab_dim(rep, &v)? == report.min_dim)
}

fn trial_vector(field: &Field, dim: usize, seed: u64, trial: usize) -> Vec<Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..dim).map(|_| field.random(&mut rng)).collect()
}

fn run_batch(
    rep: &Representation,
    seed: u64,
    range: std::ops::Range<usize>,
    threads: usize,
) -> Result<Vec<(Vec<Elem>, usize)>> {
    let run = |t: usize| -> Result<(Vec<Elem>, usize)> {
        let v = trial_vector(rep.field(), rep.dim(), seed, t);
        let d = stab_dim(rep, &v)?;
        Ok((v, d))
    };
    if threads <= 1 || range.len() <= 1 {
        return range.map(run).collect();
    }
    let idx: Vec<usize> = range.collect();
    let chunk = idx.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = idx
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|&t| run(t)).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::with_capacity(idx.len());
        for h in handles {
            out.extend(
                h.join()
                    .map_err(|_| Error::Verification("worker panicked".into()))??,
            );
        }
        Ok(out)
    })
}

/// Seeded search for a vector with small infinitesimal stabilizer.
///
/// Trial `t` draws its coordinates uniformly from a ChaCha8 stream seeded by
/// `seed` with stream number `t`. With a target, the search stops at the first
/// trial (in index order) reaching it, so the report does not depend on the
/// thread count.
pub fn search_generic_stab(rep: &Representation, opts: &SearchOptions) -> Result<StabilizerReport> {
    if opts.trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let threads = match opts.threads {
        0 => std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1),
        t => t,
    };
    let mut histogram = BTreeMap::new();
    let mut best: Option<(Vec<Elem>, usize)> = None;
    let mut trials_run = 0;
    'outer: while trials_run < opts.trials {
        let end = (trials_run + threads).min(opts.trials);
        for (v, d) in run_batch(rep, opts.seed, trials_run..end, threads)? {
            trials_run += 1;
            *histogram.entry(d).or_insert(0) += 1;
            if best.as_ref().is_none_or(|(_, b)| d < *b) {
                best = Some((v, d));
            }
            if opts.target.is_some_and(|t| d <= t) {
                break 'outer;
            }
        }
    }
    let (witness, min_dim) = best.expect("at least one trial ran");
    let alg = rep.algebra();
    let report = StabilizerReport {
        schema: STAB_REPORT_SCHEMA.into(),
        group: format!("{}/{}", alg.root_system().kind(), alg.lattice().kind()),
        n: None,
        isogeny: None,
        rep: rep.label().into(),
        field: rep.field().spec(),
        module_dim: rep.dim(),
        algebra_dim: rep.algebra_dim(),
        rng: RngInfo::new(opts.seed),
        trials: opts.trials,
        trials_run,
        target: opts.target,
        min_dim,
        histogram,
        witness: encode_witness(rep.field(), &witness),
        runtime_ms: None,
    };
    if !verify_witness(rep, &report)? {
        return Err(Error::Verification(
            "witness does not reproduce its dimension".into(),
        ));
    }
    Ok(report)
}
