//! Binary representation files and a digest-checked cache.
//!
//! Layout: the 8-byte magic `SPINREP1`, a little-endian `u32` header length,
//! a JSON [`RepHeader`], then for every algebra basis element a `u32` entry
//! count followed by `(u32 row, u32 col, u8 value)` triples.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::rep::{Representation, SparseMat};
use crate::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystemKind, RootVec};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldSpec};

const MAGIC: &[u8; 8] = b"SPINREP1";
pub const REP_SCHEMA: &str = "spinstab.rep/1";
pub const MANIFEST_SCHEMA: &str = "spinstab.rep-cache/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepHeader {
    pub schema: String,
    pub root_system: RootSystemKind,
    pub lattice: LatticeKind,
    pub field: FieldSpec,
    pub label: String,
    pub dim: usize,
    pub algebra_dim: usize,
    pub weights: Vec<Vec<i32>>,
    pub subalgebra: Option<Vec<Vec<Elem>>>,
}

pub fn write_rep<W: Write>(rep: &Representation, mut w: W) -> Result<()> {
    let alg = rep.algebra();
    let header = RepHeader {
        schema: REP_SCHEMA.into(),
        root_system: alg.root_system().kind(),
        lattice: alg.lattice().kind(),
        field: alg.field().spec(),
        label: rep.label().into(),
        dim: rep.dim(),
        algebra_dim: rep.algebra_dim(),
        weights: rep.weights().iter().map(|v| v.0.clone()).collect(),
        subalgebra: rep.subalgebra_basis().map(|b| b.to_vec()),
    };
    let json = serde_json::to_vec(&header)?;
    w.write_all(MAGIC)?;
    w.write_all(&(json.len() as u32).to_le_bytes())?;
    w.write_all(&json)?;
    for m in rep.actions() {
        w.write_all(&(m.nnz() as u32).to_le_bytes())?;
        for &(r, c, v) in &m.entries {
            w.write_all(&r.to_le_bytes())?;
            w.write_all(&c.to_le_bytes())?;
            w.write_all(&[v])?;
        }
    }
    Ok(())
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

pub fn read_rep<R: Read>(mut r: R) -> Result<Representation> {
    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let len = read_u32(&mut r)? as usize;
    let mut json = vec![0u8; len];
    r.read_exact(&mut json)?;
    let header: RepHeader = serde_json::from_slice(&json)?;
    if header.schema != REP_SCHEMA {
        return Err(Error::Format(format!("unknown schema {}", header.schema)));
    }
    let field = Field::new(header.field)?;
    let alg = ChevalleyAlgebra::new(header.root_system, header.lattice, &field)?;
    let q = field.order();
    let mut actions = Vec::with_capacity(header.algebra_dim);
    for _ in 0..header.algebra_dim {
        let n = read_u32(&mut r)? as usize;
        let mut entries = Vec::with_capacity(n);
        for _ in 0..n {
            let row = read_u32(&mut r)?;
            let col = read_u32(&mut r)?;
            let mut v = [0u8; 1];
            r.read_exact(&mut v)?;
            if v[0] as usize >= q {
                return Err(Error::Format("entry outside the field".into()));
            }
            entries.push((row, col, v[0]));
        }
        actions.push(SparseMat { entries });
    }
    let weights = header.weights.into_iter().map(RootVec).collect();
    Representation::from_parts(
        alg,
        header.subalgebra,
        header.dim,
        actions,
        weights,
        header.label,
    )
}

pub fn to_bytes(rep: &Representation) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    write_rep(rep, &mut out)?;
    Ok(out)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub descriptor: String,
    pub file: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct CacheManifest {
    pub schema: String,
    pub entries: Vec<CacheEntry>,
}

/// Representation cache keyed by a descriptor string such as `D10/simply-connected/GF(2)/halfspin+`.
pub struct RepCache {
    dir: PathBuf,
}

impl RepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(RepCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn manifest_path(&self) -> PathBuf {
        self.dir.join("manifest.json")
    }

    pub fn manifest(&self) -> Result<CacheManifest> {
        match fs::read(self.manifest_path()) {
            Ok(b) => Ok(serde_json::from_slice(&b)?),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(CacheManifest {
                schema: MANIFEST_SCHEMA.into(),
                entries: Vec::new(),
            }),
            Err(e) => Err(e.into()),
        }
    }

    fn file_name(descriptor: &str) -> String {
        format!("{}.rep", &sha256_hex(descriptor.as_bytes())[..16])
    }

    /// Loads a cached build when its digest checks out, otherwise builds and stores it.
    pub fn get_or_build<F>(
        &self,
        descriptor: &str,
        build: F,
    ) -> Result<(Representation, CacheEntry)>
    where
        F: FnOnce() -> Result<Representation>,
    {
        let mut manifest = self.manifest()?;
        if let Some(entry) = manifest.entries.iter().find(|e| e.descriptor == descriptor) {
            if let Ok(bytes) = fs::read(self.dir.join(&entry.file)) {
                if sha256_hex(&bytes) == entry.sha256 {
                    if let Ok(rep) = read_rep(bytes.as_slice()) {
                        return Ok((rep, entry.clone()));
                    }
                }
            }
        }
        let rep = build()?;
        let bytes = to_bytes(&rep)?;
        let file = Self::file_name(descriptor);
        fs::write(self.dir.join(&file), &bytes)?;
        let entry = CacheEntry {
            descriptor: descriptor.into(),
            file,
            sha256: sha256_hex(&bytes),
            bytes: bytes.len() as u64,
        };
        manifest.schema = MANIFEST_SCHEMA.into();
        manifest.entries.retain(|e| e.descriptor != descriptor);
        manifest.entries.push(entry.clone());
        manifest
            .entries
            .sort_by(|a, b| a.descriptor.cmp(&b.descriptor));
        fs::write(self.manifest_path(), serde_json::to_vec_pretty(&manifest)?)?;
        Ok((rep, entry))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinrep::{e8_restriction_halfspin, halfspin_rep, Parity};

    fn same(a: &Representation, b: &Representation) {
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.actions(), b.actions());
        assert_eq!(a.weights(), b.weights());
        assert_eq!(a.label(), b.label());
        assert_eq!(a.subalgebra_basis(), b.subalgebra_basis());
    }

    #[test]
    fn round_trip() {
        let f = Field::binary(2).unwrap();
        let rep = halfspin_rep(5, Parity::Odd, LatticeKind::SimplyConnected, &f).unwrap();
        let back = read_rep(to_bytes(&rep).unwrap().as_slice()).unwrap();
        same(&rep, &back);
        let e8 = e8_restriction_halfspin(&Field::prime(2).unwrap()).unwrap();
        same(&e8, &read_rep(to_bytes(&e8).unwrap().as_slice()).unwrap());
        assert!(read_rep(&b"NOTAREP0...."[..]).is_err());
    }

    #[test]
    fn cache_reuses_and_repairs() {
        let dir = std::env::temp_dir().join(format!("spinstab-cache-test-{}", std::process::id()));
        let cache = RepCache::new(&dir).unwrap();
        let f = Field::prime(2).unwrap();
        let build = || halfspin_rep(4, Parity::Even, LatticeKind::SimplyConnected, &f);
        let (a, e1) = cache.get_or_build("D4/sc/GF(2)/halfspin+", build).unwrap();
        let (b, e2) = cache
            .get_or_build("D4/sc/GF(2)/halfspin+", || panic!("should be cached"))
            .unwrap();
        assert_eq!(e1, e2);
        same(&a, &b);
        fs::write(dir.join(&e1.file), b"corrupt").unwrap();
        let (c, _) = cache.get_or_build("D4/sc/GF(2)/halfspin+", build).unwrap();
        same(&a, &c);
        fs::remove_dir_all(&dir).unwrap();
    }
}
