//! On-disk cache of Chevalley structure constants.
//!
//! ```text
//! equigeo-cache 1
//! sha256 <hex digest of the payload>
//! trust-seed <u64>
//! trust-samples <usize>
//! <payload: StructureConstants::to_text>
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use equigeo::chevalley::{compact_form, CompactLieAlgebra, StructureConstants};
use equigeo::rootsys::RootSystem;
use sha2::{Digest, Sha256};

/// Sampled Jacobi triples re-checked before a cache entry is trusted.
const TRUST_SAMPLES: usize = 200;

#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Hit,
    Miss,
    Rebuilt(String),
}

pub fn entry_path(dir: &Path, rs: &RootSystem) -> PathBuf {
    dir.join(format!("{}.chevalley", rs.label()))
}

fn digest(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

fn load(path: &Path, rs: &RootSystem) -> Result<CompactLieAlgebra> {
    let text = fs::read_to_string(path)?;
    let mut parts = text.splitn(5, '\n');
    let mut field = |key: &str| -> Result<String> {
        let line = parts.next().unwrap_or_default();
        match line.split_once(' ') {
            Some((k, v)) if k == key => Ok(v.to_string()),
            _ => bail!("expected `{key}` line"),
        }
    };
    if field("equigeo-cache")? != "1" {
        bail!("unknown cache version");
    }
    let hash = field("sha256")?;
    let seed: u64 = field("trust-seed")?.parse()?;
    let samples: usize = field("trust-samples")?.parse()?;
    let payload = parts.next().unwrap_or_default();
    if digest(payload) != hash {
        bail!("hash mismatch");
    }
    let g = compact_form(&StructureConstants::from_text(rs, payload)?);
    if !g.verify(false, samples, seed).passed() {
        bail!("stored verification sample fails");
    }
    Ok(g)
}

fn store(path: &Path, sc: &StructureConstants, seed: u64) -> Result<()> {
    let dir = path.parent().context("cache path has no parent")?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let payload = sc.to_text();
    let text = format!(
        "equigeo-cache 1\nsha256 {}\ntrust-seed {seed}\ntrust-samples {TRUST_SAMPLES}\n{payload}",
        digest(&payload)
    );
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

/// Loads the algebra from `dir`, rebuilding (and rewriting the entry) when
/// it is missing or fails any check.
pub fn load_or_build(dir: &Path, rs: &RootSystem, seed: u64) -> Result<(CompactLieAlgebra, Status)> {
    let path = entry_path(dir, rs);
    let status = if path.exists() {
        match load(&path, rs) {
            Ok(g) => return Ok((g, Status::Hit)),
            Err(e) => Status::Rebuilt(e.to_string()),
        }
    } else {
        Status::Miss
    };
    let sc = StructureConstants::new(rs);
    let g = compact_form(&sc);
    store(&path, &sc, seed)?;
    Ok((g, status))
}
