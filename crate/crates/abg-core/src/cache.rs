//! Disk cache for graded components, one JSON file per (D, n).
//!
//! Coefficients are stored as decimal rational strings so the files stay
//! readable and independent of bignum internals. A file whose format tag does
//! not match the current one is never parsed further; callers rebuild and
//! overwrite it.

use crate::alt::{component_from_parts, Component};
use crate::error::AbgError;
use crate::magma::Monomial;
use crate::Result;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const FORMAT_TAG: &str = "abg-component/1";

#[derive(Serialize, Deserialize)]
struct ComponentFile {
    format: String,
    d: u32,
    n: u32,
    monomials: u64,
    /// (word, shape) codes of basis monomials, canonical order
    basis: Vec<(u64, u64)>,
    /// pivot (word, shape) plus its normal form over basis positions
    rows: Vec<(u64, u64, Vec<(u32, String)>)>,
}

#[derive(Serialize, Deserialize)]
struct FormatProbe {
    format: String,
}

pub fn component_path(dir: &Path, d: u32, n: u32) -> PathBuf {
    dir.join(format!("component-d{d}-n{n}.json"))
}

pub fn save_component(dir: &Path, comp: &Component) -> Result<()> {
    fs::create_dir_all(dir)?;
    let file = ComponentFile {
        format: FORMAT_TAG.to_string(),
        d: comp.d,
        n: comp.n,
        monomials: comp.monomial_count() as u64,
        basis: comp.basis_monomials().map(|m| (m.word_code(), m.shape_code())).collect(),
        rows: comp
            .relation_rows_for_cache()
            .into_iter()
            .map(|(m, form)| {
                (
                    m.word_code(),
                    m.shape_code(),
                    form.into_iter().map(|(p, v)| (p, v.to_string())).collect(),
                )
            })
            .collect(),
    };
    let path = component_path(dir, comp.d, comp.n);
    let tmp = path.with_extension("json.tmp");
    fs::write(&tmp, serde_json::to_vec(&file).map_err(|e| AbgError::Cache(e.to_string()))?)?;
    fs::rename(&tmp, &path)?;
    Ok(())
}

/// Ok(None) when no file exists; Err when a file exists but cannot be used.
pub fn load_component(dir: &Path, d: u32, n: u32) -> Result<Option<Component>> {
    let path = component_path(dir, d, n);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let probe: FormatProbe = serde_json::from_slice(&bytes)
        .map_err(|e| AbgError::Cache(format!("{}: {e}", path.display())))?;
    if probe.format != FORMAT_TAG {
        return Err(AbgError::Cache(format!(
            "{}: format tag {:?}, expected {:?}",
            path.display(),
            probe.format,
            FORMAT_TAG
        )));
    }
    let file: ComponentFile = serde_json::from_slice(&bytes)
        .map_err(|e| AbgError::Cache(format!("{}: {e}", path.display())))?;
    if file.d != d || file.n != n {
        return Err(AbgError::Cache(format!(
            "{}: keyed for d={} n={}, expected d={d} n={n}",
            path.display(),
            file.d,
            file.n
        )));
    }
    let basis: Vec<Monomial> =
        file.basis.iter().map(|&(w, s)| Monomial::from_codes(n, w, s)).collect();
    let mut rows = Vec::with_capacity(file.rows.len());
    for (w, s, form) in file.rows {
        let mut parsed = Vec::with_capacity(form.len());
        for (p, v) in form {
            let q = BigRational::from_str(&v)
                .map_err(|e| AbgError::Cache(format!("{}: bad rational: {e}", path.display())))?;
            parsed.push((p, q));
        }
        rows.push((Monomial::from_codes(n, w, s), parsed));
    }
    let comp = component_from_parts(d, n, basis, rows)?;
    if comp.monomial_count() as u64 != file.monomials {
        return Err(AbgError::Cache(format!("{}: monomial count mismatch", path.display())));
    }
    Ok(Some(comp))
}

/// Metadata for `cache inspect`.
#[derive(Debug, Clone, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub format: String,
    pub d: u32,
    pub n: u32,
    pub basis_dim: u64,
    pub bytes: u64,
    pub usable: bool,
}

pub fn inspect(dir: &Path) -> Result<Vec<CacheEntry>> {
    let mut out = Vec::new();
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(out),
        Err(e) => return Err(e.into()),
    };
    for entry in entries {
        let entry = entry?;
        let path = entry.path();
        if path.extension().map(|e| e != "json").unwrap_or(true) {
            continue;
        }
        let bytes = entry.metadata()?.len();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        match fs::read(&path).ok().and_then(|b| serde_json::from_slice::<ComponentFile>(&b).ok()) {
            Some(file) => out.push(CacheEntry {
                file: name,
                usable: file.format == FORMAT_TAG,
                format: file.format,
                d: file.d,
                n: file.n,
                basis_dim: file.basis.len() as u64,
                bytes,
            }),
            None => out.push(CacheEntry {
                file: name,
                format: "(unreadable)".into(),
                d: 0,
                n: 0,
                basis_dim: 0,
                bytes,
                usable: false,
            }),
        }
    }
    out.sort_by(|a, b| a.file.cmp(&b.file));
    Ok(out)
}

pub fn clear(dir: &Path) -> Result<u64> {
    let mut removed = 0;
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    for entry in entries {
        let path = entry?.path();
        if path.extension().map(|e| e == "json").unwrap_or(false) {
            fs::remove_file(&path)?;
            removed += 1;
        }
    }
    Ok(removed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt::{Algebra, AlgebraConfig};

    #[test]
    fn round_trip_preserves_reduction() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = AlgebraConfig { cache_dir: Some(dir.path().to_path_buf()), ..Default::default() };
        let alg = Algebra::new(2, cfg.clone());
        let c4 = alg.component(4).unwrap();
        // second algebra must load, not rebuild: compare every normal form
        let alg2 = Algebra::new(2, cfg);
        let c4b = alg2.component(4).unwrap();
        assert_eq!(c4.dim(), c4b.dim());
        for m in crate::magma::enumerate(2, 4) {
            assert_eq!(c4.reduce_monomial(&m), c4b.reduce_monomial(&m));
        }
        let entries = inspect(dir.path()).unwrap();
        assert_eq!(entries.len(), 4);
        assert!(entries.iter().all(|e| e.usable));
    }

    #[test]
    fn version_mismatch_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = component_path(dir.path(), 2, 2);
        std::fs::create_dir_all(dir.path()).unwrap();
        std::fs::write(&path, br#"{"format":"abg-component/0","d":2,"n":2,"monomials":4,"basis":[],"rows":[]}"#).unwrap();
        match load_component(dir.path(), 2, 2) {
            Err(AbgError::Cache(msg)) => assert!(msg.contains("format tag")),
            other => panic!("expected cache error, got {:?}", other.map(|c| c.map(|c| c.dim()))),
        }
        // the algebra silently rebuilds over it
        let cfg = AlgebraConfig { cache_dir: Some(dir.path().to_path_buf()), ..Default::default() };
        let alg = Algebra::new(2, cfg);
        assert_eq!(alg.dim(2).unwrap(), 4);
        assert!(load_component(dir.path(), 2, 2).unwrap().is_some());
    }

    #[test]
    fn wrong_key_is_refused() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = AlgebraConfig { cache_dir: Some(dir.path().to_path_buf()), ..Default::default() };
        Algebra::new(2, cfg).component(3).unwrap();
        let stored = component_path(dir.path(), 2, 3);
        let lied = component_path(dir.path(), 3, 3);
        std::fs::copy(&stored, &lied).unwrap();
        match load_component(dir.path(), 3, 3) {
            Err(AbgError::Cache(msg)) => assert!(msg.contains("keyed for")),
            other => panic!("expected cache error, got {:?}", other.map(|c| c.map(|c| c.dim()))),
        }
    }
}
