//! On-disk cache of Gram matrices.
//!
//! One JSON file per (level, weight spec, code version), written to a
//! temporary file and renamed into place. Coefficients are stored exactly as
//! decimal numerator/denominator strings.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use qvir_exact::{LaurentPoly, Monomial, RatFunc, Var, NVARS};
use serde::{Deserialize, Serialize};

use crate::partitions::Partition;
use crate::verma::{GramMatrix, WeightSpec};

pub const ENV_CACHE_DIR: &str = "QVIR_CACHE_DIR";
pub const CACHE_FORMAT: &str = "qvir-gram-cache";
pub const CACHE_VERSION: u32 = 1;
pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt cache entry {path}: {reason}")]
    Corrupt { path: String, reason: String },
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct Term {
    exp: Vec<i32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct Entry {
    num: Vec<Term>,
    den: Vec<Term>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct File {
    format: String,
    cache_version: u32,
    code_version: String,
    level: usize,
    weight: String,
    variables: Vec<String>,
    parts: Vec<Vec<usize>>,
    entries: Vec<Vec<Entry>>,
}

fn poly_terms(p: &LaurentPoly) -> Vec<Term> {
    p.terms()
        .iter()
        .map(|(m, c)| Term { exp: m.0.to_vec(), num: c.numer().to_string(), den: c.denom().to_string() })
        .collect()
}

fn parse_poly(ts: &[Term]) -> Result<LaurentPoly, String> {
    let mut out = Vec::with_capacity(ts.len());
    for t in ts {
        if t.exp.len() != NVARS {
            return Err("exponent vector has the wrong length".into());
        }
        let mut m = Monomial::ONE;
        m.0.copy_from_slice(&t.exp);
        let n: BigInt = t.num.parse().map_err(|_| format!("bad integer {:?}", t.num))?;
        let d: BigInt = t.den.parse().map_err(|_| format!("bad integer {:?}", t.den))?;
        if d == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        out.push((m, BigRational::new(n, d)));
    }
    Ok(LaurentPoly::from_terms(out))
}

fn encode(g: &GramMatrix<RatFunc>, weight: &WeightSpec) -> File {
    File {
        format: CACHE_FORMAT.into(),
        cache_version: CACHE_VERSION,
        code_version: CODE_VERSION.into(),
        level: g.level,
        weight: weight.key(),
        variables: Var::ALL.iter().map(|v| v.name().to_string()).collect(),
        parts: g.parts.iter().map(|p| p.parts().to_vec()).collect(),
        entries: g
            .entries
            .iter()
            .map(|row| row.iter().map(|x| Entry { num: poly_terms(x.numer()), den: poly_terms(x.denom()) }).collect())
            .collect(),
    }
}

fn decode(f: File, level: usize, weight: &WeightSpec) -> Result<GramMatrix<RatFunc>, String> {
    if f.format != CACHE_FORMAT || f.cache_version != CACHE_VERSION || f.code_version != CODE_VERSION {
        return Err("version mismatch".into());
    }
    if f.level != level || f.weight != weight.key() {
        return Err("key mismatch".into());
    }
    let parts: Vec<Partition> = f.parts.into_iter().map(Partition::new).collect();
    if parts != crate::partitions::partitions_of(level) {
        return Err("unexpected basis".into());
    }
    let mut entries = Vec::with_capacity(parts.len());
    for row in &f.entries {
        if row.len() != parts.len() {
            return Err("row length".into());
        }
        let mut r = Vec::with_capacity(row.len());
        for e in row {
            let num = parse_poly(&e.num)?;
            let den = parse_poly(&e.den)?;
            r.push(RatFunc::new(num, den).map_err(|e| e.to_string())?);
        }
        entries.push(r);
    }
    if entries.len() != parts.len() {
        return Err("row count".into());
    }
    Ok(GramMatrix { level, parts, entries })
}

/// A cache rooted at a directory.
#[derive(Clone, Debug)]
pub struct GramCache {
    dir: PathBuf,
}

impl GramCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GramCache { dir: dir.into() }
    }

    /// `$QVIR_CACHE_DIR` if set, else `fallback`.
    pub fn from_env_or(fallback: impl Into<PathBuf>) -> Self {
        match std::env::var_os(ENV_CACHE_DIR) {
            Some(d) if !d.is_empty() => Self::new(d),
            _ => Self::new(fallback),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, level: usize, weight: &WeightSpec) -> PathBuf {
        let key: String =
            weight.key().chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect();
        self.dir.join(format!("gram-{}-{}-v{}-{}.json", key, level, CACHE_VERSION, CODE_VERSION))
    }

    pub fn load(&self, level: usize, weight: &WeightSpec) -> Result<Option<GramMatrix<RatFunc>>, CacheError> {
        let path = self.path(level, weight);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |reason: String| CacheError::Corrupt { path: path.display().to_string(), reason };
        let f: File = serde_json::from_slice(&bytes).map_err(|e| corrupt(e.to_string()))?;
        decode(f, level, weight).map(Some).map_err(corrupt)
    }

    pub fn store(&self, g: &GramMatrix<RatFunc>, weight: &WeightSpec) -> Result<PathBuf, CacheError> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path(g.level, weight);
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&to_bytes(g, weight))?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Loads the entry or computes and stores it. Corrupt entries are
    /// reported on stderr and recomputed.
    pub fn get_or_compute(
        &self,
        level: usize,
        weight: &WeightSpec,
        compute: impl FnOnce() -> GramMatrix<RatFunc>,
    ) -> Result<(GramMatrix<RatFunc>, bool), CacheError> {
        match self.load(level, weight) {
            Ok(Some(g)) => return Ok((g, true)),
            Ok(None) => {}
            Err(CacheError::Corrupt { path, reason }) => {
                eprintln!("warning: ignoring corrupt cache entry {}: {}", path, reason);
            }
            Err(e) => return Err(e),
        }
        let g = compute();
        self.store(&g, weight)?;
        Ok((g, false))
    }
}

/// Canonical serialized form of a Gram matrix.
pub fn to_bytes(g: &GramMatrix<RatFunc>, weight: &WeightSpec) -> Vec<u8> {
    let mut v = serde_json::to_vec_pretty(&encode(g, weight)).expect("serializable");
    v.push(b'\n');
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verma;

    #[test]
    fn round_trip_level_two() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GramCache::new(dir.path());
        let g = verma::gram_uncached(2, &WeightSpec::Generic).unwrap();
        cache.store(&g, &WeightSpec::Generic).unwrap();
        let back = cache.load(2, &WeightSpec::Generic).unwrap().unwrap();
        assert_eq!(back, g);
        assert_eq!(to_bytes(&back, &WeightSpec::Generic), to_bytes(&g, &WeightSpec::Generic));
    }

    #[test]
    fn corrupt_entry_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GramCache::new(dir.path());
        fs::write(cache.path(1, &WeightSpec::Generic), b"{not json").unwrap();
        assert!(matches!(cache.load(1, &WeightSpec::Generic), Err(CacheError::Corrupt { .. })));
        let (g, hit) = cache
            .get_or_compute(1, &WeightSpec::Generic, || verma::gram_uncached(1, &WeightSpec::Generic).unwrap())
            .unwrap();
        assert!(!hit);
        assert_eq!(g.entries.len(), 1);
        assert!(cache.load(1, &WeightSpec::Generic).unwrap().is_some());
    }

    #[test]
    fn key_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = GramCache::new(dir.path());
        let g = verma::gram_uncached(1, &WeightSpec::Generic).unwrap();
        let bytes = to_bytes(&g, &WeightSpec::Generic);
        fs::write(cache.path(1, &WeightSpec::BridgeB), bytes).unwrap();
        assert!(cache.load(1, &WeightSpec::BridgeB).is_err());
    }
}
