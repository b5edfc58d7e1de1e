//! On-disk memo of Gröbner bases, keyed by a SHA-256 of the generator set.

use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::grobner::{buchberger, GroebnerBasis, Ideal};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "LOOPSING_CACHE";

pub struct GroebnerCache {
    dir: PathBuf,
}

impl GroebnerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        GroebnerCache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(GroebnerCache::new)
    }

    pub fn key(ideal: &Ideal) -> String {
        let canonical =
            serde_json::to_string(&(ideal.d(), ideal.generators())).expect("serializable");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Cached basis, if present and still a Gröbner basis of the right
    /// dimension; unreadable entries are ignored.
    pub fn load(&self, ideal: &Ideal) -> Option<GroebnerBasis> {
        let text = std::fs::read_to_string(self.path(&Self::key(ideal))).ok()?;
        let basis: GroebnerBasis = serde_json::from_str(&text).ok()?;
        (basis.d == ideal.d() && basis.is_groebner()).then_some(basis)
    }

    pub fn store(&self, ideal: &Ideal, basis: &GroebnerBasis) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{}.tmp", Self::key(ideal)));
        std::fs::write(&tmp, serde_json::to_vec(basis).expect("serializable"))?;
        std::fs::rename(tmp, self.path(&Self::key(ideal)))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// Gröbner basis through the cache when one is configured. Write failures
/// are not fatal.
pub fn cached_buchberger(ideal: &Ideal, cache: Option<&GroebnerCache>) -> GroebnerBasis {
    if let Some(hit) = cache.and_then(|c| c.load(ideal)) {
        return hit;
    }
    let basis = buchberger(ideal);
    if let Some(c) = cache {
        let _ = c.store(ideal, &basis);
    }
    basis
}
