//! On-disk cache of expensive artifacts: `<key>.bin` holds the binary
//! encoding and `<key>.sha256` its digest.

use std::fs;
use std::path::{Path, PathBuf};

use orthoforms_core::arith::{Polynomial, BINARY_FORMAT_VERSION};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DEFAULT_DIR: &str = ".orthoforms-cache";
pub const ENV_VAR: &str = "ORTHOFORMS_CACHE_DIR";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache entry {path} does not match its recorded hash")]
    HashMismatch { path: PathBuf },
    #[error("cache entry {path} is missing its hash sidecar")]
    MissingSidecar { path: PathBuf },
    #[error("cache entry {path} cannot be decoded: {message}")]
    Decode { path: PathBuf, message: String },
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// The flag wins over the environment, which wins over the default.
    pub fn resolve(flag: Option<PathBuf>, disabled: bool) -> Self {
        if disabled {
            return Self { dir: None };
        }
        let dir = flag
            .or_else(|| std::env::var_os(ENV_VAR).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Self { dir: Some(dir) }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self {
            dir: Some(dir.into()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// Key from tool version, target and normalization flags.
    pub fn key(target: &str, flags: &str) -> String {
        format!(
            "{target}-{flags}-v{}-b{BINARY_FORMAT_VERSION}",
            env!("CARGO_PKG_VERSION")
        )
    }

    fn paths(&self, key: &str) -> Option<(PathBuf, PathBuf)> {
        let dir = self.dir.as_ref()?;
        Some((dir.join(format!("{key}.bin")), dir.join(format!("{key}.sha256"))))
    }

    pub fn load(&self, key: &str) -> Result<Option<Polynomial>, CacheError> {
        let Some((bin, side)) = self.paths(key) else {
            return Ok(None);
        };
        if !bin.exists() {
            return Ok(None);
        }
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        let bytes = fs::read(&bin).map_err(io(&bin))?;
        if !side.exists() {
            return Err(CacheError::MissingSidecar { path: bin });
        }
        let recorded = fs::read_to_string(&side).map_err(io(&side))?;
        if recorded.trim() != sha256_hex(&bytes) {
            return Err(CacheError::HashMismatch { path: bin });
        }
        Polynomial::from_binary(&bytes)
            .map(Some)
            .map_err(|e| CacheError::Decode {
                path: bin,
                message: e.to_string(),
            })
    }

    pub fn store(&self, key: &str, poly: &Polynomial) -> Result<(), CacheError> {
        let Some((bin, side)) = self.paths(key) else {
            return Ok(());
        };
        let dir = self.dir.as_ref().unwrap();
        fs::create_dir_all(dir).map_err(|source| CacheError::Io {
            path: dir.clone(),
            source,
        })?;
        let bytes = poly.to_binary();
        fs::write(&bin, &bytes).map_err(|source| CacheError::Io {
            path: bin.clone(),
            source,
        })?;
        fs::write(&side, format!("{}\n", sha256_hex(&bytes))).map_err(|source| CacheError::Io {
            path: side.clone(),
            source,
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}
