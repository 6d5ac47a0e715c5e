//! Library half of the `orthoforms` binary: artifact cache, verification
//! suites and report format.

pub mod cache;
pub mod compute;
pub mod report;
pub mod suites;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Cache(#[from] cache::CacheError),
    #[error(transparent)]
    Pipeline(#[from] orthoforms_core::pipeline::PipelineError),
    #[error(transparent)]
    Graded(#[from] orthoforms_core::graded::GradedError),
    #[error("{path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for bad invocations, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
