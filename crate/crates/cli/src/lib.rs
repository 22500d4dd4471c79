//! JSON front end for `trinomial-sieve`: job files in, result documents out.

pub mod job;
pub mod run;

pub use job::{parse_job, JobSpec, Mode};
pub use run::{run_job, JobOutput, Overrides};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid job: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid job: {0}")]
    Schema(String),

    #[error(transparent)]
    Core(#[from] trinomial_sieve::error::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for internal soundness failures, 1 for everything the input caused.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_internal() => 2,
            _ => 1,
        }
    }
}
