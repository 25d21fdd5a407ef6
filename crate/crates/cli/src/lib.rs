//! Scenario configuration, benchmark presets, normalization and CSV/JSON
//! emission around the plate solver.

// `!(x > 0.0)` guards reject NaN where `x <= 0.0` would let it through
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod emit;
pub mod normalize;
pub mod presets;
pub mod scenario;

/// Errors surfaced by the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config: {field}: {message}")]
    Validation { field: String, message: String },
    #[error("solver error: {0}")]
    Solver(#[from] varplate::Error),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit code: 1 for configuration problems, 2 for runtime ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation { .. } => 1,
            CliError::Solver(_) | CliError::Io { .. } => 2,
        }
    }
}
