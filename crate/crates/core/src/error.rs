use thiserror::Error;

/// Errors raised by the numeric and analysis modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    #[error("hypergeometric pole: (c)_m vanishes at m = {m}")]
    Pole { m: u64 },

    #[error("series order {requested} exceeds available order {available}")]
    OrderOverflow { requested: usize, available: usize },

    #[error("numerical instability at s = {s}: summation routes disagree by {rel_diff:e} (relative)")]
    Instability { s: u64, rel_diff: f64 },

    #[error("degenerate variance: {0}")]
    DegenerateVariance(&'static str),

    #[error("need at least {need} values, got {got}")]
    TooFew { need: usize, got: usize },

    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse { line: u64, column: usize, detail: String },

    #[error("invalid record(s) at rank {ranks:?}: {detail}")]
    InvalidRecord { ranks: Vec<u32>, detail: String },

    #[error("unknown fixture '{0}' (expected mathematics, biostatistics or physics)")]
    UnknownFixture(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl ModelError {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        ModelError::Domain { op, detail: detail.into() }
    }
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
