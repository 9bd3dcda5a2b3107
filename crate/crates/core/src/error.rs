use std::io;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("probability {0} is not in [0, 1]")]
    InvalidProbability(f64),

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex set over {set} vertices used with a graph on {graph} vertices")]
    UniverseMismatch { set: usize, graph: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: String,
        range: String,
    },

    #[error("edge set is not a forest: {0}")]
    NotAForest(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no root of gamma in [{lo}, {hi}]: gamma(lo) = {gamma_lo}, gamma(hi) = {gamma_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        gamma_lo: f64,
        gamma_hi: f64,
    },

    #[error("records mix (n, p) pairs: ({0}, {1}) and ({2}, {3})")]
    MixedBatch(usize, f64, usize, f64),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn out_of_range(
    what: &'static str,
    value: impl ToString,
    range: impl ToString,
) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        range: range.to_string(),
    }
}
