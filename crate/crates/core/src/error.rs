use thiserror::Error;

use crate::algebra::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} lies outside the {family} domain: {reason}")]
    Domain {
        family: Family,
        x: f64,
        reason: &'static str,
    },

    #[error("{what} is singular at x = {x}")]
    Singularity { what: &'static str, x: f64 },

    #[error("empty sample set")]
    EmptySamples,

    #[error("level n = {n} is outside the bound-state ladder (n_max = {n_max:?})")]
    OutOfLadder { n: u32, n_max: Option<u32> },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("real tridiagonal engine received a complex diagonal at index {index}; use the complex engine")]
    ComplexDiagonal { index: usize },

    #[error("eigenvalue iteration did not converge (deflation block starting at index {block})")]
    NoConvergence { block: usize },

    #[error("bound-state count changed between refinement levels: {counts:?}")]
    CountMismatch { counts: Vec<usize> },

    #[error("{0}")]
    Usage(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
