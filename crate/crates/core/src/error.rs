use thiserror::Error;

use crate::geometry::Chart;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("no conversion from {from:?} to {to:?}")]
    ChartMismatch { from: Chart, to: Chart },

    #[error("point ({u}, {v}) is outside the range of chart {chart:?}")]
    OutOfChart { chart: Chart, u: f64, v: f64 },

    #[error("point ({u}, {v}) is not inside the domain {domain}")]
    OutsideDomain { domain: String, u: f64, v: f64 },

    #[error("invalid parameter `{key}`: {reason}")]
    InvalidParameter { key: String, reason: String },

    #[error("cannot parse `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("{op} is not defined for {kind}")]
    Unsupported { op: &'static str, kind: String },

    #[error("input {re} + {im}i lies on a branch cut or outside the closed right half plane")]
    BranchCut { re: f64, im: f64 },

    #[error("domain {0} is unbounded: a truncation is required")]
    MissingTruncation(String),

    #[error("infinite/unbounded domain: {0}")]
    InfiniteOrUnbounded(String),

    #[error("linear solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
