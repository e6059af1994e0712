use std::path::PathBuf;

use thiserror::Error;

use crate::net::Cell;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (must be < {bound})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("concentration undefined for cell (node {}, layer {}): zero total strength", .0.node, .0.layer)]
    UndefinedConcentration(Cell),

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(String),

    #[error("overlap undefined: both intralayer blocks are empty")]
    UndefinedOverlap,

    #[error("similarity undefined: both layers contain only isolated cells")]
    UndefinedSimilarity,

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("{}:{line}: {message}", .path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{}: format error: {message}", .path.display())]
    Format { path: PathBuf, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
