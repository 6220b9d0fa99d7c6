use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cannot pad {core} to total {total}: need total >= {needed}")]
    NotPaddable {
        core: String,
        total: u32,
        needed: u32,
    },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("degree {degree} exceeds the character cap {cap}")]
    DegreeTooLarge { degree: u32, cap: u32 },

    #[error("limit not stabilized for {operands}: g = {first} at n = {n}, g = {second} at n = {}", n + 1)]
    NotStabilized {
        operands: String,
        n: u32,
        first: u64,
        second: u64,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    /// The character sum for a Kronecker coefficient was negative or not divisible by n!.
    #[error("non-integral Kronecker character sum for {0}")]
    NonIntegral(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("store corrupt at {location}: {reason}")]
    StoreCorrupt { location: String, reason: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
