use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the interpolation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected_width}x{expected_height}, found {found_width}x{found_height}")]
    DimensionMismatch {
        expected_width: usize,
        expected_height: usize,
        found_width: usize,
        found_height: usize,
    },

    #[error("channel mismatch: expected {expected}, found {found}")]
    ChannelMismatch { expected: usize, found: usize },

    #[error("non-finite value in {what} at index {index}")]
    NonFinite { what: &'static str, index: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("image too small: {width}x{height}, minimum side is {min_side}")]
    ImageTooSmall {
        width: usize,
        height: usize,
        min_side: usize,
    },

    #[error("bad magic: {0}")]
    BadMagic(String),

    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },

    #[error("invalid dimensions: {width}x{height}")]
    InvalidDimensions { width: i64, height: i64 },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Stream(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn dims(expected: (usize, usize), found: (usize, usize)) -> Self {
        Error::DimensionMismatch {
            expected_width: expected.0,
            expected_height: expected.1,
            found_width: found.0,
            found_height: found.1,
        }
    }

    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        match self {
            Error::Stream(source) => Error::Io { path, source },
            e @ (Error::Io { .. } | Error::File { .. }) => e,
            other => Error::File {
                path,
                source: Box::new(other),
            },
        }
    }

    /// The underlying error with any file context stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } => source.root(),
            e => e,
        }
    }

    /// True for failures of the numeric pipeline rather than of its inputs.
    /// Errors carrying file context are input errors.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NonFinite { .. } | Error::Domain(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
