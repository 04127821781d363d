//! File formats: parameter and group tables (TOML), record streams (JSON
//! lines), label tables (CSV), tensors (QCIM binary), manifests and reports.

pub mod groups;
pub mod labels;
pub mod manifest;
pub mod params;
pub mod qcim;
pub mod records;
pub mod report;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}:{line}: {message}", path.display())]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{}: {source}", path.display())]
    Param {
        path: PathBuf,
        #[source]
        source: qcanvas_core::model::ParamError,
    },
    #[error("{}: duplicate element {symbol}", path.display())]
    DuplicateElement { path: PathBuf, symbol: String },
    #[error("{}:{line}{}: {message}", path.display(), PairSuffix(pair_id))]
    Record {
        path: PathBuf,
        line: usize,
        pair_id: Option<String>,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Qcim {
        path: PathBuf,
        #[source]
        source: qcim::QcimError,
    },
}

struct PairSuffix<'a>(&'a Option<String>);

impl fmt::Display for PairSuffix<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(id) => write!(f, " ({id})"),
            None => Ok(()),
        }
    }
}

pub(crate) fn read_to_string(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn read_bytes(path: &Path) -> Result<Vec<u8>, FormatError> {
    fs::read(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `bytes` to a sibling temporary file and renames it into place, so
/// a failed run never leaves a truncated output behind.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), FormatError> {
    let io_err = |source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let mut f = fs::File::create(&tmp).map_err(io_err)?;
    f.write_all(bytes).map_err(io_err)?;
    f.sync_all().map_err(io_err)?;
    drop(f);
    fs::rename(&tmp, path).map_err(io_err)
}

/// Hex SHA-256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hex SHA-256 of a file's contents.
pub fn file_sha256(path: &Path) -> Result<String, FormatError> {
    Ok(sha256_hex(&read_bytes(path)?))
}

/// 1-based line of byte offset `at` in `text`.
pub(crate) fn line_of(text: &str, at: usize) -> usize {
    text.as_bytes()[..at.min(text.len())].iter().filter(|&&b| b == b'\n').count() + 1
}
