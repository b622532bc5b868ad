//! File formats for matrices and rules.

mod matrix_file;
mod rules_file;

pub use matrix_file::{parse_matrix, write_matrix};
pub use rules_file::{parse_rules, write_rules};

use std::path::Path;

use thiserror::Error;

use crate::matrix::{MatrixError, PNMatrix};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<PNMatrix, IoError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })?;
    parse_matrix(&text)
}

pub fn save_matrix(m: &PNMatrix, path: impl AsRef<Path>) -> Result<(), IoError> {
    let path = path.as_ref();
    std::fs::write(path, write_matrix(m)).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}
