// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use crate::model::QuantumNumbers;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A closed-form expression was evaluated at or past one of its poles.
    #[error("{formula}: lambda = {lambda} is outside the domain (requires lambda > {bound})")]
    Domain {
        formula: &'static str,
        lambda: f64,
        bound: f64,
    },

    #[error("oracle: {0}")]
    Oracle(String),

    #[error("refinement did not converge: {reason}; history: {history}")]
    NonConvergence { reason: String, history: String },

    #[error("fit: {0}")]
    Fit(String),

    #[error("{}:{line}: field `{field}`: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        field: String,
        message: String,
    },

    #[error("no experimental record for {molecule} at {qn}")]
    MissingRecord { molecule: String, qn: QuantumNumbers },

    #[error("io error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
