use thiserror::Error;

use crate::coeffs::CoeffError;
use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Coefficients(#[from] CoeffError),
    #[error("{0}")]
    Core(#[from] hkdiag_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Output { path: String, source: std::io::Error },
}

impl CliError {
    /// 2 bad input, 3 unsupported structure, 4 no relation, 1 anything else.
    pub fn exit_code(&self) -> u8 {
        use hkdiag_core::Error as E;
        match self {
            CliError::Parse(_) | CliError::Coefficients(_) | CliError::Usage(_) => 2,
            CliError::Core(e) => match e {
                E::InvalidArgument(_) => 2,
                E::UnsupportedRamification(_) | E::MultipleBoundedRoot { .. } | E::NotASimpleRoot | E::ResidueUndefined => 3,
                E::NoRelation | E::InsufficientData { .. } => 4,
                _ => 1,
            },
            CliError::Output { .. } => 1,
        }
    }
}
