use thiserror::Error;

/// Errors raised by the library.
///
/// Usage problems (bad input syntax, invalid types) and contract violations
/// (an input that is not a module character, a failed cross-check) are kept
/// apart so the CLI can map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidLieType(String),
    #[error("weight has rank {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("not a module character: {0}")]
    NotAModuleCharacter(String),
    #[error("not an l-character: {0}")]
    NotAnLCharacter(String),
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("no character known for highest weight {weight} ({lie_type}, characteristic {characteristic})")]
    MissingCharacter {
        lie_type: String,
        characteristic: u64,
        weight: String,
    },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("field of order {0} exceeds the supported bound 2^24")]
    FieldTooLarge(u128),
    #[error("zero spectral parameter")]
    ZeroParameter,
    #[error("coordinate {coordinate} does not have constant term 1")]
    ConstantTermNotOne { coordinate: usize },
    #[error("coordinate {coordinate} has a factor with no roots in the ambient field: {factor}")]
    RootOutsideAmbientField { coordinate: usize, factor: String },
    #[error("field tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("Lie type mismatch: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("engine characteristic {engine} does not match field characteristic {field}; pass --allow-char-mismatch to override")]
    CharacteristicMismatch { engine: u64, field: u64 },
    #[error("multiplicity {numerator}/{denominator} is not an integer")]
    NonIntegerMultiplicity { numerator: u64, denominator: u64 },
    #[error("formula disagreement: {0}")]
    FormulaDisagreement(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for errors that signal a violated mathematical contract rather
    /// than malformed input.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::NotAModuleCharacter(_)
                | Error::NotAnLCharacter(_)
                | Error::NonIntegerMultiplicity { .. }
                | Error::FormulaDisagreement(_)
                | Error::NonDominant(_)
                | Error::RootOutsideAmbientField { .. }
                | Error::ConstantTermNotOne { .. }
                | Error::ZeroParameter
                | Error::MissingCharacter { .. }
                | Error::UnsupportedType(_)
                | Error::CharacteristicMismatch { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
