use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weight ({0},{1}) is not dominant")]
    NotDominant(i64, i64),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("virtual character: stripping ({0},{1}) left multiplicity {2}")]
    VirtualCharacter(i64, i64, i64),
    #[error("operation undefined for the zero cubic")]
    ZeroCubic,
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("engine output disagrees with reference data: {0}")]
    Mismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
