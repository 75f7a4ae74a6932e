use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0}")]
    Input(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid Kraus set: {0}")]
    InvalidKraus(String),
    #[error("not completely positive: {0}")]
    NotCp(String),
    #[error("wrong test: {0}")]
    WrongTest(String),
    #[error("unknown channel `{0}`")]
    UnknownChannel(String),
    #[error("no unique fixed point: {0}")]
    NoFixedPoint(String),
    #[error("improper rotation (determinant {0:.3e}); no SU(2) lift exists")]
    ImproperRotation(f64),
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("numerical inconsistency: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
