use thiserror::Error;

use crate::multimap::Violation;
use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse rational {0:?}")]
    ParseRational(String),

    #[error("invalid multimap: {0}")]
    InvalidMultiMap(Violation),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("graph is already connected; nothing to split")]
    NothingToSplit,

    #[error("graph has {} components; split it first", .0.len())]
    Disconnected(Vec<Vec<usize>>),

    #[error("degenerate lattice: determinant of ({0}, {1}) and ({2}, {3}) is zero")]
    DegenerateLattice(i64, i64, i64, i64),

    #[error("invalid torus loop: {0}")]
    InvalidLoop(String),

    #[error("maps are not homotopic: {0}")]
    NotHomotopic(String),

    #[error("no valid branch matching; branches {i} and {j} collide at time {time}, t = {t}")]
    MatchingFailure {
        i: usize,
        j: usize,
        time: Rational,
        t: Rational,
    },

    #[error("graph count {observed} at time {time} is below the Nielsen number {nielsen}")]
    LowerBoundViolated {
        time: Rational,
        observed: u64,
        nielsen: u64,
    },

    #[error("json: {0}")]
    Json(String),
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidMultiMap(v)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
