use std::fmt;

use thiserror::Error;

use crate::poset::ExponentVector;

/// Which search budget ran out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limit {
    Nodes(u64),
    Time(std::time::Duration),
}

impl fmt::Display for Limit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Limit::Nodes(n) => write!(f, "node limit of {n} reached"),
            Limit::Time(d) => write!(f, "time limit of {:.3}s reached", d.as_secs_f64()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{point} is not below the bound {bound}")]
    OutOfBound {
        point: ExponentVector,
        bound: ExponentVector,
    },

    #[error("not an interval: {low} is not below {high}")]
    InvalidInterval {
        low: ExponentVector,
        high: ExponentVector,
    },

    #[error("exponent {0} exceeds the supported maximum of {max}", max = crate::poset::MAX_EXPONENT)]
    ExponentTooLarge(u32),

    #[error("{0} variables exceed the supported maximum of 64")]
    TooManyVariables(usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("bound {given} is too small for this module, need at least {required}")]
    BoundTooSmall {
        given: ExponentVector,
        required: ExponentVector,
    },

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("series is not multiplicity-free: coefficient {coeff} at {at}")]
    NotMultiplicityFree { at: ExponentVector, coeff: u64 },

    #[error("search aborted: {0}")]
    LimitExceeded(Limit),

    #[error("brute-force cap exceeded: {0}")]
    CapExceeded(String),

    #[error("lattice [0, {0}] has too many points for the dense search grid")]
    GridTooLarge(ExponentVector),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
