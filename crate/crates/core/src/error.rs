use thiserror::Error;

use crate::ringcore::CoeffRing;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("variable index {index} out of range for m = {arity}")]
    VariableOutOfRange { index: usize, arity: usize },
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("coefficient ring mismatch: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("constant monomial has no primitive root")]
    ConstantMonomial,
    #[error("monomial {0} is not primitive")]
    NotPrimitive(String),
    #[error("slot {slot} out of range 1..={n}")]
    SlotOutOfRange { slot: usize, n: usize },
    #[error("malformed permutation of {0} points")]
    InvalidPermutation(usize),
    #[error("not S_n-invariant")]
    NotInvariant,
    #[error("not symmetric")]
    NotSymmetric,
    #[error("argument has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("length mismatch: {0} arguments vs {1} exponents")]
    LengthMismatch(usize, usize),
    #[error("requires rational coefficients")]
    RequiresRationals,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("denominator not invertible mod {0}")]
    NotInvertible(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("time budget of {0:?} exceeded")]
    BudgetExceeded(std::time::Duration),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
