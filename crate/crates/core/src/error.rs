use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("invalid group specification: {0}")]
    InvalidGroup(String),
    #[error("group of order {order} exceeds enumeration cap {cap}")]
    GroupTooLarge { order: u128, cap: u128 },
    #[error("parameter {0} is required by this operation but missing from the table")]
    MissingCentral(&'static str),
    #[error("{what} requires blocks of type {expected}")]
    UnsupportedBlock { what: &'static str, expected: &'static str },
    #[error("not divisible; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("quotient {quotient} is not invariant; dividend was not a relative invariant")]
    NotRelativeInvariant { quotient: String },
    #[error("invalid setting: {0}")]
    InvalidSetting(String),
    #[error("shift {shift} is not admissible in the monoid cone")]
    InadmissibleShift { shift: String },
    #[error("shift {shift} has no inverse in the monoid cone")]
    NonInvertibleShift { shift: String },
    #[error("coefficient {coeff} is not fixed by the stabilizer of {shift}")]
    StabilizerViolation { shift: String, coeff: String },
    #[error("generator {index} is not invariant under the group")]
    NonInvariantGenerator { index: usize },
    #[error("tuple f is not equivariant: {0}")]
    EquivarianceViolation(String),
    #[error("invalid family configuration: {0}")]
    InvalidConfig(String),
    #[error("no witness found up to degree {degree}")]
    SearchExhausted { degree: u32 },
    #[error("singular character: factor {factor} vanishes at {point}")]
    SingularCharacter { factor: String, point: String },
    #[error("invalid character point: {0}")]
    InvalidPoint(String),
    #[error("malformed serialized data: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
