use thiserror::Error;

/// Errors raised by group, cyclotomic, spectral and construction routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a group needs at least one cyclic factor")]
    EmptyGroup,
    #[error("cyclic factor {index} has order {order}, expected at least 2")]
    InvalidOrder { index: usize, order: u64 },
    #[error("group order overflows 128 bits")]
    GroupTooLarge,
    #[error("tuple has {found} coordinates, group has {expected} factors")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("coordinate {index} is {value}, outside 0..{order}")]
    CoordinateOutOfRange { index: usize, value: u64, order: u64 },
    #[error("cyclotomic modulus must be positive")]
    InvalidModulus,
    #[error("cyclotomic moduli differ: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("{modulus} is not a multiple of {from}, cannot lift")]
    NotAMultiple { from: u64, modulus: u64 },
    #[error("galois exponent {t} is not coprime to {modulus}")]
    NotCoprime { t: u64, modulus: u64 },
    #[error("connection set is empty")]
    EmptyConnectionSet,
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("connection set contains {element} but not its inverse {inverse}")]
    MissingInverse { element: String, inverse: String },
    #[error("connection set lists {0} more than once")]
    DuplicateElement(String),
    #[error("exponent {0} is below 3")]
    InvalidExponent(u32),
    #[error("exponent {0} is repeated")]
    RepeatedExponent(u32),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: u32, found: u32 },
    #[error("invalid quadric dimension {0}: need an odd value of at least 3")]
    InvalidDimension(u32),
    #[error("invalid block dimensions: {0}")]
    MalformedDims(String),
    #[error("block dimensions {dims:?} violate the separation bound at level {level}")]
    EboundViolation { dims: Vec<u32>, level: usize },
    #[error("vector {0:#x} has bits beyond the ambient dimension")]
    VectorOutOfRange(u64),
    #[error("{what} is too large: {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("element is not an involution")]
    NotInvolution,
    #[error("jacobi iteration did not converge after {0} sweeps")]
    NonConvergence(usize),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
