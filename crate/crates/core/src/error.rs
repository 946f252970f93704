use alloc::string::String;

/// Errors raised by the core algebra.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("multiplication table is not square")]
    NotSquare,
    #[error("table entry mult[{row}][{col}] = {value} is out of range")]
    IndexOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("map is not equivariant at point {point} for element {element}")]
    NotEquivariant { point: usize, element: usize },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("G-sets are over different groups")]
    GroupMismatch,
    #[error("maps do not share a target")]
    TargetMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("port mismatch: {0}")]
    PortMismatch(String),
    #[error("diagram has the wrong shape: {0}")]
    ShapeError(String),
    #[error("resource bound exceeded for {what}: needed {needed}, cap {cap}")]
    ResourceBound { what: &'static str, needed: u128, cap: usize },
    #[error("map is outside the evaluation window")]
    WindowMiss,
    #[error("isomorphism not found: {0}")]
    IsoNotFound(String),
    #[error("witness failed: {0}")]
    WitnessFailed(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("degree overflow above the truncation cap")]
    DegreeOverflow,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("unsupported operation: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
