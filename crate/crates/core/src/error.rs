use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree {degree} exceeds the configured maximum {max}")]
    DegreeLimit { degree: usize, max: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid Thoma specification: {0}")]
    InvalidSpec(String),
    #[error("brute-force size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("matrix is singular")]
    Singular,
    #[error("polynomial is not irreducible or is excluded: {0}")]
    Reducible(String),
    #[error("negative cylinder probability {value} at rho = {rho}; wrong convention or spec outside the admissible region")]
    NegativeCylinder { rho: String, value: String },
    #[error("dead branch: cylinder probability of {0} is zero")]
    DeadBranch(String),
    #[error("group mismatch between group-algebra elements")]
    GroupMismatch,
    #[error("symbols are not congruent: {0}")]
    NotCongruent(String),
    #[error("unsupported field size {0}")]
    UnsupportedField(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
