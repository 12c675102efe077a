//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by field arithmetic, linear algebra, code construction
/// and verification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested modulus is composite.
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    /// The requested modulus exceeds the table cap of 2^16.
    #[error("modulus {0} exceeds the supported maximum of 65536")]
    ModulusTooLarge(u64),
    /// Multiplicative inverse of zero requested.
    #[error("division by zero in GF({0})")]
    DivisionByZero(u64),
    /// Operands belong to different fields.
    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u64, u64),
    /// Matrix inversion of a rank-deficient matrix.
    #[error("matrix is singular")]
    SingularMatrix,
    /// Operand shapes are incompatible.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// A precondition on the operation parameters is violated.
    #[error("bad parameters: {0}")]
    BadParameters(String),
    /// Evaluation points for a GRS code are not pairwise distinct.
    #[error("duplicate evaluation points")]
    DuplicateEvaluationPoints,
    /// An exhaustive scan would exceed the work bound.
    #[error("exhaustive scan too large: {0}")]
    TooLargeForExhaustive(String),
    /// The leading k_D + t positions do not form an information set.
    #[error("the leading positions do not form an information set")]
    InfoSetNotLeading,
    /// A seeded search ran out of its retry budget.
    #[error("search exhausted after {tries} tries")]
    SearchExhausted { tries: u64 },
    /// No recovery set of the requested size exists for some file.
    #[error("file {file} has no recovery set of size <= {r_max}")]
    ExceedsRMax { file: usize, r_max: usize },
    /// An exhaustive check exceeds its enumeration budget.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    /// Real-valued argument outside the function domain.
    #[error("domain error: {0}")]
    DomainError(String),
    /// File or node index out of range.
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    /// A code file could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
