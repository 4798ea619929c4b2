use thiserror::Error;

use crate::scalar::RingSpec;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library. Matrix indices carried in
/// variants are 0-based; the `Display` impls print them 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{0} is not a unit of the integers")]
    NotAUnit(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("cannot parse {text:?} as an element of {ring}")]
    ParseScalar { text: String, ring: RingSpec },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("matrix must be square with order >= 1")]
    NotSquare,
    #[error("matrix is singular (no pivot in column {})", .column + 1)]
    Singular { column: usize },
    #[error("matrix is scalar; theorem hypothesis violated")]
    ScalarMatrix,
    #[error("trace mismatch: targets sum to {targets} but tr A = {trace}")]
    TraceMismatch { targets: String, trace: String },
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("matrix is diagonal; no off-diagonal pivot exists")]
    Diagonal,
    #[error("diagonal entries 1 and {} are equal", .column + 1)]
    EqualDiagonalEntries { column: usize },
    #[error("invalid pivot ({}, {})", .row + 1, .col + 1)]
    InvalidPivot { row: usize, col: usize },
    #[error("pivot entry ({}, {}) is zero", .row + 1, .col + 1)]
    ZeroPivot { row: usize, col: usize },
    #[error("off-diagonal entry ({}, {}) of the pivot row is not 1", .row + 1, .col + 1)]
    RowNotUnit { row: usize, col: usize },
    #[error("not a permutation of 1..{0}")]
    NotPermutation(usize),
    #[error("order {found} is too small (need at least {needed})")]
    OrderTooSmall { needed: usize, found: usize },
    #[error("vectors x and Ax are linearly dependent")]
    DependentVectors,
    #[error("ring {0} is not supported by this algorithm")]
    UnsupportedRing(RingSpec),
    #[error("target {} is not an integer", .index + 1)]
    NonIntegerTarget { index: usize },
    #[error("generator gave up after {0} scalar draws")]
    RetriesExhausted(usize),
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
}
