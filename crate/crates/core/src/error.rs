use thiserror::Error;

/// Errors raised by the germ-level constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("no primitive {e}-th root of unity in F_{p}: {e} does not divide {p} - 1")]
    NoRootOfUnity { p: u64, e: u64 },
    #[error("{value} is not a primitive {e}-th root of unity mod {p}")]
    NotPrimitiveRoot { p: u64, e: u64, value: u64 },
    #[error("field modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("series is not a unit")]
    NotUnit,
    #[error("series has negative valuation {0}")]
    NegativeValuation(i64),
    #[error("substitution argument must have valuation exactly 1, found {0:?}")]
    BadSubstitution(Option<i64>),
    #[error("exponent {exponent} is not congruent to {residue} mod {modulus}")]
    SupportViolation {
        exponent: i64,
        residue: i64,
        modulus: u64,
    },
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not invertible")]
    Singular,
    #[error("constant term of the action has order not dividing {0}")]
    ResidueOrder(u64),
    #[error("cocycle norm condition fails")]
    NormCheckFailed,
    #[error("matrix is not equivariant for the given exponents")]
    NotEquivariant,
    #[error("constant terms of the two branches differ")]
    BranchMismatch,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("invalid KGL point: {0}")]
    InvalidPoint(String),
    #[error("point is not in adapted form: {0}")]
    NotAdapted(String),
    #[error("no e >= {min} dividing {p} - 1")]
    NoCompatibleOrder { p: u64, min: u64 },
    #[error("invalid exponents: {0}")]
    InvalidExponents(String),
    #[error("identity check failed: {0}")]
    IdentityFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
