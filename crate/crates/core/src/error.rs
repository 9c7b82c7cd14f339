use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A group expression token that does not match `family letter + rank`.
    #[error("malformed group token `{0}`")]
    MalformedToken(String),

    /// A rank outside the valid range of its family (e.g. `D3`, `G5`).
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: &'static str, rank: u32 },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    /// Deterministic factorization gave up (input too large or too few
    /// rho rounds). Distinct from any arithmetic failure.
    #[error("factorization exceeded budget on {0}")]
    FactorBudgetExceeded(String),

    #[error("cannot take prime-power contributions of 1")]
    UnitFactorization,

    /// Valuation context invariant violated (see `ValuationContext`).
    #[error("invalid valuation context: {0}")]
    InvalidValuationContext(String),

    #[error("primitive divisor domain requires a > 1 and n > 2, got a = {a}, n = {n}")]
    PrimitiveDivisorDomain { a: u64, n: u32 },

    /// The two sides of a would-be coincidence class have different
    /// degree multisets after cancellation.
    #[error("not an order coincidence: `{left}` vs `{right}`")]
    NotACoincidence { left: String, right: String },

    #[error("no connector for `{t1}` and `{t2}`")]
    NoConnector { t1: String, t2: String },

    #[error("invalid generator parameter: {0}")]
    InvalidGenerator(String),

    /// Extension-persistence precondition: the base-field orders differ.
    #[error("orders differ over the base field q = {q}: {left} vs {right}")]
    BaseOrdersDiffer { q: String, left: String, right: String },

    #[error("compact symbol `{0}` is outside the split-form dictionary")]
    UnknownCompactSymbol(String),

    /// Catch-all for documented preconditions (e.g. factorize(0)).
    #[error("domain error: {0}")]
    Domain(String),
}
