use thiserror::Error;

/// Errors from lattice arithmetic, cone predicates, catalog loading and
/// fiber-sum construction.
#[derive(Debug, Error)]
pub enum Error {
    #[error("class does not belong to the given lattice")]
    MismatchedLattice,

    #[error("change of basis is not unimodular (det = {det})")]
    NotUnimodular { det: String },

    #[error("predicate requires b_plus = 1, model has b_plus = {found}")]
    WrongBPlus { found: u32 },

    #[error("relative-cone-shape hypothesis not asserted and not certifiable for this model")]
    HypothesisNotAsserted,

    #[error("canonical class is not the requested multiple of the given dual class: {0}")]
    KMismatch(String),

    #[error("unknown catalog model `{0}`")]
    UnknownModel(String),

    #[error("schema error: {0}")]
    SchemaError(String),

    #[error("invariant violation ({invariant}): {detail}")]
    InvariantViolation { invariant: &'static str, detail: String },

    #[error("no integral class pairing 1 with the matched class (gcd of pairings is {gcd})")]
    NoDualClass { gcd: String },

    #[error("matched class must have square zero, found {square}")]
    NotSquareZero { square: String },

    #[error("sum is not good: {0}")]
    NotGood(String),

    #[error("class pairs non-positively with the fiber (g = {g})")]
    NonPositiveG { g: String },

    #[error("rho = {rho} is outside the open interval (0, {square})")]
    RhoOutOfRange { rho: String, square: String },

    #[error("class has non-positive square {square}")]
    NonPositiveSquare { square: String },

    #[error("fiber pairings of the two sides differ: {left} vs {right}")]
    MatchingFailure { left: String, right: String },

    #[error("class does not expand over the allowed block of the glued basis")]
    UnexpandableClass,

    #[error("no summand relative cone is certified to be half-space shaped: {0}")]
    HypothesisNotEstablished(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
