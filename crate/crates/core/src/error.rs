use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Variants that signal a broken convention or pipeline bug (membership,
/// compatibility, stabilization) carry enough context to locate the offending
/// step.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("conductor {from} does not divide {to}")]
    ConductorNotDividing { from: u32, to: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not integral at {p}: denominator divisible by {p}")]
    NotIntegral { p: u64 },
    #[error("prime {p} divides conductor {n}")]
    PrimeDividesConductor { p: u64, n: u32 },
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("polynomial does not divide the cyclotomic polynomial mod {p}")]
    BadFactor { p: u64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is singular")]
    Singular,
    #[error("tuple needs at least 3 entries, got {0}")]
    TooFewEntries(usize),
    #[error("product of the tuple is not the identity")]
    ProductNotIdentity,
    #[error("malformed braid token `{0}`")]
    BraidToken(String),
    #[error("braid generator s{index} out of range for {strands} strands")]
    BraidIndex { index: usize, strands: usize },
    #[error("braid on {word} strands applied to a tuple of length {tuple}")]
    StrandMismatch { word: usize, tuple: usize },
    #[error("vector is not in the expected space: {0}")]
    Membership(String),
    #[error("representatives are linearly dependent modulo coboundaries")]
    DependentModE,
    #[error("compatibility violated for move {0}: braided tuple is not the conjugate by h")]
    Compatibility(usize),
    #[error("group closure exceeded bound {0}")]
    BoundExceeded(usize),
    #[error("tuple does not generate the group")]
    NotGenerating,
    #[error("{0}")]
    Pipeline(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
