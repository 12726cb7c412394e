use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field cardinality {p}^{m} exceeds the configured cap of {cap}")]
    CardinalityCap { p: u64, m: u32, cap: u64 },

    #[error("operands belong to different fields (F_{p1}^{m1} vs F_{p2}^{m2})")]
    FieldMismatch { p1: u64, m1: u32, p2: u64, m2: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("F_{{{from_p}^{from_m}}} does not embed into F_{{{to_p}^{to_m}}}")]
    NoEmbedding {
        from_p: u64,
        from_m: u32,
        to_p: u64,
        to_m: u32,
    },

    #[error("line coefficients are all zero")]
    ZeroLine,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("the singular locus contains a curve ({0})")]
    PositiveDimensional(String),

    #[error("singular point of residue degree {found} exceeds the residue-degree cap {cap}")]
    ResidueDegreeCap { found: u32, cap: u32 },

    #[error("no closed-form smoothness criterion for this curve spec ({0})")]
    NoCriterion(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
