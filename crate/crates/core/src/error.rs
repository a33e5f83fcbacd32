use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building or analysing a hypersurface.
///
/// Variants split into two families: invalid input (bad syntax, wrong
/// ring, unsupported field) and certification failures (the data is
/// well-formed but the point is not an ordinary triple point).
/// [`Error::is_certification_failure`] tells them apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("division by zero in literal {0}")]
    DivisionByZero(String),

    #[error("denominator of {literal} vanishes modulo {modulus}")]
    DenominatorVanishes { literal: String, modulus: u64 },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    Inhomogeneous,

    #[error("term of degree {term} exceeds target degree {target}")]
    TermDegreeExceeds { term: u32, target: u32 },

    #[error("chart coordinate x{0} has weight {1}, expected 1")]
    ChartWeight(usize, u32),

    #[error("point is not normalized in chart {0}")]
    ChartNotNormalized(usize),

    #[error("no smooth chart available: every nonzero coordinate has weight > 1")]
    NoSmoothChart,

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("exhaustive search requires a finite field")]
    InfiniteFieldScan,

    #[error("singular point {0} lies outside every weight-1 chart")]
    SingularOutsideCharts(String),

    #[error("point {0} is not on the hypersurface")]
    NotOnHypersurface(String),

    #[error("point {0}: multiplicity < 3")]
    MultiplicityTooLow(String),

    #[error("point {0}: multiplicity > 3")]
    MultiplicityTooHigh(String),

    #[error("point {0}: tangent cone singular")]
    ConeSingular(String),

    #[error("point {point}: tangent cone smoothness undetermined up to degree {k_max}")]
    ConeUndetermined { point: String, k_max: u32 },

    #[error("point {0}: partials dependent mod m^3, not an ordinary triple point")]
    PartialsDependent(String),

    #[error("point {0} is not a triple point of F")]
    NotATriplePoint(String),

    #[error("invalid cubic: {0}")]
    InvalidCubic(String),

    #[error("duplicate point {0}")]
    DuplicatePoint(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error(
        "quotient method precondition fails at {point} for x{variable}; use the oracle method"
    )]
    QuotientPrecondition { point: String, variable: usize },

    #[error("internal error: quotient method gives dim {quotient}, oracle gives dim {oracle}")]
    MethodsDisagree { quotient: usize, oracle: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("negative Hodge number {name} = {value}; inputs are incompatible")]
    NegativeHodge { name: &'static str, value: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("branch surface degree {0} is not divisible by 3")]
    DegreeNotDivisibleBy3(u32),

    #[error("point {0} is not on the branch surface")]
    NotOnSurface(String),
}

impl Error {
    /// True when the input was well-formed but a geometric check failed.
    pub fn is_certification_failure(&self) -> bool {
        matches!(
            self,
            Error::NotOnHypersurface(_)
                | Error::MultiplicityTooLow(_)
                | Error::MultiplicityTooHigh(_)
                | Error::ConeSingular(_)
                | Error::ConeUndetermined { .. }
                | Error::PartialsDependent(_)
                | Error::NotATriplePoint(_)
                | Error::NoSmoothChart
                | Error::SingularOutsideCharts(_)
                | Error::NotOnSurface(_)
                | Error::MethodsDisagree { .. }
                | Error::Inconsistent(_)
        )
    }
}
