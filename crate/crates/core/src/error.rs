use thiserror::Error;

/// Errors raised by the algebra, geometry, ladder and arc layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0}")]
    Context(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("declared dimension {declared} does not match computed dimension {computed}")]
    DimensionMismatch { declared: i64, computed: i64 },

    /// No c×c Jacobian minor is a nonzerodivisor candidate on the chart.
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("degenerate ladder: {0}")]
    DegenerateLadder(String),

    #[error("non-liftable division: numerator valuation {numerator} is below denominator valuation {denominator}")]
    NonLiftableDivision { numerator: i64, denominator: i64 },

    #[error("indeterminate pullback: {0}")]
    IndeterminatePullback(String),

    /// The arc's image lies in the blown-up center, so no chart receives it.
    #[error("not liftable through this center: the arc is contained in the blowup center (hypothesis violated: image contains a nonsingular point)")]
    NotLiftable,

    /// A stated hypothesis of the lifting statement does not hold for the input.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("insufficient precision: truncation exhausted, rerun with trunc >= {required}")]
    InsufficientPrecision { required: usize },
}

impl Error {
    /// True for errors that report a violated hypothesis rather than a malfunction.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(self, Error::NotLiftable | Error::Hypothesis(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
