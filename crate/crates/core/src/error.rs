use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("minimal polynomial must be monic of degree at least 1")]
    NotMonic,
    #[error("numeric root does not satisfy the minimal polynomial (residual {0:e})")]
    BadRoot(f64),
    #[error("minimal polynomial is reducible: rational root {0}")]
    RationalRoot(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible; minimal polynomial has the factor {0}")]
    NotInvertible(String),
    #[error("requested {requested} bits of precision but the error bound is {bound:e}")]
    PrecisionExhausted { requested: u32, bound: f64 },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("form is not homogeneous")]
    NotHomogeneous,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid point: all coordinates are zero")]
    ZeroPoint,
    #[error("degenerate linear form for line {0}")]
    DegenerateLine(usize),
    #[error("lines {0} and {1} coincide")]
    CoincidentLines(usize, usize),
    #[error("arrangement size {0} is not supported: {1}")]
    UnsupportedSize(usize, &'static str),
    #[error("triple point count {found} does not match 1 + floor(n(n-3)/6) = {expected}")]
    TripleCountMismatch { found: usize, expected: usize },
    #[error("lines {0:?} are concurrent by index but do not meet in a point")]
    NotConcurrent([usize; 3]),
    #[error("embedding is not real")]
    NotReal,
    #[error("presentation is complete only to degree {have}, degree {need} is required")]
    Incomplete { have: u32, need: u32 },
    #[error("saturation did not stabilize at degree {degree} within {t_max} steps")]
    NoStabilization { degree: u32, t_max: u32 },
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("parse error: {0}")]
    Parse(String),
}
