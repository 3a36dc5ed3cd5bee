use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("rank deficiency: smallest/largest singular value ratio {ratio:e} below {threshold:e}")]
    RankDeficient { ratio: f64, threshold: f64 },

    #[error("{0} did not converge within {1} sweeps")]
    NoConvergence(&'static str, usize),

    #[error("matrix is not Hermitian (relative asymmetry {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("singular matrix")]
    Singular,

    #[error("empty tuple")]
    EmptyTuple,

    #[error("negative entry {0} in a tuple that must be nonnegative")]
    NegativeEntry(f64),

    #[error("tuples of lengths {0} and {1} cannot be padded: negative entries present")]
    LengthMismatch(usize, usize),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("principal angle of pi/2 detected (cosine ratio {0:e})")]
    RightAngle(f64),

    #[error("degenerate interval [{0}, {1}]")]
    DegenerateInterval(f64, f64),

    #[error("eigenvalue gap violated: {0}")]
    GapViolation(String),

    #[error("filter vanishes at eigenvalue index {0}")]
    ZeroFilterValue(usize),

    #[error("filter is undefined at eigenvalue {0}")]
    FilterUndefined(String),

    #[error("basis is not orthonormal (residual {0:e})")]
    NotOrthonormal(f64),

    #[error("invalid argument: {0}")]
    Invalid(String),
}
