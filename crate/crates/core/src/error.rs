use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("factorial of negative argument {0}")]
    NegativeFactorial(i64),

    #[error("inexact division: remainder magnitude {remainder:.3e} exceeds {bound:.3e}")]
    InexactDivision { remainder: f64, bound: f64 },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("order {order} exceeds the brute-force cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },

    #[error("not an alternating sign matrix: {0}")]
    InvalidAsm(String),

    #[error("invalid vertex grid: {0}")]
    InvalidGrid(String),

    #[error("invalid spectral configuration: {0}")]
    InvalidConfig(String),

    #[error("singular configuration: {0}")]
    SingularConfiguration(String),

    #[error("pole in matrix entries: {0}")]
    PoleInEntries(String),

    #[error("determinant quotient is not real (imaginary part {imag:.3e}, real part {real:.3e})")]
    NonRealResult { real: f64, imag: f64 },

    #[error("half-turn symmetric class requires an even order, got {0}")]
    OddOrderForHalfTurn(usize),

    #[error("expected an integer, got {0}")]
    NonIntegerResult(String),

    #[error("order {0} lies outside the domain of the closed form")]
    DegenerateOrder(usize),

    #[error("identity failed: residual {0}")]
    IdentityFailed(String),

    #[error("sample point u = {0} hit a pole")]
    SamplingSingularity(f64),

    #[error("degenerate fit: target vanishes on all samples")]
    DegenerateFit,

    #[error("probe a = {0} hits a pole")]
    ProbePole(f64),

    #[error("invariant violated: {0}")]
    InvariantViolated(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),
}
