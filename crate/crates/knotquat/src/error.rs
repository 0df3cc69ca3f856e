use thiserror::Error;

use crate::polyalg::Var;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("both sides of the presentation are empty")]
    EmptyWord,
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("point does not assign variable {0}")]
    MissingVariable(Var),
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("coefficients are not integral after scaling")]
    NonIntegral,
    #[error("polynomial has odd powers of x and is not expressible in (x', z)")]
    NotExpressible,
    #[error("quaternion does not have unit norm (N = {0})")]
    NotUnitNorm(f64),
    #[error("(x, y) = (±1, 0) admits no irreducible or almost-irreducible representation")]
    DegeneratePoint,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported quaternion algebra ({0}, {1})")]
    UnsupportedAlgebra(f64, f64),
    #[error("ideal generator involves s; sampling needs generators in x and y only")]
    UnsupportedIdeal,
    #[error("axis direction A⁻ vanishes")]
    ZeroAxisDirection,
    #[error("point is off the variety: residual {0}")]
    OffVariety(f64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
