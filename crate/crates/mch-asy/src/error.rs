use num_complex::Complex64;
use thiserror::Error;

use crate::phase::RegionTag;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("argument out of the supported range: {0}")]
    Range(String),

    #[error("singular point: {0}")]
    Singular(String),

    #[error("pole at z = {0}")]
    Pole(Complex64),

    #[error("quadrature did not converge (estimate {estimate}, error {error:e})")]
    Convergence { estimate: Complex64, error: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("theta series diverges: Im varkappa = {0}")]
    DivergentTheta(f64),

    #[error("boundary value solve failed: {0}")]
    Bvp(String),

    #[error("point is classified {got:?}, expected {expected:?}")]
    Region { expected: RegionTag, got: RegionTag },

    #[error("inadmissible data: {0}")]
    Admissibility(String),

    #[error("undefined argument: {0}")]
    UndefinedArg(String),

    #[error("result is not real: imaginary part {0:e}")]
    Reality(f64),

    #[error("outside the shock window: {0}")]
    Window(String),

    #[error("branch self-check failed: {0}")]
    Branch(String),

    #[error("convention check failed: {0}")]
    Convention(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}
