use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Gamma function pole at z = {0}")]
    GammaPole(Complex64),

    #[error("hypergeometric series did not converge after {terms} terms (last term {est_error:e})")]
    SeriesNonConvergence { terms: usize, est_error: f64 },

    #[error("invalid hypergeometric parameter: {0}")]
    HypergeometricParameter(String),

    #[error("argument y = {0} lies outside both the |y| <= 0.75 and |1 - y| <= 0.75 disks")]
    OutOfDomain(Complex64),

    #[error("c - a - b = {0} is (nearly) an integer; the logarithmic connection case is not supported")]
    DegenerateConnection(Complex64),

    #[error("couplings outside the alpha, beta > 0 regime (alpha = {alpha}, beta = {beta}); pass the unsafe-couplings override to proceed")]
    UnsafeCouplings { alpha: f64, beta: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("x = {0} is at (or within 1e-12 of) a pole of the potential")]
    Singularity(Complex64),

    #[error("degenerate indicial exponents: {0}")]
    DegenerateExponent(String),

    #[error("numerator Gamma pole in the connection factor at argument {0}")]
    ConnectionPole(f64),

    #[error("principal-branch power would cross its cut at x = {0}")]
    BranchCrossing(Complex64),

    #[error("malformed table: {0}")]
    Table(String),

    #[error("integration produced a non-finite state at t = {0}")]
    NonFinite(f64),
}
