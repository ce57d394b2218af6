//! Complex special functions: Gamma, Gauss hypergeometric `2F1`, Jacobi
//! polynomials.

mod gamma;
mod hypergeometric;
mod jacobi;

pub use gamma::{gamma, log_gamma, reciprocal_gamma, sin_pi, POLE_TOLERANCE};
pub use hypergeometric::{
    hyp2f1, hyp2f1_connected, hyp2f1_connection_formula, hyp2f1_series, hyp2f1_terminating, SeriesResult,
    DEGENERATE_PERTURBATION, DEGENERATE_TOLERANCE, INTEGER_TOLERANCE, SERIES_RADIUS, SERIES_TERM_CAP,
};
pub use jacobi::{binomial, jacobi_polynomial};
