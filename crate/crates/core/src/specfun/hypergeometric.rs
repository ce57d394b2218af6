//! Gauss hypergeometric function `2F1(a, b; c; y)` for complex arguments.
//!
//! Three evaluators with different domains:
//!
//! * [`hyp2f1_series`]: the Gauss series, `|y| <= 0.75`;
//! * [`hyp2f1_terminating`]: the `(n + 1)`-term polynomial `2F1(-n, b; c; y)`,
//!   valid everywhere;
//! * [`hyp2f1_connected`]: dispatches between the two above and the two-term
//!   `y -> 1 - y` connection formula for `|1 - y| <= 0.75`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::gamma::{log_gamma, reciprocal_gamma};
use crate::error::{Error, Result};

/// Maximum number of terms the direct series is allowed to sum.
pub const SERIES_TERM_CAP: usize = 500;

/// Radius of both the direct and the connected series disks.
pub const SERIES_RADIUS: f64 = 0.75;

/// Distance from a non-positive integer below which a parameter terminates
/// the series (or, for `c`, makes it undefined).
pub const INTEGER_TOLERANCE: f64 = 1e-10;

/// Distance of `c - a - b` from an integer below which the connection formula
/// is in its logarithmic case.
pub const DEGENERATE_TOLERANCE: f64 = 1e-8;

/// Symmetric perturbation of `c` used by [`hyp2f1`] in the logarithmic case.
pub const DEGENERATE_PERTURBATION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesResult {
    pub value: Complex64,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the last term added.
    pub est_error: f64,
}

/// `Some(n)` if `z` is within `tol` of the non-positive integer `-n`.
fn non_positive_integer(z: Complex64, tol: f64) -> Option<usize> {
    let r = z.re.round();
    if r <= 0.0 && (z - r).norm() < tol {
        Some((-r) as usize)
    } else {
        None
    }
}

fn near_integer(z: Complex64, tol: f64) -> bool {
    (z - z.re.round()).norm() < tol
}

/// Checks that `(c)_j` stays non-zero for every `j <= terms`.
fn check_c(c: Complex64, terms: Option<usize>) -> Result<()> {
    if let Some(p) = non_positive_integer(c, INTEGER_TOLERANCE) {
        let blocked = match terms {
            Some(n) => n > p,
            None => true,
        };
        if blocked {
            return Err(Error::HypergeometricParameter(format!(
                "c = {c} is a non-positive integer reached by the series"
            )));
        }
    }
    Ok(())
}

/// Degree of the polynomial if `a` or `b` terminates the series.
fn terminating_degree(a: Complex64, b: Complex64) -> Option<(usize, Complex64)> {
    match (
        non_positive_integer(a, INTEGER_TOLERANCE),
        non_positive_integer(b, INTEGER_TOLERANCE),
    ) {
        (Some(n), Some(m)) if m < n => Some((m, a)),
        (Some(n), _) => Some((n, b)),
        (None, Some(m)) => Some((m, a)),
        (None, None) => None,
    }
}

/// Direct Gauss series.
///
/// Stops once two consecutive terms fall below `tol` relative to the partial
/// sum. Reaching [`SERIES_TERM_CAP`] first is an error.
pub fn hyp2f1_series(a: Complex64, b: Complex64, c: Complex64, y: Complex64, tol: f64) -> Result<SeriesResult> {
    if y.norm() > SERIES_RADIUS {
        return Err(Error::OutOfDomain(y));
    }
    check_c(c, terminating_degree(a, b).map(|(n, _)| n))?;

    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut small_run = 0;
    let mut last = 1.0;
    for j in 0..SERIES_TERM_CAP {
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * y;
        sum += term;
        last = term.norm();
        if last == 0.0 || last <= tol * sum.norm() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 2 || last == 0.0 {
            return Ok(SeriesResult {
                value: sum,
                terms_used: j + 2,
                converged: true,
                est_error: last,
            });
        }
    }
    Err(Error::SeriesNonConvergence {
        terms: SERIES_TERM_CAP,
        est_error: last,
    })
}

/// The polynomial `2F1(-n, b; c; y)`, exact for every complex `y`.
pub fn hyp2f1_terminating(n: usize, b: Complex64, c: Complex64, y: Complex64) -> Result<Complex64> {
    check_c(c, Some(n))?;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let nf = n as f64;
    for j in 0..n {
        let jf = j as f64;
        term *= (jf - nf) * (b + jf) / ((c + jf) * (jf + 1.0)) * y;
        sum += term;
    }
    Ok(sum)
}

/// `2F1(a, b; c; y)` on the union of the disks `|y| <= 0.75` and
/// `|1 - y| <= 0.75`; polynomial cases are evaluated everywhere.
///
/// Inside `|y| <= 0.75` this is [`hyp2f1_series`]; near `y = 1` it is
/// [`hyp2f1_connection_formula`].
pub fn hyp2f1_connected(a: Complex64, b: Complex64, c: Complex64, y: Complex64, tol: f64) -> Result<Complex64> {
    if let Some((n, other)) = terminating_degree(a, b) {
        return hyp2f1_terminating(n, other, c, y);
    }
    if y.norm() <= SERIES_RADIUS {
        return hyp2f1_series(a, b, c, y, tol).map(|r| r.value);
    }
    hyp2f1_connection_formula(a, b, c, y, tol)
}

/// Two-term Gauss connection formula around `y = 1`, `|1 - y| <= 0.75`:
///
/// ```text
/// F(a,b;c;y) = G1 F(a, b; a+b-c+1; 1-y) + (1-y)^(c-a-b) G2 F(c-a, c-b; c-a-b+1; 1-y)
/// G1 = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))
/// G2 = Gamma(c) Gamma(a+b-c) / (Gamma(a) Gamma(b))
/// ```
///
/// The formula has a logarithmic limit when `c - a - b` is an integer; that
/// case is reported as [`Error::DegenerateConnection`].
pub fn hyp2f1_connection_formula(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    y: Complex64,
    tol: f64,
) -> Result<Complex64> {
    let w = 1.0 - y;
    if w.norm() > SERIES_RADIUS {
        return Err(Error::OutOfDomain(y));
    }
    let s = c - a - b;
    if near_integer(s, DEGENERATE_TOLERANCE) {
        return Err(Error::DegenerateConnection(s));
    }
    check_c(c, None)?;

    let zero = Complex64::new(0.0, 0.0);
    let ln_gc = log_gamma(c)?;
    let first_coef = (ln_gc + log_gamma(s)?).exp() * reciprocal_gamma(c - a) * reciprocal_gamma(c - b);
    let second_coef = (ln_gc + log_gamma(-s)?).exp() * reciprocal_gamma(a) * reciprocal_gamma(b);

    let mut value = zero;
    if first_coef != zero {
        value += first_coef * hyp2f1_series(a, b, 1.0 - s, w, tol)?.value;
    }
    if second_coef != zero {
        let power = if w == zero {
            if s.re > 0.0 {
                zero
            } else {
                return Err(Error::HypergeometricParameter(format!(
                    "2F1 diverges at y = 1 with Re(c - a - b) = {} <= 0",
                    s.re
                )));
            }
        } else {
            w.powc(s)
        };
        if power != zero {
            value += second_coef * power * hyp2f1_series(c - a, c - b, 1.0 + s, w, tol)?.value;
        }
    }
    Ok(value)
}

/// [`hyp2f1_connected`] with the logarithmic case handled by averaging the
/// values at `c +- 1e-6`.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, y: Complex64, tol: f64) -> Result<Complex64> {
    match hyp2f1_connected(a, b, c, y, tol) {
        Err(Error::DegenerateConnection(_)) => {
            let lo = hyp2f1_connected(a, b, c - DEGENERATE_PERTURBATION, y, tol)?;
            let hi = hyp2f1_connected(a, b, c + DEGENERATE_PERTURBATION, y, tol)?;
            Ok(0.5 * (lo + hi))
        }
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    const TOL: f64 = 1e-15;

    #[test]
    fn series_constant_term() {
        let v = hyp2f1_series(c(0.3, 2.0), c(-4.1, 0.2), c(1.7, -0.5), r(0.0), TOL).unwrap();
        assert_eq!(v.value, r(1.0));
        assert!(v.converged);
    }

    #[test]
    fn series_log_identity() {
        // 2F1(1,1;2;y) = -ln(1-y)/y
        let v = hyp2f1_series(r(1.0), r(1.0), r(2.0), r(0.5), TOL).unwrap();
        assert_relative_eq!(v.value.re, 2.0 * LN_2, max_relative = 1e-14);
        assert!(v.est_error <= TOL * v.value.norm());
        assert!(v.terms_used <= SERIES_TERM_CAP);
        let y = c(0.3, -0.6);
        let v = hyp2f1_series(r(1.0), r(1.0), r(2.0), y, TOL).unwrap();
        let expected = -(1.0 - y).ln() / y;
        assert_relative_eq!((v.value - expected).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn series_one_term_truncation() {
        let v = hyp2f1_series(r(-1.0), r(3.0), r(2.0), r(0.4), TOL).unwrap();
        assert_relative_eq!(v.value.re, 0.4, max_relative = 1e-15);
    }

    #[test]
    fn series_rejects_bad_inputs() {
        assert!(matches!(
            hyp2f1_series(r(1.0), r(1.0), r(2.0), r(0.8), TOL),
            Err(Error::OutOfDomain(_))
        ));
        assert!(matches!(
            hyp2f1_series(r(0.5), r(1.0), r(-2.0), r(0.5), TOL),
            Err(Error::HypergeometricParameter(_))
        ));
        // a = -1 terminates before (c)_3 vanishes
        assert!(hyp2f1_series(r(-1.0), r(1.0), r(-2.0), r(0.5), TOL).is_ok());
        // cap reached: a zero tolerance can only be met by an exactly vanishing term
        assert!(matches!(
            hyp2f1_series(r(1.0), r(1.0), r(2.0), r(0.75), 0.0),
            Err(Error::SeriesNonConvergence { .. })
        ));
    }

    #[test]
    fn terminating_values() {
        assert_eq!(
            hyp2f1_terminating(0, c(3.0, 1.0), c(0.2, 0.0), c(7.0, 3.0)).unwrap(),
            r(1.0)
        );
        let v = hyp2f1_terminating(1, r(2.0), r(4.0), r(1.5)).unwrap();
        assert_relative_eq!(v.re, 0.25, max_relative = 1e-15);
        // c = -1 blocks n = 3 but not n = 1
        assert!(hyp2f1_terminating(3, r(2.0), r(-1.0), r(0.5)).is_err());
        assert!(hyp2f1_terminating(1, r(2.0), r(-1.0), r(0.5)).is_ok());
    }

    #[test]
    fn chu_vandermonde() {
        // 2F1(-n, b; c; 1) = (c - b)_n / (c)_n
        let (b, cc) = (c(1.3, 0.4), c(2.2, -0.1));
        for n in 0..8 {
            let v = hyp2f1_terminating(n, b, cc, r(1.0)).unwrap();
            let mut expected = r(1.0);
            for j in 0..n {
                expected *= (cc - b + j as f64) / (cc + j as f64);
            }
            assert_relative_eq!((v - expected).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn connected_gauss_summation() {
        // y = 1 with Re(c - a - b) > 0
        let (a, b, cc) = (c(0.3, 0.1), r(0.4), r(1.75));
        let v = hyp2f1_connected(a, b, cc, r(1.0), TOL).unwrap();
        let expected = (log_gamma(cc).unwrap() + log_gamma(cc - a - b).unwrap()
            - log_gamma(cc - a).unwrap()
            - log_gamma(cc - b).unwrap())
        .exp();
        assert_relative_eq!((v - expected).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn connected_both_paths_in_overlap() {
        let (a, b, cc) = (c(0.3, 0.1), r(1.2), r(1.75));
        for y in [r(0.5), c(0.6, 0.2), c(0.45, -0.3), r(0.7)] {
            let direct = hyp2f1_series(a, b, cc, y, TOL).unwrap().value;
            let w = 1.0 - y;
            assert!(w.norm() <= SERIES_RADIUS);
            let via_one = hyp2f1_connection_formula(a, b, cc, y, TOL).unwrap();
            assert_relative_eq!((via_one - connection_only(a, b, cc, y)).norm(), 0.0, epsilon = 1e-13);
            assert_relative_eq!((direct - via_one).norm() / direct.norm(), 0.0, epsilon = 1e-12);
        }
        let v = hyp2f1_connected(r(1.0), r(1.0), r(2.0), r(0.5), TOL).unwrap();
        assert_relative_eq!(v.re, 2.0 * LN_2, max_relative = 1e-14);
    }

    /// Gamma-function form of the connection formula written out longhand.
    fn connection_only(a: Complex64, b: Complex64, cc: Complex64, y: Complex64) -> Complex64 {
        let s = cc - a - b;
        let w = 1.0 - y;
        let g = |z| log_gamma(z).unwrap();
        let c1 = (g(cc) + g(s) - g(cc - a) - g(cc - b)).exp();
        let c2 = (g(cc) + g(-s) - g(a) - g(b)).exp();
        c1 * hyp2f1_series(a, b, 1.0 - s, w, TOL).unwrap().value
            + c2 * w.powc(s) * hyp2f1_series(cc - a, cc - b, 1.0 + s, w, TOL).unwrap().value
    }

    #[test]
    fn connected_domain_and_degenerate_errors() {
        assert!(matches!(
            hyp2f1_connected(r(0.3), r(0.2), r(1.5), c(0.5, 0.9), TOL),
            Err(Error::OutOfDomain(_))
        ));
        // c - a - b = 1
        assert!(matches!(
            hyp2f1_connected(r(0.3), r(0.2), r(1.5), r(0.9), TOL),
            Err(Error::DegenerateConnection(_))
        ));
        // terminating parameters are fine anywhere
        let v = hyp2f1_connected(r(-2.0), r(0.2), r(1.5), c(3.0, 4.0), TOL).unwrap();
        assert_eq!(v, hyp2f1_terminating(2, r(0.2), r(1.5), c(3.0, 4.0)).unwrap());
    }

    #[test]
    fn perturbed_degenerate_case() {
        // 2F1(1, 1; 2; y) has c - a - b = 0; compare with -ln(1-y)/y near y = 1
        let y = r(0.9);
        let v = hyp2f1(r(1.0), r(1.0), r(2.0), y, TOL).unwrap();
        let expected = -(1.0 - y).ln() / y;
        assert_relative_eq!((v - expected).norm() / expected.norm(), 0.0, epsilon = 1e-8);
    }
}
