//! Complex Gamma function via the Lanczos approximation (g = 7, 9 terms).
//!
//! The right half-plane `Re z >= 1/2` is evaluated directly; everything else
//! goes through the reflection formula. The reciprocal Gamma function is kept
//! separate because it is entire: poles of Gamma become exact zeros, which is
//! what the connection factors rely on.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 7.0;

#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Distance from a non-positive integer below which `z` counts as a pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Nearest non-positive integer to `z` if `z` sits on a Gamma pole.
fn pole_at(z: Complex64, tol: f64) -> Option<f64> {
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() < tol {
        Some(n)
    } else {
        None
    }
}

/// `ln Gamma(z)` for `Re z >= 1/2`.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    let z = z - 1.0;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// `sin(pi z)` with the real part reduced first, so integers give exact zeros.
pub fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = Complex64::new(z.re - n, z.im);
    let s = (r * PI).sin();
    if n.rem_euclid(2.0) == 1.0 {
        -s
    } else {
        s
    }
}

/// `ln sin(pi z)`, stable for large `|Im z|` where `sin` itself overflows.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        return sin_pi(z).ln();
    }
    // sin(pi z) = (i/2) e^{-i pi z} (1 - e^{2 pi i z}) for Im z > 0; the other
    // half-plane follows from conjugation.
    let upper = if z.im > 0.0 { z } else { z.conj() };
    let i = Complex64::i();
    let v = -i * PI * upper + (1.0 - (2.0 * PI * i * upper).exp()).ln() + (i * 0.5).ln();
    if z.im > 0.0 {
        v
    } else {
        v.conj()
    }
}

/// Logarithm of the Gamma function.
///
/// Agrees with the analytic log-Gamma on `Re z >= 1/2`; in the reflected
/// half-plane the imaginary part is only fixed modulo `2 pi`, so always go
/// through `exp` when comparing values there.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if pole_at(z, POLE_TOLERANCE).is_some() {
        return Err(Error::GammaPole(z));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(PI.ln() - ln_sin_pi(z) - ln_gamma_right(1.0 - z))
    }
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(Complex64::exp)
}

/// `1 / Gamma(z)`, entire; exactly zero at the non-positive integers.
pub fn reciprocal_gamma(z: Complex64) -> Complex64 {
    if z.re >= 0.5 {
        return (-ln_gamma_right(z)).exp();
    }
    let s = sin_pi(z);
    if s == Complex64::new(0.0, 0.0) {
        return s;
    }
    // 1/Gamma(z) = sin(pi z) Gamma(1 - z) / pi
    let ln_abs = ln_gamma_right(1.0 - z) - PI.ln();
    if z.im.abs() < 20.0 && ln_abs.re < 700.0 {
        s * ln_abs.exp()
    } else {
        (ln_sin_pi(z) + ln_abs).exp()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn integer_and_half_integer_values() {
        assert_relative_eq!(log_gamma(c(5.0, 0.0)).unwrap().re, 24f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(log_gamma(c(0.5, 0.0)).unwrap().re, 0.5 * PI.ln(), max_relative = 1e-13);
        assert_relative_eq!(
            log_gamma(c(0.5, 0.0)).unwrap().re,
            0.572_364_942_924_700_1,
            epsilon = 1e-13
        );
        for n in 1..20u32 {
            let fact: f64 = (1..n).map(f64::from).product();
            let g = gamma(c(f64::from(n), 0.0)).unwrap();
            assert_relative_eq!(g.re, fact, max_relative = 1e-13);
            assert!(g.im.abs() < 1e-13 * fact);
        }
    }

    #[test]
    fn modulus_on_imaginary_axis() {
        // |Gamma(i)|^2 = pi / sinh(pi)
        let expected = (PI / PI.sinh()).sqrt();
        let got = log_gamma(c(0.0, 1.0)).unwrap().re.exp();
        assert_relative_eq!(got, expected, max_relative = 1e-13);
        assert_relative_eq!(got, 0.521_564_046_864_939_9, max_relative = 1e-12);
    }

    #[test]
    fn reflected_half_plane() {
        // Gamma(-1/2) = -2 sqrt(pi), Gamma(-3/2) = 4 sqrt(pi) / 3
        let sp = PI.sqrt();
        assert_relative_eq!(gamma(c(-0.5, 0.0)).unwrap().re, -2.0 * sp, max_relative = 1e-13);
        assert_relative_eq!(gamma(c(-1.5, 0.0)).unwrap().re, 4.0 * sp / 3.0, max_relative = 1e-13);
    }

    #[test]
    fn poles_are_errors_and_reciprocal_zeros() {
        for n in 0..30 {
            let z = c(-f64::from(n), 0.0);
            assert!(matches!(log_gamma(z), Err(Error::GammaPole(_))));
            assert_eq!(reciprocal_gamma(z), c(0.0, 0.0));
        }
        assert!(log_gamma(c(-2.0 + 1e-13, 0.0)).is_err());
        assert!(log_gamma(c(-2.0 + 1e-9, 0.0)).is_ok());
    }

    #[test]
    fn reciprocal_values() {
        assert_relative_eq!(reciprocal_gamma(c(1.0, 0.0)).re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(reciprocal_gamma(c(0.5, 0.0)).re, 1.0 / PI.sqrt(), max_relative = 1e-14);
        // 1/Gamma(-2.5) = -15 / (8 sqrt(pi))
        assert_relative_eq!(
            reciprocal_gamma(c(-2.5, 0.0)).re,
            -15.0 / (8.0 * PI.sqrt()),
            max_relative = 1e-13
        );
        // deep in the left half-plane: 1/Gamma(z) = z / Gamma(z + 1)
        let z = c(-100.5, 0.3);
        let lhs = reciprocal_gamma(z);
        let rhs = z * reciprocal_gamma(z + 1.0);
        assert!(lhs.is_finite());
        assert_relative_eq!((lhs - rhs).norm() / lhs.norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn large_imaginary_part() {
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        let y: f64 = 40.0;
        let got = log_gamma(c(0.5, y)).unwrap().re;
        let expected = 0.5 * (PI.ln() - (PI * y).cosh().ln());
        assert_relative_eq!(got, expected, max_relative = 1e-12);
        let left = log_gamma(c(-0.5, y)).unwrap().re;
        // Gamma(1/2 + iy) = (-1/2 + iy) Gamma(-1/2 + iy)
        let expected_left = expected - c(-0.5, y).norm().ln();
        assert_relative_eq!(left, expected_left, max_relative = 1e-12);
    }
}
