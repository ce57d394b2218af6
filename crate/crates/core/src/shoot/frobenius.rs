//! Frobenius solutions at the singular endpoints.
//!
//! Near either pole the equation reads `w^2 psi'' = w^2 (V - E) psi` with
//!
//! ```text
//! w^2 V = g_near (w / sin w)^2 + g_far w^2 / cos^2 w
//! ```
//!
//! where `w = x` at the left end and `w = pi/2 - x` at the right end. The
//! right-hand side is a power series in `u = w^2`, so
//! `psi = w^rho sum_j a_j w^{2j}` with `rho = 1/2 + s nu` and
//!
//! ```text
//! 4 j (j + s nu) a_j = sum_{i=1..j} q_i a_{j-i}.
//! ```
//!
//! When `s nu = -m` for a positive integer `m` the left side vanishes at
//! `j = m`; the right side there is the logarithmic obstruction, which must
//! vanish for a log-free solution with exponent `1/2 + s nu` to exist.

use num_complex::Complex64;

/// Number of `u = w^2` terms kept in every series.
pub const FROBENIUS_TERMS: usize = 48;

/// Distance of `s nu` from a negative integer below which it counts as resonant.
pub const RESONANCE_TOLERANCE: f64 = 1e-8;

fn mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).map(|i| a[i] * b[k - i]).sum()).collect()
}

fn reciprocal(a: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len()];
    out[0] = 1.0 / a[0];
    for k in 1..a.len() {
        let s: f64 = (1..=k).map(|i| a[i] * out[k - i]).sum();
        out[k] = -s / a[0];
    }
    out
}

/// Series in `u` of `(w / sin w)^2` and of `1 / cos^2 w`.
fn trig_series(terms: usize) -> (Vec<f64>, Vec<f64>) {
    let mut sinc = Vec::with_capacity(terms);
    let mut cos = Vec::with_capacity(terms);
    let (mut fs, mut fc) = (1.0_f64, 1.0_f64);
    for j in 0..terms {
        if j > 0 {
            fc *= ((2 * j - 1) * (2 * j)) as f64;
            fs *= ((2 * j) * (2 * j + 1)) as f64;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sinc.push(sign / fs);
        cos.push(sign / fc);
    }
    (reciprocal(&mul(&sinc, &sinc)), reciprocal(&mul(&cos, &cos)))
}

/// Coefficients `q_j` of `w^2 (V - E)` in powers of `u = w^2`.
pub fn potential_series(g_near: f64, g_far: f64, energy: f64, terms: usize) -> Vec<f64> {
    let (inv_sinc2, sec2) = trig_series(terms);
    let mut q: Vec<f64> = (0..terms)
        .map(|j| g_near * inv_sinc2[j] + if j > 0 { g_far * sec2[j - 1] } else { 0.0 })
        .collect();
    if terms > 1 {
        q[1] -= energy;
    }
    q
}

/// Resonance index `m` if `s nu` is (nearly) the negative integer `-m`.
pub fn resonance_index(signed_nu: f64) -> Option<usize> {
    let m = -signed_nu.round();
    if m >= 1.0 && (signed_nu + m).abs() < RESONANCE_TOLERANCE {
        Some(m as usize)
    } else {
        None
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSeries {
    pub exponent: f64,
    pub coefficients: Vec<f64>,
}

impl FrobeniusSeries {
    /// Series with exponent `1/2 + signed_nu`; at a resonance the free
    /// coefficient is set to zero.
    pub fn new(q: &[f64], signed_nu: f64) -> Self {
        let resonant = resonance_index(signed_nu);
        let mut a = vec![0.0; q.len()];
        a[0] = 1.0;
        for j in 1..q.len() {
            if Some(j) == resonant {
                continue;
            }
            let jf = j as f64;
            let rhs: f64 = (1..=j).map(|i| q[i] * a[j - i]).sum();
            a[j] = rhs / (4.0 * jf * (jf + signed_nu));
        }
        FrobeniusSeries {
            exponent: 0.5 + signed_nu,
            coefficients: a,
        }
    }

    /// Value and `d/dw` at `w` (principal branch of `w^rho`).
    pub fn evaluate(&self, w: Complex64) -> (Complex64, Complex64) {
        let u = w * w;
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for (j, &a) in self.coefficients.iter().enumerate() {
            let term = a * power;
            value += term;
            deriv += (self.exponent + 2.0 * j as f64) * term;
            if j > 4 && term.norm() < 1e-18 * value.norm() {
                break;
            }
            power *= u;
        }
        let lead = w.powf(self.exponent);
        (lead * value, lead * deriv / w)
    }
}

/// Normalized logarithmic obstruction for the exponent `1/2 - m`.
///
/// The raw obstruction `sum_{i=1..m} q_i a_{m-i}` is divided by the same sum
/// of absolute values, with the `-E` part of `q_1` counted separately so the
/// ratio passes through zero continuously as `E` varies. The result lies in
/// `[-1, 1]`.
pub fn log_obstruction(q: &[f64], m: usize, energy: f64) -> f64 {
    assert!(m >= 1 && m < q.len(), "resonance index {m} outside the series");
    let signed_nu = -(m as f64);
    let mut coef = vec![0.0; m];
    coef[0] = 1.0;
    for j in 1..m {
        let jf = j as f64;
        let rhs: f64 = (1..=j).map(|i| q[i] * coef[j - i]).sum();
        coef[j] = rhs / (4.0 * jf * (jf + signed_nu));
    }
    let total: f64 = (1..=m).map(|i| q[i] * coef[m - i]).sum();
    let scale: f64 = (1..=m)
        .map(|i| {
            let qi = if i == 1 {
                (q[1] + energy).abs() + energy.abs()
            } else {
                q[i].abs()
            };
            qi * coef[m - i].abs()
        })
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        total / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn trig_series_known_coefficients() {
        let (inv_sinc2, sec2) = trig_series(5);
        // (w/sin w)^2 = 1 + u/3 + u^2/15 + 2u^3/189 + ...
        assert_relative_eq!(inv_sinc2[0], 1.0);
        assert_relative_eq!(inv_sinc2[1], 1.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(inv_sinc2[2], 1.0 / 15.0, max_relative = 1e-14);
        assert_relative_eq!(inv_sinc2[3], 2.0 / 189.0, max_relative = 1e-13);
        // sec^2 w = 1 + u + 2u^2/3 + 17u^3/45 + ...
        assert_relative_eq!(sec2[1], 1.0, max_relative = 1e-14);
        assert_relative_eq!(sec2[2], 2.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(sec2[3], 17.0 / 45.0, max_relative = 1e-13);
    }

    #[test]
    fn series_solves_the_local_equation() {
        // five-point finite differences against psi'' = (V - E) psi
        let (g_near, g_far, energy) = (0.3125, 3.75, 7.0);
        let q = potential_series(g_near, g_far, energy, FROBENIUS_TERMS);
        for signed_nu in [0.75, -0.75] {
            let s = FrobeniusSeries::new(&q, signed_nu);
            let w = Complex64::new(0.05, -0.1);
            let h = 1e-4;
            let f = |z: Complex64| s.evaluate(z).0;
            let d2 =
                (-f(w + 2.0 * h) + 16.0 * f(w + h) - 30.0 * f(w) + 16.0 * f(w - h) - f(w - 2.0 * h)) / (12.0 * h * h);
            let v = g_near / (w.sin() * w.sin()) + g_far / (w.cos() * w.cos());
            let rhs = (v - energy) * f(w);
            assert_relative_eq!((d2 - rhs).norm() / rhs.norm(), 0.0, epsilon = 1e-7);
            let d1 = (f(w - 2.0 * h) - 8.0 * f(w - h) + 8.0 * f(w + h) - f(w + 2.0 * h)) / (12.0 * h);
            assert_relative_eq!((d1 - s.evaluate(w).1).norm() / d1.norm(), 0.0, epsilon = 1e-7);
        }
    }

    #[test]
    fn resonance_detection() {
        assert_eq!(resonance_index(-2.0), Some(2));
        assert_eq!(resonance_index(-2.0 + 1e-10), Some(2));
        assert_eq!(resonance_index(-1.5), None);
        assert_eq!(resonance_index(2.0), None);
        assert_eq!(resonance_index(-0.0), None);
    }

    #[test]
    fn first_order_obstruction() {
        // m = 1: obstruction is q_1 = g_near/3 + g_far - E, zero at E = g_near/3 + g_far
        let (g_near, g_far) = (0.75, 0.4);
        let e0 = g_near / 3.0 + g_far;
        let at = |e: f64| log_obstruction(&potential_series(g_near, g_far, e, 8), 1, e);
        assert!(at(e0).abs() < 1e-15);
        assert!(at(e0 - 0.1) > 0.0 && at(e0 + 0.1) < 0.0);
    }
}
