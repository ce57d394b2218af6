//! Closed-form solutions on the complex contour.
//!
//! With `y = sin^2 x` and `E = k^2`, the ansatz
//! `psi = sin^kappa x cos^lambda x f(y)` turns the Schrodinger equation into
//! the Gauss hypergeometric equation with
//!
//! ```text
//! kappa(sigma) = 1/2 + sigma beta,  lambda(tau) = 1/2 + tau alpha
//! f = 2F1((kappa + lambda + k)/2, (kappa + lambda - k)/2; 1/2 + kappa; y)
//! ```
//!
//! The series terminates when `k = sigma beta + tau alpha + 2n + 1`, which at
//! the same time kills the `cos^{lambda(-tau)}` component at `x = pi/2`.
//! Complex powers use principal branches; every evaluator checks that
//! `sin x` and `cos x` stay in the closed right half-plane so the powers are
//! continuous along the contour.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{map_y, Branch, Sign, WellParameters};
use crate::specfun::{hyp2f1, hyp2f1_connected, hyp2f1_terminating, log_gamma, reciprocal_gamma, INTEGER_TOLERANCE};

/// Relative stopping tolerance for the hypergeometric series used here.
pub const SERIES_TOL: f64 = 1e-16;

/// `|sigma beta|` or `|tau alpha|` below this is a coalescing exponent pair.
pub const DEGENERATE_EXPONENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exponents {
    /// `1/2 + sigma beta`, power of `sin x`.
    pub kappa: f64,
    /// `1/2 + tau alpha`, power of `cos x`.
    pub lambda: f64,
    /// `kappa / 2`, power of `y`.
    pub mu: f64,
    /// `lambda / 2`, power of `1 - y`.
    pub nu: f64,
}

pub fn exponents(params: &WellParameters, branch: Branch) -> Exponents {
    let kappa = 0.5 + branch.sigma.value() * params.beta();
    let lambda = 0.5 + branch.tau.value() * params.alpha();
    Exponents {
        kappa,
        lambda,
        mu: kappa / 2.0,
        nu: lambda / 2.0,
    }
}

fn kappa(params: &WellParameters, sigma: Sign) -> f64 {
    0.5 + sigma.value() * params.beta()
}

fn lambda(params: &WellParameters, tau: Sign) -> f64 {
    0.5 + tau.value() * params.alpha()
}

/// `k_n = sigma beta + tau alpha + 2n + 1`.
pub fn termination_k(params: &WellParameters, branch: Branch, n: usize) -> f64 {
    branch.sigma.value() * params.beta() + branch.tau.value() * params.alpha() + 2.0 * n as f64 + 1.0
}

/// `E_n = k_n^2`.
pub fn energy(params: &WellParameters, branch: Branch, n: usize) -> f64 {
    termination_k(params, branch, n).powi(2)
}

/// `alpha^2 + beta^2 + 2 sigma tau alpha beta + (4n + 2)(sigma beta + tau alpha) + (2n + 1)^2`
pub fn energy_expanded(params: &WellParameters, branch: Branch, n: usize) -> f64 {
    let (a, b) = (params.alpha(), params.beta());
    let (s, t) = (branch.sigma.value(), branch.tau.value());
    let m = 2.0 * n as f64 + 1.0;
    a * a + b * b + 2.0 * s * t * a * b + 2.0 * m * (s * b + t * a) + m * m
}

/// The Gamma-function factor `G^(sigma,tau)` multiplying the
/// `cos^{lambda(tau)} x` component at `x = pi/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConnectionFactor {
    pub value: Complex64,
}

fn non_positive_integer(z: f64) -> bool {
    let r = z.round();
    r <= 0.0 && (z - r).abs() < INTEGER_TOLERANCE
}

/// ```text
/// G = Gamma(1 + sigma beta) Gamma(-tau alpha)
///     / (Gamma([kappa(sigma) + lambda(-tau) + k]/2) Gamma([kappa(sigma) + lambda(-tau) - k]/2))
/// ```
///
/// The denominator goes through the reciprocal Gamma function, so its poles
/// give exact zeros. Numerator poles (integer `alpha`, or `1 + sigma beta` a
/// non-positive integer) are errors.
pub fn connection_factor(params: &WellParameters, branch: Branch, k: Complex64) -> Result<ConnectionFactor> {
    let num_left = 1.0 + branch.sigma.value() * params.beta();
    let num_right = -branch.tau.value() * params.alpha();
    for arg in [num_left, num_right] {
        if non_positive_integer(arg) {
            return Err(Error::ConnectionPole(arg));
        }
    }
    let s = kappa(params, branch.sigma) + lambda(params, branch.tau.flip());
    let den = reciprocal_gamma((s + k) / 2.0) * reciprocal_gamma((s - k) / 2.0);
    if den == Complex64::new(0.0, 0.0) {
        return Ok(ConnectionFactor { value: den });
    }
    let num = (log_gamma(Complex64::new(num_left, 0.0))? + log_gamma(Complex64::new(num_right, 0.0))?).exp();
    Ok(ConnectionFactor { value: num * den })
}

/// `chi^(sigma,tau)(y) = 2F1((kappa + lambda + k)/2, (kappa + lambda - k)/2; 1/2 + kappa; y)`.
pub fn chi(params: &WellParameters, branch: Branch, k: Complex64, y: Complex64) -> Result<Complex64> {
    let (ka, la) = (kappa(params, branch.sigma), lambda(params, branch.tau));
    let s = ka + la;
    hyp2f1(
        (s + k) / 2.0,
        (s - k) / 2.0,
        Complex64::new(0.5 + ka, 0.0),
        y,
        SERIES_TOL,
    )
}

/// `rho^(sigma,tau)(y) = G^(sigma,tau) 2F1((kappa + lambda + k)/2, (kappa + lambda - k)/2; 1/2 + lambda; 1 - y)`,
/// the `x = pi/2` expansion of `chi`:
/// `chi^(s,t) cos^{lambda(t)} = rho^(s,t) cos^{lambda(t)} + rho^(s,-t) cos^{lambda(-t)}`.
pub fn rho(params: &WellParameters, branch: Branch, k: Complex64, y: Complex64) -> Result<Complex64> {
    let g = connection_factor(params, branch, k)?.value;
    if g == Complex64::new(0.0, 0.0) {
        return Ok(g);
    }
    let (ka, la) = (kappa(params, branch.sigma), lambda(params, branch.tau));
    let s = ka + la;
    let f = hyp2f1_connected(
        (s + k) / 2.0,
        (s - k) / 2.0,
        Complex64::new(0.5 + la, 0.0),
        1.0 - y,
        SERIES_TOL,
    )?;
    Ok(g * f)
}

/// `sin x` and `cos x` with the principal-branch continuity check.
fn trig_pair(x: Complex64) -> Result<(Complex64, Complex64)> {
    let (s, c) = (x.sin(), x.cos());
    if s.re < 0.0 || c.re < 0.0 {
        return Err(Error::BranchCrossing(x));
    }
    if s.norm() < crate::model::POLE_DISTANCE || c.norm() < crate::model::POLE_DISTANCE {
        return Err(Error::Singularity(x));
    }
    Ok((s, c))
}

/// Coefficients `(C1, C2)` and momentum `k` of the general solution
/// `{C1 chi^(s,t) sin^{kappa(s)} + C2 chi^(-s,t) sin^{kappa(-s)}} cos^{lambda(t)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralSolutionSpec {
    pub c1: Complex64,
    pub c2: Complex64,
    pub branch: Branch,
    pub k: Complex64,
}

impl GeneralSolutionSpec {
    pub fn new(c1: Complex64, c2: Complex64, branch: Branch, k: Complex64) -> Result<Self> {
        if c1 == Complex64::new(0.0, 0.0) && c2 == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidParameter("C1 and C2 both vanish".into()));
        }
        Ok(GeneralSolutionSpec { c1, c2, branch, k })
    }

    pub fn energy(&self) -> Complex64 {
        self.k * self.k
    }

    /// Leading-order coefficients at both thresholds.
    pub fn threshold_coefficients(&self, params: &WellParameters) -> Result<ThresholdCoefficients> {
        check_nondegenerate(params)?;
        let zero = Complex64::new(0.0, 0.0);
        let mut right_plus = zero;
        let mut right_minus = zero;
        for (coef, branch) in [(self.c1, self.branch), (self.c2, self.branch.flip_sigma())] {
            if coef == zero {
                continue;
            }
            right_plus += coef * connection_factor(params, branch, self.k)?.value;
            right_minus += coef * connection_factor(params, branch.flip_tau(), self.k)?.value;
        }
        Ok(ThresholdCoefficients {
            branch: self.branch,
            left_plus: self.c1,
            left_minus: self.c2,
            right_plus,
            right_minus,
        })
    }
}

pub fn general_psi(spec: &GeneralSolutionSpec, params: &WellParameters, x: Complex64) -> Result<Complex64> {
    let (s, c) = trig_pair(x)?;
    let y = map_y(x);
    let zero = Complex64::new(0.0, 0.0);
    let mut acc = zero;
    for (coef, branch) in [(spec.c1, spec.branch), (spec.c2, spec.branch.flip_sigma())] {
        if coef == zero {
            continue;
        }
        let ka = kappa(params, branch.sigma);
        acc += coef * chi(params, branch, spec.k, y)? * s.powf(ka);
    }
    Ok(acc * c.powf(lambda(params, spec.branch.tau)))
}

/// A terminating (polynomial) eigenstate with `C2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundStateSolution {
    pub branch: Branch,
    pub n: usize,
    pub k_n: f64,
    pub energy: f64,
    pub c1: Complex64,
}

impl BoundStateSolution {
    /// The `n`-th state of `branch`, normalized with `C1 = 1`.
    pub fn new(params: &WellParameters, branch: Branch, n: usize) -> Self {
        let k_n = termination_k(params, branch, n);
        BoundStateSolution {
            branch,
            n,
            k_n,
            energy: k_n * k_n,
            c1: Complex64::new(1.0, 0.0),
        }
    }

    pub fn with_normalization(mut self, c1: Complex64) -> Self {
        self.c1 = c1;
        self
    }

    /// The same state as a general solution with `C2 = 0`.
    pub fn as_general(&self) -> GeneralSolutionSpec {
        GeneralSolutionSpec {
            c1: self.c1,
            c2: Complex64::new(0.0, 0.0),
            branch: self.branch,
            k: Complex64::new(self.k_n, 0.0),
        }
    }

    /// Parameters `(b, c)` of the terminating `2F1(-n, b; c; y)`.
    fn polynomial_parameters(&self, params: &WellParameters) -> (Complex64, Complex64) {
        let sb = self.branch.sigma.value() * params.beta();
        let ta = self.branch.tau.value() * params.alpha();
        (
            Complex64::new(self.n as f64 + 1.0 + sb + ta, 0.0),
            Complex64::new(1.0 + sb, 0.0),
        )
    }

    /// Leading-order coefficients at both thresholds.
    ///
    /// The `x -> pi/2` coefficient is `C1 2F1(-n, b; c; 1) = C1 (c - b)_n / (c)_n`
    /// (Chu-Vandermonde), which equals `C1 G^(sigma,tau)(k_n)` wherever the
    /// Gamma form is finite and stays finite for integer `alpha`.
    pub fn threshold_coefficients(&self, params: &WellParameters) -> Result<ThresholdCoefficients> {
        check_nondegenerate(params)?;
        let (b, c) = self.polynomial_parameters(params);
        let at_one = hyp2f1_terminating(self.n, b, c, Complex64::new(1.0, 0.0))?;
        let zero = Complex64::new(0.0, 0.0);
        Ok(ThresholdCoefficients {
            branch: self.branch,
            left_plus: self.c1,
            left_minus: zero,
            right_plus: self.c1 * at_one,
            right_minus: zero,
        })
    }
}

/// `C1 sin^{1/2 + sigma beta} x cos^{1/2 + tau alpha} x 2F1(-n, n + 1 + sigma beta + tau alpha; 1 + sigma beta; sin^2 x)`
pub fn bound_state_psi(sol: &BoundStateSolution, params: &WellParameters, x: Complex64) -> Result<Complex64> {
    let (s, c) = trig_pair(x)?;
    let (b, cc) = sol.polynomial_parameters(params);
    let poly = hyp2f1_terminating(sol.n, b, cc, s * s)?;
    let e = exponents(params, sol.branch);
    Ok(sol.c1 * s.powf(e.kappa) * c.powf(e.lambda) * poly)
}

/// Leading-order threshold behaviour
///
/// ```text
/// x^{-1/2} psi ~ left_plus x^{sigma beta} + left_minus x^{-sigma beta},       x -> 0
/// z^{-1/2} psi ~ right_plus z^{tau alpha} + right_minus z^{-tau alpha},       z = pi/2 - x -> 0
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCoefficients {
    pub branch: Branch,
    pub left_plus: Complex64,
    pub left_minus: Complex64,
    pub right_plus: Complex64,
    pub right_minus: Complex64,
}

fn check_nondegenerate(params: &WellParameters) -> Result<()> {
    if params.beta().abs() <= DEGENERATE_EXPONENT {
        return Err(Error::DegenerateExponent(format!(
            "beta = {} makes the x = 0 exponents coalesce",
            params.beta()
        )));
    }
    if params.alpha().abs() <= DEGENERATE_EXPONENT {
        return Err(Error::DegenerateExponent(format!(
            "alpha = {} makes the x = pi/2 exponents coalesce",
            params.alpha()
        )));
    }
    Ok(())
}
