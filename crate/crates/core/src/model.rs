//! Couplings, the trigonometric potential, the PT-symmetric contour
//! `x(t) = t - i eps`, and the `y = sin^2 x` change of variables.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Minimum distance of `sin x`, `cos x` from zero for the potential to be
/// evaluated.
pub const POLE_DISTANCE: f64 = 1e-12;

/// Whether couplings outside `alpha, beta > 0` are accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CouplingPolicy {
    #[default]
    Strict,
    AllowUnsafe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CouplingWarning {
    /// `alpha <= 0`: the right-end barrier is weak or attractive.
    AlphaNonPositive,
    /// `beta <= 0`: the left-end barrier is weak or attractive.
    BetaNonPositive,
}

impl fmt::Display for CouplingWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingWarning::AlphaNonPositive => {
                f.write_str("alpha = A - 1/2 <= 0: classically forbidden coupling at x = pi/2")
            }
            CouplingWarning::BetaNonPositive => {
                f.write_str("beta = B - 1/2 <= 0: classically forbidden coupling at x = 0")
            }
        }
    }
}

/// Couplings `A`, `B` of `A(A-1)/cos^2 x + B(B-1)/sin^2 x`.
///
/// `(A, B)` are authoritative; `alpha = A - 1/2` and `beta = B - 1/2` are
/// computed from them on every access.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellParameters {
    #[serde(rename = "A")]
    a: f64,
    #[serde(rename = "B")]
    b: f64,
}

impl WellParameters {
    pub fn from_couplings(a: f64, b: f64, policy: CouplingPolicy) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "non-finite couplings A = {a}, B = {b}"
            )));
        }
        let params = WellParameters { a, b };
        if policy == CouplingPolicy::Strict && !params.warnings().is_empty() {
            return Err(Error::UnsafeCouplings {
                alpha: params.alpha(),
                beta: params.beta(),
            });
        }
        Ok(params)
    }

    pub fn from_exponents(alpha: f64, beta: f64, policy: CouplingPolicy) -> Result<Self> {
        Self::from_couplings(alpha + 0.5, beta + 0.5, policy)
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn alpha(&self) -> f64 {
        self.a - 0.5
    }

    pub fn beta(&self) -> f64 {
        self.b - 0.5
    }

    /// Strength of the `1/cos^2 x` term, `A(A-1) = alpha^2 - 1/4`.
    pub fn right_strength(&self) -> f64 {
        self.a * (self.a - 1.0)
    }

    /// Strength of the `1/sin^2 x` term, `B(B-1) = beta^2 - 1/4`.
    pub fn left_strength(&self) -> f64 {
        self.b * (self.b - 1.0)
    }

    pub fn warnings(&self) -> Vec<CouplingWarning> {
        let mut out = Vec::new();
        if self.alpha() <= 0.0 {
            out.push(CouplingWarning::AlphaNonPositive);
        }
        if self.beta() <= 0.0 {
            out.push(CouplingWarning::BetaNonPositive);
        }
        out
    }
}

/// The straight line `x(t) = t - i eps`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Contour {
    epsilon: f64,
}

impl Contour {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "contour shift must be >= 0, got {epsilon}"
            )));
        }
        Ok(Contour { epsilon })
    }

    /// The real interval, `eps = 0`.
    pub fn hermitian() -> Self {
        Contour { epsilon: 0.0 }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn point(&self, t: f64) -> Complex64 {
        contour_point(*self, t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Sign pair `(sigma, tau)` selecting the endpoint exponents
/// `1/2 + sigma beta` at `x = 0` and `1/2 + tau alpha` at `x = pi/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Branch {
    pub sigma: Sign,
    pub tau: Sign,
}

impl Branch {
    /// All four branches in `(sigma, tau)` lexicographic order, `+` first.
    pub const ALL: [Branch; 4] = [
        Branch::new(Sign::Plus, Sign::Plus),
        Branch::new(Sign::Plus, Sign::Minus),
        Branch::new(Sign::Minus, Sign::Plus),
        Branch::new(Sign::Minus, Sign::Minus),
    ];

    pub const fn new(sigma: Sign, tau: Sign) -> Self {
        Branch { sigma, tau }
    }

    /// The Hermitian branch `(+, +)`.
    pub const fn hermitian() -> Self {
        Branch::new(Sign::Plus, Sign::Plus)
    }

    pub fn flip_sigma(self) -> Self {
        Branch::new(self.sigma.flip(), self.tau)
    }

    pub fn flip_tau(self) -> Self {
        Branch::new(self.sigma, self.tau.flip())
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.sigma, self.tau)
    }
}

/// `A(A-1)/cos^2 x + B(B-1)/sin^2 x` at complex `x`.
pub fn potential_value(params: &WellParameters, x: Complex64) -> Result<Complex64> {
    let (s, c) = (x.sin(), x.cos());
    if s.norm() < POLE_DISTANCE || c.norm() < POLE_DISTANCE {
        return Err(Error::Singularity(x));
    }
    Ok(params.right_strength() / (c * c) + params.left_strength() / (s * s))
}

pub fn contour_point(contour: Contour, t: f64) -> Complex64 {
    Complex64::new(t, -contour.epsilon)
}

/// `y = sin^2 x`.
pub fn map_y(x: Complex64) -> Complex64 {
    let s = x.sin();
    s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn params(a: f64, b: f64) -> WellParameters {
        WellParameters::from_couplings(a, b, CouplingPolicy::Strict).unwrap()
    }

    #[test]
    fn flagship_potential_value() {
        let v = potential_value(&params(2.5, 1.25), Complex64::new(FRAC_PI_4, 0.0)).unwrap();
        assert_relative_eq!(v.re, 8.125, max_relative = 1e-14);
    }

    #[test]
    fn alpha_beta_form_agrees() {
        let p = params(2.5, 1.25);
        for &x in &[
            Complex64::new(0.3, 0.0),
            Complex64::new(1.1, -0.1),
            Complex64::new(0.05, -0.4),
        ] {
            let v = potential_value(&p, x).unwrap();
            let (s, c) = (x.sin(), x.cos());
            let alt = (p.alpha().powi(2) - 0.25) / (c * c) + (p.beta().powi(2) - 0.25) / (s * s);
            assert_relative_eq!((v - alt).norm(), 0.0, epsilon = 1e-13 * v.norm());
        }
    }

    #[test]
    fn symmetric_well_reduces_to_sin_2x() {
        let b = 1.25;
        let g = 4.0 * b * (b - 1.0);
        assert_relative_eq!(g, 1.25);
        let x = Complex64::new(0.3, 0.0);
        let v = potential_value(&params(b, b), x).unwrap();
        let s2 = (2.0 * x).sin();
        assert_relative_eq!((v - g / (s2 * s2)).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn free_case_vanishes() {
        let p = params(1.0, 1.0);
        for t in [0.1, 0.7, 1.3] {
            assert_eq!(
                potential_value(&p, Complex64::new(t, -0.1)).unwrap(),
                Complex64::new(0.0, 0.0)
            );
        }
    }

    #[test]
    fn poles_are_rejected() {
        let p = params(2.5, 1.25);
        assert!(matches!(
            potential_value(&p, Complex64::new(0.0, 0.0)),
            Err(Error::Singularity(_))
        ));
        assert!(matches!(
            potential_value(&p, Complex64::new(FRAC_PI_2, 0.0)),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn contour_points() {
        assert_eq!(contour_point(Contour::hermitian(), 0.7), Complex64::new(0.7, 0.0));
        let c = Contour::new(0.1).unwrap();
        assert_eq!(c.point(0.0), Complex64::new(0.0, -0.1));
        // PT invariance of the line: -conj(x(t)) = x(-t)
        assert_eq!(-c.point(0.3).conj(), c.point(-0.3));
        assert!(Contour::new(-0.1).is_err());
        assert!(Contour::new(f64::NAN).is_err());
    }

    #[test]
    fn map_y_values() {
        assert_relative_eq!(map_y(Complex64::new(FRAC_PI_4, 0.0)).re, 0.5, max_relative = 1e-15);
        assert_eq!(map_y(Complex64::new(0.0, 0.0)), Complex64::new(0.0, 0.0));
        let x = Complex64::new(FRAC_PI_4, -0.1);
        let oracle = (1.0 - (2.0 * x).cos()) / 2.0;
        assert_relative_eq!((map_y(x) - oracle).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn coupling_policy() {
        assert!(matches!(
            WellParameters::from_couplings(0.25, 1.25, CouplingPolicy::Strict),
            Err(Error::UnsafeCouplings { .. })
        ));
        let p = WellParameters::from_couplings(0.25, 0.25, CouplingPolicy::AllowUnsafe).unwrap();
        assert_eq!(
            p.warnings(),
            vec![CouplingWarning::AlphaNonPositive, CouplingWarning::BetaNonPositive]
        );
        let p = WellParameters::from_exponents(2.0, 0.75, CouplingPolicy::Strict).unwrap();
        assert_eq!((p.a(), p.b()), (2.5, 1.25));
        assert_eq!((p.alpha(), p.beta()), (2.0, 0.75));
    }

    #[test]
    fn branch_order() {
        let labels: Vec<String> = Branch::ALL.iter().map(ToString::to_string).collect();
        assert_eq!(labels, ["(+,+)", "(+,-)", "(-,+)", "(-,-)"]);
    }
}
