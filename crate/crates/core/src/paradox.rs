//! Ground-state curves `E(B)` of the symmetric well `A = B`, the figure
//! tables, and the boundary classification of threshold behaviour.
//!
//! For `A = B` the Hermitian ground state is `E = 4B^2`. That formula is only
//! right for `B >= 1/2`; below it the regular solution has exponent `1 - B`
//! and the level is `4(1 - B)^2`. The PT-symmetric reading keeps both smooth
//! branches: `E+ = 4B^2` from `(+,+)` and `E- = 4(B - 1)^2` from `(-,-)`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{energy, ThresholdCoefficients, DEGENERATE_EXPONENT};
use crate::model::{potential_value, Branch, Sign, WellParameters};

/// Figure 1 clips the potential to `[-V_CLIP, V_CLIP]`.
pub const V_CLIP: f64 = 100.0;

/// Interior sample count of the Figure 1 potential grid.
pub const FIGURE1_POINTS: usize = 2000;

/// Coefficients below this fraction of the larger one at the same end count as zero.
pub const COEFFICIENT_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveLabel {
    Naive,
    Corrected,
    PtPlus,
    PtMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub branch_label: CurveLabel,
    /// The point lies on the corrected Hermitian curve.
    pub physical_hermitian: bool,
}

/// `B = 0.05, 0.055, ..., 1.5`.
pub fn default_b_grid() -> Vec<f64> {
    (10..=300).map(|k| f64::from(k) / 200.0).collect()
}

fn point(b: f64, e: f64, branch_label: CurveLabel, physical_hermitian: bool) -> CurvePoint {
    CurvePoint {
        b,
        e,
        branch_label,
        physical_hermitian,
    }
}

/// `E = 4B^2` everywhere.
pub fn naive_curve(b_grid: &[f64]) -> Vec<CurvePoint> {
    b_grid
        .iter()
        .map(|&b| point(b, 4.0 * b * b, CurveLabel::Naive, b >= 0.5))
        .collect()
}

/// `4B^2` for `B >= 1/2`, `4(1 - B)^2` below.
pub fn corrected_energy(b: f64) -> f64 {
    if b >= 0.5 {
        4.0 * b * b
    } else {
        4.0 * (1.0 - b) * (1.0 - b)
    }
}

pub fn corrected_curve(b_grid: &[f64]) -> Vec<CurvePoint> {
    b_grid
        .iter()
        .map(|&b| point(b, corrected_energy(b), CurveLabel::Corrected, true))
        .collect()
}

/// The `(+,+)` and `(-,-)` ground states at `A = B`.
pub fn pt_curves(b_grid: &[f64]) -> (Vec<CurvePoint>, Vec<CurvePoint>) {
    let plus = b_grid
        .iter()
        .map(|&b| point(b, 4.0 * b * b, CurveLabel::PtPlus, b >= 0.5))
        .collect();
    let minus = b_grid
        .iter()
        .map(|&b| point(b, 4.0 * (b - 1.0) * (b - 1.0), CurveLabel::PtMinus, b <= 0.5))
        .collect();
    (plus, minus)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub figure_id: u8,
    pub column_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl FigureData {
    fn new(figure_id: u8, names: &[&str], rows: Vec<Vec<f64>>) -> Self {
        FigureData {
            figure_id,
            column_names: names.iter().map(|s| s.to_string()).collect(),
            rows,
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.column_names.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

/// The potential on the real interval, `t = 2x/pi` in `(0, 1)`, with the three
/// lowest Hermitian levels as constant columns.
pub fn figure1(params: &WellParameters) -> Result<FigureData> {
    let levels: Vec<f64> = (0..3).map(|n| energy(params, Branch::hermitian(), n)).collect();
    let denom = (FIGURE1_POINTS + 1) as f64;
    let rows = (0..FIGURE1_POINTS)
        .map(|i| {
            let t = (i + 1) as f64 / denom;
            let v = potential_value(params, Complex64::new(FRAC_PI_2 * t, 0.0))?.re;
            Ok(vec![t, v.clamp(-V_CLIP, V_CLIP), levels[0], levels[1], levels[2]])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FigureData::new(1, &["t", "V", "E0", "E1", "E2"], rows))
}

fn curve_rows(points: &[CurvePoint]) -> Vec<Vec<f64>> {
    points.iter().map(|p| vec![p.b, p.e]).collect()
}

pub fn figure2(b_grid: &[f64]) -> FigureData {
    FigureData::new(2, &["B", "E"], curve_rows(&naive_curve(b_grid)))
}

pub fn figure3(b_grid: &[f64]) -> FigureData {
    FigureData::new(3, &["B", "E"], curve_rows(&corrected_curve(b_grid)))
}

pub fn figure4(b_grid: &[f64]) -> FigureData {
    let (plus, minus) = pt_curves(b_grid);
    let rows = plus.iter().zip(&minus).map(|(p, m)| vec![p.b, p.e, m.e]).collect();
    FigureData::new(4, &["B", "E_plus", "E_minus"], rows)
}

/// Figure `id` (1 to 4) on a grid sorted into ascending `B`.
pub fn figure(id: u8, params: &WellParameters, b_grid: &[f64]) -> Result<FigureData> {
    let mut grid = b_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    match id {
        1 => figure1(params),
        2 => Ok(figure2(&grid)),
        3 => Ok(figure3(&grid)),
        4 => Ok(figure4(&grid)),
        _ => Err(Error::InvalidParameter(format!("figure id must be 1..=4, got {id}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundaryLabel {
    /// Every present power vanishes faster than `sqrt(w)`.
    Regular,
    /// `psi -> 0`, but a power between `0` and `1/2` is present.
    DirichletNonRegular,
    /// `psi` does not vanish at the end.
    Singular,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EndpointClass {
    /// Family `s` of the leading power `w^{1/2 + s gap}` (`gap = beta` or `alpha`).
    pub dominant: Sign,
    pub dominant_exponent: f64,
    /// `lim psi / sqrt(w) = 0`.
    pub restrictive: bool,
    /// `lim psi = 0`.
    pub dirichlet: bool,
    pub label: BoundaryLabel,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryClassification {
    pub branch: Branch,
    pub left: EndpointClass,
    pub right: EndpointClass,
}

fn classify_end(own: Complex64, other: Complex64, sign: Sign, gap: f64, end: &str) -> Result<EndpointClass> {
    if gap.abs() < DEGENERATE_EXPONENT {
        return Err(Error::DegenerateExponent(format!(
            "exponent gap {gap} at the {end} end"
        )));
    }
    let scale = own.norm().max(other.norm());
    if scale.is_nan() || scale <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "both threshold coefficients vanish at the {end} end"
        )));
    }
    // `own` multiplies w^{1/2 + s gap}, `other` multiplies w^{1/2 - s gap}
    let present: Vec<(Sign, f64)> = [(sign, own), (sign.flip(), other)]
        .into_iter()
        .filter(|(_, c)| c.norm() > COEFFICIENT_ZERO * scale)
        .map(|(s, _)| (s, 0.5 + s.value() * gap))
        .collect();
    let (dominant, dominant_exponent) = present
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one coefficient is present");
    let restrictive = dominant_exponent > 0.5;
    let dirichlet = dominant_exponent > 0.0;
    let label = if restrictive {
        BoundaryLabel::Regular
    } else if dirichlet {
        BoundaryLabel::DirichletNonRegular
    } else {
        BoundaryLabel::Singular
    };
    Ok(EndpointClass {
        dominant,
        dominant_exponent,
        restrictive,
        dirichlet,
        label,
    })
}

/// Which threshold powers are present at each end and what boundary
/// conditions they satisfy.
pub fn classify_boundary(coeffs: &ThresholdCoefficients, params: &WellParameters) -> Result<BoundaryClassification> {
    let branch = coeffs.branch;
    Ok(BoundaryClassification {
        branch,
        left: classify_end(coeffs.left_plus, coeffs.left_minus, branch.sigma, params.beta(), "left")?,
        right: classify_end(
            coeffs.right_plus,
            coeffs.right_minus,
            branch.tau,
            params.alpha(),
            "right",
        )?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{BoundStateSolution, GeneralSolutionSpec};
    use crate::model::CouplingPolicy;
    use approx::assert_relative_eq;

    fn e_at(points: &[CurvePoint], b: f64) -> f64 {
        points.iter().find(|p| (p.b - b).abs() < 1e-12).unwrap().e
    }

    #[test]
    fn curve_examples() {
        let grid = [0.25, 0.5, 1.0, 1.25];
        let naive = naive_curve(&grid);
        assert_eq!(e_at(&naive, 1.0), 4.0);
        assert_eq!(e_at(&naive, 0.25), 0.25);
        assert_eq!(e_at(&naive, 0.5), 1.0);
        let corrected = corrected_curve(&grid);
        assert_eq!(e_at(&corrected, 0.25), 2.25);
        assert_eq!(e_at(&corrected, 0.5), 1.0);
        assert_eq!(e_at(&corrected, 1.0), 4.0);
        let (plus, minus) = pt_curves(&grid);
        assert_eq!(e_at(&plus, 0.5), e_at(&minus, 0.5));
        assert_eq!(e_at(&plus, 1.25), 6.25);
        let p = WellParameters::from_couplings(1.25, 1.25, CouplingPolicy::Strict).unwrap();
        assert_eq!(e_at(&plus, 1.25), energy(&p, Branch::hermitian(), 0));
    }

    #[test]
    fn corrected_is_the_pt_branch_union() {
        let grid = default_b_grid();
        let corrected = corrected_curve(&grid);
        let (plus, minus) = pt_curves(&grid);
        for ((c, p), m) in corrected.iter().zip(&plus).zip(&minus) {
            let want = if c.b >= 0.5 { p.e } else { m.e };
            assert_eq!(c.e, want);
            assert_eq!(p.physical_hermitian, c.b >= 0.5);
            assert_eq!(m.physical_hermitian, c.b <= 0.5);
        }
    }

    #[test]
    fn pt_exchange_symmetry() {
        let grid = default_b_grid();
        let mirrored: Vec<f64> = grid.iter().map(|b| 1.0 - b).collect();
        let (plus, _) = pt_curves(&mirrored);
        let (_, minus) = pt_curves(&grid);
        for (p, m) in plus.iter().zip(&minus) {
            assert_eq!(p.e, m.e);
        }
    }

    #[test]
    fn default_grid_shape() {
        let g = default_b_grid();
        assert_eq!(g.len(), 291);
        assert_eq!(g[0], 0.05);
        assert_eq!(g[90], 0.5);
        assert_eq!(*g.last().unwrap(), 1.5);
    }

    #[test]
    fn figure_tables() {
        let p = WellParameters::from_couplings(2.5, 1.25, CouplingPolicy::Strict).unwrap();
        let grid = default_b_grid();
        let f1 = figure(1, &p, &grid).unwrap();
        assert_eq!(f1.rows.len(), FIGURE1_POINTS);
        assert_eq!(f1.rows[0][2..], [14.0625, 33.0625, 60.0625]);
        assert!(f1.column("V").unwrap().iter().all(|v| v.abs() <= V_CLIP));
        let t = f1.column("t").unwrap();
        assert!(t.windows(2).all(|w| w[0] < w[1]) && t[0] > 0.0 && *t.last().unwrap() < 1.0);
        let f2 = figure(2, &p, &grid).unwrap();
        assert_eq!(f2.rows[90], vec![0.5, 1.0]);
        let f4 = figure(4, &p, &grid).unwrap();
        assert_eq!(f4.rows[90], vec![0.5, 1.0, 1.0]);
        assert!(figure(5, &p, &grid).is_err());
        assert!(figure(0, &p, &grid).is_err());
    }

    #[test]
    fn classification_examples() {
        let p = WellParameters::from_couplings(2.5, 0.8, CouplingPolicy::Strict).unwrap();
        let pp = BoundStateSolution::new(&p, Branch::hermitian(), 1);
        let c = classify_boundary(&pp.threshold_coefficients(&p).unwrap(), &p).unwrap();
        assert_eq!(c.left.label, BoundaryLabel::Regular);
        assert_eq!(c.right.label, BoundaryLabel::Regular);

        // beta = 0.3: the sigma = - power x^{0.2} vanishes but is not regular
        let mp = BoundStateSolution::new(&p, Branch::new(Sign::Minus, Sign::Plus), 0);
        let c = classify_boundary(&mp.threshold_coefficients(&p).unwrap(), &p).unwrap();
        assert_eq!(c.left.label, BoundaryLabel::DirichletNonRegular);
        assert!(c.left.dirichlet && !c.left.restrictive);
        assert_eq!(c.left.dominant, Sign::Minus);
        assert_eq!(c.right.label, BoundaryLabel::Regular);

        // beta = 0.75 with sigma = -: x^{-1/4} blows up
        let q = WellParameters::from_couplings(2.7, 1.25, CouplingPolicy::Strict).unwrap();
        let mm = BoundStateSolution::new(&q, Branch::new(Sign::Minus, Sign::Minus), 0);
        let c = classify_boundary(&mm.threshold_coefficients(&q).unwrap(), &q).unwrap();
        assert_eq!(c.left.label, BoundaryLabel::Singular);
        assert_eq!(c.right.label, BoundaryLabel::Singular);
    }

    #[test]
    fn superposition_dominance() {
        let p = WellParameters::from_couplings(2.7, 1.25, CouplingPolicy::Strict).unwrap();
        let spec = GeneralSolutionSpec::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.3, 0.0),
            Branch::hermitian(),
            Complex64::new(3.3, 0.0),
        )
        .unwrap();
        let c = classify_boundary(&spec.threshold_coefficients(&p).unwrap(), &p).unwrap();
        assert_eq!(c.left.dominant, Sign::Minus);
        assert_relative_eq!(c.left.dominant_exponent, -0.25);
        assert_eq!(c.left.label, BoundaryLabel::Singular);
    }

    #[test]
    fn classification_errors() {
        let p = WellParameters::from_couplings(2.5, 1.25, CouplingPolicy::Strict).unwrap();
        let zero = Complex64::new(0.0, 0.0);
        let coeffs = ThresholdCoefficients {
            branch: Branch::hermitian(),
            left_plus: zero,
            left_minus: zero,
            right_plus: Complex64::new(1.0, 0.0),
            right_minus: zero,
        };
        assert!(classify_boundary(&coeffs, &p).is_err());
        let flat = WellParameters::from_couplings(2.5, 0.5, CouplingPolicy::AllowUnsafe).unwrap();
        let coeffs = ThresholdCoefficients {
            left_plus: Complex64::new(1.0, 0.0),
            ..coeffs
        };
        assert!(matches!(
            classify_boundary(&coeffs, &flat),
            Err(Error::DegenerateExponent(_))
        ));
    }
}
