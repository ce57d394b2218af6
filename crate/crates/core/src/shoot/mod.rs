//! Shooting/matching eigenvalue oracle.
//!
//! The equation `psi'' = (V - E) psi` is integrated along `x(t) = t - i eps`
//! from `t = delta` and from `t = pi/2 - delta` towards `t_match`. The start
//! data select one exponent at each end: `1/2 + sigma beta` on the left and
//! `1/2 + tau alpha` on the right. The normalized Wronskian of the two shots
//! vanishes exactly at the eigenvalues of the branch.
//!
//! Start data come from the Frobenius series at each pole by default. The
//! bare leading power `w^rho` is also available, but at `|w| ~ eps` its
//! truncation error is far above the target accuracy.
//!
//! If the selected exponent is `1/2 - m` for a positive integer `m`, the
//! log-free solution with that exponent exists only where the logarithmic
//! obstruction vanishes. That side then shoots the companion solution
//! `1/2 + m` and multiplies the mismatch by the normalized obstruction.

mod frobenius;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::DEGENERATE_EXPONENT;
use crate::model::{potential_value, Branch, Contour, Sign, WellParameters};

pub use frobenius::{
    log_obstruction, potential_series, resonance_index, FrobeniusSeries, FROBENIUS_TERMS, RESONANCE_TOLERANCE,
};

/// Scan minima of `|W|` above this are not refined.
pub const CANDIDATE_THRESHOLD: f64 = 0.1;

/// Refined minima with `|W|` below this are accepted as eigenvalues.
pub const ACCEPT_THRESHOLD: f64 = 1e-6;

/// Steps between overflow checks.
pub const RESCALE_INTERVAL: usize = 100;

const RESCALE_HIGH: f64 = 1e100;
const RESCALE_LOW: f64 = 1e-100;

/// `|sigma beta|` or `|tau alpha|` below which the Hermitian contour is flagged.
pub const ILL_CONDITIONED_EXPONENT: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// How the start values at `t = delta` and `t = pi/2 - delta` are built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StartRule {
    /// Frobenius series of the selected exponent (48 terms in `w^2`).
    #[default]
    Frobenius,
    /// The bare power `w^rho`.
    LeadingOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationGrid {
    /// Distance in `t` of the start points from `0` and `pi/2`.
    pub delta: f64,
    /// RK4 steps on each side.
    pub steps: usize,
    pub t_match: f64,
}

impl Default for IntegrationGrid {
    fn default() -> Self {
        IntegrationGrid {
            delta: 1e-4,
            steps: 20_000,
            t_match: FRAC_PI_4,
        }
    }
}

impl IntegrationGrid {
    pub fn validate(&self) -> Result<()> {
        let ok = self.delta.is_finite()
            && self.t_match.is_finite()
            && self.steps > 0
            && 0.0 < self.delta
            && self.delta < self.t_match
            && self.t_match < FRAC_PI_2 - self.delta;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "integration grid needs 0 < delta < t_match < pi/2 - delta and steps > 0, got {self:?}"
            )))
        }
    }

    /// Start of the integration in `t` for `side`.
    pub fn start(&self, side: Side) -> f64 {
        match side {
            Side::Left => self.delta,
            Side::Right => FRAC_PI_2 - self.delta,
        }
    }
}

/// State at `t_match`. The true values are `psi * 2^scale_exponent` and
/// `dpsi * 2^scale_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotResult {
    pub psi: Complex64,
    /// `d psi / dt`.
    pub dpsi: Complex64,
    pub side: Side,
    pub scale_exponent: i32,
}

impl ShotResult {
    pub fn unscaled(&self) -> (Complex64, Complex64) {
        let s = 2f64.powi(self.scale_exponent);
        (self.psi * s, self.dpsi * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueSearch {
    pub e_min: f64,
    pub e_max: f64,
    pub scan_step: f64,
    /// Absolute tolerance on `E` for the golden-section refinement.
    pub tol: f64,
    pub max_refine: usize,
}

impl EigenvalueSearch {
    pub const DEFAULT_SCAN_STEP: f64 = 0.05;
    pub const DEFAULT_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_REFINE: usize = 200;

    pub fn new(e_min: f64, e_max: f64) -> Result<Self> {
        let s = EigenvalueSearch {
            e_min,
            e_max,
            scan_step: Self::DEFAULT_SCAN_STEP,
            tol: Self::DEFAULT_TOL,
            max_refine: Self::DEFAULT_MAX_REFINE,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.e_min.is_finite()
            && self.e_max.is_finite()
            && self.e_min < self.e_max
            && self.scan_step > 0.0
            && self.tol > 0.0
            && self.max_refine > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "eigenvalue search needs e_min < e_max, scan_step > 0, tol > 0, max_refine > 0, got {self:?}"
            )))
        }
    }

    /// Scan energies, `e_min` to `e_max` inclusive.
    pub fn scan_points(&self) -> Vec<f64> {
        let count = ((self.e_max - self.e_min) / self.scan_step).floor() as usize;
        let mut out: Vec<f64> = (0..=count).map(|i| self.e_min + i as f64 * self.scan_step).collect();
        if self.e_max - out[count] > 1e-9 * self.scan_step {
            out.push(self.e_max);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub energy: f64,
    /// `|W(E)|` at the refined energy.
    pub residual: f64,
    /// `residual < 1e-6`.
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ShootWarning {
    /// Hermitian contour with nearly coalescing exponents at one end.
    IllConditioned { side: Side, exponent_gap: f64 },
}

impl fmt::Display for ShootWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShootWarning::IllConditioned { side, exponent_gap } => write!(
                f,
                "eps = 0 with exponent gap {exponent_gap} at the {side} end: matching is badly ill-conditioned"
            ),
        }
    }
}

/// Start values at one end, `d psi / dt` included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StartData {
    pub psi: Complex64,
    pub dpsi: Complex64,
    /// Set at a resonant exponent: the values above belong to the companion
    /// solution and the mismatch is weighted by this obstruction.
    pub obstruction: Option<f64>,
}

/// `psi'' = (V(x) - E) psi`.
pub fn ode_rhs(params: &WellParameters, energy: f64, x: Complex64, psi: Complex64) -> Result<Complex64> {
    Ok((potential_value(params, x)? - energy) * psi)
}

/// Local coordinate at the start point of `side` and the `(g_near, g_far)`
/// strengths seen from there.
fn local_frame(
    side: Side,
    params: &WellParameters,
    contour: Contour,
    grid: &IntegrationGrid,
) -> (Complex64, f64, f64, f64) {
    let eps = contour.epsilon();
    match side {
        // w = x(delta)
        Side::Left => (
            Complex64::new(grid.delta, -eps),
            params.left_strength(),
            params.right_strength(),
            params.beta(),
        ),
        // z = pi/2 - x(pi/2 - delta)
        Side::Right => (
            Complex64::new(grid.delta, eps),
            params.right_strength(),
            params.left_strength(),
            params.alpha(),
        ),
    }
}

fn chain_sign(side: Side) -> f64 {
    match side {
        Side::Left => 1.0,
        Side::Right => -1.0,
    }
}

fn check_gap(gap: f64, side: Side) -> Result<()> {
    if gap.abs() < DEGENERATE_EXPONENT {
        Err(Error::DegenerateExponent(format!(
            "exponent gap {gap} at the {side} end; both threshold powers coincide"
        )))
    } else {
        Ok(())
    }
}

/// Leading-order start values `psi = w^{1/2 + s gap}` with the chain-rule
/// `t`-derivative.
pub fn initial_values(
    sign: Sign,
    side: Side,
    params: &WellParameters,
    contour: Contour,
    grid: &IntegrationGrid,
) -> Result<(Complex64, Complex64)> {
    grid.validate()?;
    let (w, _, _, gap) = local_frame(side, params, contour, grid);
    check_gap(gap, side)?;
    let rho = 0.5 + sign.value() * gap;
    let psi = w.powf(rho);
    Ok((psi, chain_sign(side) * rho * psi / w))
}

/// Start values for energy `energy` under `rule`.
pub fn start_data(
    sign: Sign,
    side: Side,
    params: &WellParameters,
    energy: f64,
    contour: Contour,
    grid: &IntegrationGrid,
    rule: StartRule,
) -> Result<StartData> {
    if rule == StartRule::LeadingOrder {
        let (psi, dpsi) = initial_values(sign, side, params, contour, grid)?;
        return Ok(StartData {
            psi,
            dpsi,
            obstruction: None,
        });
    }
    grid.validate()?;
    let (w, g_near, g_far, gap) = local_frame(side, params, contour, grid);
    check_gap(gap, side)?;
    let signed_nu = sign.value() * gap;
    let q = potential_series(g_near, g_far, energy, FROBENIUS_TERMS);
    let (series, obstruction) = match resonance_index(signed_nu) {
        Some(m) if m < FROBENIUS_TERMS => (
            FrobeniusSeries::new(&q, -signed_nu),
            Some(log_obstruction(&q, m, energy)),
        ),
        _ => (FrobeniusSeries::new(&q, signed_nu), None),
    };
    let (psi, dpsi_dw) = series.evaluate(w);
    Ok(StartData {
        psi,
        dpsi: chain_sign(side) * dpsi_dw,
        obstruction,
    })
}

/// Potential sampled at the RK4 nodes and half-steps of one side.
#[derive(Debug, Clone)]
struct SideTable {
    side: Side,
    start: f64,
    h: f64,
    /// `V` at `start + j h / 2`, `j = 0..=2 steps`.
    v: Vec<Complex64>,
}

impl SideTable {
    fn new(side: Side, params: &WellParameters, contour: Contour, grid: &IntegrationGrid) -> Result<Self> {
        let start = grid.start(side);
        let h = (grid.t_match - start) / grid.steps as f64;
        let v = (0..=2 * grid.steps)
            .map(|j| potential_value(params, contour.point(start + 0.5 * h * j as f64)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SideTable { side, start, h, v })
    }

    fn integrate(&self, energy: f64, psi0: Complex64, dpsi0: Complex64) -> Result<ShotResult> {
        let steps = (self.v.len() - 1) / 2;
        let h = self.h;
        let (mut psi, mut phi) = (psi0, dpsi0);
        let mut scale_exponent = 0i32;
        for i in 0..steps {
            let v0 = self.v[2 * i] - energy;
            let vh = self.v[2 * i + 1] - energy;
            let v1 = self.v[2 * i + 2] - energy;
            let (k1p, k1f) = (phi, v0 * psi);
            let (k2p, k2f) = (phi + 0.5 * h * k1f, vh * (psi + 0.5 * h * k1p));
            let (k3p, k3f) = (phi + 0.5 * h * k2f, vh * (psi + 0.5 * h * k2p));
            let (k4p, k4f) = (phi + h * k3f, v1 * (psi + h * k3p));
            psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            phi += h / 6.0 * (k1f + 2.0 * k2f + 2.0 * k3f + k4f);
            if (i + 1) % RESCALE_INTERVAL == 0 || i + 1 == steps {
                let size = psi.norm().max(phi.norm());
                if !size.is_finite() {
                    return Err(Error::NonFinite(self.start + h * (i + 1) as f64));
                }
                if size > RESCALE_HIGH || (size < RESCALE_LOW && size > 0.0) {
                    let e = size.log2().round() as i32;
                    let f = 2f64.powi(-e);
                    psi *= f;
                    phi *= f;
                    scale_exponent += e;
                }
            }
        }
        Ok(ShotResult {
            psi,
            dpsi: phi,
            side: self.side,
            scale_exponent,
        })
    }
}

/// RK4 from the start point of `side` to `t_match`, starting from `init`
/// (`psi`, `d psi / dt`).
pub fn integrate(
    params: &WellParameters,
    energy: f64,
    contour: Contour,
    grid: &IntegrationGrid,
    side: Side,
    init: (Complex64, Complex64),
) -> Result<ShotResult> {
    grid.validate()?;
    SideTable::new(side, params, contour, grid)?.integrate(energy, init.0, init.1)
}

/// Normalized Wronskian `(psi_L psi'_R - psi'_L psi_R) / max(|psi_L psi'_R|, |psi'_L psi_R|)`.
pub fn normalized_wronskian(left: &ShotResult, right: &ShotResult) -> Complex64 {
    let a = left.psi * right.dpsi;
    let b = left.dpsi * right.psi;
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        (a - b) / scale
    }
}

/// Shooting setup for one branch with the potential tables built once.
#[derive(Debug, Clone)]
pub struct Shooter {
    params: WellParameters,
    branch: Branch,
    contour: Contour,
    grid: IntegrationGrid,
    rule: StartRule,
    left: SideTable,
    right: SideTable,
}

impl Shooter {
    pub fn new(params: WellParameters, branch: Branch, contour: Contour, grid: IntegrationGrid) -> Result<Self> {
        grid.validate()?;
        check_gap(params.beta(), Side::Left)?;
        check_gap(params.alpha(), Side::Right)?;
        Ok(Shooter {
            left: SideTable::new(Side::Left, &params, contour, &grid)?,
            right: SideTable::new(Side::Right, &params, contour, &grid)?,
            params,
            branch,
            contour,
            grid,
            rule: StartRule::default(),
        })
    }

    pub fn with_rule(mut self, rule: StartRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn start(&self, side: Side, energy: f64) -> Result<StartData> {
        let sign = match side {
            Side::Left => self.branch.sigma,
            Side::Right => self.branch.tau,
        };
        start_data(sign, side, &self.params, energy, self.contour, &self.grid, self.rule)
    }

    pub fn shoot(&self, side: Side, energy: f64) -> Result<ShotResult> {
        let s = self.start(side, energy)?;
        self.table(side).integrate(energy, s.psi, s.dpsi)
    }

    fn table(&self, side: Side) -> &SideTable {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    pub fn mismatch(&self, energy: f64) -> Result<Complex64> {
        let ls = self.start(Side::Left, energy)?;
        let rs = self.start(Side::Right, energy)?;
        let left = self.left.integrate(energy, ls.psi, ls.dpsi)?;
        let right = self.right.integrate(energy, rs.psi, rs.dpsi)?;
        let weight = ls.obstruction.unwrap_or(1.0) * rs.obstruction.unwrap_or(1.0);
        Ok(weight * normalized_wronskian(&left, &right))
    }

    fn abs_mismatch(&self, energy: f64) -> Result<f64> {
        self.mismatch(energy).map(|w| w.norm())
    }

    pub fn warnings(&self) -> Vec<ShootWarning> {
        let mut out = Vec::new();
        if self.contour.epsilon() == 0.0 {
            for (side, gap) in [(Side::Left, self.params.beta()), (Side::Right, self.params.alpha())] {
                if gap.abs() < ILL_CONDITIONED_EXPONENT {
                    out.push(ShootWarning::IllConditioned {
                        side,
                        exponent_gap: gap,
                    });
                }
            }
        }
        out
    }

    /// Golden-section minimization of `|W|` on `[lo, hi]`.
    fn refine(&self, mut lo: f64, mut hi: f64, search: &EigenvalueSearch) -> Result<Eigenvalue> {
        let ratio = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = hi - ratio * (hi - lo);
        let mut x2 = lo + ratio * (hi - lo);
        let mut f1 = self.abs_mismatch(x1)?;
        let mut f2 = self.abs_mismatch(x2)?;
        for _ in 0..search.max_refine {
            if hi - lo <= search.tol {
                break;
            }
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - ratio * (hi - lo);
                f1 = self.abs_mismatch(x1)?;
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + ratio * (hi - lo);
                f2 = self.abs_mismatch(x2)?;
            }
        }
        let (energy, residual) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
        Ok(Eigenvalue {
            energy,
            residual,
            converged: residual < ACCEPT_THRESHOLD,
        })
    }

    /// Scan `|W|`, refine every local minimum below 0.1 and return all refined
    /// candidates in ascending order; `converged` marks the eigenvalues.
    pub fn find_eigenvalues(&self, search: &EigenvalueSearch) -> Result<Vec<Eigenvalue>> {
        search.validate()?;
        let energies = search.scan_points();
        let values = energies
            .par_iter()
            .map(|&e| self.abs_mismatch(e))
            .collect::<Result<Vec<f64>>>()?;
        let last = values.len() - 1;
        let brackets: Vec<(f64, f64)> = (0..=last)
            .filter(|&i| {
                let f = values[i];
                f < CANDIDATE_THRESHOLD && (i == 0 || f <= values[i - 1]) && (i == last || f <= values[i + 1])
            })
            .map(|i| (energies[i.saturating_sub(1)], energies[(i + 1).min(last)]))
            .collect();
        let refined = brackets
            .par_iter()
            .map(|&(lo, hi)| self.refine(lo, hi, search))
            .collect::<Result<Vec<Eigenvalue>>>()?;
        Ok(dedup(refined, search.scan_step))
    }
}

/// Merge candidates closer than half a scan step, keeping the smaller residual.
fn dedup(mut found: Vec<Eigenvalue>, scan_step: f64) -> Vec<Eigenvalue> {
    found.sort_by(|a, b| a.energy.total_cmp(&b.energy));
    let mut out: Vec<Eigenvalue> = Vec::with_capacity(found.len());
    for ev in found {
        match out.last_mut() {
            Some(prev) if ev.energy - prev.energy < 0.5 * scan_step => {
                if ev.residual < prev.residual {
                    *prev = ev;
                }
            }
            _ => out.push(ev),
        }
    }
    out
}

pub fn mismatch(
    energy: f64,
    branch: Branch,
    params: &WellParameters,
    contour: Contour,
    grid: &IntegrationGrid,
) -> Result<Complex64> {
    Shooter::new(*params, branch, contour, *grid)?.mismatch(energy)
}

pub fn find_eigenvalues(
    search: &EigenvalueSearch,
    branch: Branch,
    params: &WellParameters,
    contour: Contour,
    grid: &IntegrationGrid,
) -> Result<Vec<Eigenvalue>> {
    Shooter::new(*params, branch, contour, *grid)?.find_eigenvalues(search)
}

/// Largest scaled residual `|psi'' + (E - V) psi| / max(|psi''|, |(E - V) psi|)`
/// over the interior of `steps + 1` equally spaced samples on
/// `[delta, pi/2 - delta]`, with `psi''` from the seven-point, sixth-order
/// central stencil.
pub fn residual_norm<F>(
    psi: F,
    params: &WellParameters,
    energy: f64,
    contour: Contour,
    grid: &IntegrationGrid,
) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const STENCIL: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];
    grid.validate()?;
    if grid.steps < 6 {
        return Err(Error::InvalidParameter(
            "residual_norm needs at least 6 intervals".into(),
        ));
    }
    let t0 = grid.delta;
    let h = (FRAC_PI_2 - 2.0 * grid.delta) / grid.steps as f64;
    let xs: Vec<Complex64> = (0..=grid.steps).map(|j| contour.point(t0 + h * j as f64)).collect();
    let values = xs.iter().map(|&x| psi(x)).collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for j in 3..=grid.steps - 3 {
        let d2 = values[j - 3..=j + 3]
            .iter()
            .zip(STENCIL)
            .map(|(v, w)| v * w)
            .sum::<Complex64>()
            / (180.0 * h * h);
        let rest = (energy - potential_value(params, xs[j])?) * values[j];
        let scale = d2.norm().max(rest.norm()).max(1e-30);
        worst = worst.max((d2 + rest).norm() / scale);
    }
    Ok(worst)
}
