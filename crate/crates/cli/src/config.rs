use anyhow::anyhow;
use ptwell::shoot::EigenvalueSearch;
use ptwell::{Branch, Contour, CouplingPolicy, IntegrationGrid, TableFormat, WellParameters};
use serde::Serialize;

use crate::args::{CommandKind, RunArgs};
use crate::Failure;

pub const DEFAULT_A: f64 = 2.5;
pub const DEFAULT_B: f64 = 1.25;
pub const DEFAULT_E_MIN: f64 = -1.0;
/// Added above the largest expected level when `--e-max` is not given.
pub const E_MAX_MARGIN: f64 = 5.0;
pub const RESIDUAL_INTERVALS: usize = 1000;

/// Everything a run depends on; also written as `meta` into JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub params: WellParameters,
    pub branches: Vec<Branch>,
    pub epsilon: f64,
    pub n_max: usize,
    pub n: usize,
    pub grid: IntegrationGrid,
    pub e_min: f64,
    pub e_max: Option<f64>,
    pub scan_step: f64,
    pub figure: Option<u8>,
    pub points: usize,
    pub output_path: Option<String>,
    pub format: TableFormat,
    pub unsafe_couplings: bool,
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Config(anyhow!(msg.into()))
}

impl RunConfig {
    pub fn from_args(command: CommandKind, args: &RunArgs) -> Result<Self, Failure> {
        let policy = if args.unsafe_couplings {
            CouplingPolicy::AllowUnsafe
        } else {
            CouplingPolicy::Strict
        };
        let a = args.alpha.map_or(args.a.unwrap_or(DEFAULT_A), |al| al + 0.5);
        let b = args.beta.map_or(args.b.unwrap_or(DEFAULT_B), |be| be + 0.5);
        let params = WellParameters::from_couplings(a, b, policy).map_err(Failure::from_core)?;

        let branches = match (args.sigma, args.tau) {
            (Some(s), Some(t)) => vec![Branch::new(s, t)],
            (None, None) if command == CommandKind::Wavefunction => {
                if args.all_branches {
                    return Err(invalid("wavefunction takes a single branch (--sigma and --tau)"));
                }
                vec![Branch::hermitian()]
            }
            (None, None) => Branch::ALL.to_vec(),
            _ => return Err(invalid("--sigma and --tau must be given together")),
        };

        let contour = Contour::new(args.epsilon).map_err(Failure::from_core)?;
        let steps = args.steps.unwrap_or(if command == CommandKind::Residual {
            RESIDUAL_INTERVALS
        } else {
            IntegrationGrid::default().steps
        });
        let grid = IntegrationGrid {
            delta: args.delta,
            steps,
            ..IntegrationGrid::default()
        };
        grid.validate().map_err(Failure::from_core)?;
        if command == CommandKind::Residual && steps < 6 {
            return Err(invalid("residual needs --steps >= 6"));
        }
        if command == CommandKind::Wavefunction && args.points < 2 {
            return Err(invalid("--points must be at least 2"));
        }

        let config = RunConfig {
            command,
            params,
            branches,
            epsilon: contour.epsilon(),
            n_max: args.n_max,
            n: args.n,
            grid,
            e_min: args.e_min.unwrap_or(DEFAULT_E_MIN),
            e_max: args.e_max,
            scan_step: args.scan_step.unwrap_or(EigenvalueSearch::DEFAULT_SCAN_STEP),
            figure: args.figure,
            points: args.points,
            output_path: args.out.as_ref().map(|p| p.display().to_string()),
            format: args.format.into(),
            unsafe_couplings: args.unsafe_couplings,
        };
        if command == CommandKind::Verify {
            for branch in &config.branches {
                config.search(*branch)?;
            }
        }
        Ok(config)
    }

    pub fn contour(&self) -> Contour {
        Contour::new(self.epsilon).expect("validated")
    }

    /// Search window for `branch`: `e_max` defaults to the largest expected
    /// level plus a margin.
    pub fn search(&self, branch: Branch) -> Result<EigenvalueSearch, Failure> {
        let e_max = self.e_max.unwrap_or_else(|| {
            (0..=self.n_max)
                .map(|n| ptwell::exact::energy(&self.params, branch, n))
                .fold(f64::NEG_INFINITY, f64::max)
                + E_MAX_MARGIN
        });
        let search = EigenvalueSearch {
            e_min: self.e_min,
            e_max,
            scan_step: self.scan_step,
            ..EigenvalueSearch::new(0.0, 1.0).expect("valid")
        };
        search.validate().map_err(Failure::from_core)?;
        Ok(search)
    }
}
