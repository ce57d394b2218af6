use std::f64::consts::FRAC_PI_2;

use ptwell::exact::{bound_state_psi, energy, termination_k, BoundStateSolution};
use ptwell::paradox::{default_b_grid, figure};
use ptwell::shoot::{residual_norm, Shooter};
use ptwell::{Column, Table};

use crate::config::RunConfig;
use crate::Failure;

/// Relative error above which `verify` reports a mismatch.
pub const VERIFY_TOLERANCE: f64 = 1e-5;

fn table(config: &RunConfig) -> Table {
    Table::new().with_meta(serde_json::to_value(config).expect("config serializes"))
}

fn finish(t: Table, cols: Vec<(&str, Column)>) -> Table {
    cols.into_iter()
        .try_fold(t, |t, (name, c)| t.with_column(name, c))
        .expect("columns are rectangular")
}

/// `sigma,tau,n,k,E` for each branch and `n = 0..=n_max`.
pub fn run_spectrum(config: &RunConfig) -> Result<Table, Failure> {
    let (mut sigma, mut tau, mut ns, mut k, mut e) = (vec![], vec![], vec![], vec![], vec![]);
    for &branch in &config.branches {
        for n in 0..=config.n_max {
            sigma.push(branch.sigma.as_i64());
            tau.push(branch.tau.as_i64());
            ns.push(n as i64);
            k.push(termination_k(&config.params, branch, n));
            e.push(energy(&config.params, branch, n));
        }
    }
    Ok(finish(
        table(config),
        vec![
            ("sigma", Column::Int(sigma)),
            ("tau", Column::Int(tau)),
            ("n", Column::Int(ns)),
            ("k", Column::Float(k)),
            ("E", Column::Float(e)),
        ],
    ))
}

/// `t,re_x,im_x,re_psi,im_psi` on `points` samples of `[delta, pi/2 - delta]`.
pub fn run_wavefunction(config: &RunConfig) -> Result<Table, Failure> {
    let branch = config.branches[0];
    let sol = BoundStateSolution::new(&config.params, branch, config.n);
    let contour = config.contour();
    let (lo, hi) = (config.grid.delta, FRAC_PI_2 - config.grid.delta);
    let last = (config.points - 1) as f64;
    let mut cols: [Vec<f64>; 5] = Default::default();
    for i in 0..config.points {
        let t = lo + (hi - lo) * i as f64 / last;
        let x = contour.point(t);
        let psi = bound_state_psi(&sol, &config.params, x).map_err(Failure::from_core)?;
        for (col, v) in cols.iter_mut().zip([t, x.re, x.im, psi.re, psi.im]) {
            col.push(v);
        }
    }
    let [t, re_x, im_x, re_psi, im_psi] = cols;
    Ok(finish(
        table(config),
        vec![
            ("t", Column::Float(t)),
            ("re_x", Column::Float(re_x)),
            ("im_x", Column::Float(im_x)),
            ("re_psi", Column::Float(re_psi)),
            ("im_psi", Column::Float(im_psi)),
        ],
    ))
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub table: Table,
    pub all_passed: bool,
}

struct VerifyRow {
    sigma: i64,
    tau: i64,
    n: i64,
    exact: f64,
    shoot: f64,
    abs_err: f64,
    rel_err: f64,
    residual: f64,
}

/// Closed-form levels against the nearest accepted shooting eigenvalue.
pub fn run_verify(config: &RunConfig) -> Result<VerifyReport, Failure> {
    let contour = config.contour();
    let mut rows = Vec::new();
    let mut all_passed = true;
    for &branch in &config.branches {
        let shooter = Shooter::new(config.params, branch, contour, config.grid).map_err(Failure::from_core)?;
        for w in shooter.warnings() {
            eprintln!("warning: {branch}: {w}");
        }
        let search = config.search(branch)?;
        let found = shooter.find_eigenvalues(&search).map_err(Failure::from_core)?;
        let accepted: Vec<_> = found.iter().filter(|e| e.converged).collect();
        for n in 0..=config.n_max {
            let exact = energy(&config.params, branch, n);
            let nearest = accepted
                .iter()
                .min_by(|a, b| (a.energy - exact).abs().total_cmp(&(b.energy - exact).abs()));
            let (shoot, residual) = nearest.map_or((f64::NAN, f64::NAN), |e| (e.energy, e.residual));
            let abs_err = (shoot - exact).abs();
            let rel_err = if exact == 0.0 { abs_err } else { abs_err / exact.abs() };
            if rel_err.is_nan() || rel_err >= VERIFY_TOLERANCE {
                all_passed = false;
            }
            rows.push(VerifyRow {
                sigma: branch.sigma.as_i64(),
                tau: branch.tau.as_i64(),
                n: n as i64,
                exact,
                shoot,
                abs_err,
                rel_err,
                residual,
            });
        }
    }
    let ints = |f: fn(&VerifyRow) -> i64| Column::Int(rows.iter().map(f).collect());
    let reals = |f: fn(&VerifyRow) -> f64| Column::Float(rows.iter().map(f).collect());
    let t = finish(
        table(config),
        vec![
            ("sigma", ints(|r| r.sigma)),
            ("tau", ints(|r| r.tau)),
            ("n", ints(|r| r.n)),
            ("E_exact", reals(|r| r.exact)),
            ("E_shoot", reals(|r| r.shoot)),
            ("abs_err", reals(|r| r.abs_err)),
            ("rel_err", reals(|r| r.rel_err)),
            ("residual", reals(|r| r.residual)),
        ],
    );
    Ok(VerifyReport { table: t, all_passed })
}

/// The requested figure, or all four, as `(figure id, table)`.
pub fn run_figures(config: &RunConfig) -> Result<Vec<(u8, Table)>, Failure> {
    let ids: Vec<u8> = config.figure.map_or_else(|| vec![1, 2, 3, 4], |id| vec![id]);
    let grid = default_b_grid();
    ids.into_iter()
        .map(|id| {
            let data = figure(id, &config.params, &grid).map_err(Failure::from_core)?;
            let cols = data
                .column_names
                .iter()
                .map(|name| (name.as_str(), Column::Float(data.column(name).expect("listed"))))
                .collect();
            Ok((id, finish(table(config), cols)))
        })
        .collect()
}

/// `sigma,tau,n,E,residual`: scaled ODE residual of each closed-form state.
pub fn run_residual(config: &RunConfig) -> Result<Table, Failure> {
    let contour = config.contour();
    let (mut sigma, mut tau, mut ns, mut es, mut res) = (vec![], vec![], vec![], vec![], vec![]);
    for &branch in &config.branches {
        for n in 0..=config.n_max {
            let sol = BoundStateSolution::new(&config.params, branch, n);
            let r = residual_norm(
                |x| bound_state_psi(&sol, &config.params, x),
                &config.params,
                sol.energy,
                contour,
                &config.grid,
            )
            .map_err(Failure::from_core)?;
            sigma.push(branch.sigma.as_i64());
            tau.push(branch.tau.as_i64());
            ns.push(n as i64);
            es.push(sol.energy);
            res.push(r);
        }
    }
    Ok(finish(
        table(config),
        vec![
            ("sigma", Column::Int(sigma)),
            ("tau", Column::Int(tau)),
            ("n", Column::Int(ns)),
            ("E", Column::Float(es)),
            ("residual", Column::Float(res)),
        ],
    ))
}
