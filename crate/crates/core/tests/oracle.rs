//! Shooting oracle against the closed-form spectrum away from the acceptance points.

use ptwell::exact::energy;
use ptwell::shoot::{find_eigenvalues, EigenvalueSearch, Shooter, StartRule};
use ptwell::{Branch, Contour, CouplingPolicy, IntegrationGrid, WellParameters};

#[test]
fn all_branches_at_non_integer_couplings() {
    let p = WellParameters::from_couplings(3.1, 1.7, CouplingPolicy::Strict).unwrap();
    let contour = Contour::new(0.15).unwrap();
    for branch in Branch::ALL {
        let exact: Vec<f64> = (0..3).map(|n| energy(&p, branch, n)).collect();
        let top = exact.iter().cloned().fold(f64::MIN, f64::max);
        let search = EigenvalueSearch::new(-1.0, top + 2.0).unwrap();
        let found = find_eigenvalues(&search, branch, &p, contour, &IntegrationGrid::default()).unwrap();
        let accepted: Vec<f64> = found.iter().filter(|e| e.converged).map(|e| e.energy).collect();
        for e in exact {
            let near = accepted.iter().map(|s| (s - e).abs()).fold(f64::INFINITY, f64::min);
            assert!(near / e.abs() < 1e-6, "{branch}: {e} vs {accepted:?}");
        }
    }
}

#[test]
fn leading_order_start_is_visibly_worse() {
    // the bare power misses the O(w^2) corrections at |w| ~ eps
    let p = WellParameters::from_couplings(1.3, 0.8, CouplingPolicy::Strict).unwrap();
    let contour = Contour::new(0.1).unwrap();
    let branch = Branch::hermitian();
    let e = energy(&p, branch, 1);
    let shooter = Shooter::new(p, branch, contour, IntegrationGrid::default()).unwrap();
    let series = shooter.mismatch(e).unwrap().norm();
    let bare = shooter.with_rule(StartRule::LeadingOrder).mismatch(e).unwrap().norm();
    assert!(series < 1e-8, "{series:e}");
    assert!(bare > 100.0 * series, "{bare:e} vs {series:e}");
}

#[test]
fn real_minima_reach_below_threshold_on_the_hermitian_line() {
    let p = WellParameters::from_couplings(2.2, 1.6, CouplingPolicy::Strict).unwrap();
    let search = EigenvalueSearch::new(1.0, 40.0).unwrap();
    let found = find_eigenvalues(
        &search,
        Branch::hermitian(),
        &p,
        Contour::hermitian(),
        &IntegrationGrid::default(),
    )
    .unwrap();
    let accepted: Vec<f64> = found.iter().filter(|e| e.converged).map(|e| e.energy).collect();
    let exact: Vec<f64> = (0..2).map(|n| energy(&p, Branch::hermitian(), n)).collect();
    assert_eq!(accepted.len(), exact.len(), "{found:?}");
    for (s, e) in accepted.iter().zip(exact) {
        assert!((s - e).abs() / e < 1e-6);
    }
}
