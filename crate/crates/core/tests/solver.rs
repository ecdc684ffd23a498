//! Cross-module integration tests: the full dispatch pipeline on the
//! worked cases, tolerance plumbing, and solver/oracle agreement through
//! the public API.

use std::f64::consts::FRAC_PI_4;

use trigsolve::oracle::{oracle_match, oracle_solve};
use trigsolve::{
    angle_distance, solve, Branch, Mat2, SolutionSet, ToleranceConfig, TrigSystem, Vec2,
};

fn system(a: Mat2, b: Mat2, c: Vec2) -> TrigSystem {
    TrigSystem::new(a, b, c).unwrap()
}

fn generic_fixture() -> TrigSystem {
    system(
        Mat2::new(1.0, 0.5, 0.5, 1.0),
        Mat2::new(0.8, 0.3, 0.3, 0.8),
        Vec2::new(1.2, 1.0),
    )
}

fn rank0_fixture() -> TrigSystem {
    system(
        Mat2::IDENTITY,
        Mat2::ZERO,
        Vec2::new(FRAC_PI_4.cos(), FRAC_PI_4.sin()),
    )
}

fn rank1_fixture() -> TrigSystem {
    system(
        Mat2::new(0.6, 0.2, 0.2, 0.6),
        Mat2::new(1.0, 0.5, 2.0, 1.0),
        Vec2::new(0.8, 1.0),
    )
}

#[test]
fn worked_cases_end_to_end() {
    let tol = ToleranceConfig::default();

    let report = solve(&generic_fixture(), &tol);
    assert_eq!(report.branch, Branch::Generic);
    let list = report.solutions.finite().expect("finite");
    assert_eq!(list.len(), 2);
    for (t1, t2) in [(1.487, -0.404), (-0.313, 1.439)] {
        assert!(list
            .iter()
            .any(|s| angle_distance(s.theta1, t1) <= 2e-3 && angle_distance(s.theta2, t2) <= 2e-3));
    }

    let report = solve(&rank0_fixture(), &tol);
    assert_eq!(report.branch, Branch::Rank0);
    match &report.solutions {
        SolutionSet::Theta2Family { theta1 } => {
            assert!((theta1[0] - FRAC_PI_4).abs() < 1e-12);
        }
        other => panic!("expected θ2 family, got {other:?}"),
    }

    let report = solve(&rank1_fixture(), &tol);
    assert_eq!(report.branch, Branch::Rank1);
    assert_eq!(report.solutions.finite().expect("finite").len(), 4);
    assert!(report.max_residual <= 1e-12);
}

#[test]
fn tolerance_overrides_steer_dispatch() {
    // det(B) = 1e-8 sits above the default threshold but below a loosened one.
    let sys = system(
        Mat2::IDENTITY,
        Mat2::diag(1.0, 1e-8),
        Vec2::new(1.0, 0.5e-8),
    );
    let report = solve(&sys, &ToleranceConfig::default());
    assert_eq!(report.branch, Branch::Generic);

    let loose = ToleranceConfig {
        eps_det: 1e-6,
        eps_rank: 1e-6,
        ..ToleranceConfig::default()
    };
    let report = solve(&sys, &loose);
    assert_eq!(report.branch, Branch::Rank1);
    assert_eq!(report.rank_b, 1);
}

#[test]
fn oracle_confirms_worked_cases() {
    let tol = ToleranceConfig::default();
    for sys in [generic_fixture(), rank1_fixture()] {
        let report = solve(&sys, &tol);
        let outcome = oracle_solve(&sys, 512, 1e-3);
        let verdict = oracle_match(&report, &outcome.points, 1e-3);
        assert!(
            verdict.matched,
            "solver {} vs oracle {}",
            verdict.solver_count, verdict.oracle_count
        );
    }
    let outcome = oracle_solve(&rank0_fixture(), 512, 1e-3);
    assert!(outcome.family_suspected);
}
