//! End-to-end pipeline for systems with invertible `B`: quartic roots for
//! θ1, back-substitution and four-quadrant arctangent for θ2.

use std::f64::consts::PI;

use crate::dispatch::validate_and_dedup;
use crate::error::SolveError;
use crate::quartic::{quartic_coefficients, real_roots, reduce, ReducedSystem};
use crate::types::{
    normalize_angle, residual, AngleSolution, SolutionSet, ToleranceConfig, TrigSystem,
};

/// Solve a system whose `B` passes the dispatch determinant threshold.
///
/// Each quartic root `t` yields `θ1 = 2·arctan t` (plus θ1 = π when the
/// root-at-infinity flag is set); θ2 follows from the back-substituted
/// vector, which must land on the unit circle within `10·eps_residual`
/// before `atan2` is trusted. An identically-zero quartic means every θ1
/// admits a θ2: a [`SolutionSet::Theta1Family`].
pub fn solve_generic(
    system: &TrigSystem,
    tol: &ToleranceConfig,
) -> Result<SolutionSet, SolveError> {
    let red = reduce(system, tol)?;
    Ok(solve_reduced(system, &red, tol))
}

pub(crate) fn solve_reduced(
    system: &TrigSystem,
    red: &ReducedSystem,
    tol: &ToleranceConfig,
) -> SolutionSet {
    let poly = quartic_coefficients(red, tol);
    if poly.identically_zero {
        return SolutionSet::Theta1Family;
    }
    let (roots, at_infinity) = real_roots(&poly, tol);

    let mut theta1_candidates: Vec<f64> = roots.iter().map(|t| 2.0 * t.atan()).collect();
    if at_infinity {
        theta1_candidates.push(PI);
    }

    // The unit-circle defect is evaluated through M and d, so its noise
    // floor scales with their magnitudes squared; an absolute gate would
    // reject true roots of near-singular systems. Candidates that sneak
    // through are still re-validated against the original equations.
    let circle_gate =
        10.0 * tol.eps_residual * 1f64.max((red.m.norm_inf() + red.d.norm_inf()).powi(2));
    let mut candidates: Vec<AngleSolution> = Vec::with_capacity(theta1_candidates.len());
    for theta1 in theta1_candidates {
        let w = red.back_substitute(theta1);
        // Guard against root-polishing drift before recovering θ2.
        if (w.dot(w) - 1.0).abs() > circle_gate {
            continue;
        }
        let theta1 = normalize_angle(theta1);
        let theta2 = normalize_angle(w.y.atan2(w.x));
        candidates.push(AngleSolution {
            theta1,
            theta2,
            residual: residual(system, theta1, theta2),
        });
    }
    validate_and_dedup(candidates, system, tol)
}
