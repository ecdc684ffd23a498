//! Branch selection, validation, and reporting: the top-level solver.
//!
//! `B` is classified by a determinant test made relative to `‖B‖∞²` so that
//! rescaling a system does not change the branch. Systems below the
//! threshold go through the SVD rank analysis; everything else takes the
//! quartic path. Whatever the branch produces is re-validated against the
//! original equations and deduplicated before it reaches the report.

use std::time::{Duration, Instant};

use crate::generic::solve_reduced;
use crate::quartic::reduce_raw;
use crate::singular::{rank_of, solve_rank0, solve_rank1};
use crate::types::{
    angle_distance, normalize_angle, residual, AngleSolution, SolutionSet, ToleranceConfig,
    TrigSystem,
};

/// Which solution path handled the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Generic,
    Rank0,
    Rank1,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Generic => "generic",
            Branch::Rank0 => "rank0",
            Branch::Rank1 => "rank1",
        }
    }
}

/// Solver outcome plus the diagnostics needed to audit it.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solutions: SolutionSet,
    pub branch: Branch,
    pub det_b: f64,
    pub rank_b: u8,
    /// Largest residual over finite solutions; `0` for families and empty sets.
    pub max_residual: f64,
    pub elapsed: Duration,
}

/// Solve the system, selecting the branch by singularity analysis of `B`.
///
/// `|det B| <= eps_det·max(1, ‖B‖∞²)` routes to the SVD rank paths; a rank
/// of 2 under that test (possible in a thin band where the two relative
/// thresholds disagree) falls back to the generic path, which is
/// well-defined for any numerically invertible `B`.
pub fn solve(system: &TrigSystem, tol: &ToleranceConfig) -> SolveReport {
    let start = Instant::now();
    let det_b = system.b.det();
    let threshold = tol.eps_det * 1f64.max(system.b.norm_inf().powi(2));

    let (branch, rank_b, raw) = if det_b.abs() > threshold {
        let red = reduce_raw(system).expect("determinant above threshold");
        (Branch::Generic, 2, solve_reduced(system, &red, tol))
    } else {
        let info = rank_of(&system.b, tol);
        match info.rank {
            0 => (Branch::Rank0, 0, solve_rank0(system, tol)),
            1 => (Branch::Rank1, 1, solve_rank1(system, &info, tol)),
            _ => {
                let set = match reduce_raw(system) {
                    Some(red) => solve_reduced(system, &red, tol),
                    // Rank 2 guarantees det != 0; kept for completeness.
                    None => SolutionSet::Empty,
                };
                (Branch::Generic, 2, set)
            }
        }
    };

    let solutions = match raw {
        SolutionSet::Finite(candidates) => validate_and_dedup(candidates, system, tol),
        family => family,
    };
    let max_residual = solutions
        .finite()
        .map(|list| list.iter().fold(0.0f64, |acc, s| acc.max(s.residual)))
        .unwrap_or(0.0);

    SolveReport {
        solutions,
        branch,
        det_b,
        rank_b,
        max_residual,
        elapsed: start.elapsed(),
    }
}

/// Recompute every candidate's residual against the original system, drop
/// candidates above `eps_residual`, merge pairs closer than `eps_dedup`
/// (keeping the smaller residual), and sort by `(θ1, θ2)`.
pub fn validate_and_dedup(
    candidates: Vec<AngleSolution>,
    system: &TrigSystem,
    tol: &ToleranceConfig,
) -> SolutionSet {
    let mut kept: Vec<AngleSolution> = Vec::with_capacity(candidates.len());
    for candidate in candidates {
        let theta1 = normalize_angle(candidate.theta1);
        let theta2 = normalize_angle(candidate.theta2);
        let res = residual(system, theta1, theta2);
        if res > tol.eps_residual {
            continue;
        }
        let validated = AngleSolution {
            theta1,
            theta2,
            residual: res,
        };
        match kept.iter_mut().find(|existing| {
            angle_distance(existing.theta1, theta1).max(angle_distance(existing.theta2, theta2))
                < tol.eps_dedup
        }) {
            Some(existing) => {
                if validated.residual < existing.residual {
                    *existing = validated;
                }
            }
            None => kept.push(validated),
        }
    }
    kept.sort_by(|a, b| {
        a.theta1
            .total_cmp(&b.theta1)
            .then(a.theta2.total_cmp(&b.theta2))
    });
    if kept.is_empty() {
        SolutionSet::Empty
    } else {
        SolutionSet::Finite(kept)
    }
}
