//! Two-link planar inverse kinematics expressed through the trigonometric
//! system solver.
//!
//! With absolute link angles θ1 and φ2, the end effector sits at
//! `l1·u(θ1) + l2·u(φ2)`, which is exactly the system form with `A = l1·I`,
//! `B = l2·I`, `C = target`. This adapter converts the solved absolute φ2
//! back to the conventional relative elbow angle.

use crate::dispatch::solve;
use crate::error::SolveError;
use crate::types::{normalize_angle, AngleSolution, Mat2, SolutionSet, ToleranceConfig, Vec2};

/// A planar arm with two positive link lengths and a reach target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLinkArm {
    pub l1: f64,
    pub l2: f64,
    pub target: Vec2,
}

impl TwoLinkArm {
    pub fn new(l1: f64, l2: f64, target: Vec2) -> Result<Self, SolveError> {
        if !(l1.is_finite() && l1 > 0.0 && l2.is_finite() && l2 > 0.0) {
            return Err(SolveError::InvalidArm(
                "link lengths must be positive and finite",
            ));
        }
        if !target.is_finite() {
            return Err(SolveError::NonFinite("target"));
        }
        Ok(Self { l1, l2, target })
    }

    /// End-effector position for joint angles `(θ1, θ2_relative)`.
    pub fn forward(&self, theta1: f64, theta2_rel: f64) -> Vec2 {
        Vec2::unit_from_angle(theta1) * self.l1
            + Vec2::unit_from_angle(theta1 + theta2_rel) * self.l2
    }
}

/// All joint configurations `(θ1, θ2_relative)` reaching the target.
///
/// Unreachable targets (outside `[|l1−l2|, l1+l2]` beyond tolerance) come
/// back [`SolutionSet::Empty`]. Boundary targets collapse the two elbow
/// branches into one doubled solution, reported once after deduplication.
pub fn ik_two_link(arm: &TwoLinkArm, tol: &ToleranceConfig) -> SolutionSet {
    let system = crate::types::TrigSystem::new(
        Mat2::diag(arm.l1, arm.l1),
        Mat2::diag(arm.l2, arm.l2),
        arm.target,
    )
    .expect("arm construction validated all scalars");
    let report = solve(&system, tol);
    match report.solutions {
        SolutionSet::Finite(list) => {
            let mut mapped: Vec<AngleSolution> = list
                .into_iter()
                .map(|s| AngleSolution {
                    theta1: s.theta1,
                    theta2: normalize_angle(s.theta2 - s.theta1),
                    residual: s.residual,
                })
                .collect();
            mapped.sort_by(|a, b| {
                a.theta1
                    .total_cmp(&b.theta1)
                    .then(a.theta2.total_cmp(&b.theta2))
            });
            SolutionSet::Finite(mapped)
        }
        other => other,
    }
}
