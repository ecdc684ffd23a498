//! Complete solver for coupled trigonometric systems of the form
//!
//! ```text
//! A·[cos θ1, sin θ1]ᵀ + B·[cos θ2, sin θ2]ᵀ = C
//! ```
//!
//! with real 2×2 coefficient matrices `A`, `B` and a real 2-vector `C`,
//! the shape that planar kinematics keeps producing.
//!
//! A non-singular `B` reduces to a quartic polynomial in `tan(θ1/2)` whose
//! real roots enumerate every solution; singular `B` is classified by a
//! closed-form SVD and handled by dedicated rank-0/rank-1 constraint
//! methods. [`dispatch::solve`] picks the branch, validates every candidate
//! against the original equations, and reports at most four isolated
//! solution pairs or a one-parameter family.
//!
//! ```
//! use trigsolve::{solve, Mat2, ToleranceConfig, TrigSystem, Vec2};
//!
//! let system = TrigSystem::new(
//!     Mat2::new(1.0, 0.5, 0.5, 1.0),
//!     Mat2::new(0.8, 0.3, 0.3, 0.8),
//!     Vec2::new(1.2, 1.0),
//! )
//! .unwrap();
//! let report = solve(&system, &ToleranceConfig::default());
//! assert_eq!(report.solutions.finite().unwrap().len(), 2);
//! ```
//!
//! The [`oracle`] module is an intentionally independent brute-force grid
//! search used to cross-check the analytical paths; [`kinematics`] adapts
//! two-link planar inverse kinematics onto the system form.

mod error;
mod types;

pub mod dispatch;
pub mod generic;
pub mod kinematics;
pub mod lintrig;
pub mod oracle;
pub mod quartic;
pub mod singular;

pub use dispatch::{solve, validate_and_dedup, Branch, SolveReport};
pub use error::SolveError;
pub use kinematics::{ik_two_link, TwoLinkArm};
pub use types::{
    angle_distance, normalize_angle, residual, AngleSolution, Mat2, SolutionSet, ToleranceConfig,
    TrigSystem, Vec2,
};
