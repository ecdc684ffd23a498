//! Shared domain types and angle arithmetic.
//!
//! The system under study is
//!
//! ```text
//! A·[cos θ1, sin θ1]ᵀ + B·[cos θ2, sin θ2]ᵀ = C
//! ```
//!
//! with `A`, `B` real 2×2 and `C` a real 2-vector. Everything in this crate
//! works on the plain value types below; all operations are pure functions
//! and the types are `Copy`, so values can be shared freely across threads.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::SolveError;

const TWO_PI: f64 = 2.0 * PI;

/// A real 2-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub const ZERO: Self = Self::new(0.0, 0.0);

    /// The unit vector `[cos θ, sin θ]ᵀ`.
    pub fn unit_from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Euclidean length.
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Max-norm.
    pub fn norm_inf(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Counter-clockwise rotation by 90 degrees; exactly unit-norm and
    /// orthogonal when `self` is.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A real 2×2 matrix in row-major naming: `m[row][col]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 1.0);
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);

    pub const fn diag(d1: f64, d2: f64) -> Self {
        Self::new(d1, 0.0, 0.0, d2)
    }

    /// Rank-one product `σ·u·vᵀ`.
    pub fn outer(sigma: f64, u: Vec2, v: Vec2) -> Self {
        Self::new(
            sigma * u.x * v.x,
            sigma * u.x * v.y,
            sigma * u.y * v.x,
            sigma * u.y * v.y,
        )
    }

    pub fn det(self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    /// Induced max-norm (maximum absolute row sum).
    pub fn norm_inf(self) -> f64 {
        (self.m11.abs() + self.m12.abs()).max(self.m21.abs() + self.m22.abs())
    }

    pub fn transpose(self) -> Self {
        Self::new(self.m11, self.m21, self.m12, self.m22)
    }

    /// Explicit adjugate/determinant inverse. `None` when `det == 0` exactly;
    /// callers decide what "too close to singular" means for them.
    pub fn inverse(self) -> Option<Self> {
        let det = self.det();
        if det == 0.0 {
            return None;
        }
        Some(Self::new(
            self.m22 / det,
            -self.m12 / det,
            -self.m21 / det,
            self.m11 / det,
        ))
    }

    /// `uᵀ·M` as a row vector.
    pub fn row_combination(self, u: Vec2) -> Vec2 {
        Vec2::new(
            u.x * self.m11 + u.y * self.m21,
            u.x * self.m12 + u.y * self.m22,
        )
    }

    pub fn is_finite(self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }

    pub fn scaled(self, k: f64) -> Self {
        Self::new(self.m11 * k, self.m12 * k, self.m21 * k, self.m22 * k)
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m11 * v.x + self.m12 * v.y,
            self.m21 * v.x + self.m22 * v.y,
        )
    }
}

/// The coupled trigonometric system `A·u(θ1) + B·u(θ2) = C`.
///
/// Construction validates that all nine scalars are finite; a valid
/// `TrigSystem` can always be handed to the solvers without further checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigSystem {
    pub a: Mat2,
    pub b: Mat2,
    pub c: Vec2,
}

impl TrigSystem {
    pub fn new(a: Mat2, b: Mat2, c: Vec2) -> Result<Self, SolveError> {
        if !a.is_finite() {
            return Err(SolveError::NonFinite("matrix A"));
        }
        if !b.is_finite() {
            return Err(SolveError::NonFinite("matrix B"));
        }
        if !c.is_finite() {
            return Err(SolveError::NonFinite("vector C"));
        }
        Ok(Self { a, b, c })
    }
}

/// One validated solution pair, with angles normalized to `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSolution {
    pub theta1: f64,
    pub theta2: f64,
    /// Max-norm residual of the original system at `(theta1, theta2)`.
    pub residual: f64,
}

/// The complete solution set of a system.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionSet {
    /// Isolated solution pairs, deduplicated and sorted by `(θ1, θ2)`.
    /// Never constructed with an empty list; that case is [`SolutionSet::Empty`].
    Finite(Vec<AngleSolution>),
    /// θ2 is a free parameter; the listed θ1 values each admit every θ2.
    Theta2Family { theta1: Vec<f64> },
    /// θ1 is a free parameter; θ2 is determined per θ1 by back-substitution
    /// where the substituted equation is feasible.
    Theta1Family,
    /// No solutions.
    Empty,
}

impl SolutionSet {
    /// Solutions when finite, `None` for families and the empty set.
    pub fn finite(&self) -> Option<&[AngleSolution]> {
        match self {
            SolutionSet::Finite(list) => Some(list),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty)
    }
}

/// Numerical thresholds used across the solver.
///
/// All defaults are relative tolerances applied against a problem-dependent
/// scale; see each field for the role it plays.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Singularity dispatch: `B` is treated as singular when
    /// `|det B| <= eps_det·max(1, ‖B‖∞²)`.
    pub eps_det: f64,
    /// Relative singular-value cutoff for numerical rank.
    pub eps_rank: f64,
    /// Residual bound for accepting a candidate solution.
    pub eps_residual: f64,
    /// Toroidal angle distance below which two solutions merge (radians).
    pub eps_dedup: f64,
    /// Relative imaginary-part bound for keeping a polynomial root as real.
    pub eps_imag: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eps_det: 1e-10,
            eps_rank: 1e-10,
            eps_residual: 1e-9,
            eps_dedup: 1e-7,
            eps_imag: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), SolveError> {
        let fields = [
            (self.eps_det, "eps_det"),
            (self.eps_rank, "eps_rank"),
            (self.eps_residual, "eps_residual"),
            (self.eps_dedup, "eps_dedup"),
            (self.eps_imag, "eps_imag"),
        ];
        for (value, name) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(SolveError::InvalidTolerance(name));
            }
        }
        Ok(())
    }
}

/// Reduce an angle to the half-open interval `(-π, π]`.
///
/// `-π` maps to `π`, so outputs are unique representatives. Idempotent.
///
/// # Panics
/// On non-finite input.
pub fn normalize_angle(theta: f64) -> f64 {
    assert!(theta.is_finite(), "normalize_angle: non-finite input");
    let r = theta.rem_euclid(TWO_PI);
    // r ∈ [0, 2π); rem_euclid may round up to exactly 2π for tiny negatives.
    if r > PI {
        r - TWO_PI
    } else {
        r
    }
}

/// Shortest arc distance between two angles, in `[0, π]`.
pub fn angle_distance(alpha: f64, beta: f64) -> f64 {
    normalize_angle(alpha - beta).abs()
}

/// Max-norm residual `‖A·u(θ1) + B·u(θ2) − C‖∞` of the original system.
pub fn residual(system: &TrigSystem, theta1: f64, theta2: f64) -> f64 {
    let lhs = system.a * Vec2::unit_from_angle(theta1) + system.b * Vec2::unit_from_angle(theta2);
    (lhs - system.c).norm_inf()
}
