//! Exact solver for the single linear trigonometric equation
//! `a·cos θ + b·sin θ + c = 0`.
//!
//! The tangent half-angle substitution `t = tan(θ/2)` turns the equation
//! into the quadratic `(c−a)t² + 2bt + (a+c) = 0`. Two degeneracies need
//! explicit handling: the all-zero equation (every θ solves it) and the
//! root θ = π, which no finite `t` represents and which exists exactly
//! when the quadratic's leading coefficient `c − a` vanishes.

use std::f64::consts::PI;

use crate::types::{angle_distance, normalize_angle, ToleranceConfig};

/// Coefficients of `a·cos θ + b·sin θ + c = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearTrigEq {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LinearTrigEq {
    pub const fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    /// Left-hand side evaluated at θ.
    pub fn eval(&self, theta: f64) -> f64 {
        self.a * theta.cos() + self.b * theta.sin() + self.c
    }

    fn scale(&self) -> f64 {
        1f64.max(self.a.abs() + self.b.abs() + self.c.abs())
    }
}

/// Solution set of a [`LinearTrigEq`].
#[derive(Debug, Clone, PartialEq)]
pub enum LinTrigResult {
    /// Zero, one, or two roots in `(-π, π]`, deduplicated and sorted.
    /// An empty list signals an inconsistent constraint.
    Roots(Vec<f64>),
    /// Every θ solves the equation (all three coefficients vanish).
    Continuum,
}

impl LinTrigResult {
    pub fn roots(&self) -> &[f64] {
        match self {
            LinTrigResult::Roots(r) => r,
            LinTrigResult::Continuum => &[],
        }
    }
}

/// Find every θ in `(-π, π]` with `a·cos θ + b·sin θ + c = 0`.
///
/// Branches, in order: (i) all coefficients negligible → [`LinTrigResult::Continuum`];
/// (ii) roots of the half-angle quadratic; (iii) θ = π whenever `|c − a|` is
/// negligible, since `t = tan(θ/2)` cannot represent it. Every candidate is
/// certified against the equation before being returned.
pub fn solve_linear_trig(eq: &LinearTrigEq, tol: &ToleranceConfig) -> LinTrigResult {
    let scale = eq.scale();
    let structural = tol.eps_det * scale;

    if eq.a.abs() <= structural && eq.b.abs() <= structural && eq.c.abs() <= structural {
        return LinTrigResult::Continuum;
    }

    let lead = eq.c - eq.a;
    let mid = 2.0 * eq.b;
    let last = eq.a + eq.c;

    let mut candidates: Vec<f64> = Vec::with_capacity(2);

    if lead.abs() <= structural {
        // Quadratic degenerates; θ = π carries the lost root.
        candidates.push(PI);
        if mid.abs() > structural {
            candidates.push(2.0 * (-last / mid).atan());
        }
    } else {
        let disc = mid * mid - 4.0 * lead * last;
        // Relative to the coefficients only: the clamp must scale with k²
        // under (a,b,c) → k·(a,b,c) or tangency detection breaks for small
        // systems.
        let coeff_sum = eq.a.abs() + eq.b.abs() + eq.c.abs();
        let disc_floor = tol.eps_det * coeff_sum * coeff_sum;
        if disc >= -disc_floor {
            if disc <= disc_floor {
                // Tangency: double root reported once.
                candidates.push(2.0 * (-mid / (2.0 * lead)).atan());
            } else {
                // Cancellation-free quadratic roots.
                let sqrt_disc = disc.sqrt();
                let q = -0.5 * (mid + sqrt_disc.copysign(if mid == 0.0 { 1.0 } else { mid }));
                candidates.push(2.0 * (q / lead).atan());
                candidates.push(2.0 * (last / q).atan());
            }
        }
    }

    let residual_bound = tol.eps_residual * scale;
    let mut roots: Vec<f64> = Vec::with_capacity(2);
    for theta in candidates {
        let theta = normalize_angle(theta);
        if eq.eval(theta).abs() > residual_bound {
            continue;
        }
        if roots
            .iter()
            .any(|&kept| angle_distance(kept, theta) < tol.eps_dedup)
        {
            continue;
        }
        roots.push(theta);
    }
    roots.sort_by(f64::total_cmp);
    LinTrigResult::Roots(roots)
}
