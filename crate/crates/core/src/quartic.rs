//! Reduction of a non-singular-`B` system to a quartic in `t = tan(θ1/2)`
//! and extraction of its real roots.
//!
//! Solving the second equation for `u(θ2) = B⁻¹(C − A·u(θ1))` and imposing
//! `cos²θ2 + sin²θ2 = 1` leaves one scalar constraint on θ1:
//!
//! ```text
//! g(θ1) = u(θ1)ᵀQ u(θ1) − 2 rᵀu(θ1) + s,   Q = MᵀM, r = Mᵀd, s = dᵀd − 1
//! ```
//!
//! with `M = B⁻¹A`, `d = B⁻¹C`. Multiplying `g` by `(1 + t²)²` under the
//! half-angle substitution gives the quartic handled here. Roots are taken
//! as companion-matrix eigenvalues of the deflated monic polynomial and then
//! polished by a few Newton steps; θ1 = π (unreachable by finite `t`) is
//! tracked through the leading-coefficient deflation flag.

use nalgebra::{Complex, DMatrix};

use crate::error::SolveError;
use crate::types::{angle_distance, Mat2, ToleranceConfig, TrigSystem, Vec2};

/// System data after eliminating θ2, plus the cached quadratic form of the
/// remaining constraint on θ1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSystem {
    /// `B⁻¹A`.
    pub m: Mat2,
    /// `B⁻¹C`.
    pub d: Vec2,
    /// Entries of the symmetric positive-semidefinite `Q = MᵀM`.
    pub q11: f64,
    pub q12: f64,
    pub q22: f64,
    /// `Mᵀd`.
    pub r: Vec2,
    /// `dᵀd − 1`.
    pub s: f64,
}

impl ReducedSystem {
    /// Candidate `[cos θ2, sin θ2]ᵀ = d − M·u(θ1)`.
    pub fn back_substitute(&self, theta1: f64) -> Vec2 {
        self.d - self.m * Vec2::unit_from_angle(theta1)
    }

    /// The scalar constraint `g(θ1)`; zero exactly when the back-substituted
    /// vector lies on the unit circle.
    pub fn unit_circle_defect(&self, theta1: f64) -> f64 {
        let u = Vec2::unit_from_angle(theta1);
        let quad = self.q11 * u.x * u.x + 2.0 * self.q12 * u.x * u.y + self.q22 * u.y * u.y;
        quad - 2.0 * self.r.dot(u) + self.s
    }

    fn norm_scale(&self) -> f64 {
        let q_norm = (self.q11.abs() + self.q12.abs()).max(self.q12.abs() + self.q22.abs());
        1f64.max(q_norm).max(self.r.norm_inf()).max(self.s.abs())
    }
}

/// Eliminate θ2 for a system with invertible `B`.
///
/// Uses the explicit adjugate/determinant 2×2 inverse. Fails with
/// [`SolveError::SingularB`] when `|det B| <= eps_det·max(1, ‖B‖∞²)`; such
/// systems belong to the singular solver paths.
pub fn reduce(system: &TrigSystem, tol: &ToleranceConfig) -> Result<ReducedSystem, SolveError> {
    let det = system.b.det();
    let threshold = tol.eps_det * 1f64.max(system.b.norm_inf().powi(2));
    if det.abs() <= threshold {
        return Err(SolveError::SingularB { det, threshold });
    }
    Ok(reduce_raw(system).expect("det above threshold is nonzero"))
}

/// Reduction without the dispatch threshold, for callers that have already
/// established `B` is numerically rank 2. `None` only when `det B == 0`
/// exactly.
pub(crate) fn reduce_raw(system: &TrigSystem) -> Option<ReducedSystem> {
    let b_inv = system.b.inverse()?;
    let m = Mat2::new(
        b_inv.m11 * system.a.m11 + b_inv.m12 * system.a.m21,
        b_inv.m11 * system.a.m12 + b_inv.m12 * system.a.m22,
        b_inv.m21 * system.a.m11 + b_inv.m22 * system.a.m21,
        b_inv.m21 * system.a.m12 + b_inv.m22 * system.a.m22,
    );
    let d = b_inv * system.c;
    let r = m.transpose() * d;
    Some(ReducedSystem {
        m,
        d,
        q11: m.m11 * m.m11 + m.m21 * m.m21,
        q12: m.m11 * m.m12 + m.m21 * m.m22,
        q22: m.m12 * m.m12 + m.m22 * m.m22,
        r,
        s: d.dot(d) - 1.0,
    })
}

/// Coefficients of `(1 + t²)²·g(2·arctan t) = a4·t⁴ + a3·t³ + a2·t² + a1·t + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPoly {
    pub a4: f64,
    pub a3: f64,
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    /// All coefficients negligible against the reduced-system scale; the
    /// constraint holds for every θ1.
    pub identically_zero: bool,
}

impl QuarticPoly {
    pub fn eval(&self, t: f64) -> f64 {
        (((self.a4 * t + self.a3) * t + self.a2) * t + self.a1) * t + self.a0
    }

    fn eval_deriv(&self, t: f64) -> f64 {
        ((4.0 * self.a4 * t + 3.0 * self.a3) * t + 2.0 * self.a2) * t + self.a1
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.a4
            .abs()
            .max(self.a3.abs())
            .max(self.a2.abs())
            .max(self.a1.abs())
            .max(self.a0.abs())
    }
}

/// Closed-form quartic coefficients of the θ1 constraint.
///
/// Expanding `(1+t²)²·g` term by term with `cos θ1 = (1−t²)/(1+t²)` and
/// `sin θ1 = 2t/(1+t²)`:
///
/// ```text
/// a4 = q11 + 2·r1 + s          ( = g(π) )
/// a3 = −4·q12 − 4·r2
/// a2 = −2·q11 + 4·q22 + 2·s
/// a1 = 4·q12 − 4·r2
/// a0 = q11 − 2·r1 + s          ( = g(0) )
/// ```
pub fn quartic_coefficients(red: &ReducedSystem, tol: &ToleranceConfig) -> QuarticPoly {
    let a4 = red.q11 + 2.0 * red.r.x + red.s;
    let a3 = -4.0 * red.q12 - 4.0 * red.r.y;
    let a2 = -2.0 * red.q11 + 4.0 * red.q22 + 2.0 * red.s;
    let a1 = 4.0 * red.q12 - 4.0 * red.r.y;
    let a0 = red.q11 - 2.0 * red.r.x + red.s;
    let bound = tol.eps_det * red.norm_scale();
    let identically_zero = a4.abs() <= bound
        && a3.abs() <= bound
        && a2.abs() <= bound
        && a1.abs() <= bound
        && a0.abs() <= bound;
    QuarticPoly {
        a4,
        a3,
        a2,
        a1,
        a0,
        identically_zero,
    }
}

/// All real roots of the quartic plus the root-at-infinity indicator.
///
/// Leading coefficients negligible against the largest coefficient are
/// deflated away; the very first deflation means `g(π) ≈ 0`, i.e. θ1 = π
/// solves the constraint, and sets the returned flag. Remaining roots come
/// from the companion matrix of the deflated monic polynomial, filtered by
/// relative imaginary part and polished with at most five Newton steps on
/// the original quartic. Near-coincident roots (within `eps_dedup` after
/// angle recovery) are reported once.
pub fn real_roots(poly: &QuarticPoly, tol: &ToleranceConfig) -> (Vec<f64>, bool) {
    debug_assert!(
        !poly.identically_zero,
        "identically-zero quartic has no root list"
    );
    let coeffs = [poly.a4, poly.a3, poly.a2, poly.a1, poly.a0];
    let max_coeff = poly.max_abs_coeff();
    if max_coeff == 0.0 {
        return (Vec::new(), false);
    }
    let negligible = tol.eps_det * max_coeff;

    let mut lead = 0;
    while lead < 4 && coeffs[lead].abs() <= negligible {
        lead += 1;
    }
    let has_root_at_infinity = lead > 0;
    let degree = 4 - lead;
    if degree == 0 {
        return (Vec::new(), has_root_at_infinity);
    }

    let monic: Vec<f64> = coeffs[lead + 1..]
        .iter()
        .map(|&c| c / coeffs[lead])
        .collect();

    let mut raw: Vec<f64> = Vec::with_capacity(degree);
    if degree == 1 {
        raw.push(-monic[0]);
    } else {
        // Companion matrix of tⁿ + monic[0]·tⁿ⁻¹ + … + monic[n−1].
        let mut companion = DMatrix::<f64>::zeros(degree, degree);
        for i in 1..degree {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..degree {
            companion[(i, degree - 1)] = -monic[degree - 1 - i];
        }
        let eigen: Vec<Complex<f64>> = companion.complex_eigenvalues().iter().copied().collect();
        for lambda in eigen {
            if lambda.im.abs() <= tol.eps_imag * (1.0 + lambda.re.abs()) {
                raw.push(lambda.re);
            }
        }
    }

    let mut polished: Vec<f64> = Vec::with_capacity(raw.len());
    for t0 in raw {
        polished.push(newton_polish(poly, t0));
    }

    // Repeated roots collapse once mapped back to angles.
    let mut roots: Vec<f64> = Vec::with_capacity(polished.len());
    for t in polished {
        if !t.is_finite() {
            continue;
        }
        let theta = 2.0 * t.atan();
        if let Some(existing) = roots
            .iter_mut()
            .find(|r| angle_distance(2.0 * r.atan(), theta) < tol.eps_dedup)
        {
            if poly.eval(t).abs() < poly.eval(*existing).abs() {
                *existing = t;
            }
            continue;
        }
        roots.push(t);
    }
    roots.sort_by(f64::total_cmp);
    (roots, has_root_at_infinity)
}

fn newton_polish(poly: &QuarticPoly, t0: f64) -> f64 {
    let mut t = t0;
    let mut best = t0;
    let mut best_val = poly.eval(t0).abs();
    for _ in 0..5 {
        let val = poly.eval(t);
        let deriv = poly.eval_deriv(t);
        if val == 0.0 || deriv == 0.0 {
            break;
        }
        let step = val / deriv;
        if !step.is_finite() {
            break;
        }
        t -= step;
        let new_val = poly.eval(t).abs();
        if new_val < best_val {
            best_val = new_val;
            best = t;
        }
        if step.abs() <= 1e-16 * (1.0 + t.abs()) {
            break;
        }
    }
    best
}
