//! Rank analysis of `B` and the singular solution paths.
//!
//! A rank-0 `B` drops θ2 from the system entirely; a rank-1 `B` constrains
//! `C − A·u(θ1)` to the line spanned by the leading left singular vector,
//! which the left null vector turns into a single linear trigonometric
//! equation in θ1. Both paths bottom out in [`crate::lintrig`].

use crate::dispatch::validate_and_dedup;
use crate::lintrig::{solve_linear_trig, LinTrigResult, LinearTrigEq};
use crate::types::{
    normalize_angle, residual, AngleSolution, Mat2, SolutionSet, ToleranceConfig, TrigSystem, Vec2,
};

/// Closed-form SVD factors of a 2×2 matrix with its numerical rank.
///
/// Signs of the singular vectors are not canonicalized; any gauge satisfying
/// `B = σ1·u1·v1ᵀ + σ2·u2·v2ᵀ` may be returned.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankInfo {
    pub rank: u8,
    pub sigma1: f64,
    pub sigma2: f64,
    pub u1: Vec2,
    pub u2: Vec2,
    pub v1: Vec2,
    pub v2: Vec2,
}

/// Closed-form 2×2 SVD and numerical rank.
///
/// Writes `B = rot(β)·diag(σ1, ±σ2)·rot(γ)ᵀ` via the half-angle identities
/// of the rotation decomposition: with `E,H` the symmetric/antisymmetric
/// parts of the diagonal and `F,G` those of the off-diagonal,
/// `σ1 = hypot(E,H) + hypot(F,G)` and `β ∓ γ` are the `atan2` angles of
/// `(E,H)` and `(F,G)`. A singular value counts toward the rank when it
/// exceeds `eps_rank·max(σ1, 1)`.
pub fn rank_of(b: &Mat2, tol: &ToleranceConfig) -> RankInfo {
    debug_assert!(b.is_finite());
    let e = 0.5 * (b.m11 + b.m22);
    let f = 0.5 * (b.m11 - b.m22);
    let g = 0.5 * (b.m21 + b.m12);
    let h = 0.5 * (b.m21 - b.m12);

    let q = e.hypot(h);
    let r = f.hypot(g);
    let sigma1 = q + r;
    let mut sigma2 = q - r;

    // angle of (E,H) is β−γ; angle of (F,G) is β+γ
    let diff = h.atan2(e);
    let sum = g.atan2(f);
    let beta = 0.5 * (sum + diff);
    let gamma = 0.5 * (sum - diff);

    let u1 = Vec2::unit_from_angle(beta);
    let u2 = u1.perp();
    let v1 = Vec2::unit_from_angle(gamma);
    let mut v2 = v1.perp();
    if sigma2 < 0.0 {
        sigma2 = -sigma2;
        v2 = -v2;
    }

    let cutoff = tol.eps_rank * sigma1.max(1.0);
    let rank = u8::from(sigma1 > cutoff) + u8::from(sigma2 > cutoff);
    RankInfo {
        rank,
        sigma1,
        sigma2,
        u1,
        u2,
        v1,
        v2,
    }
}

/// Solve `A·u(θ1) = C` (the `B = 0` system). θ2 is a free parameter for
/// every admissible θ1.
///
/// Invertible `A` pins `u(θ1) = A⁻¹C`, valid only on the unit circle.
/// Rank-1 `A` reduces to a [`LinearTrigEq`] through its leading singular
/// pair, with every root verified against the full system. Rank-0 `A`
/// leaves `0 = C`: all of `(θ1, θ2)` when `C ≈ 0`, nothing otherwise.
pub fn solve_rank0(system: &TrigSystem, tol: &ToleranceConfig) -> SolutionSet {
    let a = system.a;
    let det_a = a.det();
    let det_threshold = tol.eps_det * 1f64.max(a.norm_inf().powi(2));

    if det_a.abs() > det_threshold {
        return rank0_invertible_a(system, tol);
    }

    let info = rank_of(&a, tol);
    match info.rank {
        2 => rank0_invertible_a(system, tol), // det below threshold but numerically rank 2
        1 => {
            // σ1·(v1ᵀu(θ1)) = u1ᵀC along the range; the residual check below
            // also enforces the u2-component consistency.
            let eq = LinearTrigEq::new(
                info.sigma1 * info.v1.x,
                info.sigma1 * info.v1.y,
                -info.u1.dot(system.c),
            );
            let accept = tol.eps_residual * 1f64.max(system.c.norm_inf());
            match solve_linear_trig(&eq, tol) {
                LinTrigResult::Continuum => rank0_degenerate_a(system, tol),
                LinTrigResult::Roots(roots) => {
                    let theta1: Vec<f64> = roots
                        .into_iter()
                        .filter(|&theta| {
                            (a * Vec2::unit_from_angle(theta) - system.c).norm_inf() <= accept
                        })
                        .collect();
                    if theta1.is_empty() {
                        SolutionSet::Empty
                    } else {
                        SolutionSet::Theta2Family { theta1 }
                    }
                }
            }
        }
        _ => rank0_degenerate_a(system, tol),
    }
}

fn rank0_invertible_a(system: &TrigSystem, tol: &ToleranceConfig) -> SolutionSet {
    let a_inv = system.a.inverse().expect("checked nonzero determinant");
    let w = a_inv * system.c;
    let bound = tol.eps_residual * 1f64.max(a_inv.norm_inf() * system.c.norm_inf());
    if (w.norm() - 1.0).abs() <= bound {
        SolutionSet::Theta2Family {
            theta1: vec![normalize_angle(w.y.atan2(w.x))],
        }
    } else {
        SolutionSet::Empty
    }
}

fn rank0_degenerate_a(system: &TrigSystem, tol: &ToleranceConfig) -> SolutionSet {
    // A ≈ 0 and B ≈ 0: the system is 0 = C. Consistent means every pair
    // solves it; θ2 is free as well, but a θ1 continuum is the strongest
    // statement the result type makes.
    let slack = tol.eps_residual * 1f64.max(system.a.norm_inf());
    if system.c.norm_inf() <= slack {
        SolutionSet::Theta1Family
    } else {
        SolutionSet::Empty
    }
}

/// Solve a system whose `B` has numerical rank 1.
///
/// Step 1 eliminates θ2 with the left null vector `u2` (defined even when a
/// row of `B` vanishes, unlike a row-ratio elimination): `u2ᵀ(C − A·u(θ1)) = 0`
/// is a [`LinearTrigEq`] in θ1. Step 2 solves it. Step 3 back-substitutes
/// each root: with `ρ = u1ᵀ(C − A·u(θ1))/σ1`, θ2 solves
/// `v1.x·cos θ2 + v1.y·sin θ2 − ρ = 0`; `|ρ| > 1` simply drops that θ1.
/// Step 4 validates and deduplicates the collected pairs.
pub fn solve_rank1(system: &TrigSystem, info: &RankInfo, tol: &ToleranceConfig) -> SolutionSet {
    debug_assert_eq!(info.rank, 1);
    let u2_a = system.a.row_combination(info.u2);
    let theta1_eq = LinearTrigEq::new(-u2_a.x, -u2_a.y, info.u2.dot(system.c));

    let theta1_roots = match solve_linear_trig(&theta1_eq, tol) {
        LinTrigResult::Continuum => return SolutionSet::Theta1Family,
        LinTrigResult::Roots(roots) => roots,
    };
    if theta1_roots.is_empty() {
        return SolutionSet::Empty;
    }

    let mut candidates: Vec<AngleSolution> = Vec::with_capacity(4);
    for theta1 in theta1_roots {
        let rhs = system.c - system.a * Vec2::unit_from_angle(theta1);
        // Holds by construction; re-checked before trusting the projection.
        if info.u2.dot(rhs).abs() > tol.eps_residual * 1f64.max(rhs.norm_inf()) {
            continue;
        }
        let rho = info.u1.dot(rhs) / info.sigma1;
        let theta2_eq = LinearTrigEq::new(info.v1.x, info.v1.y, -rho);
        for &theta2 in solve_linear_trig(&theta2_eq, tol).roots() {
            candidates.push(AngleSolution {
                theta1,
                theta2,
                residual: residual(system, theta1, theta2),
            });
        }
    }
    validate_and_dedup(candidates, system, tol)
}
