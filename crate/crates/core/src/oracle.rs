//! Brute-force cross-check oracle.
//!
//! Scans the (θ1, θ2) torus on a regular grid, refines every local minimum
//! of the residual by derivative-free alternating golden-section descent,
//! and clusters what survives. Deliberately shares nothing with the solver
//! paths beyond the residual definition itself, so agreement between the
//! two is meaningful evidence.

use std::f64::consts::PI;

use crate::dispatch::SolveReport;
use crate::types::{angle_distance, normalize_angle, residual, SolutionSet, TrigSystem, Vec2};

const GOLDEN_RATIO_CONJ: f64 = 0.618_033_988_749_894_9;
/// Alternating axis descents per candidate.
const DESCENT_ROUNDS: usize = 60;
/// Golden-section shrink steps per axis descent.
const SECTION_STEPS: usize = 48;
/// Refinement is pointless past this many candidates; families are decided
/// by count, not by the refined points.
const REFINE_CAP: usize = 4096;
/// Cluster radius for refined minima, radians.
const CLUSTER_RADIUS: f64 = 1e-4;

/// What the grid scan found.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutcome {
    /// Clustered refined minima with residual at or below the acceptance
    /// tolerance, sorted by `(θ1, θ2)`.
    pub points: Vec<(f64, f64)>,
    /// Set when the number of clustered grid minima reaches `grid_n/8`,
    /// the signature of a one-parameter solution ridge.
    pub family_suspected: bool,
}

/// Exhaustively search the torus for solutions.
///
/// Local minima of the gridded residual below `max(1e-3, 100·tol_accept)`
/// are refined by 60 alternating golden-section line searches; refined
/// points with residual at most `tol_accept` are kept and clustered within
/// 1e-4 radians.
///
/// # Panics
/// When `grid_n < 256`; coarser grids miss basins routinely.
pub fn oracle_solve(system: &TrigSystem, grid_n: usize, tol_accept: f64) -> OracleOutcome {
    assert!(grid_n >= 256, "oracle grid must be at least 256 per axis");

    let angles: Vec<f64> = (0..grid_n)
        .map(|i| -PI + 2.0 * PI * (i as f64) / (grid_n as f64))
        .collect();

    // residual(i, j) = ‖p_i − q_j‖∞ with p_i = C − A·u(θ1_i), q_j = B·u(θ2_j)
    let p: Vec<Vec2> = angles
        .iter()
        .map(|&t1| system.c - system.a * Vec2::unit_from_angle(t1))
        .collect();
    let q: Vec<Vec2> = angles
        .iter()
        .map(|&t2| system.b * Vec2::unit_from_angle(t2))
        .collect();

    let mut grid = vec![0.0f64; grid_n * grid_n];
    for i in 0..grid_n {
        let row = &mut grid[i * grid_n..(i + 1) * grid_n];
        let pi = p[i];
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (pi.x - q[j].x).abs().max((pi.y - q[j].y).abs());
        }
    }

    let pre_filter = 1e-3f64.max(100.0 * tol_accept);
    // Flat ridges tie with their neighbors at rounding level; a small slack
    // keeps whole ridges in the candidate set.
    let tie_slack = 1e-12;
    let mut candidates: Vec<(usize, usize)> = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let value = grid[i * grid_n + j];
            if value >= pre_filter {
                continue;
            }
            let mut is_min = true;
            'scan: for di in [grid_n - 1, 0, 1] {
                for dj in [grid_n - 1, 0, 1] {
                    if di == 0 && dj == 0 {
                        continue;
                    }
                    let ni = (i + di) % grid_n;
                    let nj = (j + dj) % grid_n;
                    if value > grid[ni * grid_n + nj] + tie_slack {
                        is_min = false;
                        break 'scan;
                    }
                }
            }
            if is_min {
                candidates.push((i, j));
            }
        }
    }

    let family_suspected = candidates.len() >= grid_n / 8;

    let spacing = 2.0 * PI / (grid_n as f64);
    let mut refined: Vec<(f64, f64, f64)> = Vec::new();
    for &(i, j) in candidates.iter().take(REFINE_CAP) {
        let (t1, t2) = descend(system, angles[i], angles[j], spacing);
        let res = residual(system, t1, t2);
        if res <= tol_accept {
            refined.push((normalize_angle(t1), normalize_angle(t2), res));
        }
    }

    // Cluster, keeping the best representative of each.
    let mut clusters: Vec<(f64, f64, f64)> = Vec::new();
    for point in refined {
        match clusters.iter_mut().find(|c| {
            angle_distance(c.0, point.0).max(angle_distance(c.1, point.1)) < CLUSTER_RADIUS
        }) {
            Some(cluster) => {
                if point.2 < cluster.2 {
                    *cluster = point;
                }
            }
            None => clusters.push(point),
        }
    }
    clusters.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));

    OracleOutcome {
        points: clusters.into_iter().map(|(t1, t2, _)| (t1, t2)).collect(),
        family_suspected,
    }
}

/// Alternating golden-section descent from a grid point, windowed to ±spacing.
///
/// Descends the squared Euclidean residual: it vanishes exactly where the
/// max-norm residual does but is smooth, so coordinate descent cannot stall
/// on the kinks of the max of two absolute values.
fn descend(system: &TrigSystem, theta1: f64, theta2: f64, spacing: f64) -> (f64, f64) {
    let objective = |t1: f64, t2: f64| {
        let lhs = system.a * Vec2::unit_from_angle(t1) + system.b * Vec2::unit_from_angle(t2);
        let err = lhs - system.c;
        err.dot(err)
    };
    let mut t1 = theta1;
    let mut t2 = theta2;
    // Last point that was exactly minimal along θ2. The segment between two
    // such points is conjugate to the θ2 axis (parallel subspace property),
    // so one extra search along it reaches the local quadratic's minimum,
    // which plain axis alternation approaches only at a zigzag crawl.
    let mut prev_axis_minimal: Option<(f64, f64)> = None;
    for round in 0..DESCENT_ROUNDS {
        if round % 2 == 0 {
            t1 = line_min(|x| objective(x, t2), t1, spacing);
        } else {
            t2 = line_min(|x| objective(t1, x), t2, spacing);
            let here = (t1, t2);
            if let Some(prev) = prev_axis_minimal {
                let (d1, d2) = (t1 - prev.0, t2 - prev.1);
                let norm = d1.hypot(d2);
                if norm > 1e-15 {
                    let (e1, e2) = (d1 / norm, d2 / norm);
                    let s = line_min(|s| objective(t1 + s * e1, t2 + s * e2), 0.0, norm);
                    t1 += s * e1;
                    t2 += s * e2;
                }
            }
            prev_axis_minimal = Some(here);
        }
    }
    (t1, t2)
}

/// One golden-section line search with standard bracket expansion, so that
/// candidates entering from far along a shallow valley can cover the whole
/// distance instead of crawling one grid cell per round. Never returns a
/// point worse than the center.
fn line_min<F: Fn(f64) -> f64>(f: F, center: f64, base_half_width: f64) -> f64 {
    let f_center = f(center);
    let mut width = base_half_width;
    while width < PI / 2.0 {
        if f(center - width) >= f_center && f(center + width) >= f_center {
            break;
        }
        width *= 2.0;
    }
    width = width.min(PI / 2.0);
    let x = golden_section(&f, center - width, center + width);
    if f(x) <= f_center {
        x
    } else {
        center
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    let mut x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
    let mut x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..SECTION_STEPS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - GOLDEN_RATIO_CONJ * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + GOLDEN_RATIO_CONJ * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    if f(mid) <= f1.min(f2) {
        mid
    } else if f1 <= f2 {
        x1
    } else {
        x2
    }
}

/// Verdict of comparing a solver report against oracle clusters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchVerdict {
    pub matched: bool,
    pub solver_count: usize,
    pub oracle_count: usize,
    /// Largest matched-pair distance; meaningful only when counts agree.
    pub max_pair_distance: f64,
}

/// Greedy bipartite nearest matching between solver solutions and oracle
/// clusters; true exactly when counts agree and every pair sits within
/// `tol_match` (toroidal max-metric).
///
/// Callers must pass reports whose solutions are `Finite` or `Empty`;
/// families are compared through [`OracleOutcome::family_suspected`] alone.
pub fn oracle_match(
    report: &SolveReport,
    oracle_points: &[(f64, f64)],
    tol_match: f64,
) -> MatchVerdict {
    let solver_points: Vec<(f64, f64)> = match &report.solutions {
        SolutionSet::Finite(list) => list.iter().map(|s| (s.theta1, s.theta2)).collect(),
        SolutionSet::Empty => Vec::new(),
        family => panic!("oracle_match is undefined for families: {family:?}"),
    };
    let solver_count = solver_points.len();
    let oracle_count = oracle_points.len();
    if solver_count != oracle_count {
        return MatchVerdict {
            matched: false,
            solver_count,
            oracle_count,
            max_pair_distance: f64::INFINITY,
        };
    }

    let mut remaining: Vec<(f64, f64)> = oracle_points.to_vec();
    let mut unmatched: Vec<(f64, f64)> = solver_points;
    let mut max_pair_distance = 0.0f64;
    while !unmatched.is_empty() {
        let mut best = (0usize, 0usize, f64::INFINITY);
        for (si, s) in unmatched.iter().enumerate() {
            for (oi, o) in remaining.iter().enumerate() {
                let dist = angle_distance(s.0, o.0).max(angle_distance(s.1, o.1));
                if dist < best.2 {
                    best = (si, oi, dist);
                }
            }
        }
        max_pair_distance = max_pair_distance.max(best.2);
        unmatched.swap_remove(best.0);
        remaining.swap_remove(best.1);
    }

    MatchVerdict {
        matched: max_pair_distance <= tol_match,
        solver_count,
        oracle_count,
        max_pair_distance,
    }
}
