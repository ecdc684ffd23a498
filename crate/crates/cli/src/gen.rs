//! Seeded random system generation with planted ground truth.
//!
//! Systems are built constructively: draw the coefficient matrices for the
//! requested singularity class and a true angle pair, then assemble
//! `C = A·u(θ1*) + B·u(θ2*)`. Success of a solve is then a completeness
//! statement (the planted solution must be recovered), not merely a
//! residual check.

use std::f64::consts::PI;

use clap::ValueEnum;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use trigsolve::{Mat2, TrigSystem, Vec2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SingularClass {
    /// Non-singular B (generic quartic path).
    None,
    /// B = 0.
    Rank0,
    /// B = σ·u·vᵀ.
    Rank1,
}

impl SingularClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SingularClass::None => "none",
            SingularClass::Rank0 => "rank0",
            SingularClass::Rank1 => "rank1",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Planted {
    pub system: TrigSystem,
    pub theta1: f64,
    pub theta2: f64,
    pub class: SingularClass,
}

fn random_mat(rng: &mut ChaCha8Rng) -> Mat2 {
    Mat2::new(
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
        rng.random_range(-2.0..2.0),
    )
}

fn random_mat_min_det(rng: &mut ChaCha8Rng, min_det: f64) -> Mat2 {
    loop {
        let m = random_mat(rng);
        if m.det().abs() >= min_det {
            return m;
        }
    }
}

/// Build one system of the requested class with a planted solution.
pub fn planted_system(rng: &mut ChaCha8Rng, class: SingularClass) -> Planted {
    let theta1 = rng.random_range(-PI..PI);
    let theta2 = rng.random_range(-PI..PI);
    let u1 = Vec2::unit_from_angle(theta1);
    let u2 = Vec2::unit_from_angle(theta2);

    let (a, b) = match class {
        SingularClass::None => (random_mat(rng), random_mat_min_det(rng, 0.05)),
        SingularClass::Rank0 => (random_mat_min_det(rng, 0.05), Mat2::ZERO),
        SingularClass::Rank1 => loop {
            let a = random_mat(rng);
            let left = Vec2::unit_from_angle(rng.random_range(-PI..PI));
            let right = Vec2::unit_from_angle(rng.random_range(-PI..PI));
            let sigma = rng.random_range(0.3..2.5);
            let b = Mat2::outer(sigma, left, right);
            // Keep the θ1 elimination well conditioned: a vanishing
            // u2ᵀA row would make planted-angle recovery meaningless.
            if a.row_combination(left.perp()).norm() >= 0.1 {
                break (a, b);
            }
        },
    };

    let c = a * u1 + b * u2;
    Planted {
        system: TrigSystem::new(a, b, c).expect("generated systems are finite"),
        theta1,
        theta2,
        class,
    }
}

/// Deterministic class pattern for the mixed mode: indices 0–7 of every ten
/// are generic, 8 is rank-0, 9 is rank-1 (an 80/10/10 split).
pub fn mixed_class(index: usize) -> SingularClass {
    match index % 10 {
        8 => SingularClass::Rank0,
        9 => SingularClass::Rank1,
        _ => SingularClass::None,
    }
}
