//! Published worst-case spanning ratios of the cone-based graph families.

use std::f64::consts::TAU;
use std::fmt;

use serde::Serialize;

use crate::build::GraphKind;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "status", content = "value")]
pub enum Bound {
    Finite(f64),
    /// Known not to be a spanner for this parameter.
    Infinite,
    /// Explicitly listed as an open problem.
    Open,
    /// No published bound for this combination.
    Unknown,
}

impl Bound {
    pub fn finite(self) -> Option<f64> {
        match self {
            Bound::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("infinite"),
            Bound::Open => f.write_str("open"),
            Bound::Unknown => f.write_str("unknown"),
        }
    }
}

/// Theta-Theta spanning ratios for `k = 6k'`, indexed by `k'`.
fn theta_theta_hexagonal(k_prime: usize) -> Bound {
    match k_prime {
        0..=4 => Bound::Unknown,
        5 => Bound::Finite(16.76),
        6 => Bound::Finite(7.82),
        7 => Bound::Finite(5.63),
        _ => Bound::Finite(4.64),
    }
}

/// Yao-Yao spanning ratios for `k = 6k'`, indexed by `k'`.
fn yao_yao_hexagonal(k_prime: usize) -> Bound {
    match k_prime {
        0..=5 => Bound::Unknown,
        6 | 7 => Bound::Finite(11.67),
        _ => Bound::Finite(4.75),
    }
}

pub fn theoretical_bound(kind: GraphKind, k: usize) -> Bound {
    if k < 4 {
        return Bound::Infinite;
    }
    let theta = TAU / k as f64;
    let half = theta / 2.0;
    match (kind, k) {
        (GraphKind::HalfTheta6, 6) => Bound::Finite(2.0),
        (GraphKind::HalfTheta6, _) => Bound::Unknown,

        (GraphKind::Yao, 4) => Bound::Finite(696.1),
        (GraphKind::Yao, 5) => Bound::Finite(3.74),
        (GraphKind::Yao, 6) => Bound::Finite(5.8),
        (GraphKind::Yao, _) if k % 2 == 1 => {
            Bound::Finite(1.0 / (1.0 - 2.0 * (3.0 * theta / 8.0).sin()))
        }
        (GraphKind::Yao, _) => Bound::Finite(1.0 / (1.0 - 2.0 * half.sin())),

        (GraphKind::Theta, 4) => Bound::Finite(237.0),
        (GraphKind::Theta, 5) => Bound::Finite(9.96),
        (GraphKind::Theta, 6) => Bound::Finite(2.0),
        (GraphKind::Theta, _) => Bound::Finite(theta_refined(k, theta)),

        (GraphKind::YaoYao, 4) | (GraphKind::ThetaTheta, 4) => Bound::Infinite,
        (GraphKind::YaoYao, 5) => Bound::Open,
        (GraphKind::ThetaTheta, 5) => Bound::Infinite,
        (GraphKind::YaoYao, 6) => Bound::Infinite,
        (GraphKind::ThetaTheta, 6) => Bound::Open,
        (GraphKind::YaoYao, _) if k % 6 == 0 => yao_yao_hexagonal(k / 6),
        (GraphKind::ThetaTheta, _) if k % 6 == 0 => theta_theta_hexagonal(k / 6),
        (GraphKind::YaoYao, _) | (GraphKind::ThetaTheta, _) => Bound::Unknown,
    }
}

/// Theta_k for k > 6, by the residue of k.
fn theta_refined(k: usize, theta: f64) -> f64 {
    let half = theta / 2.0;
    match k % 4 {
        2 => 1.0 + 2.0 * half.sin(),
        0 => 1.0 + 2.0 * half.sin() / (half.cos() - half.sin()),
        _ => (theta / 4.0).cos() / (half.cos() - (3.0 * theta / 4.0).sin()),
    }
}

/// The general Theta_k bound for k > 6, without the residue refinements.
pub fn theta_general_bound(k: usize) -> f64 {
    let half = TAU / k as f64 / 2.0;
    1.0 / (1.0 - half.sin())
}

/// Stretch in Theta-Theta_k of a single Theta6 edge, for `k = 6k'` with
/// `k' >= 5`.
pub fn per_edge_stretch_bound(k: usize) -> Option<f64> {
    if k % 6 != 0 {
        return None;
    }
    match k / 6 {
        0..=4 => None,
        5 => Some(8.38),
        6 => Some(3.91),
        7 => Some(2.811),
        _ => Some(2.32),
    }
}
