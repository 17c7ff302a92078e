//! Stretch constants of Theta-Theta_k for a Theta6 edge, obtained by
//! maximizing the detour bounds over the angular domain of each case.
//!
//! With `D` the largest detour `|xi(a,a')| + |xi(b,b')|` relative to `|ab|`,
//! the stretch constant is `t = (1/cos(theta/2)) / (1 - D)`; in the lower
//! `C66` case it is `1/min Z` instead.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_6, PI};
use std::fmt;

use serde::Serialize;

use super::checks::lower_detour_factor;
use super::optimize::{maximize_unit_interval, maximize_unit_square};
use crate::error::{Error, Result};
use crate::geom::t_unchecked;

/// Grid resolution per axis before golden-section refinement.
pub const GRID_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StretchCase {
    /// `a'` in `C62`, `beta <= pi/6`.
    C62LowBeta,
    /// `a'` in `C62`, `beta > pi/6`.
    C62HighBeta,
    /// `a'` in `C66`, `alpha <= pi/6`.
    C66LowAlpha,
    /// `a'` in `C65`, or in `C66` with `alpha > pi/6`.
    C66HighAlphaOrC65,
}

impl StretchCase {
    pub const ALL: [StretchCase; 4] = [
        StretchCase::C62LowBeta,
        StretchCase::C62HighBeta,
        StretchCase::C66LowAlpha,
        StretchCase::C66HighAlphaOrC65,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StretchCase::C62LowBeta => "C62_low_beta",
            StretchCase::C62HighBeta => "C62_high_beta",
            StretchCase::C66LowAlpha => "C66_low_alpha",
            StretchCase::C66HighAlphaOrC65 => "C66_high_alpha_or_C65",
        }
    }
}

impl fmt::Display for StretchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Detour bound for `a'` in `C62` with `beta <= pi/6`.
pub fn x_bound(theta: f64, gamma: f64, beta: f64) -> f64 {
    let tg = t_unchecked(gamma);
    tg + tg / (theta / 2.0).cos()
        - 2.0 * t_unchecked(beta) * (FRAC_PI_3 + gamma).sin() / (FRAC_PI_3 + beta).sin()
}

/// Detour bound for `a'` in `C62` with `beta > pi/6`.
pub fn y_bound(theta: f64, gamma: f64, beta: f64) -> f64 {
    let tg = t_unchecked(gamma);
    tg + (tg - 2.0 * t_unchecked(beta)) / (theta / 2.0).cos()
}

/// Fraction of `|a'b'|` saved when `a'` lies in `C66` and `alpha <= pi/6`.
pub fn z_bound(theta: f64, alpha: f64) -> f64 {
    lower_detour_factor(theta, alpha)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchConstantReport {
    pub theta: f64,
    pub case: StretchCase,
    /// max X, max Y, min Z or `8 sin(theta/2)` depending on the case.
    pub bound_on_detour: f64,
    /// Angles attaining the extremum: `(gamma, beta)` or `(alpha)`.
    pub argument: Vec<f64>,
    /// Infinite when the detour bound leaves no room (`>= 1`, or `min Z <= 0`).
    pub t: f64,
}

fn lemma_t(theta: f64, detour: f64) -> f64 {
    if detour >= 1.0 {
        f64::INFINITY
    } else {
        (1.0 / (theta / 2.0).cos()) / (1.0 - detour)
    }
}

pub fn stretch_constant(theta: f64, case: StretchCase) -> Result<StretchConstantReport> {
    stretch_constant_with(theta, case, GRID_SAMPLES)
}

pub fn stretch_constant_with(
    theta: f64,
    case: StretchCase,
    samples: usize,
) -> Result<StretchConstantReport> {
    if !(theta > 0.0 && theta <= PI / 15.0 + 1e-15) {
        return Err(Error::InvalidParameter(format!(
            "theta {theta} outside (0, pi/15]"
        )));
    }
    let report = match case {
        StretchCase::C62LowBeta => {
            let gamma_hi = FRAC_PI_6 - theta / 2.0;
            let map = |s: f64, u: f64| {
                let gamma = s * gamma_hi;
                let beta_hi = FRAC_PI_6.min(gamma + theta);
                (gamma, gamma + u * (beta_hi - gamma))
            };
            let m = maximize_unit_square(
                |s, u| {
                    let (g, b) = map(s, u);
                    x_bound(theta, g, b)
                },
                samples,
                1e-12,
            );
            let (g, b) = map(m.s, m.u);
            StretchConstantReport {
                theta,
                case,
                bound_on_detour: m.value,
                argument: vec![g, b],
                t: lemma_t(theta, m.value),
            }
        }
        StretchCase::C62HighBeta => {
            let gamma_lo = FRAC_PI_6 - theta;
            let map = |s: f64, u: f64| {
                let gamma = gamma_lo + s * theta / 2.0;
                (gamma, FRAC_PI_6 + u * (gamma + theta - FRAC_PI_6))
            };
            let m = maximize_unit_square(
                |s, u| {
                    let (g, b) = map(s, u);
                    y_bound(theta, g, b)
                },
                samples,
                1e-12,
            );
            let (g, b) = map(m.s, m.u);
            StretchConstantReport {
                theta,
                case,
                bound_on_detour: m.value,
                argument: vec![g, b],
                t: lemma_t(theta, m.value),
            }
        }
        StretchCase::C66LowAlpha => {
            let (s, neg) = maximize_unit_interval(|s| -z_bound(theta, s * FRAC_PI_6), samples);
            let min_z = -neg;
            StretchConstantReport {
                theta,
                case,
                bound_on_detour: min_z,
                argument: vec![s * FRAC_PI_6],
                t: if min_z > 0.0 { 1.0 / min_z } else { f64::INFINITY },
            }
        }
        StretchCase::C66HighAlphaOrC65 => {
            let bound = 8.0 * (theta / 2.0).sin();
            StretchConstantReport {
                theta,
                case,
                bound_on_detour: bound,
                argument: vec![],
                t: lemma_t(theta, bound),
            }
        }
    };
    Ok(report)
}

/// Published stretch constants, as `(d, case, t)` with `theta = pi/d`.
pub const PUBLISHED_STRETCH_TABLE: [(u32, StretchCase, f64); 16] = [
    (15, StretchCase::C62LowBeta, 8.3760),
    (18, StretchCase::C62LowBeta, 3.9058),
    (21, StretchCase::C62LowBeta, 2.8109),
    (24, StretchCase::C62LowBeta, 2.3159),
    (15, StretchCase::C62HighBeta, 6.2720),
    (18, StretchCase::C62HighBeta, 3.3377),
    (21, StretchCase::C62HighBeta, 2.5014),
    (24, StretchCase::C62HighBeta, 2.1057),
    (15, StretchCase::C66LowAlpha, 4.9454),
    (18, StretchCase::C66LowAlpha, 2.9697),
    (21, StretchCase::C66LowAlpha, 2.3117),
    (24, StretchCase::C66LowAlpha, 1.9829),
    (15, StretchCase::C66HighAlphaOrC65, 6.1397),
    (18, StretchCase::C66HighAlphaOrC65, 3.3157),
    (21, StretchCase::C66HighAlphaOrC65, 2.4936),
    (24, StretchCase::C66HighAlphaOrC65, 2.1020),
];

/// Relative tolerance when comparing against the published table.
pub const TABLE_TOLERANCE: f64 = 0.005;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableEntry {
    pub denominator: u32,
    pub case: StretchCase,
    pub published: f64,
    pub computed: StretchConstantReport,
    pub relative_error: f64,
}

impl TableEntry {
    pub fn matches(&self) -> bool {
        self.relative_error <= TABLE_TOLERANCE
    }
}

/// Recomputes every entry of the published table.
pub fn reproduce_tables() -> Result<Vec<TableEntry>> {
    PUBLISHED_STRETCH_TABLE
        .iter()
        .map(|&(denominator, case, published)| {
            let computed = stretch_constant(PI / denominator as f64, case)?;
            let relative_error = (computed.t - published).abs() / published;
            Ok(TableEntry {
                denominator,
                case,
                published,
                computed,
                relative_error,
            })
        })
        .collect()
}
