//! Direct construction of point sets that realize canonical
//! configurations with angles pushed towards the edges of their domains.
//!
//! Random uniform sets rarely produce `beta` close to a cone ray or `a'`
//! close to the corners of its triangle; this sampler places the four
//! points explicitly in the normalized frame instead.

use std::f64::consts::FRAC_PI_6;

use rand::Rng;

use crate::geom::{ConeScheme, PointSet, Vec2};

/// Draws from `[0, 1]`: a third uniform, a third crowded at 0, a third
/// crowded at 1.
fn edge_biased<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen();
    match rng.gen_range(0..3) {
        0 => u,
        1 => u.powi(4),
        _ => 1.0 - u.powi(4),
    }
}

/// Signed fraction in `[-1, 1]`, half uniform and half crowded at `+-1`.
fn signed_edge_biased<R: Rng>(rng: &mut R) -> f64 {
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let u: f64 = rng.gen();
    if rng.gen_bool(0.5) {
        sign * u
    } else {
        sign * (1.0 - u.powi(4))
    }
}

/// Positions `[a, b, b', a']` in the normalized frame, with `|ab| = 1`.
/// `None` when the drawn angles leave no room for `b'`.
pub fn sample_quad<R: Rng>(scheme: &ConeScheme, rng: &mut R) -> Option<[Vec2; 4]> {
    let theta = scheme.theta();
    let k_prime = scheme.k() / 6;
    // k-cones of C61 whose bisector is strictly below pi/6; in the middle
    // cone of an odd k' both bisectors coincide and b' is always b
    let m = rng.gen_range(0..(k_prime / 2).max(1));
    let gamma = m as f64 * theta;
    // b' beats b in the k-cone yet loses in the 6-cone only when it lies
    // closer to pi/6, i.e. beta > alpha
    let (u, v) = (edge_biased(rng), edge_biased(rng));
    let alpha = gamma + u.min(v) * theta;
    let beta = gamma + u.max(v) * theta;
    if alpha >= beta || beta >= gamma + theta {
        return None;
    }

    let a = Vec2::default();
    let b = Vec2::from_polar(1.0, alpha);
    let bis_k = gamma + theta / 2.0;
    // b' must lose to b in the 6-cone and beat it in the k-cone
    let r_lo = (alpha - FRAC_PI_6).cos() / (beta - FRAC_PI_6).cos();
    let r_hi = (alpha - bis_k).cos() / (beta - bis_k).cos();
    if !(r_lo < r_hi) {
        return None;
    }
    let r = r_lo + (r_hi - r_lo) * (1.0 - 0.999 * (1.0 - edge_biased(rng)));
    let b_prime = Vec2::from_polar(r, beta);

    // a' inside the k-triangle of b' towards a
    let shape = scheme.triangle_at(b_prime, a)?;
    let bisector = Vec2::from_polar(1.0, scheme.bisector_angle(shape.cone));
    let across = Vec2::new(-bisector.y, bisector.x);
    let depth = shape.height * (1.0 - 0.999 * (1.0 - edge_biased(rng)));
    let half_width = depth * (theta / 2.0).tan();
    let a_prime = b_prime + bisector * depth + across * (signed_edge_biased(rng) * half_width);
    Some([a, b, b_prime, a_prime])
}

/// A small point set around a sampled quad, optionally with a few extra
/// points near `a` and `b` that reshape the Theta6 detours.
pub fn sample_point_set<R: Rng>(scheme: &ConeScheme, extra: usize, rng: &mut R) -> Option<PointSet> {
    let quad = sample_quad(scheme, rng)?;
    let mut coords: Vec<(f64, f64)> = quad.iter().map(|p| (p.x, p.y)).collect();
    for _ in 0..extra {
        let centre = quad[rng.gen_range(0..2)];
        let p = centre + Vec2::from_polar(0.6 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU));
        coords.push((p.x, p.y));
    }
    PointSet::from_coords(coords).ok()
}
