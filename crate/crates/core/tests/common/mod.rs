//! Shared helpers: seeded instances and brute-force reference builders
//! written independently of the library's construction code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use cone_spanners::io::{generate, Distribution, PointSetSpec};
use cone_spanners::{ConeScheme, GraphKind, PointSet, SpannerGraph, Vec2};

pub const THETA_THETA_BOUNDS: [(usize, f64); 4] = [(30, 16.76), (36, 7.82), (42, 5.63), (48, 4.64)];
pub const PER_EDGE_BOUNDS: [(usize, f64); 4] = [(30, 8.38), (36, 3.91), (42, 2.811), (48, 2.32)];

pub fn uniform(n: usize, seed: u64) -> PointSet {
    generate(&PointSetSpec::new(Distribution::Uniform, n, seed)).unwrap()
}

pub fn circle_star(n: usize) -> PointSet {
    generate(&PointSetSpec::new(Distribution::CircleStar, n, 0)).unwrap()
}

/// `(source, target)` pairs of a graph.
pub fn edge_set(graph: &SpannerGraph) -> BTreeSet<(usize, usize)> {
    graph.edges().iter().map(|e| (e.source, e.target)).collect()
}

/// Cone of `q` seen from `p`, from `atan2` and a half-open interval test.
fn cone(k: usize, p: Vec2, q: Vec2) -> usize {
    let theta = std::f64::consts::TAU / k as f64;
    let d = q - p;
    let mut phi = d.y.atan2(d.x);
    if phi < 0.0 {
        phi += std::f64::consts::TAU;
    }
    let i = (phi / theta).floor() as usize % k;
    // guard against rounding right at a ray
    if phi < i as f64 * theta {
        (i + k - 1) % k
    } else if phi >= (i + 1) as f64 * theta && i + 1 < k {
        i + 1
    } else {
        i
    }
}

fn projection(k: usize, cone: usize, p: Vec2, q: Vec2) -> f64 {
    let theta = std::f64::consts::TAU / k as f64;
    (q - p).dot(Vec2::from_polar(1.0, (cone as f64 + 0.5) * theta))
}

fn key(by_projection: bool, k: usize, cone: usize, p: Vec2, q: Vec2, id: usize) -> (f64, f64, usize) {
    let (len, proj) = (p.distance(q), projection(k, cone, p, q));
    if by_projection {
        (proj, len, id)
    } else {
        (len, proj, id)
    }
}

fn less(a: (f64, f64, usize), b: (f64, f64, usize)) -> bool {
    a.0.total_cmp(&b.0)
        .then(a.1.total_cmp(&b.1))
        .then(a.2.cmp(&b.2))
        .is_lt()
}

/// O(n^2 k) scan: for every point and every cone index, the best target.
pub fn brute_forward(points: &PointSet, k: usize, by_projection: bool) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    for a in 0..n {
        let pa = points.pos(a);
        for c in 0..k {
            let mut best: Option<((f64, f64, usize), usize)> = None;
            for b in 0..n {
                if b == a || cone(k, pa, points.pos(b)) != c {
                    continue;
                }
                let kb = key(by_projection, k, c, pa, points.pos(b), b);
                if best.map_or(true, |(cur, _)| less(kb, cur)) {
                    best = Some((kb, b));
                }
            }
            if let Some((_, b)) = best {
                edges.insert((a, b));
            }
        }
    }
    edges
}

/// Per target and per cone at the target, the best incoming forward edge.
pub fn brute_reverse(
    points: &PointSet,
    k: usize,
    by_projection: bool,
    forward: &BTreeSet<(usize, usize)>,
) -> BTreeSet<(usize, usize)> {
    let n = points.len();
    let mut edges = BTreeSet::new();
    for p in 0..n {
        let pp = points.pos(p);
        for c in 0..k {
            let mut best: Option<((f64, f64, usize), usize)> = None;
            for &(s, t) in forward {
                if t != p || cone(k, pp, points.pos(s)) != c {
                    continue;
                }
                let ks = key(by_projection, k, c, pp, points.pos(s), s);
                if best.map_or(true, |(cur, _)| less(ks, cur)) {
                    best = Some((ks, s));
                }
            }
            if let Some((_, s)) = best {
                edges.insert((s, p));
            }
        }
    }
    edges
}

/// Reference edge set for any kind.
pub fn brute_build(kind: GraphKind, points: &PointSet, k: usize) -> BTreeSet<(usize, usize)> {
    match kind {
        GraphKind::Yao => brute_forward(points, k, false),
        GraphKind::Theta => brute_forward(points, k, true),
        GraphKind::YaoYao => brute_reverse(points, k, false, &brute_forward(points, k, false)),
        GraphKind::ThetaTheta => brute_reverse(points, k, true, &brute_forward(points, k, true)),
        GraphKind::HalfTheta6 => brute_forward(points, 6, true)
            .into_iter()
            .filter(|&(a, b)| cone(6, points.pos(a), points.pos(b)) % 2 == 0)
            .collect(),
    }
}

pub fn scheme(k: usize) -> ConeScheme {
    ConeScheme::new(k).unwrap()
}
