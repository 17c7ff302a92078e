//! Canonical Theta-configurations: a Theta6 edge `ab`, the Theta_k edge
//! `ab'` in the k-cone of `a` containing `b`, and the Theta-Theta_k edge
//! `a'b'` that survives into `b'` from the k-cone of `b'` containing `a`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_3, FRAC_PI_6};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::analysis::{Adjacency, PathWitness, ShortestPathTree};
use crate::build::{build_theta, reverse_filter, SpannerGraph};
use crate::error::{Error, Result};
use crate::geom::{ConeId, ConeScheme, PointSet, Vec2};

/// The six cones of the 6-cone scheme, numbered from 1 as `C_{6,i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SixCone {
    C61,
    C62,
    C63,
    C64,
    C65,
    C66,
}

impl SixCone {
    pub fn from_cone(cone: ConeId) -> Self {
        match cone.0 {
            0 => SixCone::C61,
            1 => SixCone::C62,
            2 => SixCone::C63,
            3 => SixCone::C64,
            4 => SixCone::C65,
            _ => SixCone::C66,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SixCone::C61 => "C61",
            SixCone::C62 => "C62",
            SixCone::C63 => "C63",
            SixCone::C64 => "C64",
            SixCone::C65 => "C65",
            SixCone::C66 => "C66",
        }
    }
}

impl fmt::Display for SixCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Four point ids in the order `a, b, b', a'` with their coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quad {
    pub ids: [usize; 4],
    pub positions: [Vec2; 4],
}

impl Quad {
    pub fn from_points(points: &PointSet, a: usize, b: usize, b_prime: usize, a_prime: usize) -> Self {
        let ids = [a, b, b_prime, a_prime];
        Self {
            ids,
            positions: ids.map(|i| points.pos(i)),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        let [a, b, bp, ap] = self.ids;
        a == ap || b == bp || a == bp || b == ap || a == b || bp == ap
    }
}

/// The rotation (in multiples of pi/3) and reflection that took a quad into
/// canonical position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    pub rotation_steps: usize,
    pub reflected: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CanonicalConfig {
    pub a: usize,
    pub b: usize,
    pub b_prime: usize,
    pub a_prime: usize,
    /// Angle of `ab` above the horizontal through `a`.
    pub alpha: f64,
    /// Angle of `ab'` above the horizontal through `a`.
    pub beta: f64,
    /// Angle of the lower ray of the k-cone of `a` containing `b`.
    pub gamma: f64,
    #[serde(skip)]
    pub scheme: ConeScheme,
    /// 6-cone of `a` containing `a'`; `None` when `a' = a`.
    pub case: Option<SixCone>,
    /// Canonical coordinates of `a, b, b', a'` with `a` at the origin.
    pub frame: Quad,
    pub symmetry: Symmetry,
}

impl CanonicalConfig {
    pub fn theta(&self) -> f64 {
        self.scheme.theta()
    }

    fn pos(&self, i: usize) -> Vec2 {
        self.frame.positions[i]
    }

    pub fn ab(&self) -> f64 {
        self.pos(0).distance(self.pos(1))
    }

    pub fn ab_prime(&self) -> f64 {
        self.pos(0).distance(self.pos(2))
    }

    pub fn a_prime_b_prime(&self) -> f64 {
        self.pos(3).distance(self.pos(2))
    }

    pub fn is_degenerate(&self) -> bool {
        self.frame.is_degenerate()
    }

    /// Violations of the structural invariants of a normalized configuration.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let theta = self.theta();
        let eps = 1e-9;
        let six = ConeScheme::new(6).expect("six cones");
        if six.cone_of(self.pos(0), self.pos(1)) != Some(ConeId(0)) {
            out.push(format!("ab not in C61 (alpha = {})", self.alpha));
        }
        if !(self.gamma >= -eps && self.gamma <= FRAC_PI_6 - theta / 2.0 + eps) {
            out.push(format!("gamma {} outside [0, pi/6 - theta/2]", self.gamma));
        }
        if !(self.beta >= self.gamma - eps && self.beta <= self.gamma + theta + eps) {
            out.push(format!(
                "beta {} outside [gamma, gamma + theta] with gamma {}",
                self.beta, self.gamma
            ));
        }
        if self.case == Some(SixCone::C63) {
            out.push("a' lies in C63".to_string());
        }
        out
    }
}

/// Rotates and reflects `quad` so that `ab` lies in `C_{6,1}(a)` and the
/// bisector of the k-cone of `a` containing `b` is at or below the bisector
/// at pi/6. Requires `k = 6k'`.
pub fn normalize_config(quad: &Quad, scheme: &ConeScheme) -> Result<CanonicalConfig> {
    if !scheme.is_hexagonal_multiple() {
        return Err(Error::NotHexagonalMultiple(scheme.k()));
    }
    let [a, b, _, _] = quad.ids;
    let k_prime = scheme.k() / 6;
    let origin = quad.positions[0];
    let translated = quad.positions.map(|p| p - origin);
    let cone = scheme
        .cone_of(Vec2::default(), translated[1])
        .ok_or(Error::DegenerateDirection(a, b))?;

    // k-cones nest in 6-cones, so the 6-cone follows from the k-cone index
    let rotation_steps = cone.0 / k_prime;
    let within = cone.0 % k_prime;
    let rotation = -(rotation_steps as f64) * FRAC_PI_3;
    let mut positions = if rotation_steps == 0 {
        translated
    } else {
        translated.map(|p| p.rotate(rotation))
    };

    let reflected = 2 * within + 1 > k_prime;
    let within = if reflected {
        positions = positions.map(reflect_across_sixth);
        k_prime - 1 - within
    } else {
        within
    };

    let angle_of = |p: Vec2| p.y.atan2(p.x);
    let six = ConeScheme::new(6)?;
    let frame = Quad {
        ids: quad.ids,
        positions,
    };
    Ok(CanonicalConfig {
        a,
        b,
        b_prime: quad.ids[2],
        a_prime: quad.ids[3],
        alpha: angle_of(positions[1]),
        beta: angle_of(positions[2]),
        gamma: within as f64 * scheme.theta(),
        scheme: *scheme,
        case: six
            .cone_of(Vec2::default(), positions[3])
            .map(SixCone::from_cone),
        frame,
        symmetry: Symmetry {
            rotation_steps,
            reflected,
        },
    })
}

/// Reflection across the line through the origin at angle pi/6.
fn reflect_across_sixth(p: Vec2) -> Vec2 {
    let (s, c) = FRAC_PI_3.sin_cos();
    Vec2::new(c * p.x + s * p.y, s * p.x - c * p.y)
}

/// Shortest paths in an undirected Theta6 graph, with per-source trees built
/// on first use.
#[derive(Debug)]
pub struct Theta6Paths {
    adjacency: Adjacency,
    trees: Vec<OnceLock<ShortestPathTree>>,
}

impl Theta6Paths {
    pub fn new(theta6: &SpannerGraph) -> Self {
        Self {
            adjacency: Adjacency::new(theta6),
            trees: (0..theta6.len()).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn tree(&self, source: usize) -> &ShortestPathTree {
        self.trees[source].get_or_init(|| self.adjacency.dijkstra(source))
    }

    pub fn distance(&self, u: usize, v: usize) -> Option<f64> {
        self.tree(u).distance(v)
    }

    /// Shortest path among those whose edges are all at most `max_edge`.
    pub fn bounded_path(
        &self,
        graph: &SpannerGraph,
        u: usize,
        v: usize,
        max_edge: f64,
    ) -> Option<PathWitness> {
        self.adjacency
            .dijkstra_bounded(u, max_edge)
            .path_to(v)
            .map(|vertices| PathWitness::from_vertices(graph, vertices))
    }

    pub fn path(&self, graph: &SpannerGraph, u: usize, v: usize) -> Option<PathWitness> {
        self.tree(u)
            .path_to(v)
            .map(|vertices| PathWitness::from_vertices(graph, vertices))
    }
}

/// Theta6, Theta_k and Theta-Theta_k over one point set, with the lookups
/// needed to complete canonical configurations.
#[derive(Debug)]
pub struct ThetaFamily {
    pub scheme: ConeScheme,
    pub theta6: SpannerGraph,
    pub theta_k: SpannerGraph,
    pub theta_theta_k: SpannerGraph,
    pub paths: Theta6Paths,
    /// `(target, cone at target)` to the surviving Theta-Theta_k source.
    surviving_source: HashMap<(usize, ConeId), usize>,
}

impl ThetaFamily {
    pub fn build(points: &PointSet, scheme: &ConeScheme) -> Result<Self> {
        if !scheme.is_hexagonal_multiple() {
            return Err(Error::NotHexagonalMultiple(scheme.k()));
        }
        let theta6 = build_theta(points, &ConeScheme::new(6)?)?;
        let theta_k = build_theta(points, scheme)?;
        let theta_theta_k = reverse_filter(&theta_k)?;
        let mut surviving_source = HashMap::new();
        for e in theta_theta_k.edges() {
            let cone = scheme
                .cone_of(points.pos(e.target), points.pos(e.source))
                .expect("distinct points");
            surviving_source.insert((e.target, cone), e.source);
        }
        let paths = Theta6Paths::new(&theta6);
        Ok(Self {
            scheme: *scheme,
            theta6,
            theta_k,
            theta_theta_k,
            paths,
            surviving_source,
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.theta6.points
    }

    /// Target of the Theta_k edge of `a` in the k-cone of `a` containing `b`.
    pub fn b_prime(&self, a: usize, b: usize) -> usize {
        let pts = self.points();
        let cone = self
            .scheme
            .cone_of(pts.pos(a), pts.pos(b))
            .expect("distinct points");
        self.theta_k
            .out_edge_in_cone(a, cone)
            .expect("a nonempty cone has an edge")
            .target
    }

    /// Source of the Theta-Theta_k edge into `b_prime` from the k-cone of
    /// `b_prime` containing `a`.
    pub fn a_prime(&self, b_prime: usize, a: usize) -> usize {
        let pts = self.points();
        let cone = self
            .scheme
            .cone_of(pts.pos(b_prime), pts.pos(a))
            .expect("distinct points");
        self.surviving_source[&(b_prime, cone)]
    }

    pub fn quad_for_edge(&self, a: usize, b: usize) -> Quad {
        let b_prime = self.b_prime(a, b);
        let a_prime = self.a_prime(b_prime, a);
        Quad::from_points(self.points(), a, b, b_prime, a_prime)
    }

    pub fn theta6_path(&self, u: usize, v: usize) -> Option<PathWitness> {
        self.paths.path(&self.theta6, u, v)
    }

    pub fn extract_configs(&self) -> Result<Extraction> {
        let mut extraction = Extraction::default();
        for e in self.theta6.edges() {
            let quad = self.quad_for_edge(e.source, e.target);
            let [a, b, bp, ap] = quad.ids;
            if quad.is_degenerate() {
                if b == bp {
                    extraction.stats.b_equals_b_prime += 1;
                }
                if a == ap {
                    extraction.stats.a_equals_a_prime += 1;
                }
                if a == bp || b == ap {
                    extraction.stats.other_coincidence += 1;
                }
                continue;
            }
            extraction.configs.push(normalize_config(&quad, &self.scheme)?);
        }
        Ok(extraction)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ExtractStats {
    pub b_equals_b_prime: usize,
    pub a_equals_a_prime: usize,
    pub other_coincidence: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Extraction {
    pub configs: Vec<CanonicalConfig>,
    pub stats: ExtractStats,
}

/// All non-degenerate canonical configurations generated by the Theta6
/// edges of `points`.
pub fn extract_configs(points: &PointSet, scheme: &ConeScheme) -> Result<Extraction> {
    ThetaFamily::build(points, scheme)?.extract_configs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn thirty() -> ConeScheme {
        ConeScheme::new(30).unwrap()
    }

    #[test]
    fn rejects_non_hexagonal_schemes() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.0)]).unwrap();
        let k = ConeScheme::new(32).unwrap();
        assert_eq!(
            extract_configs(&set, &k).unwrap_err(),
            Error::NotHexagonalMultiple(32)
        );
    }

    #[test]
    fn two_points_have_only_degenerate_quads() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.3)]).unwrap();
        let ex = extract_configs(&set, &thirty()).unwrap();
        assert!(ex.configs.is_empty());
        assert_eq!(ex.stats.b_equals_b_prime, 2);
        assert_eq!(ex.stats.a_equals_a_prime, 2);
    }

    fn canonical_quad() -> Quad {
        // a at the origin, b in the second k-cone of C61 (theta = pi/15)
        let theta = TAU / 30.0;
        Quad {
            ids: [0, 1, 2, 3],
            positions: [
                Vec2::default(),
                Vec2::from_polar(1.0, 1.4 * theta),
                Vec2::from_polar(1.05, 1.8 * theta),
                Vec2::new(0.02, 0.1),
            ],
        }
    }

    #[test]
    fn canonical_quad_is_fixed() {
        let quad = canonical_quad();
        let c = normalize_config(&quad, &thirty()).unwrap();
        assert_eq!(c.frame, quad);
        assert_eq!(c.symmetry, Symmetry { rotation_steps: 0, reflected: false });
        assert!((c.gamma - TAU / 30.0).abs() < 1e-15);
        assert_eq!(c.case, Some(SixCone::C62));
        assert!(c.invariant_violations().is_empty());
    }

    #[test]
    fn rotation_by_two_sixths_is_undone() {
        let quad = canonical_quad();
        let base = normalize_config(&quad, &thirty()).unwrap();
        let rotated = Quad {
            ids: quad.ids,
            positions: quad.positions.map(|p| p.rotate(2.0 * FRAC_PI_3) + Vec2::new(3.0, -2.0)),
        };
        let c = normalize_config(&rotated, &thirty()).unwrap();
        assert_eq!(c.symmetry.rotation_steps, 2);
        assert!(!c.symmetry.reflected);
        assert!((c.alpha - base.alpha).abs() < 1e-12);
        assert!((c.beta - base.beta).abs() < 1e-12);
        assert_eq!(c.gamma, base.gamma);
        assert_eq!(c.case, base.case);
        for i in 0..4 {
            assert!(c.frame.positions[i].distance(base.frame.positions[i]) < 1e-12);
        }
    }

    #[test]
    fn reflected_quad_restores_bisector_condition() {
        // mirror the canonical quad across the pi/6 line: b moves to the
        // fourth k-cone of C61, whose bisector is above pi/6
        let quad = canonical_quad();
        let mirrored = Quad {
            ids: quad.ids,
            positions: quad.positions.map(reflect_across_sixth),
        };
        let c = normalize_config(&mirrored, &thirty()).unwrap();
        assert!(c.symmetry.reflected);
        let theta = TAU / 30.0;
        // gamma is the lower ray of the k-cone holding b after reflection
        assert!((c.gamma - theta).abs() < 1e-15);
        assert!(c.gamma + theta / 2.0 <= FRAC_PI_6 + 1e-15);
        assert!((c.alpha - 1.4 * theta).abs() < 1e-12);
        assert!(c.invariant_violations().is_empty());
    }

    #[test]
    fn normalization_is_idempotent() {
        let quad = canonical_quad();
        let mirrored = Quad {
            ids: quad.ids,
            positions: quad.positions.map(|p| reflect_across_sixth(p).rotate(-FRAC_PI_3)),
        };
        let once = normalize_config(&mirrored, &thirty()).unwrap();
        let twice = normalize_config(&once.frame, &thirty()).unwrap();
        assert_eq!(once.frame, twice.frame);
        assert_eq!(once.alpha, twice.alpha);
        assert_eq!(once.gamma, twice.gamma);
    }
}
