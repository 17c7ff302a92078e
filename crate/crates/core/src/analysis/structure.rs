use std::collections::BTreeMap;

use serde::Serialize;

use crate::build::SpannerGraph;
use crate::geom::{orient, Vec2};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreeStats {
    pub max_in: usize,
    pub max_out: usize,
    /// Largest in-degree plus out-degree of a single point.
    pub max_total: usize,
    /// Total degree to number of points with that degree.
    pub histogram: BTreeMap<usize, usize>,
    pub in_degree: Vec<usize>,
    pub out_degree: Vec<usize>,
}

pub fn degree_stats(graph: &SpannerGraph) -> DegreeStats {
    let n = graph.len();
    let mut in_degree = vec![0; n];
    let mut out_degree = vec![0; n];
    for e in graph.edges() {
        out_degree[e.source] += 1;
        in_degree[e.target] += 1;
    }
    let mut histogram = BTreeMap::new();
    for v in 0..n {
        *histogram.entry(in_degree[v] + out_degree[v]).or_insert(0) += 1;
    }
    DegreeStats {
        max_in: in_degree.iter().copied().max().unwrap_or(0),
        max_out: out_degree.iter().copied().max().unwrap_or(0),
        max_total: (0..n)
            .map(|v| in_degree[v] + out_degree[v])
            .max()
            .unwrap_or(0),
        histogram,
        in_degree,
        out_degree,
    }
}

fn on_segment(p: Vec2, a: Vec2, b: Vec2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test.
pub fn segments_intersect(p1: Vec2, p2: Vec2, q1: Vec2, q2: Vec2) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(p1, q1, q2))
        || (d2 == 0.0 && on_segment(p2, q1, q2))
        || (d3 == 0.0 && on_segment(q1, p1, p2))
        || (d4 == 0.0 && on_segment(q2, p1, p2))
}

/// Number of pairs of undirected edges that intersect without sharing an
/// endpoint.
pub fn crossing_count(graph: &SpannerGraph) -> usize {
    let mut segments: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .map(|e| (e.source.min(e.target), e.source.max(e.target)))
        .collect();
    segments.sort_unstable();
    segments.dedup();

    let pos = |i: usize| graph.points.pos(i);
    let mut count = 0;
    for (i, &(a, b)) in segments.iter().enumerate() {
        for &(c, d) in &segments[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if segments_intersect(pos(a), pos(b), pos(c), pos(d)) {
                count += 1;
            }
        }
    }
    count
}
