//! Construction of directed Yao and Theta graphs, their reverse-filtered
//! subgraphs, and half-Theta6.
//!
//! All constructions are the direct quadratic scans. Ties are resolved by a
//! fixed total order so that results never depend on iteration order or on
//! the number of worker threads.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{ConeId, ConeScheme, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Yao,
    Theta,
    YaoYao,
    ThetaTheta,
    HalfTheta6,
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Yao => "yao",
            GraphKind::Theta => "theta",
            GraphKind::YaoYao => "yao-yao",
            GraphKind::ThetaTheta => "theta-theta",
            GraphKind::HalfTheta6 => "half-theta6",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yao" => Ok(GraphKind::Yao),
            "theta" => Ok(GraphKind::Theta),
            "yao-yao" => Ok(GraphKind::YaoYao),
            "theta-theta" => Ok(GraphKind::ThetaTheta),
            "half-theta6" => Ok(GraphKind::HalfTheta6),
            other => Err(Error::InvalidParameter(format!("unknown graph kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn matches(self, cone: ConeId) -> bool {
        match self {
            Parity::Even => cone.0 % 2 == 0,
            Parity::Odd => cone.0 % 2 == 1,
        }
    }
}

/// An edge `source -> target` chosen in the source cone `cone`.
///
/// `projection` is the length of `target - source` projected onto the
/// bisector of that cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub source: usize,
    pub target: usize,
    pub cone: ConeId,
    pub length: f64,
    pub projection: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpannerGraph {
    pub scheme: ConeScheme,
    pub points: PointSet,
    pub kind: GraphKind,
    edges: Vec<DirectedEdge>,
}

impl SpannerGraph {
    /// Assembles a graph from already-selected edges. Edges are stored sorted
    /// by `(source, cone, target)`.
    pub fn from_parts(
        scheme: ConeScheme,
        points: PointSet,
        kind: GraphKind,
        mut edges: Vec<DirectedEdge>,
    ) -> Self {
        edges.sort_by(|a, b| {
            (a.source, a.cone, a.target).cmp(&(b.source, b.cone, b.target))
        });
        Self {
            scheme,
            points,
            kind,
            edges,
        }
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains_edge(&self, source: usize, target: usize) -> bool {
        self.out_edges(source).iter().any(|e| e.target == target)
    }

    pub fn contains_undirected(&self, a: usize, b: usize) -> bool {
        self.contains_edge(a, b) || self.contains_edge(b, a)
    }

    pub fn out_edges(&self, source: usize) -> &[DirectedEdge] {
        let start = self.edges.partition_point(|e| e.source < source);
        let end = self.edges.partition_point(|e| e.source <= source);
        &self.edges[start..end]
    }

    pub fn out_edge_in_cone(&self, source: usize, cone: ConeId) -> Option<&DirectedEdge> {
        self.out_edges(source).iter().find(|e| e.cone == cone)
    }

    /// `(source, target)` pairs in storage order.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.source, e.target)).collect()
    }
}

/// Lexicographic comparison on a primary metric, a secondary metric and an
/// id.
fn rank(a: (f64, f64, usize), b: (f64, f64, usize)) -> Ordering {
    a.0.total_cmp(&b.0)
        .then(a.1.total_cmp(&b.1))
        .then(a.2.cmp(&b.2))
}

#[derive(Clone, Copy)]
enum Criterion {
    Length,
    Projection,
}

fn forward_edges(points: &PointSet, scheme: &ConeScheme, criterion: Criterion) -> Vec<DirectedEdge> {
    let per_source: Vec<Vec<DirectedEdge>> = points
        .points()
        .par_iter()
        .map(|a| {
            let mut best: Vec<Option<DirectedEdge>> = vec![None; scheme.k()];
            let apex = a.pos();
            for b in points.iter() {
                if b.id == a.id {
                    continue;
                }
                let Some(cone) = scheme.cone_of(apex, b.pos()) else {
                    continue;
                };
                let candidate = DirectedEdge {
                    source: a.id,
                    target: b.id,
                    cone,
                    length: apex.distance(b.pos()),
                    projection: scheme.projection_in(cone, apex, b.pos()),
                };
                let slot = &mut best[cone.0];
                let better = match slot {
                    None => true,
                    Some(current) => {
                        rank(forward_key(&candidate, criterion), forward_key(current, criterion))
                            == Ordering::Less
                    }
                };
                if better {
                    *slot = Some(candidate);
                }
            }
            best.into_iter().flatten().collect()
        })
        .collect();
    per_source.into_iter().flatten().collect()
}

fn forward_key(e: &DirectedEdge, criterion: Criterion) -> (f64, f64, usize) {
    match criterion {
        Criterion::Length => (e.length, e.projection, e.target),
        Criterion::Projection => (e.projection, e.length, e.target),
    }
}

fn ensure_nonempty(points: &PointSet) -> Result<()> {
    if points.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    Ok(())
}

/// Per point and nonempty cone, an edge to the nearest point in that cone.
pub fn build_yao(points: &PointSet, scheme: &ConeScheme) -> Result<SpannerGraph> {
    ensure_nonempty(points)?;
    let edges = forward_edges(points, scheme, Criterion::Length);
    Ok(SpannerGraph::from_parts(*scheme, points.clone(), GraphKind::Yao, edges))
}

/// Per point and nonempty cone, an edge to the point with the smallest
/// projection onto the cone bisector.
pub fn build_theta(points: &PointSet, scheme: &ConeScheme) -> Result<SpannerGraph> {
    ensure_nonempty(points)?;
    let edges = forward_edges(points, scheme, Criterion::Projection);
    Ok(SpannerGraph::from_parts(*scheme, points.clone(), GraphKind::Theta, edges))
}

/// Keeps, for each target `p` and each cone of `p`, a single best incoming
/// edge whose source lies in that cone.
///
/// The cone is taken at the target. Yao input ranks incoming edges by
/// length, Theta input by the projection onto the target cone's bisector.
pub fn reverse_filter(graph: &SpannerGraph) -> Result<SpannerGraph> {
    let (criterion, kind) = match graph.kind {
        GraphKind::Yao => (Criterion::Length, GraphKind::YaoYao),
        GraphKind::Theta => (Criterion::Projection, GraphKind::ThetaTheta),
        other => {
            return Err(Error::WrongGraphKind {
                expected: "yao or theta",
                got: other.to_string(),
            })
        }
    };
    let scheme = &graph.scheme;
    let points = &graph.points;

    let mut incoming: Vec<Vec<usize>> = vec![Vec::new(); points.len()];
    for (i, e) in graph.edges().iter().enumerate() {
        incoming[e.target].push(i);
    }

    let kept: Vec<Vec<DirectedEdge>> = incoming
        .par_iter()
        .enumerate()
        .map(|(target, edge_ids)| {
            let apex = points.pos(target);
            let mut best: HashMap<ConeId, ((f64, f64, usize), DirectedEdge)> = HashMap::new();
            for &i in edge_ids {
                let e = graph.edges()[i];
                let source = points.pos(e.source);
                let Some(cone) = scheme.cone_of(apex, source) else {
                    continue;
                };
                let projection = scheme.projection_in(cone, apex, source);
                let key = match criterion {
                    Criterion::Length => (e.length, projection, e.source),
                    Criterion::Projection => (projection, e.length, e.source),
                };
                match best.get(&cone) {
                    Some((current, _)) if rank(key, *current) != Ordering::Less => {}
                    _ => {
                        best.insert(cone, (key, e));
                    }
                }
            }
            best.into_values().map(|(_, e)| e).collect()
        })
        .collect();

    let edges = kept.into_iter().flatten().collect();
    Ok(SpannerGraph::from_parts(*scheme, points.clone(), kind, edges))
}

/// Theta6 restricted to the edges whose source cone has the given parity.
pub fn build_half_theta6(points: &PointSet, parity: Parity) -> Result<SpannerGraph> {
    let six = ConeScheme::new(6)?;
    let theta6 = build_theta(points, &six)?;
    let edges = theta6
        .edges()
        .iter()
        .filter(|e| parity.matches(e.cone))
        .copied()
        .collect();
    Ok(SpannerGraph::from_parts(six, points.clone(), GraphKind::HalfTheta6, edges))
}

/// Builds any supported kind; `half-theta6` uses the even cones and ignores
/// `scheme`.
pub fn build(kind: GraphKind, points: &PointSet, scheme: &ConeScheme) -> Result<SpannerGraph> {
    match kind {
        GraphKind::Yao => build_yao(points, scheme),
        GraphKind::Theta => build_theta(points, scheme),
        GraphKind::YaoYao => reverse_filter(&build_yao(points, scheme)?),
        GraphKind::ThetaTheta => reverse_filter(&build_theta(points, scheme)?),
        GraphKind::HalfTheta6 => build_half_theta6(points, Parity::Even),
    }
}
