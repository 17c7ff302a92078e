use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;
use serde::Serialize;

use crate::build::SpannerGraph;
use crate::error::{Error, Result};

/// Undirected weighted adjacency of a spanner graph. An edge present in
/// both directions appears once per endpoint.
#[derive(Debug, Clone)]
pub struct Adjacency {
    neighbors: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    pub fn new(graph: &SpannerGraph) -> Self {
        let mut neighbors: Vec<Vec<(usize, f64)>> = vec![Vec::new(); graph.len()];
        for e in graph.edges() {
            neighbors[e.source].push((e.target, e.length));
            neighbors[e.target].push((e.source, e.length));
        }
        for list in &mut neighbors {
            list.sort_by(|a, b| a.0.cmp(&b.0));
            list.dedup_by(|a, b| a.0 == b.0);
        }
        Self { neighbors }
    }

    pub fn len(&self) -> usize {
        self.neighbors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.neighbors.is_empty()
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.neighbors[v]
    }

    /// Single-source Dijkstra; the predecessor of each vertex is the
    /// smallest-id vertex among those realizing its distance.
    pub fn dijkstra(&self, source: usize) -> ShortestPathTree {
        self.dijkstra_bounded(source, f64::INFINITY)
    }

    /// Dijkstra restricted to edges no longer than `max_edge`.
    pub fn dijkstra_bounded(&self, source: usize, max_edge: f64) -> ShortestPathTree {
        let n = self.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![usize::MAX; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            vertex: source,
        });
        while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &(v, w) in &self.neighbors[u] {
                if done[v] || w > max_edge {
                    continue;
                }
                let candidate = d + w;
                if candidate < dist[v] || (candidate == dist[v] && u < pred[v]) {
                    let improved = candidate < dist[v];
                    dist[v] = candidate;
                    pred[v] = u;
                    if improved {
                        heap.push(HeapEntry {
                            dist: candidate,
                            vertex: v,
                        });
                    }
                }
            }
        }
        ShortestPathTree { source, dist, pred }
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // reversed for a min-heap; ties pop the smaller vertex id first
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    pub source: usize,
    dist: Vec<f64>,
    pred: Vec<usize>,
}

impl ShortestPathTree {
    pub fn distance(&self, target: usize) -> Option<f64> {
        let d = self.dist[target];
        d.is_finite().then_some(d)
    }

    pub fn distances(&self) -> Vec<Option<f64>> {
        (0..self.dist.len()).map(|t| self.distance(t)).collect()
    }

    /// Vertices from the source to `target`, or `None` if unreachable.
    pub fn path_to(&self, target: usize) -> Option<Vec<usize>> {
        self.distance(target)?;
        let mut path = vec![target];
        let mut v = target;
        while v != self.source {
            v = self.pred[v];
            path.push(v);
        }
        path.reverse();
        Some(path)
    }
}

/// A path in the undirected version of a graph and its Euclidean length.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub length: f64,
}

impl PathWitness {
    pub fn from_vertices(graph: &SpannerGraph, vertices: Vec<usize>) -> Self {
        let length = vertices
            .windows(2)
            .map(|w| graph.points.distance(w[0], w[1]))
            .sum();
        Self { vertices, length }
    }

    /// Longest Euclidean edge along the path; 0 for a single vertex.
    pub fn longest_edge(&self, graph: &SpannerGraph) -> f64 {
        self.vertices
            .windows(2)
            .map(|w| graph.points.distance(w[0], w[1]))
            .fold(0.0, f64::max)
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

fn check_id(graph: &SpannerGraph, id: usize) -> Result<()> {
    if id >= graph.len() {
        return Err(Error::UnknownPoint(id));
    }
    Ok(())
}

/// Shortest path between `a` and `b` treating every edge as undirected;
/// `Ok(None)` when they are disconnected.
pub fn shortest_path(graph: &SpannerGraph, a: usize, b: usize) -> Result<Option<PathWitness>> {
    check_id(graph, a)?;
    check_id(graph, b)?;
    let tree = Adjacency::new(graph).dijkstra(a);
    Ok(tree
        .path_to(b)
        .map(|vertices| PathWitness::from_vertices(graph, vertices)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StretchReport {
    /// Largest graph-to-Euclidean distance ratio over connected pairs.
    pub max_ratio: f64,
    pub witness: (usize, usize),
    pub pair_count: usize,
    pub disconnected_pairs: usize,
}

impl StretchReport {
    pub fn is_connected(&self) -> bool {
        self.disconnected_pairs == 0
    }
}

/// Ranks `(ratio, pair)` so that larger ratios win and, among equal ratios,
/// the lexicographically smaller pair wins.
fn better(a: (f64, (usize, usize)), b: (f64, (usize, usize))) -> bool {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => a.1 < b.1,
    }
}

/// Maximum over all unordered pairs of graph distance over Euclidean
/// distance.
pub fn spanning_ratio(graph: &SpannerGraph) -> Result<StretchReport> {
    let n = graph.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let adjacency = Adjacency::new(graph);
    let per_source: Vec<((f64, (usize, usize)), usize)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let tree = adjacency.dijkstra(s);
            let mut best = (f64::NEG_INFINITY, (usize::MAX, usize::MAX));
            let mut disconnected = 0;
            for t in s + 1..n {
                match tree.distance(t) {
                    Some(d) => {
                        let ratio = d / graph.points.distance(s, t);
                        if better((ratio, (s, t)), best) {
                            best = (ratio, (s, t));
                        }
                    }
                    None => disconnected += 1,
                }
            }
            (best, disconnected)
        })
        .collect();

    let mut best = (f64::NEG_INFINITY, (usize::MAX, usize::MAX));
    let mut disconnected_pairs = 0;
    for (candidate, disconnected) in per_source {
        disconnected_pairs += disconnected;
        if better(candidate, best) {
            best = candidate;
        }
    }
    if best.0 == f64::NEG_INFINITY {
        // every pair is disconnected
        best = (f64::INFINITY, (0, 1));
    }
    Ok(StretchReport {
        max_ratio: best.0,
        witness: best.1,
        pair_count: n * (n - 1) / 2,
        disconnected_pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeStretch {
    /// Largest host-path over Euclidean length ratio among reachable edges.
    pub max_ratio: f64,
    pub witness: Option<(usize, usize)>,
    pub edge_count: usize,
    pub unreachable_edges: usize,
}

/// Maximum over edges `ab` of Theta6 of the shortest host path between `a`
/// and `b` divided by `|ab|`.
pub fn per_edge_stretch(theta6: &SpannerGraph, host: &SpannerGraph) -> Result<EdgeStretch> {
    if theta6.kind != crate::build::GraphKind::Theta || theta6.scheme.k() != 6 {
        return Err(Error::WrongGraphKind {
            expected: "theta with k = 6",
            got: format!("{} with k = {}", theta6.kind, theta6.scheme.k()),
        });
    }
    if theta6.points != host.points {
        return Err(Error::MismatchedPointSets);
    }
    let adjacency = Adjacency::new(host);
    let n = theta6.len();
    let per_source: Vec<(Option<(f64, (usize, usize))>, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|s| {
            let out = theta6.out_edges(s);
            if out.is_empty() {
                return (None, 0, 0);
            }
            let tree = adjacency.dijkstra(s);
            let mut best: Option<(f64, (usize, usize))> = None;
            let mut unreachable = 0;
            for e in out {
                match tree.distance(e.target) {
                    Some(d) => {
                        let candidate = (d / e.length, (e.source, e.target));
                        if best.is_none_or(|b| better(candidate, b)) {
                            best = Some(candidate);
                        }
                    }
                    None => unreachable += 1,
                }
            }
            (best, out.len(), unreachable)
        })
        .collect();

    let mut best: Option<(f64, (usize, usize))> = None;
    let mut edge_count = 0;
    let mut unreachable_edges = 0;
    for (candidate, count, unreachable) in per_source {
        edge_count += count;
        unreachable_edges += unreachable;
        if let Some(c) = candidate {
            if best.is_none_or(|b| better(c, b)) {
                best = Some(c);
            }
        }
    }
    Ok(EdgeStretch {
        max_ratio: best.map_or(1.0, |b| b.0),
        witness: best.map(|b| b.1),
        edge_count,
        unreachable_edges,
    })
}

/// Dense all-pairs distances of the undirected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let d = self.data[i * self.n + j];
        d.is_finite().then_some(d)
    }
}

pub const ORACLE_LIMIT: usize = 2000;

/// Floyd-Warshall on the undirected weighted graph.
pub fn all_pairs_oracle(graph: &SpannerGraph) -> Result<DistanceMatrix> {
    let n = graph.len();
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            limit: ORACLE_LIMIT,
            got: n,
        });
    }
    let mut data = vec![f64::INFINITY; n * n];
    for i in 0..n {
        data[i * n + i] = 0.0;
    }
    for e in graph.edges() {
        let (a, b) = (e.source, e.target);
        let w = graph.points.distance(a, b);
        if w < data[a * n + b] {
            data[a * n + b] = w;
            data[b * n + a] = w;
        }
    }
    for m in 0..n {
        for i in 0..n {
            let dim = data[i * n + m];
            if dim.is_infinite() {
                continue;
            }
            for j in 0..n {
                let via = dim + data[m * n + j];
                if via < data[i * n + j] {
                    data[i * n + j] = via;
                }
            }
        }
    }
    Ok(DistanceMatrix { n, data })
}
