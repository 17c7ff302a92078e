//! Point and graph files: CSV and JSON point sets, JSON and DOT graphs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::build::{DirectedEdge, GraphKind, SpannerGraph};
use crate::error::{Error, Result};
use crate::geom::{ConeScheme, Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    Dot,
}

fn extension(path: &Path) -> String {
    path.extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default()
        .to_ascii_lowercase()
}

impl PointFormat {
    /// Guesses from the file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        if extension(path) == "json" {
            PointFormat::Json
        } else {
            PointFormat::Csv
        }
    }
}

impl GraphFormat {
    pub fn from_path(path: &Path) -> Self {
        if extension(path) == "dot" || extension(path) == "gv" {
            GraphFormat::Dot
        } else {
            GraphFormat::Json
        }
    }
}

fn json_error(err: serde_json::Error) -> Error {
    match err.classify() {
        serde_json::error::Category::Io => Error::Io(err.to_string()),
        _ => Error::Parse {
            line: err.line(),
            message: err.to_string(),
        },
    }
}

/// Parses `id,x,y` rows after a header line.
pub fn parse_points_csv(text: &str) -> Result<PointSet> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| Error::Parse {
        line: 1,
        message: e.to_string(),
    })?;
    let names: Vec<&str> = headers.iter().collect();
    if names != ["id", "x", "y"] {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header id,x,y, found {}", names.join(",")),
        });
    }
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let field = |i: usize| record.get(i).unwrap_or_default();
        let bad = |what: &str, value: &str| Error::Parse {
            line,
            message: format!("invalid {what} {value:?}"),
        };
        let id = field(0).parse::<usize>().map_err(|_| bad("id", field(0)))?;
        let x = field(1).parse::<f64>().map_err(|_| bad("x", field(1)))?;
        let y = field(2).parse::<f64>().map_err(|_| bad("y", field(2)))?;
        if !x.is_finite() || !y.is_finite() {
            return Err(bad("coordinate", record.as_slice()));
        }
        points.push(Point::new(id, x, y));
    }
    PointSet::from_points(points)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PointsDoc {
    Bare(Vec<Point>),
    Wrapped { points: Vec<Point> },
}

pub fn parse_points_json(text: &str) -> Result<PointSet> {
    let doc: PointsDoc = serde_json::from_str(text).map_err(json_error)?;
    let points = match doc {
        PointsDoc::Bare(points) | PointsDoc::Wrapped { points } => points,
    };
    PointSet::from_points(points)
}

pub fn read_points(path: &Path, format: PointFormat) -> Result<PointSet> {
    let text = fs::read_to_string(path)?;
    match format {
        PointFormat::Csv => parse_points_csv(&text),
        PointFormat::Json => parse_points_json(&text),
    }
}

/// CSV with `{:?}`-formatted floats, the shortest text that parses back to
/// the same bits.
pub fn points_to_csv(points: &PointSet) -> String {
    let mut out = String::from("id,x,y\n");
    for p in points.iter() {
        writeln!(out, "{},{:?},{:?}", p.id, p.x, p.y).expect("write to string");
    }
    out
}

pub fn write_points(points: &PointSet, path: &Path, format: PointFormat) -> Result<()> {
    let text = match format {
        PointFormat::Csv => points_to_csv(points),
        PointFormat::Json => serde_json::to_string_pretty(points).map_err(json_error)? + "\n",
    };
    fs::write(path, text)?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    scheme: ConeScheme,
    kind: GraphKind,
    points: PointSet,
    edges: Vec<DirectedEdge>,
}

pub fn graph_to_json(graph: &SpannerGraph) -> Result<String> {
    let doc = GraphDoc {
        scheme: graph.scheme,
        kind: graph.kind,
        points: graph.points.clone(),
        edges: graph.edges().to_vec(),
    };
    Ok(serde_json::to_string_pretty(&doc).map_err(json_error)? + "\n")
}

pub fn graph_from_json(text: &str) -> Result<SpannerGraph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(json_error)?;
    let n = doc.points.len();
    for e in &doc.edges {
        for id in [e.source, e.target] {
            if id >= n {
                return Err(Error::UnknownPoint(id));
            }
        }
        if e.cone.0 >= doc.scheme.k() {
            return Err(Error::InvalidParameter(format!(
                "edge {}->{} in cone {} of a {}-cone scheme",
                e.source,
                e.target,
                e.cone.0,
                doc.scheme.k()
            )));
        }
    }
    Ok(SpannerGraph::from_parts(
        doc.scheme, doc.points, doc.kind, doc.edges,
    ))
}

pub fn graph_to_dot(graph: &SpannerGraph) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}_{}\" {{", graph.kind, graph.scheme.k()).expect("write");
    for p in graph.points.iter() {
        writeln!(out, "  {} [pos=\"{:?},{:?}!\"];", p.id, p.x, p.y).expect("write");
    }
    for e in graph.edges() {
        writeln!(out, "  {} -> {} [cone={}];", e.source, e.target, e.cone.0).expect("write");
    }
    out.push_str("}\n");
    out
}

pub fn write_graph(graph: &SpannerGraph, path: &Path, format: GraphFormat) -> Result<()> {
    let text = match format {
        GraphFormat::Json => graph_to_json(graph)?,
        GraphFormat::Dot => graph_to_dot(graph),
    };
    fs::write(path, text)?;
    Ok(())
}

/// Reads a graph written as JSON by [`write_graph`].
pub fn read_graph(path: &Path) -> Result<SpannerGraph> {
    graph_from_json(&fs::read_to_string(path)?)
}
