//! Point-set generation, file formats and SVG export.

mod files;
mod generate;
mod svg;

pub use files::{
    graph_from_json, graph_to_dot, graph_to_json, parse_points_csv, parse_points_json,
    points_to_csv, read_graph, read_points, write_graph, write_points, GraphFormat, PointFormat,
};
pub use generate::{generate, BoundingBox, Distribution, PointSetSpec};
pub use svg::{export_svg, render_svg, SvgOptions};
