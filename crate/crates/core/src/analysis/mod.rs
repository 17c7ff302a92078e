//! Shortest paths, spanning ratios, per-edge stretch, degree statistics,
//! planarity checks and the table of published bounds.

mod bounds;
mod paths;
mod structure;

pub use bounds::{per_edge_stretch_bound, theoretical_bound, theta_general_bound, Bound};
pub use paths::{
    all_pairs_oracle, per_edge_stretch, shortest_path, spanning_ratio, Adjacency,
    DistanceMatrix, EdgeStretch, PathWitness, ShortestPathTree, StretchReport, ORACLE_LIMIT,
};
pub use structure::{crossing_count, degree_stats, segments_intersect, DegreeStats};
