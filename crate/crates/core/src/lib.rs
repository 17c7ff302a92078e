//! Cone-based geometric spanners on planar point sets.
//!
//! [`build`] constructs Yao and Theta graphs, their reverse-filtered
//! subgraphs and half-Theta6; [`analysis`] measures spanning ratios and
//! per-edge stretch; [`lemma`] checks the detour inequalities behind the
//! Theta-Theta_k stretch bounds and recomputes its constants.

pub mod analysis;
pub mod build;
pub mod error;
pub mod geom;
pub mod io;
pub mod lemma;

pub use build::{GraphKind, Parity, SpannerGraph};
pub use error::{Error, Result};
pub use geom::{ConeId, ConeScheme, Point, PointSet, Vec2};
