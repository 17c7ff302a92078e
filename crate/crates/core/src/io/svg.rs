//! Side-by-side SVG rendering of one or more graphs on the same points.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::build::SpannerGraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Width and height of each panel in pixels.
    pub panel_size: f64,
    pub margin: f64,
    pub point_radius: f64,
    /// Draw the cone rays of the graph's scheme around this point.
    pub cone_fan: Option<usize>,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        Self {
            panel_size: 400.0,
            margin: 20.0,
            point_radius: 3.0,
            cone_fan: None,
            labels: false,
        }
    }
}

pub fn render_svg(graphs: &[&SpannerGraph], options: &SvgOptions) -> Result<String> {
    let Some(first) = graphs.first() else {
        return Err(Error::InvalidParameter("nothing to render".into()));
    };
    let points = &first.points;
    if let Some(g) = graphs.iter().find(|g| g.points != *points) {
        return Err(Error::InvalidParameter(format!(
            "panel {} uses a different point set",
            g.kind
        )));
    }
    if let Some(v) = options.cone_fan {
        if v >= points.len() {
            return Err(Error::UnknownPoint(v));
        }
    }

    let (mut min_x, mut min_y) = (f64::INFINITY, f64::INFINITY);
    let (mut max_x, mut max_y) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points.iter() {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(f64::MIN_POSITIVE);
    let inner = options.panel_size - 2.0 * options.margin;
    let scale = if points.len() > 1 { inner / span } else { 1.0 };
    // y grows downward in SVG
    let map = |x: f64, y: f64| {
        (
            options.margin + (x - min_x) * scale,
            options.panel_size - options.margin - (y - min_y) * scale,
        )
    };

    let width = options.panel_size * graphs.len() as f64;
    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{h}" viewBox="0 0 {width} {h}">"#,
        h = options.panel_size
    )
    .expect("write");
    for (i, g) in graphs.iter().enumerate() {
        let offset = i as f64 * options.panel_size;
        writeln!(
            w,
            r#"<g class="panel" transform="translate({offset},0)"><title>{} k={}</title>"#,
            g.kind,
            g.scheme.k()
        )
        .expect("write");
        if let Some(v) = options.cone_fan {
            let apex = points.pos(v);
            let (ax, ay) = map(apex.x, apex.y);
            for r in 0..g.scheme.k() {
                let phi = g.scheme.ray_angle(r);
                let (ex, ey) = (ax + inner * phi.cos(), ay - inner * phi.sin());
                writeln!(
                    w,
                    r##"<line class="ray" x1="{ax:.3}" y1="{ay:.3}" x2="{ex:.3}" y2="{ey:.3}" stroke="#bbb" stroke-dasharray="4 3"/>"##
                )
                .expect("write");
            }
        }
        for e in g.edges() {
            let (s, t) = (points.pos(e.source), points.pos(e.target));
            let (x1, y1) = map(s.x, s.y);
            let (x2, y2) = map(t.x, t.y);
            writeln!(
                w,
                r##"<line class="edge" x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#246" stroke-width="1"/>"##
            )
            .expect("write");
        }
        for p in points.iter() {
            let (x, y) = map(p.x, p.y);
            writeln!(
                w,
                r##"<circle class="point" cx="{x:.3}" cy="{y:.3}" r="{}" fill="#c33"/>"##,
                options.point_radius
            )
            .expect("write");
            if options.labels {
                writeln!(
                    w,
                    r#"<text x="{:.3}" y="{:.3}" font-size="10">{}</text>"#,
                    x + options.point_radius + 1.0,
                    y - options.point_radius - 1.0,
                    p.id
                )
                .expect("write");
            }
        }
        w.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn export_svg(graphs: &[&SpannerGraph], path: &Path, options: &SvgOptions) -> Result<()> {
    fs::write(path, render_svg(graphs, options)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build::{build, GraphKind};
    use crate::geom::{ConeScheme, PointSet};

    #[test]
    fn four_panels_for_four_graphs() {
        let set = PointSet::from_coords([(0.0, 0.0), (1.0, 0.2), (0.4, 0.9), (0.7, 0.5)]).unwrap();
        let scheme = ConeScheme::new(6).unwrap();
        let graphs: Vec<SpannerGraph> = [
            GraphKind::Yao,
            GraphKind::Theta,
            GraphKind::YaoYao,
            GraphKind::ThetaTheta,
        ]
        .into_iter()
        .map(|kind| build(kind, &set, &scheme).unwrap())
        .collect();
        let refs: Vec<&SpannerGraph> = graphs.iter().collect();
        let svg = render_svg(
            &refs,
            &SvgOptions {
                cone_fan: Some(0),
                ..SvgOptions::default()
            },
        )
        .unwrap();
        assert_eq!(svg.matches(r#"<g class="panel""#).count(), 4);
        assert_eq!(svg.matches(r#"class="ray""#).count(), 24);
        assert_eq!(svg.matches(r#"class="point""#).count(), 16);
    }

    #[test]
    fn empty_and_mismatched_inputs_fail() {
        assert!(render_svg(&[], &SvgOptions::default()).is_err());
        let scheme = ConeScheme::new(6).unwrap();
        let a = build(GraphKind::Theta, &PointSet::from_coords([(0.0, 0.0)]).unwrap(), &scheme).unwrap();
        let b = build(GraphKind::Theta, &PointSet::from_coords([(1.0, 0.0)]).unwrap(), &scheme).unwrap();
        assert!(render_svg(&[&a, &b], &SvgOptions::default()).is_err());
    }
}
