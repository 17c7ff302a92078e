//! Seeded point-set generators.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Point, PointSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distribution {
    Uniform,
    Grid,
    CircleStar,
    Clustered,
}

impl Distribution {
    pub fn name(self) -> &'static str {
        match self {
            Distribution::Uniform => "uniform",
            Distribution::Grid => "grid",
            Distribution::CircleStar => "circle-star",
            Distribution::Clustered => "clustered",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Distribution::Uniform),
            "grid" => Ok(Distribution::Grid),
            "circle-star" | "circle_star" => Ok(Distribution::CircleStar),
            "clustered" => Ok(Distribution::Clustered),
            other => Err(Error::InvalidSpec(format!("unknown distribution {other:?}"))),
        }
    }
}

/// Axis-aligned box `[min_x, max_x] x [min_y, max_y]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Default for BoundingBox {
    fn default() -> Self {
        Self {
            min_x: 0.0,
            min_y: 0.0,
            max_x: 1.0,
            max_y: 1.0,
        }
    }
}

impl BoundingBox {
    fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointSetSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
    pub bbox: BoundingBox,
}

impl PointSetSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        Self {
            distribution,
            n,
            seed,
            bbox: BoundingBox::default(),
        }
    }
}

/// Draws points one at a time, redrawing any that land on an earlier point.
fn rejecting<F>(n: usize, rng: &mut ChaCha8Rng, mut draw: F) -> Result<PointSet>
where
    F: FnMut(&mut ChaCha8Rng) -> (f64, f64),
{
    let mut seen = std::collections::HashSet::with_capacity(n);
    let mut points = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while points.len() < n {
        attempts += 1;
        if attempts > 100 * n + 1000 {
            return Err(Error::InvalidSpec(
                "could not place distinct points; is the box degenerate?".into(),
            ));
        }
        let (x, y) = draw(rng);
        // +0.0 normalizes negative zero so that -0 and 0 collide
        if seen.insert(((x + 0.0).to_bits(), (y + 0.0).to_bits())) {
            points.push(Point::new(points.len(), x, y));
        }
    }
    PointSet::from_points(points)
}

pub fn generate(spec: &PointSetSpec) -> Result<PointSet> {
    let n = spec.n;
    if n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let bbox = spec.bbox;
    if !(bbox.width() >= 0.0 && bbox.height() >= 0.0) {
        return Err(Error::InvalidSpec("bounding box has negative extent".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match spec.distribution {
        Distribution::Uniform => rejecting(n, &mut rng, |rng| {
            (
                bbox.min_x + rng.gen::<f64>() * bbox.width(),
                bbox.min_y + rng.gen::<f64>() * bbox.height(),
            )
        }),
        Distribution::Grid => {
            let cols = (n as f64).sqrt().ceil() as usize;
            let rows = n.div_ceil(cols);
            let step = |extent: f64, count: usize| {
                if count > 1 {
                    extent / (count - 1) as f64
                } else {
                    0.0
                }
            };
            let (dx, dy) = (step(bbox.width(), cols), step(bbox.height(), rows));
            let coords = (0..n).map(|i| {
                let (r, c) = (i / cols, i % cols);
                (bbox.min_x + c as f64 * dx, bbox.min_y + r as f64 * dy)
            });
            PointSet::from_coords(coords)
        }
        Distribution::CircleStar => {
            // centre first, then n - 1 rim points on the unit circle
            let rim = n - 1;
            let coords = std::iter::once((0.0, 0.0)).chain((0..rim).map(|j| {
                let phi = TAU * j as f64 / rim as f64 + 1e-4;
                (phi.cos(), phi.sin())
            }));
            PointSet::from_coords(coords)
        }
        Distribution::Clustered => {
            let clusters = ((n as f64).sqrt().round() as usize).clamp(1, 10);
            let centres: Vec<(f64, f64)> = (0..clusters)
                .map(|_| {
                    (
                        bbox.min_x + rng.gen::<f64>() * bbox.width(),
                        bbox.min_y + rng.gen::<f64>() * bbox.height(),
                    )
                })
                .collect();
            let spread = 0.05 * bbox.width().max(bbox.height());
            rejecting(n, &mut rng, |rng| {
                let (cx, cy) = centres[rng.gen_range(0..clusters)];
                let r = spread * rng.gen::<f64>().sqrt();
                let phi = rng.gen_range(0.0..TAU);
                (cx + r * phi.cos(), cy + r * phi.sin())
            })
        }
    }
}
