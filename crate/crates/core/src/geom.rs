//! Planar primitives: points, cones, bisector projections and canonical
//! triangles.
//!
//! Cone `i` of a [`ConeScheme`] covers the directions `[i*theta, (i+1)*theta)`
//! measured counterclockwise from the positive x-axis. The lower ray belongs
//! to the cone and the upper ray does not. Boundary decisions compare the
//! normalized direction angle against the ray angles exactly as computed in
//! `f64`; there is no epsilon snapping.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_3, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        (other - self).norm()
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Direction angle in `[0, 2*pi)`; `-0.0` maps to `0.0`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

/// Maps any finite angle into `[0, 2*pi)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let mut phi = angle % TAU;
    if phi < 0.0 {
        phi += TAU;
    }
    // tiny negative inputs round up to exactly 2*pi
    if phi >= TAU || phi == 0.0 {
        phi = 0.0;
    }
    phi
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(id: usize, x: f64, y: f64) -> Self {
        Self { id, x, y }
    }

    pub fn pos(&self) -> Vec2 {
        Vec2::new(self.x, self.y)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        self.pos().distance(other.pos())
    }
}

/// A validated point set: ids are `0..n` in order and no two points share
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Assigns ids `0..n` in input order.
    pub fn from_coords<I>(coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let points = coords
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Point::new(id, x, y))
            .collect();
        Self::from_points(points)
    }

    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        for (position, p) in points.iter().enumerate() {
            if p.id != position {
                return Err(Error::NonContiguousIds {
                    position,
                    found: p.id,
                });
            }
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "point {} has non-finite coordinates",
                    p.id
                )));
            }
        }
        let duplicates = find_duplicates(&points);
        if !duplicates.is_empty() {
            return Err(Error::DuplicatePoints(duplicates));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, id: usize) -> Result<&Point> {
        self.points.get(id).ok_or(Error::UnknownPoint(id))
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn pos(&self, id: usize) -> Vec2 {
        self.points[id].pos()
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        self.pos(a).distance(self.pos(b))
    }
}

impl TryFrom<Vec<Point>> for PointSet {
    type Error = Error;
    fn try_from(points: Vec<Point>) -> Result<Self> {
        Self::from_points(points)
    }
}

impl From<PointSet> for Vec<Point> {
    fn from(set: PointSet) -> Self {
        set.points
    }
}

/// Ids of every point whose exact coordinates occur more than once.
fn find_duplicates(points: &[Point]) -> Vec<usize> {
    let mut seen: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    for p in points {
        // +0.0 and -0.0 are the same location
        let key = ((p.x + 0.0).to_bits(), (p.y + 0.0).to_bits());
        seen.entry(key).or_default().push(p.id);
    }
    let mut ids: Vec<usize> = seen
        .into_values()
        .filter(|group| group.len() > 1)
        .flatten()
        .collect();
    ids.sort_unstable();
    ids
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConeId(pub usize);

impl ConeId {
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ConeSchemeRepr", into = "ConeSchemeRepr")]
pub struct ConeScheme {
    k: usize,
    theta: f64,
}

#[derive(Serialize, Deserialize)]
struct ConeSchemeRepr {
    k: usize,
}

impl TryFrom<ConeSchemeRepr> for ConeScheme {
    type Error = Error;
    fn try_from(repr: ConeSchemeRepr) -> Result<Self> {
        ConeScheme::new(repr.k)
    }
}

impl From<ConeScheme> for ConeSchemeRepr {
    fn from(scheme: ConeScheme) -> Self {
        ConeSchemeRepr { k: scheme.k }
    }
}

impl ConeScheme {
    pub fn new(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidConeCount(k));
        }
        Ok(Self {
            k,
            theta: TAU / k as f64,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// True when every cone nests inside a cone of the 6-cone scheme, the
    /// setting in which Theta-Theta stretch analysis applies.
    pub fn is_hexagonal_multiple(&self) -> bool {
        self.k % 6 == 0
    }

    pub fn ray_angle(&self, i: usize) -> f64 {
        i as f64 * self.theta
    }

    pub fn bisector_angle(&self, cone: ConeId) -> f64 {
        (cone.0 as f64 + 0.5) * self.theta
    }

    /// Cone containing a direction angle already normalized to `[0, 2*pi)`.
    pub fn cone_of_angle(&self, phi: f64) -> ConeId {
        let k = self.k;
        let mut i = ((phi / self.theta).floor() as usize).min(k - 1);
        // settle the exact half-open comparison against the rays as computed
        while i > 0 && self.ray_angle(i) > phi {
            i -= 1;
        }
        while i + 1 < k && self.ray_angle(i + 1) <= phi {
            i += 1;
        }
        ConeId(i)
    }

    pub fn cone_of(&self, apex: Vec2, target: Vec2) -> Option<ConeId> {
        let d = target - apex;
        if d.x == 0.0 && d.y == 0.0 {
            return None;
        }
        Some(self.cone_of_angle(d.angle()))
    }

    /// Length of the projection of `target - apex` onto the bisector of
    /// `cone`.
    pub fn projection_in(&self, cone: ConeId, apex: Vec2, target: Vec2) -> f64 {
        let d = target - apex;
        let (s, c) = self.bisector_angle(cone).sin_cos();
        d.x * c + d.y * s
    }

    pub fn projection(&self, apex: Vec2, target: Vec2) -> Option<f64> {
        self.cone_of(apex, target)
            .map(|cone| self.projection_in(cone, apex, target))
    }

    /// Canonical triangle for arbitrary coordinates; `None` when they
    /// coincide.
    pub fn triangle_at(&self, apex: Vec2, target: Vec2) -> Option<TriangleShape> {
        let cone = self.cone_of(apex, target)?;
        let height = self.projection_in(cone, apex, target);
        let side = height / (self.theta / 2.0).cos();
        let i = cone.0;
        Some(TriangleShape {
            scheme: *self,
            cone,
            apex,
            target,
            height,
            corner_x: apex + Vec2::from_polar(side, self.ray_angle(i)),
            corner_y: apex + Vec2::from_polar(side, self.ray_angle(i + 1)),
        })
    }
}

pub fn cone_index(scheme: &ConeScheme, apex: &Point, target: &Point) -> Result<ConeId> {
    scheme
        .cone_of(apex.pos(), target.pos())
        .ok_or(Error::DegenerateDirection(apex.id, target.id))
}

pub fn bisector_projection(scheme: &ConeScheme, apex: &Point, target: &Point) -> Result<f64> {
    scheme
        .projection(apex.pos(), target.pos())
        .ok_or(Error::DegenerateDirection(apex.id, target.id))
}

/// Geometry of a canonical triangle: apex, the two corners on the cone rays
/// (`corner_x` on the lower ray, `corner_y` on the upper one) and the base
/// through `target`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleShape {
    pub scheme: ConeScheme,
    pub cone: ConeId,
    pub apex: Vec2,
    pub target: Vec2,
    pub height: f64,
    pub corner_x: Vec2,
    pub corner_y: Vec2,
}

impl TriangleShape {
    pub fn side(&self) -> f64 {
        self.height / (self.scheme.theta() / 2.0).cos()
    }

    /// Half-open on the two ray sides, closed on the base. The apex itself
    /// is not considered contained.
    pub fn contains(&self, p: Vec2) -> bool {
        match self.scheme.cone_of(self.apex, p) {
            Some(cone) if cone == self.cone => {
                self.scheme.projection_in(cone, self.apex, p) <= self.height
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalTriangle {
    pub apex: Point,
    pub target: Point,
    pub cone: ConeId,
    pub corner_x: Vec2,
    pub corner_y: Vec2,
    pub shape: TriangleShape,
}

impl CanonicalTriangle {
    pub fn height(&self) -> f64 {
        self.shape.height
    }

    pub fn side(&self) -> f64 {
        self.shape.side()
    }

    pub fn contains(&self, p: Vec2) -> bool {
        self.shape.contains(p)
    }
}

pub fn canonical_triangle(
    scheme: &ConeScheme,
    apex: &Point,
    target: &Point,
) -> Result<CanonicalTriangle> {
    let shape = scheme
        .triangle_at(apex.pos(), target.pos())
        .ok_or(Error::DegenerateDirection(apex.id, target.id))?;
    Ok(CanonicalTriangle {
        apex: *apex,
        target: *target,
        cone: shape.cone,
        corner_x: shape.corner_x,
        corner_y: shape.corner_y,
        shape,
    })
}

/// True iff no point other than the apex and the defining target lies in the
/// triangle.
pub fn triangle_empty(tri: &CanonicalTriangle, points: &PointSet) -> bool {
    !points
        .iter()
        .any(|p| p.id != tri.apex.id && p.id != tri.target.id && tri.contains(p.pos()))
}

/// `T(alpha) = (sin(pi/3 - alpha) - sin(alpha)) / sin(pi/3)` on `[0, pi/3]`.
pub fn t_function(alpha: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_3).contains(&alpha) {
        return Err(Error::AngleOutOfRange(alpha));
    }
    Ok(t_unchecked(alpha))
}

pub(crate) fn t_unchecked(alpha: f64) -> f64 {
    ((FRAC_PI_3 - alpha).sin() - alpha.sin()) / FRAC_PI_3.sin()
}

/// Orientation of the triple: positive when counterclockwise.
pub fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b - a).cross(c - a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

    fn origin() -> Point {
        Point::new(0, 0.0, 0.0)
    }

    #[test]
    fn cone_index_examples() {
        let six = ConeScheme::new(6).unwrap();
        assert_eq!(
            cone_index(&six, &origin(), &Point::new(1, 1.0, 0.0)).unwrap(),
            ConeId(0)
        );
        assert_eq!(
            cone_index(&six, &origin(), &Point::new(1, 0.0, 1.0)).unwrap(),
            ConeId(1)
        );
        let thirty = ConeScheme::new(30).unwrap();
        let phi = 11.0 * PI / 30.0 + 1e-3;
        let target = Point::new(1, phi.cos(), phi.sin());
        assert_eq!(cone_index(&thirty, &origin(), &target).unwrap(), ConeId(5));
    }

    #[test]
    fn coincident_points_are_rejected() {
        let six = ConeScheme::new(6).unwrap();
        let a = Point::new(0, 1.0, 2.0);
        let b = Point::new(1, 1.0, 2.0);
        assert_eq!(
            cone_index(&six, &a, &b),
            Err(Error::DegenerateDirection(0, 1))
        );
        assert!(bisector_projection(&six, &a, &b).is_err());
        assert!(canonical_triangle(&six, &a, &b).is_err());
    }

    #[test]
    fn negative_zero_direction_is_cone_zero() {
        let six = ConeScheme::new(6).unwrap();
        let apex = Vec2::new(1.0, 0.0);
        let target = Vec2::new(2.0, -0.0);
        assert_eq!(six.cone_of(apex, target), Some(ConeId(0)));
        assert_eq!(normalize_angle(-0.0), 0.0);
        assert!(normalize_angle(-1e-300) < TAU);
    }

    #[test]
    fn ray_directions_belong_to_the_upper_cone() {
        let six = ConeScheme::new(6).unwrap();
        for i in 0..6 {
            let phi = six.ray_angle(i);
            assert_eq!(six.cone_of_angle(phi), ConeId(i));
        }
        // the ray at pi/2 for k = 4
        let four = ConeScheme::new(4).unwrap();
        assert_eq!(
            four.cone_of(Vec2::default(), Vec2::new(0.0, 3.0)),
            Some(ConeId(1))
        );
        assert_eq!(
            four.cone_of(Vec2::default(), Vec2::new(-3.0, 0.0)),
            Some(ConeId(2))
        );
        assert_eq!(
            four.cone_of(Vec2::default(), Vec2::new(0.0, -3.0)),
            Some(ConeId(3))
        );
    }

    #[test]
    fn invalid_cone_counts() {
        assert_eq!(ConeScheme::new(2), Err(Error::InvalidConeCount(2)));
        let s = ConeScheme::new(7).unwrap();
        assert!((s.theta() * 7.0 - TAU).abs() < 1e-12);
        assert!(!s.is_hexagonal_multiple());
        assert!(ConeScheme::new(30).unwrap().is_hexagonal_multiple());
    }

    #[test]
    fn bisector_projection_examples() {
        let six = ConeScheme::new(6).unwrap();
        let on_bisector = Point::new(1, 5.0 * FRAC_PI_6.cos(), 5.0 * FRAC_PI_6.sin());
        let p = bisector_projection(&six, &origin(), &on_bisector).unwrap();
        assert!((p - 5.0).abs() < 1e-12);
        let on_ray = Point::new(1, 1.0, 0.0);
        let p = bisector_projection(&six, &origin(), &on_ray).unwrap();
        assert!((p - 0.866_025_403_784_438_6).abs() < 1e-12);
    }

    #[test]
    fn canonical_triangle_of_ray_point() {
        let six = ConeScheme::new(6).unwrap();
        let target = Point::new(1, 1.0, 0.0);
        let tri = canonical_triangle(&six, &origin(), &target).unwrap();
        // base at bisector distance cos(pi/6); the sides have length 1
        assert!((tri.height() - FRAC_PI_6.cos()).abs() < 1e-12);
        assert!((tri.corner_x.x - 1.0).abs() < 1e-12 && tri.corner_x.y.abs() < 1e-12);
        assert!((tri.corner_y.x - 0.5).abs() < 1e-12);
        assert!((tri.corner_y.y - FRAC_PI_3.sin()).abs() < 1e-12);
    }

    #[test]
    fn canonical_triangle_symmetric_on_bisector() {
        let twelve = ConeScheme::new(12).unwrap();
        let bis = twelve.bisector_angle(ConeId(3));
        let target = Point::new(1, 2.0 * bis.cos(), 2.0 * bis.sin());
        let tri = canonical_triangle(&twelve, &origin(), &target).unwrap();
        let dx = tri.corner_x.norm();
        let dy = tri.corner_y.norm();
        assert!((dx - dy).abs() <= 1e-12 * dx);
        assert!((tri.height() - tri.side() * (twelve.theta() / 2.0).cos()).abs() < 1e-12);
        // base orthogonal to the bisector and through the target
        let base = tri.corner_y - tri.corner_x;
        let dir = Vec2::from_polar(1.0, bis);
        assert!(base.dot(dir).abs() < 1e-12);
        assert!(orient(tri.corner_x, tri.corner_y, target.pos()).abs() < 1e-12);
    }

    #[test]
    fn triangle_emptiness() {
        let six = ConeScheme::new(6).unwrap();
        let a = Point::new(0, 0.0, 0.0);
        let b = Point::new(1, 1.0, 0.5);
        let set = PointSet::from_points(vec![a, b]).unwrap();
        let tri = canonical_triangle(&six, &a, &b).unwrap();
        assert!(triangle_empty(&tri, &set));

        let centroid = (tri.apex.pos() + tri.corner_x + tri.corner_y) * (1.0 / 3.0);
        let with_centroid =
            PointSet::from_points(vec![a, b, Point::new(2, centroid.x, centroid.y)]).unwrap();
        assert!(!triangle_empty(&tri, &with_centroid));

        // just beyond the base along the bisector
        let bis = six.bisector_angle(tri.cone);
        let outside = Vec2::from_polar(tri.height() + 1e-6, bis);
        let with_outside =
            PointSet::from_points(vec![a, b, Point::new(2, outside.x, outside.y)]).unwrap();
        assert!(triangle_empty(&tri, &with_outside));

        // exactly on the base counts as inside
        let on_base = Vec2::from_polar(tri.height(), bis);
        let with_on_base =
            PointSet::from_points(vec![a, b, Point::new(2, on_base.x, on_base.y)]).unwrap();
        assert!(!triangle_empty(&tri, &with_on_base));
    }

    #[test]
    fn t_function_examples() {
        assert_eq!(t_function(0.0).unwrap(), 1.0);
        assert!(t_function(FRAC_PI_6).unwrap().abs() < 1e-15);
        assert!((t_function(FRAC_PI_3).unwrap() + 1.0).abs() < 1e-15);
        assert!(t_function(-1e-9).is_err());
        assert!(t_function(FRAC_PI_2).is_err());
        assert!(t_function(f64::NAN).is_err());
    }

    #[test]
    fn point_set_validation() {
        assert!(PointSet::from_coords([(0.0, 0.0), (1.0, 1.0)]).is_ok());
        assert_eq!(
            PointSet::from_coords([(0.0, 0.0), (1.0, 1.0), (0.0, -0.0)]),
            Err(Error::DuplicatePoints(vec![0, 2]))
        );
        let gap = vec![Point::new(0, 0.0, 0.0), Point::new(2, 1.0, 0.0)];
        assert!(matches!(
            PointSet::from_points(gap),
            Err(Error::NonContiguousIds { position: 1, found: 2 })
        ));
    }
}
