//! Planar primitives: points, oriented triangles, affine maps and vertex regions.
//!
//! Every triangle is stored counter-clockwise. The standard triangle is
//! `T_e = T((0,0), (1,0), (1/2, sqrt(3)/2))`; [`standardize`] sends vertex `i`
//! of any triangle to vertex `i` of `T_e`. Barycentric coordinates are affine
//! invariant, so every predicate in this crate that is phrased through them
//! (vertex regions, distances to lines parallel to an edge) gives the same
//! answer before and after standardization.

mod delaunay;
pub mod predicates;

pub use delaunay::{delaunay, locate, DelaunayMesh};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `sqrt(3) / 2`, the height of the standard triangle.
pub const SQRT3_2: f64 = 0.866_025_403_784_438_6;

/// Slack on barycentric coordinates accepted by containment tests.
pub const CONTAINMENT_TOL: f64 = 1e-12;

/// Slack under which two barycentric coordinates are treated as tied when
/// choosing a vertex region.
pub const REGION_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite {
                x: self.x,
                y: self.y,
            })
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Twice the signed area of `(a, b, c)`; positive when counter-clockwise.
#[inline]
pub(crate) fn cross(a: &Point, b: &Point, c: &Point) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// One of the three vertices of a triangle, 0-based. Displays 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexRegionId(u8);

impl VertexRegionId {
    pub const ALL: [VertexRegionId; 3] = [VertexRegionId(0), VertexRegionId(1), VertexRegionId(2)];

    pub fn new(index: usize) -> Option<Self> {
        (index < 3).then_some(VertexRegionId(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexRegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R(y{})", self.0 + 1)
    }
}

/// A non-degenerate triangle with counter-clockwise vertices.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Point; 3]", into = "[Point; 3]")]
pub struct Triangle {
    vertices: [Point; 3],
    /// Twice the (positive) area.
    double_area: f64,
}

impl TryFrom<[Point; 3]> for Triangle {
    type Error = Error;

    fn try_from(v: [Point; 3]) -> Result<Self> {
        Triangle::new(v[0], v[1], v[2])
    }
}

impl From<Triangle> for [Point; 3] {
    fn from(t: Triangle) -> Self {
        t.vertices
    }
}

impl Triangle {
    /// Builds a triangle, swapping the last two vertices if the input is
    /// clockwise.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        for p in [&a, &b, &c] {
            p.check_finite()?;
        }
        let orient = predicates::orient2d(&a, &b, &c);
        let vertices = if orient > 0.0 {
            [a, b, c]
        } else if orient < 0.0 {
            [a, c, b]
        } else {
            return Err(Error::DegenerateTriangle);
        };
        let double_area = cross(&vertices[0], &vertices[1], &vertices[2]);
        if double_area.is_nan() || double_area <= 0.0 || !double_area.is_finite() {
            return Err(Error::DegenerateTriangle);
        }
        Ok(Triangle {
            vertices,
            double_area,
        })
    }

    /// The standard equilateral triangle `T((0,0), (1,0), (1/2, sqrt(3)/2))`.
    pub fn standard() -> Self {
        Triangle {
            vertices: [
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(0.5, SQRT3_2),
            ],
            double_area: SQRT3_2,
        }
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    pub fn vertex(&self, id: VertexRegionId) -> Point {
        self.vertices[id.index()]
    }

    pub fn area(&self) -> f64 {
        0.5 * self.double_area
    }

    pub fn centroid(&self) -> Point {
        let [a, b, c] = &self.vertices;
        Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    /// Midpoint of the edge opposite vertex `j`.
    pub fn edge_midpoint(&self, j: VertexRegionId) -> Point {
        let (k, l) = others(j.index());
        self.vertices[k].midpoint(&self.vertices[l])
    }

    /// Distance from vertex `j` to the opposite edge.
    pub fn altitude(&self, j: VertexRegionId) -> f64 {
        let (k, l) = others(j.index());
        self.double_area / self.vertices[k].distance(&self.vertices[l])
    }

    /// Unit normal of the edge opposite vertex `j`, pointing into the triangle.
    pub fn inward_normal(&self, j: VertexRegionId) -> Point {
        let (k, l) = others(j.index());
        let (a, b) = (self.vertices[k], self.vertices[l]);
        let len = a.distance(&b);
        // Edge k -> l runs counter-clockwise, so the interior is on its left.
        Point::new(-(b.y - a.y) / len, (b.x - a.x) / len)
    }

    /// Barycentric coordinates of `p` (they sum to one).
    pub fn barycentric(&self, p: &Point) -> [f64; 3] {
        let [a, b, c] = &self.vertices;
        let l0 = cross(p, b, c) / self.double_area;
        let l1 = cross(a, p, c) / self.double_area;
        [l0, l1, 1.0 - l0 - l1]
    }

    /// Closed containment with [`CONTAINMENT_TOL`] slack.
    pub fn contains(&self, p: &Point) -> bool {
        p.is_finite() && self.barycentric(p).iter().all(|&l| l >= -CONTAINMENT_TOL)
    }

    /// Distance from `p` to the edge opposite vertex `j`, i.e. `d(p, e_j)`.
    pub fn edge_distance(&self, p: &Point, j: VertexRegionId) -> f64 {
        self.barycentric(p)[j.index()] * self.altitude(j)
    }

    /// Distance from vertex `j` to the line through `p` parallel to the
    /// opposite edge, i.e. `d(y_j, l(y_j, p))`.
    pub fn vertex_line_distance(&self, j: VertexRegionId, p: &Point) -> f64 {
        (1.0 - self.barycentric(p)[j.index()]) * self.altitude(j)
    }

    /// Index of the vertex equal to `p`, if any (exact comparison).
    pub fn vertex_at(&self, p: &Point) -> Option<VertexRegionId> {
        self.vertices
            .iter()
            .position(|v| v == p)
            .and_then(VertexRegionId::new)
    }
}

#[inline]
pub(crate) fn others(j: usize) -> (usize, usize) {
    ((j + 1) % 3, (j + 2) % 3)
}

/// Vertex whose region holds the point with barycentric coordinates `bary`.
///
/// The region of vertex `j` is the quadrilateral cut out by the segments from
/// the centroid to the edge midpoints; in barycentric terms it is where
/// coordinate `j` is the largest. Ties go to the lowest index.
pub(crate) fn region_of_barycentric(bary: &[f64; 3]) -> VertexRegionId {
    let max = bary[0].max(bary[1]).max(bary[2]);
    let j = bary
        .iter()
        .position(|&l| l >= max - REGION_TIE_TOL)
        .unwrap_or(0);
    VertexRegionId(j as u8)
}

/// The vertex region of `t` containing `p`.
pub fn vertex_region(p: &Point, t: &Triangle) -> Result<VertexRegionId> {
    if !t.contains(p) {
        return Err(Error::OutsideTriangle { x: p.x, y: p.y });
    }
    Ok(region_of_barycentric(&t.barycentric(p)))
}

/// An invertible affine map `p -> A p + b`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineTransform {
    pub linear: [[f64; 2]; 2],
    pub translation: Point,
}

impl AffineTransform {
    pub fn identity() -> Self {
        AffineTransform {
            linear: [[1.0, 0.0], [0.0, 1.0]],
            translation: Point::new(0.0, 0.0),
        }
    }

    pub fn new(linear: [[f64; 2]; 2], translation: Point) -> Result<Self> {
        let tf = AffineTransform {
            linear,
            translation,
        };
        let det = tf.determinant();
        if det == 0.0 || !det.is_finite() || !translation.is_finite() {
            return Err(Error::DegenerateTriangle);
        }
        Ok(tf)
    }

    pub fn determinant(&self) -> f64 {
        let m = &self.linear;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn apply(&self, p: &Point) -> Point {
        let m = &self.linear;
        Point::new(
            m[0][0] * p.x + m[0][1] * p.y + self.translation.x,
            m[1][0] * p.x + m[1][1] * p.y + self.translation.y,
        )
    }

    pub fn apply_triangle(&self, t: &Triangle) -> Result<Triangle> {
        let [a, b, c] = t.vertices();
        Triangle::new(self.apply(a), self.apply(b), self.apply(c))
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AffineTransform) -> AffineTransform {
        let (a, b) = (&self.linear, &inner.linear);
        let mut linear = [[0.0; 2]; 2];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        let shifted = self.apply(&inner.translation);
        AffineTransform {
            linear,
            translation: shifted,
        }
    }

    pub fn inverse(&self) -> AffineTransform {
        let m = &self.linear;
        let det = self.determinant();
        let linear = [
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ];
        let t = self.translation;
        let translation = Point::new(
            -(linear[0][0] * t.x + linear[0][1] * t.y),
            -(linear[1][0] * t.x + linear[1][1] * t.y),
        );
        AffineTransform {
            linear,
            translation,
        }
    }
}

/// The affine map taking vertex `i` of `t` to vertex `i` of the standard
/// triangle. It pushes the uniform law on `t` forward to the uniform law on
/// `T_e`, and maps medians and lines parallel to edges to their counterparts.
///
/// For `t = T((0,0), (1,0), (c1,c2))` this is
/// `(u, v) -> (u + (1 - 2 c1) / (2 c2) v, sqrt(3) / (2 c2) v)`.
pub fn standardize(t: &Triangle) -> AffineTransform {
    let [a, b, c] = t.vertices();
    // Columns of V are the edge vectors b - a and c - a.
    let (v00, v01, v10, v11) = (b.x - a.x, c.x - a.x, b.y - a.y, c.y - a.y);
    let det = v00 * v11 - v01 * v10;
    let inv = [[v11 / det, -v01 / det], [-v10 / det, v00 / det]];
    // Target edge vectors (1, 0) and (1/2, sqrt(3)/2).
    let e = [[1.0, 0.5], [0.0, SQRT3_2]];
    let mut linear = [[0.0; 2]; 2];
    for (i, row) in linear.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = e[i][0] * inv[0][j] + e[i][1] * inv[1][j];
        }
    }
    let translation = Point::new(
        -(linear[0][0] * a.x + linear[0][1] * a.y),
        -(linear[1][0] * a.x + linear[1][1] * a.y),
    );
    AffineTransform {
        linear,
        translation,
    }
}

/// Shorthand for `tf.apply(p)`.
pub fn apply(tf: &AffineTransform, p: &Point) -> Point {
    tf.apply(p)
}
