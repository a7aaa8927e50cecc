//! The r-factor proximity map, its catch predicate, the Γ1-region and the
//! superset region.
//!
//! For `x` in triangle `T` with vertex region `v = v(x)`, the region `N^r(x)`
//! is the part of `T` between `v` and the line parallel to the opposite edge
//! at `r` times the distance from `v` to the parallel line through `x`. All
//! of this is one scalar per point: the *depth* `1 - λ_v(x)`, the distance
//! from `v` to that parallel line measured in units of the altitude at `v`.
//! Catching is a single comparison of depths, and depths are unchanged by
//! affine maps.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{self, region_of_barycentric, Point, Triangle, VertexRegionId, SQRT3_2};
use crate::simulation::AlternativeSpec;

/// Expansion factor `r ∈ [1, ∞]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RFactor(Repr);

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
enum Repr {
    Finite(f64),
    Infinite,
}

impl RFactor {
    pub const INFINITY: RFactor = RFactor(Repr::Infinite);
    pub const THREE_HALVES: RFactor = RFactor(Repr::Finite(1.5));
    pub const ONE: RFactor = RFactor(Repr::Finite(1.0));

    /// Accepts any `r >= 1`; `f64::INFINITY` becomes [`RFactor::INFINITY`].
    pub fn new(r: f64) -> Result<Self> {
        if r == f64::INFINITY {
            Ok(RFactor::INFINITY)
        } else if r.is_finite() && r >= 1.0 {
            Ok(RFactor(Repr::Finite(r)))
        } else {
            Err(Error::InvalidRFactor(r))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self.0, Repr::Infinite)
    }

    pub fn finite(&self) -> Option<f64> {
        match self.0 {
            Repr::Finite(r) => Some(r),
            Repr::Infinite => None,
        }
    }

    /// The value as an `f64` (`f64::INFINITY` for r = ∞).
    pub fn value(&self) -> f64 {
        self.finite().unwrap_or(f64::INFINITY)
    }
}

impl Default for RFactor {
    fn default() -> Self {
        RFactor::THREE_HALVES
    }
}

impl fmt::Display for RFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Repr::Finite(r) => write!(f, "{r}"),
            Repr::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for RFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let r: f64 = s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidRFactor(f64::NAN))?;
        RFactor::new(r)
    }
}

impl Serialize for RFactor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            Repr::Finite(r) => s.serialize_f64(r),
            Repr::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for RFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(r) => RFactor::new(r),
            Raw::Text(s) => s.parse(),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// A point of a triangle with its barycentric coordinates and vertex region.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Located {
    pub point: Point,
    pub bary: [f64; 3],
    pub region: VertexRegionId,
    pub at_vertex: bool,
}

impl Located {
    pub fn new(p: &Point, t: &Triangle) -> Result<Self> {
        p.check_finite()?;
        if !t.contains(p) {
            return Err(Error::OutsideTriangle { x: p.x, y: p.y });
        }
        let bary = t.barycentric(p);
        Ok(Located {
            point: *p,
            bary,
            region: region_of_barycentric(&bary),
            at_vertex: t.vertex_at(p).is_some(),
        })
    }

    /// `d(y_j, l(y_j, p))` in units of the altitude at `y_j`, clamped to [0, 1].
    #[inline]
    pub fn depth(&self, j: VertexRegionId) -> f64 {
        (1.0 - self.bary[j.index()]).clamp(0.0, 1.0)
    }

    /// Depth towards the point's own vertex.
    #[inline]
    pub fn own_depth(&self) -> f64 {
        self.depth(self.region)
    }
}

/// Whether the point `x` catches `z`, i.e. `z ∈ N^r(x)`. Closed regions.
#[inline]
pub(crate) fn located_catches(x: &Located, z: &Located, r: RFactor) -> bool {
    if x.at_vertex {
        return z.point == x.point;
    }
    match r.finite() {
        None => true,
        Some(r) => z.depth(x.region) <= r * x.own_depth(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum RegionKind {
    /// `x` is a vertex of the triangle: `N^r(x) = {x}`.
    DegeneratePoint,
    /// `{z ∈ T : d(vertex, l(vertex, z)) <= threshold}`.
    ClippedTriangle {
        vertex: VertexRegionId,
        threshold: f64,
    },
    WholeTriangle,
}

/// `N^r(x)` for one point `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProximityRegion {
    pub owner: Point,
    pub kind: RegionKind,
}

impl ProximityRegion {
    pub fn contains(&self, z: &Point, t: &Triangle) -> bool {
        if !t.contains(z) {
            return false;
        }
        match self.kind {
            RegionKind::DegeneratePoint => *z == self.owner,
            RegionKind::WholeTriangle => true,
            RegionKind::ClippedTriangle { vertex, threshold } => {
                t.vertex_line_distance(vertex, z).max(0.0) <= threshold
            }
        }
    }
}

pub fn proximity_region(x: &Point, t: &Triangle, r: RFactor) -> Result<ProximityRegion> {
    let lx = Located::new(x, t)?;
    let kind = if lx.at_vertex {
        RegionKind::DegeneratePoint
    } else if let Some(r) = r.finite() {
        let v = lx.region;
        let h = t.altitude(v);
        RegionKind::ClippedTriangle {
            vertex: v,
            threshold: (r * lx.own_depth() * h).min(h),
        }
    } else {
        RegionKind::WholeTriangle
    };
    Ok(ProximityRegion { owner: *x, kind })
}

/// `z ∈ N^r(x)` for points of `t`.
pub fn catches(x: &Point, z: &Point, t: &Triangle, r: RFactor) -> Result<bool> {
    let lx = Located::new(x, t)?;
    let lz = Located::new(z, t)?;
    Ok(located_catches(&lx, &lz, r))
}

/// `Γ1^r(points) = {z ∈ T : points ⊆ N^r(z)}`.
///
/// Determined by the three edge extrema: for each vertex `y_j` only the
/// largest depth among the points (the point nearest the opposite edge)
/// matters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Gamma1Region {
    triangle: Triangle,
    r: RFactor,
    /// Per vertex, the largest depth over the point set.
    max_depth: [f64; 3],
    /// Index of the edge extremum `X_{e_j}` for each `j` (lowest index on ties).
    extrema: [Option<usize>; 3],
    /// The common location when every point coincides.
    coincident: Option<Point>,
}

impl Gamma1Region {
    pub(crate) fn from_located(points: &[Located], t: &Triangle, r: RFactor) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let mut max_depth = [f64::NEG_INFINITY; 3];
        let mut extrema = [None; 3];
        for (i, p) in points.iter().enumerate() {
            for j in VertexRegionId::ALL {
                let d = p.depth(j);
                if d > max_depth[j.index()] {
                    max_depth[j.index()] = d;
                    extrema[j.index()] = Some(i);
                }
            }
        }
        let coincident = points
            .iter()
            .all(|p| p.point == first.point)
            .then_some(first.point);
        Ok(Gamma1Region {
            triangle: *t,
            r,
            max_depth,
            extrema,
            coincident,
        })
    }

    /// The superset region `{z : N^r(z) = T}`: the Γ1-region of a set
    /// reaching every edge.
    pub fn superset(t: &Triangle, r: RFactor) -> Self {
        Gamma1Region {
            triangle: *t,
            r,
            max_depth: [1.0; 3],
            extrema: [None; 3],
            coincident: None,
        }
    }

    pub fn r(&self) -> RFactor {
        self.r
    }

    /// `d(y_j, ξ_j)`: for `z` in `R(y_j)`, membership means
    /// `d(y_j, l(y_j, z)) >= threshold(j)`.
    pub fn threshold(&self, j: VertexRegionId) -> f64 {
        match self.r.finite() {
            Some(r) => self.max_depth[j.index()] * self.triangle.altitude(j) / r,
            None => 0.0,
        }
    }

    pub fn thresholds(&self) -> [f64; 3] {
        VertexRegionId::ALL.map(|j| self.threshold(j))
    }

    /// Indices of the edge extrema `X_{e_j}`.
    pub fn edge_extrema(&self) -> [Option<usize>; 3] {
        self.extrema
    }

    pub(crate) fn contains_located(&self, z: &Located) -> bool {
        if z.at_vertex {
            return self.coincident == Some(z.point);
        }
        match self.r.finite() {
            None => true,
            Some(r) => r * z.own_depth() >= self.max_depth[z.region.index()],
        }
    }

    pub fn contains(&self, z: &Point) -> bool {
        Located::new(z, &self.triangle)
            .map(|lz| self.contains_located(&lz))
            .unwrap_or(false)
    }

    /// Exact area, clipping each vertex region by its threshold line.
    pub fn area(&self) -> f64 {
        let t = &self.triangle;
        let g = t.centroid();
        VertexRegionId::ALL
            .iter()
            .map(|&j| {
                // Keep depth >= max_depth / r, i.e. λ_j <= 1 - max_depth / r.
                let cut = match self.r.finite() {
                    Some(r) => 1.0 - self.max_depth[j.index()] / r,
                    None => 1.0,
                };
                let (k, l) = geometry::others(j.index());
                let quad = [
                    t.vertex(j),
                    t.vertices()[j.index()].midpoint(&t.vertices()[k]),
                    g,
                    t.vertices()[j.index()].midpoint(&t.vertices()[l]),
                ];
                let f = |p: &Point| t.barycentric(p)[j.index()] - cut;
                polygon_area(&clip_below(&quad, f))
            })
            .sum()
    }
}

/// Sutherland–Hodgman clip of a convex polygon to `{p : f(p) <= 0}`, `f` affine.
fn clip_below(poly: &[Point], f: impl Fn(&Point) -> f64) -> Vec<Point> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let (a, b) = (poly[i], poly[(i + 1) % poly.len()]);
        let (fa, fb) = (f(&a), f(&b));
        if fa <= 0.0 {
            out.push(a);
        }
        if (fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0) {
            let s = fa / (fa - fb);
            out.push(Point::new(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y)));
        }
    }
    out
}

fn polygon_area(poly: &[Point]) -> f64 {
    if poly.len() < 3 {
        return 0.0;
    }
    let n = poly.len();
    let twice: f64 = (0..n)
        .map(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % n]);
            p.x * q.y - q.x * p.y
        })
        .sum();
    (0.5 * twice).abs()
}

pub fn gamma1_region(points: &[Point], t: &Triangle, r: RFactor) -> Result<Gamma1Region> {
    let located = points
        .iter()
        .map(|p| Located::new(p, t))
        .collect::<Result<Vec<_>>>()?;
    Gamma1Region::from_located(&located, t, r)
}

/// Area of a Γ1-region; `t` must be the triangle the region was built on.
pub fn gamma1_area(region: &Gamma1Region, t: &Triangle) -> f64 {
    debug_assert_eq!(&region.triangle, t);
    region.area()
}

/// Closed-form area of the superset region in the standard triangle.
pub fn superset_area(r: RFactor) -> f64 {
    let sqrt3 = 2.0 * SQRT3_2;
    match r.finite() {
        None => sqrt3 / 4.0,
        Some(r) if r <= 1.5 => 0.0,
        Some(r) if r <= 2.0 => (1.0 - 3.0 / (2.0 * r)).powi(2) * sqrt3,
        Some(r) => sqrt3 / 4.0 * (1.0 - 3.0 / (r * r)),
    }
}

/// The one r-factor at which the domination number stays non-degenerate as
/// `n → ∞` under the given model.
pub fn critical_r(alt: &AlternativeSpec) -> Result<RFactor> {
    let sqrt3 = 2.0 * SQRT3_2;
    let r = match *alt {
        AlternativeSpec::Null => 1.5,
        AlternativeSpec::Segregation(eps) => {
            let eps = crate::simulation::check_epsilon(eps)?;
            if eps <= sqrt3 / 4.0 {
                (3.0 - sqrt3 * eps) / 2.0
            } else {
                sqrt3 / eps - 2.0
            }
        }
        AlternativeSpec::Association(eps) => {
            let eps = crate::simulation::check_epsilon(eps)?;
            3.0 / (2.0 * (1.0 - sqrt3 * eps))
        }
    };
    RFactor::new(r)
}
