//! Geometric oracles built from distances and explicit polygons, sharing no
//! code with the barycentric paths of the library.

#![allow(dead_code)]

use proxcatch::simulation::replicate_rng;
use proxcatch::{Point, RFactor, Triangle};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Points closer than this to an oracle boundary are reported as ambiguous.
pub const BAND: f64 = 1e-9;

/// Signed distance from `p` to the line through `a, b`, positive on the left.
pub fn side(a: &Point, b: &Point, p: &Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    (dx * (p.y - a.y) - dy * (p.x - a.x)) / dx.hypot(dy)
}

/// Membership in a convex counter-clockwise polygon; `None` within `BAND`
/// of an edge.
pub fn in_convex(poly: &[Point], p: &Point) -> Option<bool> {
    let mut inside = true;
    for i in 0..poly.len() {
        let s = side(&poly[i], &poly[(i + 1) % poly.len()], p);
        if s.abs() < BAND {
            return None;
        }
        inside &= s > 0.0;
    }
    Some(inside)
}

fn mid(a: &Point, b: &Point) -> Point {
    Point::new(0.5 * (a.x + b.x), 0.5 * (a.y + b.y))
}

/// Vertex region as the quadrilateral `y_j, M(y_j y_{j+1}), centroid, M(y_j y_{j+2})`.
pub fn region(t: &Triangle, p: &Point) -> Option<usize> {
    let v = t.vertices();
    let c = Point::new(
        (v[0].x + v[1].x + v[2].x) / 3.0,
        (v[0].y + v[1].y + v[2].y) / 3.0,
    );
    let mut found = None;
    for j in 0..3 {
        let quad = [
            v[j],
            mid(&v[j], &v[(j + 1) % 3]),
            c,
            mid(&v[j], &v[(j + 2) % 3]),
        ];
        if in_convex(&quad, p)? {
            found = Some(j);
        }
    }
    found
}

/// The polygon `N^r(x)`: the triangle at `x`'s vertex whose far edge is
/// parallel to the opposite edge at `r` times `x`'s distance, clipped to `t`.
pub fn region_polygon(x: &Point, t: &Triangle, r: RFactor) -> Option<[Point; 3]> {
    let v = t.vertices();
    let j = region(t, x)?;
    let (y, a, b) = (v[j], v[(j + 1) % 3], v[(j + 2) % 3]);
    if r.is_infinite() {
        return Some(*v);
    }
    let h = side(&a, &b, &y);
    let dx = h - side(&a, &b, x);
    let s = (r.value() * dx / h).min(1.0);
    let scale = |q: &Point| Point::new(y.x + s * (q.x - y.x), y.y + s * (q.y - y.y));
    Some([y, scale(&a), scale(&b)])
}

/// `z ∈ N^r(x)`, or `None` if either point is too close to a boundary.
pub fn arc(x: &Point, z: &Point, t: &Triangle, r: RFactor) -> Option<bool> {
    let poly = region_polygon(x, t, r)?;
    if r.is_infinite() {
        return Some(true);
    }
    in_convex(&poly, z)
}

/// Exhaustive minimum dominating set size over all subsets, with no size
/// bound assumed. `None` if any arc is ambiguous.
pub fn gamma_exhaustive(pts: &[Point], t: &Triangle, r: RFactor) -> Option<usize> {
    let n = pts.len();
    assert!(n <= 16);
    let mut cover = vec![0u32; n];
    for i in 0..n {
        for (k, z) in pts.iter().enumerate() {
            if i == k || arc(&pts[i], z, t, r)? {
                cover[i] |= 1 << k;
            }
        }
    }
    let full = (1u32 << n) - 1;
    (0u32..=full)
        .filter(|set| {
            (0..n)
                .filter(|i| set >> i & 1 == 1)
                .fold(0, |acc, i| acc | cover[i])
                == full
        })
        .map(|set| set.count_ones() as usize)
        .min()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    replicate_rng(seed, 0)
}

/// A random triangle with vertices in `[-10, 10]²` and area at least 1.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let mut p = || Point::new(rng.random_range(-10.0..10.0), rng.random_range(-10.0..10.0));
        let (a, b, c) = (p(), p(), p());
        if let Ok(t) = Triangle::new(a, b, c) {
            if t.area() >= 1.0 {
                return t;
            }
        }
    }
}

pub fn random_r(rng: &mut ChaCha8Rng) -> RFactor {
    const R: [f64; 5] = [1.0, 1.25, 1.5, 2.0, 5.0];
    match rng.random_range(0..6) {
        5 => RFactor::INFINITY,
        i => RFactor::new(R[i]).unwrap(),
    }
}

/// Uniform in `t` by rejection from its bounding box.
pub fn uniform_point(t: &Triangle, rng: &mut ChaCha8Rng) -> Point {
    let v = t.vertices();
    let (x0, x1) = (
        v.iter().map(|p| p.x).fold(f64::MAX, f64::min),
        v.iter().map(|p| p.x).fold(f64::MIN, f64::max),
    );
    let (y0, y1) = (
        v.iter().map(|p| p.y).fold(f64::MAX, f64::min),
        v.iter().map(|p| p.y).fold(f64::MIN, f64::max),
    );
    loop {
        let p = Point::new(rng.random_range(x0..x1), rng.random_range(y0..y1));
        if in_convex(v, &p) == Some(true) {
            return p;
        }
    }
}

pub fn shoelace(poly: &[Point]) -> f64 {
    let n = poly.len();
    0.5 * (0..n)
        .map(|i| poly[i].x * poly[(i + 1) % n].y - poly[(i + 1) % n].x * poly[i].y)
        .sum::<f64>()
}
