//! Incremental Delaunay triangulation and point location.
//!
//! Bowyer–Watson insertion where the bounding super-triangle is a single
//! symbolic vertex at infinity: each convex-hull edge `u -> v` carries a ghost
//! triangle `(u, v, ∞)` whose "circumcircle" is the open outer half-plane of
//! the edge together with the open edge itself. This keeps the hull exact
//! without choosing a finite super-triangle.
//!
//! Sites are inserted in index order. A site lying exactly on the circumcircle
//! of an existing triangle does not conflict with it, which amounts to
//! perturbing each newly inserted site infinitesimally outward; the output
//! is therefore a canonical function of the input order.

use std::collections::HashSet;

use serde::Serialize;

use super::predicates::{incircle, orient2d};
use super::{Point, Triangle};
use crate::error::{Error, Result};

const GHOST: usize = usize::MAX;

/// A Delaunay triangulation of a site set.
#[derive(Debug, Clone, Serialize)]
pub struct DelaunayMesh {
    sites: Vec<Point>,
    /// Counter-clockwise site-index triples, lowest index first, sorted.
    triangles: Vec<[usize; 3]>,
    /// Hull vertices in counter-clockwise order starting from the lowest index.
    hull: Vec<usize>,
    #[serde(skip)]
    cells: Vec<Triangle>,
    #[serde(skip)]
    boxes: Vec<[f64; 4]>,
}

impl DelaunayMesh {
    pub fn sites(&self) -> &[Point] {
        &self.sites
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn hull(&self) -> &[usize] {
        &self.hull
    }

    /// Number of triangles, `J`.
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangle(&self, j: usize) -> &Triangle {
        &self.cells[j]
    }

    pub fn cells(&self) -> &[Triangle] {
        &self.cells
    }

    pub fn area(&self) -> f64 {
        self.cells.iter().map(Triangle::area).sum()
    }

    /// Area of the convex hull polygon, by the shoelace formula.
    pub fn hull_area(&self) -> f64 {
        let n = self.hull.len();
        let mut acc = 0.0;
        for i in 0..n {
            let p = self.sites[self.hull[i]];
            let q = self.sites[self.hull[(i + 1) % n]];
            acc += p.x * q.y - q.x * p.y;
        }
        0.5 * acc
    }

    /// Index of the first triangle containing `p`, or `None` outside the hull.
    pub fn locate(&self, p: &Point) -> Option<usize> {
        if !p.is_finite() {
            return None;
        }
        self.triangles.iter().enumerate().find_map(|(j, tri)| {
            let b = &self.boxes[j];
            if p.x < b[0] || p.x > b[1] || p.y < b[2] || p.y > b[3] {
                return None;
            }
            let [a, bb, c] = tri.map(|i| self.sites[i]);
            let inside = orient2d(&a, &bb, p) >= 0.0
                && orient2d(&bb, &c, p) >= 0.0
                && orient2d(&c, &a, p) >= 0.0;
            inside.then_some(j)
        })
    }
}

/// Locates `p` in `mesh`; see [`DelaunayMesh::locate`].
pub fn locate(p: &Point, mesh: &DelaunayMesh) -> Option<usize> {
    mesh.locate(p)
}

/// Delaunay triangulation of `sites`.
///
/// Exact duplicates of an earlier site are ignored (they appear in no
/// triangle).
pub fn delaunay(sites: &[Point]) -> Result<DelaunayMesh> {
    if sites.len() < 3 {
        return Err(Error::TooFewSites(sites.len()));
    }
    for p in sites {
        p.check_finite()?;
    }
    let i0 = 0;
    let i1 = sites
        .iter()
        .position(|p| *p != sites[i0])
        .ok_or(Error::CollinearSites)?;
    let i2 = sites
        .iter()
        .position(|p| orient2d(&sites[i0], &sites[i1], p) != 0.0)
        .ok_or(Error::CollinearSites)?;

    let mut builder = Builder {
        sites,
        tris: Vec::with_capacity(4 * sites.len()),
        inserted: Vec::with_capacity(sites.len()),
    };
    let (b, c) = if orient2d(&sites[i0], &sites[i1], &sites[i2]) > 0.0 {
        (i1, i2)
    } else {
        (i2, i1)
    };
    builder.tris.push(Some([i0, b, c]));
    builder.tris.push(Some([b, i0, GHOST]));
    builder.tris.push(Some([c, b, GHOST]));
    builder.tris.push(Some([i0, c, GHOST]));
    builder.inserted.extend([i0, i1, i2]);

    for k in 0..sites.len() {
        if k == i0 || k == i1 || k == i2 {
            continue;
        }
        if builder.inserted.iter().any(|&i| sites[i] == sites[k]) {
            continue;
        }
        builder.insert(k)?;
    }
    builder.finish()
}

struct Builder<'a> {
    sites: &'a [Point],
    tris: Vec<Option<[usize; 3]>>,
    inserted: Vec<usize>,
}

impl Builder<'_> {
    fn conflicts(&self, tri: &[usize; 3], p: &Point) -> bool {
        let s = self.sites;
        if tri[2] == GHOST {
            let (u, v) = (&s[tri[0]], &s[tri[1]]);
            let o = orient2d(u, v, p);
            if o > 0.0 {
                return true;
            }
            if o < 0.0 {
                return false;
            }
            // Collinear with the hull edge: conflict only on the open segment.
            let dot = (p.x - u.x) * (v.x - u.x) + (p.y - u.y) * (v.y - u.y);
            let len2 = (v.x - u.x).powi(2) + (v.y - u.y).powi(2);
            dot > 0.0 && dot < len2
        } else {
            incircle(&s[tri[0]], &s[tri[1]], &s[tri[2]], p) > 0.0
        }
    }

    fn insert(&mut self, k: usize) -> Result<()> {
        let p = self.sites[k];
        let cavity: Vec<usize> = self
            .tris
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.filter(|t| self.conflicts(t, &p)).map(|_| i))
            .collect();
        if cavity.is_empty() {
            return Err(Error::Invariant(format!(
                "site {k} conflicts with no triangle"
            )));
        }
        let mut edges = Vec::with_capacity(3 * cavity.len());
        for &i in &cavity {
            let t = self.tris[i].expect("live triangle");
            for e in 0..3 {
                edges.push((t[e], t[(e + 1) % 3]));
            }
            self.tris[i] = None;
        }
        let edge_set: HashSet<(usize, usize)> = edges.iter().copied().collect();
        for &(a, b) in &edges {
            if edge_set.contains(&(b, a)) {
                continue;
            }
            let tri = if a == GHOST {
                [b, k, GHOST]
            } else if b == GHOST {
                [k, a, GHOST]
            } else {
                if orient2d(&self.sites[a], &self.sites[b], &p) <= 0.0 {
                    return Err(Error::Invariant(format!(
                        "cavity of site {k} is not star-shaped"
                    )));
                }
                [a, b, k]
            };
            self.tris.push(Some(tri));
        }
        self.inserted.push(k);
        Ok(())
    }

    fn finish(self) -> Result<DelaunayMesh> {
        let mut triangles = Vec::new();
        let mut next_ccw = std::collections::HashMap::new();
        for t in self.tris.into_iter().flatten() {
            if t[2] == GHOST {
                // Ghost (u, v, ∞) sits across hull edge v -> u.
                next_ccw.insert(t[1], t[0]);
            } else {
                let m = (0..3).min_by_key(|&i| t[i]).expect("three vertices");
                triangles.push([t[m], t[(m + 1) % 3], t[(m + 2) % 3]]);
            }
        }
        triangles.sort_unstable();

        let start = *next_ccw.keys().min().ok_or(Error::CollinearSites)?;
        let mut hull = vec![start];
        let mut cur = next_ccw[&start];
        while cur != start {
            hull.push(cur);
            cur = *next_ccw
                .get(&cur)
                .ok_or_else(|| Error::Invariant("open hull chain".into()))?;
            if hull.len() > next_ccw.len() {
                return Err(Error::Invariant("hull chain does not close".into()));
            }
        }

        let sites = self.sites.to_vec();
        let cells = triangles
            .iter()
            .map(|t| Triangle::new(sites[t[0]], sites[t[1]], sites[t[2]]))
            .collect::<Result<Vec<_>>>()?;
        let boxes = cells
            .iter()
            .map(|c| {
                let v = c.vertices();
                [
                    v[0].x.min(v[1].x).min(v[2].x),
                    v[0].x.max(v[1].x).max(v[2].x),
                    v[0].y.min(v[1].y).min(v[2].y),
                    v[0].y.max(v[1].y).max(v[2].y),
                ]
            })
            .collect();
        Ok(DelaunayMesh {
            sites,
            triangles,
            hull,
            cells,
            boxes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_sites(n: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| Point::new(rng.random::<f64>(), rng.random::<f64>()))
            .collect()
    }

    fn assert_empty_circles(mesh: &DelaunayMesh) {
        for t in mesh.triangles() {
            let [a, b, c] = t.map(|i| mesh.sites()[i]);
            for (k, s) in mesh.sites().iter().enumerate() {
                if t.contains(&k) {
                    continue;
                }
                assert!(
                    incircle(&a, &b, &c, s) <= 0.0,
                    "site {k} inside circle of {t:?}"
                );
            }
        }
    }

    #[test]
    fn three_sites_make_one_triangle() {
        let m = delaunay(&[
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
        ])
        .unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.triangles()[0], [0, 2, 1]);
        assert_eq!(m.hull(), &[0, 2, 1]);
    }

    #[test]
    fn square_uses_one_diagonal_deterministically() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let m = delaunay(&sq).unwrap();
        assert_eq!(m.len(), 2);
        assert_empty_circles(&m);
        // Site 3 is inserted last and is cocircular with (0, 1, 2): no flip.
        assert_eq!(m.triangles(), &[[0, 1, 2], [0, 2, 3]]);
        assert_eq!(delaunay(&sq).unwrap().triangles(), m.triangles());
    }

    #[test]
    fn errors_for_too_few_or_collinear_sites() {
        let two = [Point::new(0.0, 0.0), Point::new(1.0, 0.0)];
        assert_eq!(delaunay(&two).unwrap_err(), Error::TooFewSites(2));
        let line: Vec<_> = (0..5)
            .map(|i| Point::new(i as f64, 2.0 * i as f64))
            .collect();
        assert_eq!(delaunay(&line).unwrap_err(), Error::CollinearSites);
    }

    #[test]
    fn collinear_prefix_and_duplicates_are_handled() {
        let mut sites: Vec<_> = (0..4).map(|i| Point::new(i as f64, 0.0)).collect();
        sites.push(Point::new(1.5, 1.0));
        sites.push(Point::new(1.0, 0.0));
        sites.push(Point::new(1.5, -2.0));
        let m = delaunay(&sites).unwrap();
        assert_empty_circles(&m);
        assert!((m.area() - m.hull_area()).abs() < 1e-12);
        assert!(m.triangles().iter().all(|t| !t.contains(&5)));
    }

    #[test]
    fn euler_relation_and_tiling_on_random_sites() {
        for seed in 0..50 {
            let sites = random_sites(10 + (seed as usize % 30), seed);
            let m = delaunay(&sites).unwrap();
            assert_empty_circles(&m);
            let h = m.hull().len();
            assert_eq!(m.len(), 2 * sites.len() - h - 2);
            assert!((m.area() - m.hull_area()).abs() <= 1e-9 * m.hull_area());
        }
    }

    #[test]
    fn grid_with_many_cocircular_quads() {
        let mut sites = Vec::new();
        for i in 0..6 {
            for j in 0..5 {
                sites.push(Point::new(i as f64, j as f64));
            }
        }
        let m = delaunay(&sites).unwrap();
        assert_eq!(m.len(), 2 * 5 * 4);
        assert_empty_circles(&m);
        assert!((m.area() - 20.0).abs() < 1e-12);
    }

    #[test]
    fn locate_rules() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let m = delaunay(&sq).unwrap();
        assert_eq!(m.locate(&m.triangle(0).centroid()), Some(0));
        assert_eq!(m.locate(&m.triangle(1).centroid()), Some(1));
        assert_eq!(m.locate(&Point::new(2.0, 0.5)), None);
        // Midpoint of the shared diagonal goes to the lower index.
        assert_eq!(locate(&Point::new(0.5, 0.5), &m), Some(0));
    }
}
