//! Proximity catch digraphs and their domination numbers.
//!
//! Within a vertex region the proximity regions are nested by depth, so the
//! point of each region nearest the opposite edge (`Q_j`) dominates at least
//! as much as any other point of that region. Hence:
//!
//! * `γ = 1` iff some point lies in the Γ1-region of the whole set;
//! * `γ = 2` iff some pair `{Q_i, Q_j}` covers the set;
//! * otherwise `γ = 3`, witnessed by `{Q_1, Q_2, Q_3}`.
//!
//! Everything is O(n) after one pass computing barycentric coordinates.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DelaunayMesh, Point, Triangle};
use crate::proximity::{located_catches, Gamma1Region, Located, RFactor};

/// Point cap for [`domination_number_bruteforce`].
pub const BRUTEFORCE_CAP: usize = 200;

/// The digraph with an arc `i -> j` iff point `i` catches point `j`.
/// Arcs are evaluated on demand.
#[derive(Debug, Clone)]
pub struct CatchDigraph {
    triangle: Triangle,
    r: RFactor,
    nodes: Vec<Located>,
}

impl CatchDigraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn triangle(&self) -> &Triangle {
        &self.triangle
    }

    pub fn r(&self) -> RFactor {
        self.r
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = Point> + '_ {
        self.nodes.iter().map(|n| n.point)
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        located_catches(&self.nodes[from], &self.nodes[to], self.r)
    }

    pub fn out_neighbors(&self, from: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&to| self.has_arc(from, to))
    }

    pub fn arc_count(&self) -> usize {
        (0..self.len()).map(|i| self.out_neighbors(i).count()).sum()
    }

    /// True if every point is caught by some member of `set`.
    pub fn dominates(&self, set: &[usize]) -> bool {
        (0..self.len()).all(|z| set.iter().any(|&x| self.has_arc(x, z)))
    }

    pub fn domination(&self) -> DominationResult {
        dominate(&self.nodes, &self.triangle, self.r)
    }
}

pub fn build_digraph(points: &[Point], t: &Triangle, r: RFactor) -> Result<CatchDigraph> {
    let nodes = locate_all(points, t)?;
    Ok(CatchDigraph {
        triangle: *t,
        r,
        nodes,
    })
}

fn locate_all(points: &[Point], t: &Triangle) -> Result<Vec<Located>> {
    points.iter().map(|p| Located::new(p, t)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationResult {
    pub gamma: u8,
    /// Indices of a minimum dominating set.
    pub witnesses: Vec<usize>,
}

/// Exact domination number of the catch digraph on `points`.
pub fn domination_number(points: &[Point], t: &Triangle, r: RFactor) -> Result<DominationResult> {
    Ok(dominate(&locate_all(points, t)?, t, r))
}

/// `Q_j`: per vertex region, the member with the largest depth (nearest the
/// opposite edge). Ties prefer non-vertex points, then the lowest index.
pub(crate) fn region_extrema(nodes: &[Located]) -> [Option<usize>; 3] {
    let mut best: [Option<usize>; 3] = [None; 3];
    for (i, p) in nodes.iter().enumerate() {
        let slot = &mut best[p.region.index()];
        let better = match *slot {
            None => true,
            Some(b) => {
                let (d, db) = (p.own_depth(), nodes[b].own_depth());
                d > db || (d == db && nodes[b].at_vertex && !p.at_vertex)
            }
        };
        if better {
            *slot = Some(i);
        }
    }
    best
}

fn pair_covers(nodes: &[Located], a: usize, b: usize, r: RFactor) -> bool {
    let (qa, qb) = (&nodes[a], &nodes[b]);
    nodes
        .iter()
        .all(|z| located_catches(qa, z, r) || located_catches(qb, z, r))
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

pub(crate) fn dominate(nodes: &[Located], t: &Triangle, r: RFactor) -> DominationResult {
    if nodes.is_empty() {
        return DominationResult {
            gamma: 0,
            witnesses: Vec::new(),
        };
    }
    let gamma1 = Gamma1Region::from_located(nodes, t, r).expect("nonempty point set");
    if let Some(i) = nodes.iter().position(|z| gamma1.contains_located(z)) {
        return DominationResult {
            gamma: 1,
            witnesses: vec![i],
        };
    }
    let q = region_extrema(nodes);
    for (i, j) in PAIRS {
        if let (Some(a), Some(b)) = (q[i], q[j]) {
            if pair_covers(nodes, a, b, r) {
                let mut w = vec![a, b];
                w.sort_unstable();
                return DominationResult {
                    gamma: 2,
                    witnesses: w,
                };
            }
        }
    }
    let mut witnesses: Vec<usize> = q.iter().flatten().copied().collect();
    witnesses.sort_unstable();
    debug_assert_eq!(
        witnesses.len(),
        3,
        "fewer than three regions always admit a pair"
    );
    DominationResult {
        gamma: witnesses.len() as u8,
        witnesses,
    }
}

/// Exhaustive search over singletons, pairs and triples. Test oracle only.
pub fn domination_number_bruteforce(
    points: &[Point],
    t: &Triangle,
    r: RFactor,
) -> Result<DominationResult> {
    domination_number_bruteforce_capped(points, t, r, BRUTEFORCE_CAP)
}

pub fn domination_number_bruteforce_capped(
    points: &[Point],
    t: &Triangle,
    r: RFactor,
    cap: usize,
) -> Result<DominationResult> {
    let n = points.len();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    let g = build_digraph(points, t, r)?;
    if n == 0 {
        return Ok(DominationResult {
            gamma: 0,
            witnesses: Vec::new(),
        });
    }
    let words = n.div_ceil(64);
    let cover: Vec<Vec<u64>> = (0..n)
        .map(|i| {
            let mut bits = vec![0u64; words];
            for j in g.out_neighbors(i) {
                bits[j / 64] |= 1 << (j % 64);
            }
            bits
        })
        .collect();
    let mut full = vec![u64::MAX; words];
    if !n.is_multiple_of(64) {
        full[words - 1] = (1u64 << (n % 64)) - 1;
    }
    let union_is_full = |sets: &[usize]| {
        (0..words).all(|w| sets.iter().fold(0u64, |acc, &s| acc | cover[s][w]) == full[w])
    };
    for a in 0..n {
        if union_is_full(&[a]) {
            return Ok(DominationResult {
                gamma: 1,
                witnesses: vec![a],
            });
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if union_is_full(&[a, b]) {
                return Ok(DominationResult {
                    gamma: 2,
                    witnesses: vec![a, b],
                });
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if union_is_full(&[a, b, c]) {
                    return Ok(DominationResult {
                        gamma: 3,
                        witnesses: vec![a, b, c],
                    });
                }
            }
        }
    }
    Err(Error::Invariant("no dominating set of size <= 3".into()))
}

/// The events `E_{i,j} = {points ⊆ N(Q_i) ∪ N(Q_j)}` for the pairs
/// (1,2), (1,3), (2,3). A missing `Q_j` contributes an empty region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExtremaPairEvents {
    pub e12: bool,
    pub e13: bool,
    pub e23: bool,
}

pub fn extrema_pair_events(
    points: &[Point],
    t: &Triangle,
    r: RFactor,
) -> Result<ExtremaPairEvents> {
    let nodes = locate_all(points, t)?;
    let q = region_extrema(&nodes);
    let event = |i: usize, j: usize| {
        nodes.iter().all(|z| {
            [q[i], q[j]]
                .iter()
                .flatten()
                .any(|&x| located_catches(&nodes[x], z, r))
        })
    };
    Ok(ExtremaPairEvents {
        e12: event(0, 1),
        e13: event(0, 2),
        e23: event(1, 2),
    })
}

/// Indices of the region extrema `Q_1, Q_2, Q_3` (the points `X_[j]`).
pub fn region_extremum_indices(points: &[Point], t: &Triangle) -> Result<[Option<usize>; 3]> {
    Ok(region_extrema(&locate_all(points, t)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TriangleDomination {
    /// Number of points located in the triangle, `n_j`.
    pub n: usize,
    /// `γ_{n_j}`, 0 for an empty triangle.
    pub gamma: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeanDomination {
    /// Mean of `γ_{n_j}` over triangles with `n_j >= 1`.
    pub g_bar: f64,
    pub j_effective: usize,
    pub per_triangle: Vec<TriangleDomination>,
    /// Points outside the convex hull, excluded from every triangle.
    pub n_outside: usize,
}

impl MeanDomination {
    pub fn n_used(&self) -> usize {
        self.per_triangle.iter().map(|t| t.n).sum()
    }
}

/// Partitions `points` over the Delaunay triangles and averages the
/// per-triangle domination numbers over the nonempty triangles.
pub fn mean_domination(
    mesh: &DelaunayMesh,
    points: &[Point],
    r: RFactor,
) -> Result<MeanDomination> {
    let mut buckets: Vec<Vec<Located>> = vec![Vec::new(); mesh.len()];
    let mut n_outside = 0;
    for p in points {
        p.check_finite()?;
        match mesh.locate(p) {
            Some(j) => buckets[j].push(Located::new(p, mesh.triangle(j))?),
            None => n_outside += 1,
        }
    }
    let per_triangle: Vec<TriangleDomination> = buckets
        .par_iter()
        .enumerate()
        .map(|(j, nodes)| TriangleDomination {
            n: nodes.len(),
            gamma: dominate(nodes, mesh.triangle(j), r).gamma,
        })
        .collect();
    summarize(per_triangle, n_outside)
}

pub(crate) fn summarize(
    per_triangle: Vec<TriangleDomination>,
    n_outside: usize,
) -> Result<MeanDomination> {
    let used: Vec<_> = per_triangle.iter().filter(|t| t.n > 0).collect();
    if used.is_empty() {
        return Err(Error::NoPointsInHull);
    }
    let total: u32 = used.iter().map(|t| t.gamma as u32).sum();
    let j_effective = used.len();
    Ok(MeanDomination {
        g_bar: total as f64 / j_effective as f64,
        j_effective,
        per_triangle,
        n_outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{delaunay, VertexRegionId};

    fn std_t() -> Triangle {
        Triangle::standard()
    }

    #[test]
    fn empty_and_single() {
        let t = std_t();
        let r = domination_number(&[], &t, RFactor::THREE_HALVES).unwrap();
        assert_eq!(
            r,
            DominationResult {
                gamma: 0,
                witnesses: vec![]
            }
        );
        let one = domination_number(&[Point::new(0.2, 0.2)], &t, RFactor::ONE).unwrap();
        assert_eq!(one.gamma, 1);
        let g = build_digraph(&[Point::new(0.2, 0.2)], &t, RFactor::ONE).unwrap();
        assert!(g.has_arc(0, 0));
        assert_eq!(g.arc_count(), 1);
    }

    #[test]
    fn identical_pair_has_mutual_arcs() {
        let p = Point::new(0.4, 0.3);
        let g = build_digraph(&[p, p], &std_t(), RFactor::ONE).unwrap();
        assert!(g.has_arc(0, 1) && g.has_arc(1, 0));
        assert_eq!(g.domination().gamma, 1);
    }

    #[test]
    fn centroid_at_r_two_dominates() {
        let t = std_t();
        let res = domination_number(&[t.centroid()], &t, RFactor::new(2.0).unwrap()).unwrap();
        assert_eq!(res.gamma, 1);
        // Depth of the centroid is 2/3 of the altitude, and 2 * 2/3 >= 1.
        let d = t.vertex_line_distance(VertexRegionId::ALL[0], &t.centroid());
        assert!(d >= 0.5 * t.altitude(VertexRegionId::ALL[0]));
    }

    #[test]
    fn three_corner_points_need_three() {
        let t = std_t();
        let pts = [
            Point::new(0.05, 0.02),
            Point::new(0.95, 0.02),
            Point::new(0.5, 0.83),
        ];
        let fast = domination_number(&pts, &t, RFactor::THREE_HALVES).unwrap();
        let brute = domination_number_bruteforce(&pts, &t, RFactor::THREE_HALVES).unwrap();
        assert_eq!(fast.gamma, 3);
        assert_eq!(brute.gamma, 3);
        assert_eq!(fast.witnesses, vec![0, 1, 2]);
    }

    #[test]
    fn two_shallow_points_at_r_one() {
        let t = std_t();
        let pts = [Point::new(0.1, 0.05), Point::new(0.9, 0.05)];
        let brute = domination_number_bruteforce(&pts, &t, RFactor::ONE).unwrap();
        assert_eq!(brute.gamma, 2);
        assert_eq!(domination_number(&pts, &t, RFactor::ONE).unwrap().gamma, 2);
    }

    #[test]
    fn vertex_points_only_dominate_themselves() {
        let t = std_t();
        let pts = [Point::new(0.0, 0.0), Point::new(0.3, 0.2)];
        let g = build_digraph(&pts, &t, RFactor::INFINITY).unwrap();
        assert!(!g.has_arc(0, 1));
        assert!(g.has_arc(1, 0));
        assert_eq!(g.domination().gamma, 1);
        let corners = *t.vertices();
        let fast = domination_number(&corners, &t, RFactor::INFINITY).unwrap();
        assert_eq!(fast.gamma, 3);
        assert_eq!(
            domination_number_bruteforce(&corners, &t, RFactor::INFINITY)
                .unwrap()
                .gamma,
            3
        );
    }

    #[test]
    fn oracle_cap_and_outside_points() {
        let t = std_t();
        let many = vec![t.centroid(); 5];
        assert_eq!(
            domination_number_bruteforce_capped(&many, &t, RFactor::ONE, 4).unwrap_err(),
            Error::OracleCapExceeded { n: 5, cap: 4 }
        );
        assert!(matches!(
            domination_number(&[Point::new(-1.0, 0.0)], &t, RFactor::ONE),
            Err(Error::OutsideTriangle { .. })
        ));
    }

    #[test]
    fn witnesses_dominate() {
        let t = std_t();
        let pts = [
            Point::new(0.2, 0.1),
            Point::new(0.7, 0.1),
            Point::new(0.5, 0.6),
            Point::new(0.45, 0.3),
        ];
        for r in [1.0, 1.25, 1.5, 2.0] {
            let r = RFactor::new(r).unwrap();
            let g = build_digraph(&pts, &t, r).unwrap();
            let res = g.domination();
            assert!(g.dominates(&res.witnesses));
            assert_eq!(res.witnesses.len(), res.gamma as usize);
        }
    }

    #[test]
    fn mean_over_mesh() {
        let sites = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.5, 1.0),
        ];
        let mesh = delaunay(&sites).unwrap();
        let pts = [
            Point::new(0.5, 0.3),
            Point::new(0.45, 0.35),
            Point::new(5.0, 5.0),
        ];
        let m = mean_domination(&mesh, &pts, RFactor::THREE_HALVES).unwrap();
        let direct = domination_number(&pts[..2], mesh.triangle(0), RFactor::THREE_HALVES).unwrap();
        assert_eq!(m.g_bar, direct.gamma as f64);
        assert_eq!((m.j_effective, m.n_outside, m.n_used()), (1, 1, 2));
        assert_eq!(
            mean_domination(&mesh, &[Point::new(3.0, 3.0)], RFactor::ONE).unwrap_err(),
            Error::NoPointsInHull
        );
    }

    #[test]
    fn mean_of_two_and_three() {
        let per = vec![
            TriangleDomination { n: 4, gamma: 2 },
            TriangleDomination { n: 0, gamma: 0 },
            TriangleDomination { n: 9, gamma: 3 },
        ];
        let m = summarize(per, 0).unwrap();
        assert_eq!((m.g_bar, m.j_effective), (2.5, 2));
    }
}
