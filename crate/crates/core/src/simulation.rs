//! Samplers for complete spatial randomness and the segregation/association
//! alternatives, and a seeded replication engine.
//!
//! Replicate `i` of a plan with seed `s` draws from its own ChaCha8 stream
//! `(s, i)`, so results do not depend on how replicates are scheduled across
//! threads.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::domination::{self, MeanDomination};
use crate::error::{Error, Result};
use crate::geometry::{delaunay, standardize, DelaunayMesh, Point, Triangle, SQRT3_2};
use crate::proximity::RFactor;

/// `sqrt(3) / 3`, the upper end of the alternative parameter range.
pub const EPSILON_MAX: f64 = 0.577_350_269_189_625_7;

/// The sampling model for the X points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Default)]
#[serde(tag = "model", content = "epsilon", rename_all = "lowercase")]
pub enum AlternativeSpec {
    /// Uniform on the triangle (complete spatial randomness).
    #[default]
    Null,
    /// Uniform on the triangle minus the three corner triangles of
    /// vertex-line height `ε`.
    Segregation(f64),
    /// Uniform on the union of the three corner triangles of height `sqrt(3)/3 - ε`.
    Association(f64),
}

pub(crate) fn check_epsilon(eps: f64) -> Result<f64> {
    if eps > 0.0 && eps < EPSILON_MAX {
        Ok(eps)
    } else {
        Err(Error::InvalidEpsilon(eps))
    }
}

impl AlternativeSpec {
    pub fn segregation(eps: f64) -> Result<Self> {
        check_epsilon(eps).map(AlternativeSpec::Segregation)
    }

    pub fn association(eps: f64) -> Result<Self> {
        check_epsilon(eps).map(AlternativeSpec::Association)
    }

    /// Segregation carving away a fraction `δ` of the area at each vertex.
    pub fn segregation_from_delta(delta: f64) -> Result<Self> {
        Self::segregation(delta_to_eps_segregation(delta)?)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            AlternativeSpec::Null => Ok(()),
            AlternativeSpec::Segregation(e) | AlternativeSpec::Association(e) => {
                check_epsilon(e).map(|_| ())
            }
        }
    }

    pub fn epsilon(&self) -> Option<f64> {
        match *self {
            AlternativeSpec::Null => None,
            AlternativeSpec::Segregation(e) | AlternativeSpec::Association(e) => Some(e),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AlternativeSpec::Null => "null",
            AlternativeSpec::Segregation(_) => "segregation",
            AlternativeSpec::Association(_) => "association",
        }
    }

    /// Whether a point of the standard triangle lies in the model's support.
    pub fn admits_standard(&self, p: &Point) -> bool {
        let near = nearest_vertex_line_distance(p);
        match *self {
            AlternativeSpec::Null => true,
            AlternativeSpec::Segregation(eps) => near > eps,
            AlternativeSpec::Association(eps) => near <= EPSILON_MAX - eps,
        }
    }
}

/// `min_y d(y, l_y(p))` over the vertices of the standard triangle.
pub fn nearest_vertex_line_distance(p: &Point) -> f64 {
    let bary = Triangle::standard().barycentric(p);
    let max = bary[0].max(bary[1]).max(bary[2]);
    (1.0 - max) * SQRT3_2
}

/// `ε = sqrt(3 δ / 4)`: carving a fraction `δ` of the area from each corner
/// of any triangle is segregation with parameter `ε` after standardization.
pub fn delta_to_eps_segregation(delta: f64) -> Result<f64> {
    if delta > 0.0 && delta < 4.0 / 9.0 {
        Ok((3.0 * delta / 4.0).sqrt())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}

/// The RNG stream for replicate `index` of a plan seeded with `seed`.
pub fn replicate_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn uniform_in<R: Rng + ?Sized>(t: &Triangle, rng: &mut R) -> Point {
    let [a, b, c] = t.vertices();
    let (mut u, mut v): (f64, f64) = (rng.random(), rng.random());
    if u + v > 1.0 {
        u = 1.0 - u;
        v = 1.0 - v;
    }
    Point::new(
        a.x + u * (b.x - a.x) + v * (c.x - a.x),
        a.y + u * (b.y - a.y) + v * (c.y - a.y),
    )
}

pub fn sample_uniform_triangle<R: Rng + ?Sized>(n: usize, t: &Triangle, rng: &mut R) -> Vec<Point> {
    (0..n).map(|_| uniform_in(t, rng)).collect()
}

fn area_weights(mesh: &DelaunayMesh) -> WeightedIndex<f64> {
    WeightedIndex::new(mesh.cells().iter().map(Triangle::area))
        .expect("mesh triangles have positive area")
}

/// Uniform on the convex hull: each point picks a triangle with probability
/// proportional to its area.
pub fn sample_uniform_hull<R: Rng + ?Sized>(
    n: usize,
    mesh: &DelaunayMesh,
    rng: &mut R,
) -> Vec<Point> {
    let weights = area_weights(mesh);
    (0..n)
        .map(|_| uniform_in(mesh.triangle(weights.sample(rng)), rng))
        .collect()
}

fn standard_draw<R: Rng + ?Sized>(alt: &AlternativeSpec, rng: &mut R) -> Point {
    let te = Triangle::standard();
    loop {
        let p = uniform_in(&te, rng);
        if alt.admits_standard(&p) {
            return p;
        }
    }
}

/// `n` draws from `alt` on `t`: sampled in the standard triangle by
/// rejection and mapped back.
pub fn sample_alternative<R: Rng + ?Sized>(
    n: usize,
    alt: &AlternativeSpec,
    t: &Triangle,
    rng: &mut R,
) -> Result<Vec<Point>> {
    alt.validate()?;
    if matches!(alt, AlternativeSpec::Null) {
        return Ok(sample_uniform_triangle(n, t, rng));
    }
    let back = standardize(t).inverse();
    Ok((0..n)
        .map(|_| back.apply(&standard_draw(alt, rng)))
        .collect())
}

/// `alt` applied cell by cell on a Delaunay mesh, cells chosen by area.
pub fn sample_alternative_mesh<R: Rng + ?Sized>(
    n: usize,
    alt: &AlternativeSpec,
    mesh: &DelaunayMesh,
    rng: &mut R,
) -> Result<Vec<Point>> {
    alt.validate()?;
    if matches!(alt, AlternativeSpec::Null) {
        return Ok(sample_uniform_hull(n, mesh, rng));
    }
    let weights = area_weights(mesh);
    let back: Vec<_> = mesh
        .cells()
        .iter()
        .map(|c| standardize(c).inverse())
        .collect();
    Ok((0..n)
        .map(|_| {
            let j = weights.sample(rng);
            back[j].apply(&standard_draw(alt, rng))
        })
        .collect())
}

#[derive(Debug, Clone)]
pub enum Target {
    SingleTriangle(Triangle),
    Mesh(DelaunayMesh),
}

#[derive(Debug, Clone)]
pub struct ReplicationPlan {
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub r: RFactor,
    pub target: Target,
    pub alternative: AlternativeSpec,
}

impl ReplicationPlan {
    /// Null model on the standard triangle.
    pub fn standard(n: usize, replicates: usize, seed: u64, r: RFactor) -> Self {
        ReplicationPlan {
            n,
            replicates,
            seed,
            r,
            target: Target::SingleTriangle(Triangle::standard()),
            alternative: AlternativeSpec::Null,
        }
    }

    pub fn on_mesh(mesh: DelaunayMesh, n: usize, replicates: usize, seed: u64) -> Self {
        ReplicationPlan {
            n,
            replicates,
            seed,
            r: RFactor::THREE_HALVES,
            target: Target::Mesh(mesh),
            alternative: AlternativeSpec::Null,
        }
    }

    pub fn with_alternative(mut self, alt: AlternativeSpec) -> Self {
        self.alternative = alt;
        self
    }

    pub fn with_r(mut self, r: RFactor) -> Self {
        self.r = r;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.replicates == 0 {
            return Err(Error::InvalidPlan("replicates must be >= 1".into()));
        }
        self.alternative.validate()
    }

    /// The sample for replicate `index`.
    pub fn draw(&self, index: usize) -> Result<Vec<Point>> {
        let mut rng = replicate_rng(self.seed, index as u64);
        match &self.target {
            Target::SingleTriangle(t) => sample_alternative(self.n, &self.alternative, t, &mut rng),
            Target::Mesh(m) => sample_alternative_mesh(self.n, &self.alternative, m, &mut rng),
        }
    }
}

/// Runs `f` on every replicate's sample, in parallel, returning results in
/// replicate order.
pub fn replicate_map<T, F>(plan: &ReplicationPlan, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[Point]) -> Result<T> + Sync,
{
    plan.validate()?;
    (0..plan.replicates)
        .into_par_iter()
        .map(|i| plan.draw(i).and_then(|pts| f(&pts)))
        .collect()
}

/// Counts of `γ = k` over the replicates of a single-triangle plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaHistogram {
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub r: RFactor,
    /// `counts[k]` replicates had `γ = k`; `counts[0]` is nonzero only for `n = 0`.
    pub counts: [usize; 4],
}

impl GammaHistogram {
    pub fn count(&self, k: usize) -> usize {
        self.counts[k]
    }

    pub fn proportion(&self, k: usize) -> f64 {
        self.counts[k] as f64 / self.replicates as f64
    }

    pub fn mean(&self) -> f64 {
        (1..4).map(|k| k as f64 * self.proportion(k)).sum()
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        (1..4)
            .map(|k| (k as f64 - m).powi(2) * self.proportion(k))
            .sum()
    }

    /// Empirical `P(γ <= k)`.
    pub fn cdf(&self, k: usize) -> f64 {
        (0..=k.min(3)).map(|j| self.proportion(j)).sum()
    }
}

fn single_triangle(plan: &ReplicationPlan) -> Result<&Triangle> {
    match &plan.target {
        Target::SingleTriangle(t) => Ok(t),
        Target::Mesh(_) => Err(Error::InvalidPlan(
            "a single-triangle target is required".into(),
        )),
    }
}

/// γ for every replicate of a single-triangle plan.
pub fn replicate_gamma_values(plan: &ReplicationPlan) -> Result<Vec<u8>> {
    let t = *single_triangle(plan)?;
    let r = plan.r;
    replicate_map(plan, move |pts| {
        domination::domination_number(pts, &t, r).map(|d| d.gamma)
    })
}

pub fn replicate_gamma(plan: &ReplicationPlan) -> Result<GammaHistogram> {
    let values = replicate_gamma_values(plan)?;
    let mut counts = [0usize; 4];
    for g in values {
        counts[g as usize] += 1;
    }
    Ok(GammaHistogram {
        n: plan.n,
        replicates: plan.replicates,
        seed: plan.seed,
        r: plan.r,
        counts,
    })
}

fn mesh_of(plan: &ReplicationPlan) -> Result<&DelaunayMesh> {
    match &plan.target {
        Target::Mesh(m) => Ok(m),
        Target::SingleTriangle(_) => Err(Error::InvalidPlan("a mesh target is required".into())),
    }
}

/// Full mean-domination summaries for every replicate of a mesh plan.
pub fn replicate_mean_domination(plan: &ReplicationPlan) -> Result<Vec<MeanDomination>> {
    let mesh = mesh_of(plan)?;
    let r = plan.r;
    replicate_map(plan, |pts| domination::mean_domination(mesh, pts, r))
}

/// `Ḡ` for every replicate of a mesh plan.
pub fn replicate_mean_gamma(plan: &ReplicationPlan) -> Result<Vec<f64>> {
    Ok(replicate_mean_domination(plan)?
        .into_iter()
        .map(|m| m.g_bar)
        .collect())
}

/// Draws `sites` uniform points in the unit square, retrying with successive
/// streams of `seed` until the triangulation has exactly `triangles` cells.
/// Returns the mesh and the number of the stream that produced it.
pub fn random_mesh(sites: usize, triangles: usize, seed: u64) -> Result<(DelaunayMesh, u64)> {
    if triangles == 0 {
        return Err(Error::InvalidTriangleCount(0));
    }
    if sites < 3 {
        return Err(Error::TooFewSites(sites));
    }
    const ATTEMPTS: u64 = 100_000;
    for attempt in 0..ATTEMPTS {
        let mut rng = replicate_rng(seed, attempt);
        let pts: Vec<Point> = (0..sites)
            .map(|_| Point::new(rng.random(), rng.random()))
            .collect();
        if let Ok(mesh) = delaunay(&pts) {
            if mesh.len() == triangles {
                return Ok((mesh, attempt));
            }
        }
    }
    Err(Error::InvalidPlan(format!(
        "no {sites}-site configuration with {triangles} triangles in {ATTEMPTS} draws"
    )))
}

/// Runs `f` on a dedicated pool of `threads` workers (rayon's global pool if `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(k) if k > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("thread pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SQRT3_2;

    const SQRT3: f64 = 2.0 * SQRT3_2;

    #[test]
    fn delta_conversion() {
        assert!((delta_to_eps_segregation(1.0 / 16.0).unwrap() - SQRT3 / 8.0).abs() < 1e-15);
        assert!(delta_to_eps_segregation(1e-12).unwrap() < 1e-5);
        let edge = delta_to_eps_segregation(4.0 / 9.0 - 1e-9).unwrap();
        assert!(edge < EPSILON_MAX && EPSILON_MAX - edge < 1e-8);
        assert!(delta_to_eps_segregation(0.0).is_err());
        assert!(delta_to_eps_segregation(4.0 / 9.0).is_err());
    }

    #[test]
    fn epsilon_range() {
        assert!(AlternativeSpec::segregation(0.0).is_err());
        assert!(AlternativeSpec::association(EPSILON_MAX).is_err());
        assert!(AlternativeSpec::segregation(0.2).is_ok());
        assert!((EPSILON_MAX - SQRT3 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn empty_sample() {
        let mut rng = replicate_rng(1, 0);
        assert!(sample_uniform_triangle(0, &Triangle::standard(), &mut rng).is_empty());
    }

    #[test]
    fn uniform_mean_is_centroid() {
        let t = Triangle::standard();
        let mut rng = replicate_rng(3, 0);
        let n = 10_000;
        let pts = sample_uniform_triangle(n, &t, &mut rng);
        let (mx, my) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.x, b + p.y));
        let (mx, my) = (mx / n as f64, my / n as f64);
        // Coordinate standard deviations on T_e: sqrt(1/24) and sqrt(1/24).
        let se = (1.0f64 / 24.0).sqrt() / (n as f64).sqrt();
        assert!((mx - 0.5).abs() < 3.0 * se, "{mx}");
        assert!((my - SQRT3 / 6.0).abs() < 3.0 * se, "{my}");
        assert!(pts.iter().all(|p| t.contains(p)));
    }

    #[test]
    fn supports_are_exact() {
        let mut rng = replicate_rng(5, 0);
        let t = Triangle::new(
            Point::new(-1.0, 0.0),
            Point::new(3.0, 1.0),
            Point::new(0.5, 2.0),
        )
        .unwrap();
        let seg = AlternativeSpec::segregation(SQRT3 / 8.0).unwrap();
        for p in sample_alternative(2000, &seg, &t, &mut rng).unwrap() {
            let s = standardize(&t).apply(&p);
            assert!(nearest_vertex_line_distance(&s) > SQRT3 / 8.0 - 1e-12);
        }
        let assoc = AlternativeSpec::association(SQRT3 / 21.0).unwrap();
        let height = 2.0 * SQRT3 / 7.0;
        for p in sample_alternative(2000, &assoc, &Triangle::standard(), &mut rng).unwrap() {
            assert!(nearest_vertex_line_distance(&p) <= height + 1e-12);
        }
    }

    #[test]
    fn replicate_n1_all_ones() {
        let h = replicate_gamma(&ReplicationPlan::standard(
            1,
            200,
            9,
            RFactor::new(1.25).unwrap(),
        ))
        .unwrap();
        assert_eq!(h.counts, [0, 200, 0, 0]);
        let zero = replicate_gamma(&ReplicationPlan::standard(0, 10, 9, RFactor::ONE)).unwrap();
        assert_eq!(zero.counts, [10, 0, 0, 0]);
    }

    #[test]
    fn plan_validation() {
        let plan = ReplicationPlan::standard(5, 0, 1, RFactor::ONE);
        assert!(matches!(replicate_gamma(&plan), Err(Error::InvalidPlan(_))));
        let plan = ReplicationPlan::standard(5, 3, 1, RFactor::ONE);
        assert!(replicate_mean_gamma(&plan).is_err());
    }

    #[test]
    fn determinism_across_thread_counts() {
        let plan = ReplicationPlan::standard(40, 64, 11, RFactor::THREE_HALVES);
        let a = with_threads(Some(1), || replicate_gamma_values(&plan).unwrap());
        let b = with_threads(Some(4), || replicate_gamma_values(&plan).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn random_mesh_hits_target() {
        let (mesh, _) = random_mesh(10, 13, 0).unwrap();
        assert_eq!(mesh.len(), 13);
        assert_eq!(
            random_mesh(10, 13, 0).unwrap().0.triangles(),
            mesh.triangles()
        );
    }
}
