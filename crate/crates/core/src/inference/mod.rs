//! The mean-domination test of segregation and association against complete
//! spatial randomness.
//!
//! With `J` nonempty Delaunay triangles and mean domination number `Ḡ`,
//! `S = sqrt(J) (Ḡ - μ) / σ` is asymptotically standard normal under the
//! null at `r = 3/2`. Small `S` indicates segregation, large `S` association.

pub mod normal;

use serde::Serialize;

use crate::domination::{mean_domination, TriangleDomination};
use crate::error::{Error, Result};
use crate::geometry::{delaunay, DelaunayMesh, Point};
use crate::proximity::RFactor;
use crate::simulation::{replicate_mean_domination, AlternativeSpec, ReplicationPlan};

/// Limit of the null distribution of `γ_n(3/2)` as `n -> ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullConstants {
    pub mu: f64,
    pub sigma_sq: f64,
    #[serde(skip)]
    pub p2: f64,
    #[serde(skip)]
    pub p3: f64,
}

impl NullConstants {
    pub const DEFAULT: NullConstants = NullConstants {
        mu: 2.2587,
        sigma_sq: 0.1918,
        p2: 0.7413,
        p3: 0.2587,
    };

    pub fn sigma(&self) -> f64 {
        self.sigma_sq.sqrt()
    }
}

impl Default for NullConstants {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Segregation,
    Association,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Segregation => "segregation",
            Side::Association => "association",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Decision {
    RejectForSegregation,
    RejectForAssociation,
    FailToReject,
}

fn check_alpha(alpha: f64) -> Result<f64> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(alpha)
    } else {
        Err(Error::InvalidAlpha(alpha))
    }
}

pub fn test_statistic(g_bar: f64, j: usize) -> Result<f64> {
    test_statistic_with(g_bar, j, &NullConstants::DEFAULT)
}

pub fn test_statistic_with(g_bar: f64, j: usize, c: &NullConstants) -> Result<f64> {
    if j < 1 {
        return Err(Error::InvalidTriangleCount(j));
    }
    if !g_bar.is_finite() {
        return Err(Error::NonFinite {
            x: g_bar,
            y: j as f64,
        });
    }
    Ok((j as f64).sqrt() * (g_bar - c.mu) / c.sigma())
}

/// `(Φ(S), 1 - Φ(S))`; the two always sum to exactly one.
pub fn p_values(s: f64) -> (f64, f64) {
    let p_seg = normal::cdf(s);
    (p_seg, 1.0 - p_seg)
}

/// Segregation rejects for `S` below `Φ^{-1}(α)`; association rejects for
/// `S` above `Φ^{-1}(1 - α)`.
pub fn critical_value(alpha: f64, side: Side) -> Result<f64> {
    let alpha = check_alpha(alpha)?;
    Ok(match side {
        Side::Segregation => normal::quantile(alpha),
        Side::Association => -normal::quantile(alpha),
    })
}

pub fn decide(s: f64, alpha: f64) -> Result<Decision> {
    Ok(if s < critical_value(alpha, Side::Segregation)? {
        Decision::RejectForSegregation
    } else if s > critical_value(alpha, Side::Association)? {
        Decision::RejectForAssociation
    } else {
        Decision::FailToReject
    })
}

/// The almost-sure limit of `Ḡ` under `alt` at `r = 3/2`, as the per-triangle
/// sample size grows.
pub fn limit_g_bar(alt: &AlternativeSpec) -> Result<f64> {
    alt.validate()?;
    Ok(match *alt {
        AlternativeSpec::Null => NullConstants::DEFAULT.mu,
        AlternativeSpec::Segregation(e) if e <= crate::geometry::SQRT3_2 / 2.0 => 2.0,
        AlternativeSpec::Segregation(_) => 1.0,
        AlternativeSpec::Association(_) => 3.0,
    })
}

/// `⌈(σ z / (μ - Ḡ_limit))²⌉`, the number of triangles from which the
/// level-`α` test separates `Ḡ_limit` from `μ`.
pub fn min_j_for_consistency(alpha: f64, g_bar_limit: f64, side: Side) -> Result<u64> {
    let c = NullConstants::DEFAULT;
    let z = critical_value(alpha, side)?;
    let gap = c.mu - g_bar_limit;
    if gap == 0.0 || !gap.is_finite() {
        return Err(Error::NoConsistencyScale);
    }
    Ok((c.sigma() * z / gap).powi(2).ceil() as u64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestOutcome {
    pub g_bar: f64,
    pub j_effective: usize,
    pub n_used: usize,
    pub n_discarded: usize,
    pub s: f64,
    pub p_segregation: f64,
    pub p_association: f64,
    pub decision: Decision,
    pub constants: NullConstants,
    pub r: RFactor,
    pub alpha: f64,
    pub warnings: Vec<String>,
    pub triangles: Vec<TriangleDomination>,
}

/// Tests `(Ḡ, J)` directly, with no data.
pub fn evaluate(g_bar: f64, j: usize, alpha: f64) -> Result<(f64, f64, f64, Decision)> {
    let s = test_statistic(g_bar, j)?;
    let (ps, pa) = p_values(s);
    Ok((s, ps, pa, decide(s, alpha)?))
}

/// Triangulates `y`, then tests the pattern of `x` relative to it.
pub fn run_test(x: &[Point], y: &[Point], r: RFactor, alpha: f64) -> Result<TestOutcome> {
    check_alpha(alpha)?;
    let mesh = delaunay(y)?;
    run_test_on_mesh(&mesh, x, r, alpha)
}

pub fn run_test_on_mesh(
    mesh: &DelaunayMesh,
    x: &[Point],
    r: RFactor,
    alpha: f64,
) -> Result<TestOutcome> {
    check_alpha(alpha)?;
    let m = mean_domination(mesh, x, r)?;
    let (s, p_segregation, p_association, decision) = evaluate(m.g_bar, m.j_effective, alpha)?;
    let mut warnings = Vec::new();
    if r != RFactor::THREE_HALVES {
        warnings.push(format!(
            "null constants are calibrated for r = 1.5, not r = {r}"
        ));
    }
    if m.n_outside > 0 {
        warnings.push(format!(
            "{} points outside the convex hull were discarded",
            m.n_outside
        ));
    }
    let empty = mesh.len() - m.j_effective;
    if empty > 0 {
        warnings.push(format!("{empty} empty triangles were excluded"));
    }
    Ok(TestOutcome {
        g_bar: m.g_bar,
        j_effective: m.j_effective,
        n_used: m.n_used(),
        n_discarded: m.n_outside,
        s,
        p_segregation,
        p_association,
        decision,
        constants: NullConstants::DEFAULT,
        r,
        alpha,
        warnings,
        triangles: m.per_triangle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriticalMode {
    Asymptotic,
    Empirical,
}

impl CriticalMode {
    pub fn name(self) -> &'static str {
        match self {
            CriticalMode::Asymptotic => "asymptotic",
            CriticalMode::Empirical => "empirical",
        }
    }
}

/// Rejection rate on one side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideRate {
    pub side: Side,
    /// Nominal `α` for asymptotic critical values; the Monte Carlo level
    /// under the null for empirical ones.
    pub level: f64,
    pub rate: f64,
    /// Empirical cutoff on `Ḡ`, if any.
    pub g_bar_cutoff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerStudy {
    pub alternative: AlternativeSpec,
    pub j: usize,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub alpha: f64,
    pub mode: CriticalMode,
    /// One entry for a one-sided alternative, two for the null.
    pub rates: Vec<SideRate>,
    pub g_bar: Vec<f64>,
}

/// Seed offset for the null run that calibrates empirical critical values.
const NULL_CALIBRATION_SALT: u64 = 0x6e75_6c6c;

/// Rejection rates of the level-`α` test over `replicates` samples of `n`
/// points from `alt` on `mesh`.
///
/// Empirical mode runs a separate null simulation and rejects `Ḡ` beyond the
/// most extreme attainable cutoff whose null rejection rate is at most `α`.
pub fn power_study(
    mesh: &DelaunayMesh,
    n: usize,
    alt: AlternativeSpec,
    replicates: usize,
    alpha: f64,
    seed: u64,
    mode: CriticalMode,
) -> Result<PowerStudy> {
    check_alpha(alpha)?;
    let plan = ReplicationPlan::on_mesh(mesh.clone(), n, replicates, seed).with_alternative(alt);
    let reps = replicate_mean_domination(&plan)?;
    let sides: &[Side] = match alt {
        AlternativeSpec::Null => &[Side::Segregation, Side::Association],
        AlternativeSpec::Segregation(_) => &[Side::Segregation],
        AlternativeSpec::Association(_) => &[Side::Association],
    };
    let g_bar: Vec<f64> = reps.iter().map(|m| m.g_bar).collect();
    let rates = match mode {
        CriticalMode::Asymptotic => {
            let stats = reps
                .iter()
                .map(|m| test_statistic(m.g_bar, m.j_effective))
                .collect::<Result<Vec<_>>>()?;
            sides
                .iter()
                .map(|&side| {
                    let z = critical_value(alpha, side)?;
                    let hits = stats.iter().filter(|&&s| rejects(s, z, side)).count();
                    Ok(SideRate {
                        side,
                        level: alpha,
                        rate: hits as f64 / replicates as f64,
                        g_bar_cutoff: None,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        }
        CriticalMode::Empirical => {
            let null_plan =
                ReplicationPlan::on_mesh(mesh.clone(), n, replicates, seed ^ NULL_CALIBRATION_SALT);
            let null: Vec<f64> = replicate_mean_domination(&null_plan)?
                .into_iter()
                .map(|m| m.g_bar)
                .collect();
            sides
                .iter()
                .map(|&side| {
                    let (cutoff, level) = empirical_cutoff(&null, alpha, side);
                    let hits = g_bar.iter().filter(|&&g| rejects(g, cutoff, side)).count();
                    SideRate {
                        side,
                        level,
                        rate: hits as f64 / replicates as f64,
                        g_bar_cutoff: Some(cutoff),
                    }
                })
                .collect()
        }
    };
    Ok(PowerStudy {
        alternative: alt,
        j: mesh.len(),
        n,
        replicates,
        seed,
        alpha,
        mode,
        rates,
        g_bar,
    })
}

fn rejects(value: f64, cutoff: f64, side: Side) -> bool {
    match side {
        Side::Segregation => value < cutoff,
        Side::Association => value > cutoff,
    }
}

/// The cutoff `c` among the null values (or the infinite cutoff that never
/// rejects) that maximizes the null rejection rate subject to it being at
/// most `alpha`; returns `(c, rate)`.
pub fn empirical_cutoff(null: &[f64], alpha: f64, side: Side) -> (f64, f64) {
    let mut sorted: Vec<f64> = null.to_vec();
    sorted.sort_by(f64::total_cmp);
    if side == Side::Association {
        sorted.reverse();
    }
    let n = sorted.len() as f64;
    let mut best = match side {
        Side::Segregation => (f64::NEG_INFINITY, 0.0),
        Side::Association => (f64::INFINITY, 0.0),
    };
    // sorted[i] as cutoff rejects exactly the values strictly before its first occurrence.
    let mut i = 0;
    while i < sorted.len() {
        let level = i as f64 / n;
        if level > alpha {
            break;
        }
        best = (sorted[i], level);
        while i < sorted.len() && sorted[i] == best.0 {
            i += 1;
        }
    }
    best
}
