use proxcatch::simulation::{replicate_gamma, GammaHistogram};
use proxcatch::{AlternativeSpec, RFactor, ReplicationPlan};

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn hist(n: usize, r: f64, alt: AlternativeSpec, seed: u64) -> GammaHistogram {
    let plan =
        ReplicationPlan::standard(n, 2000, seed, RFactor::new(r).unwrap()).with_alternative(alt);
    replicate_gamma(&plan).unwrap()
}

/// `a <=^ST b`: the CDF of `a` lies above that of `b` at every k, up to
/// three standard errors of the difference.
fn stochastically_below(a: &GammaHistogram, b: &GammaHistogram) -> bool {
    (1..3).all(|k| {
        let (fa, fb) = (a.cdf(k), b.cdf(k));
        let se = ((fa * (1.0 - fa) + fb * (1.0 - fb)) / a.replicates as f64).sqrt();
        fa + 3.0 * se >= fb
    })
}

#[test]
fn stronger_segregation_lowers_gamma() {
    let strong = hist(
        100,
        1.5,
        AlternativeSpec::segregation(SQRT3 / 4.0).unwrap(),
        1,
    );
    let weak = hist(
        100,
        1.5,
        AlternativeSpec::segregation(SQRT3 / 12.0).unwrap(),
        2,
    );
    assert!(stochastically_below(&strong, &weak));
    assert!(strong.mean() < weak.mean());
}

#[test]
fn larger_r_lowers_gamma() {
    let h: Vec<_> = [1.25, 1.5, 2.0]
        .iter()
        .enumerate()
        .map(|(i, &r)| hist(100, r, AlternativeSpec::Null, 10 + i as u64))
        .collect();
    assert!(stochastically_below(&h[1], &h[0]));
    assert!(stochastically_below(&h[2], &h[1]));
}

/// Nondecreasing toward 1, strictly above the start at the end.
fn climbs_to_one(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1]) && v[0] < v[2] && v[2] >= 0.99
}

#[test]
fn distribution_degenerates_away_from_three_halves() {
    let ns = [50, 200, 1000];
    let p3: Vec<f64> = ns
        .iter()
        .map(|&n| hist(n, 1.25, AlternativeSpec::Null, n as u64).proportion(3))
        .collect();
    assert!(climbs_to_one(&p3), "{p3:?}");
    // At r = 2 a quarter of the triangle catches everything, so the climb
    // is visible only at small n.
    let p1: Vec<f64> = [3, 10, 50]
        .iter()
        .map(|&n| hist(n, 2.0, AlternativeSpec::Null, n as u64 + 1).proportion(1))
        .collect();
    assert!(climbs_to_one(&p1), "{p1:?}");
    assert!(ns
        .iter()
        .all(|&n| hist(n, 2.0, AlternativeSpec::Null, n as u64 + 2).proportion(1) >= 0.99));
}

#[test]
fn association_raises_gamma() {
    let null = hist(100, 1.5, AlternativeSpec::Null, 20);
    let assoc = hist(
        100,
        1.5,
        AlternativeSpec::association(SQRT3 / 21.0).unwrap(),
        21,
    );
    assert!(stochastically_below(&null, &assoc));
}
