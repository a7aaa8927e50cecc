//! Γ1-region and superset-region areas, and the r at which they degenerate
//! under each alternative.

use proxcatch::simulation::{replicate_rng, sample_uniform_triangle};
use proxcatch::{critical_r, gamma1_region, superset_area, AlternativeSpec, RFactor, Triangle};

fn main() -> proxcatch::Result<()> {
    let t = Triangle::standard();
    let pts = sample_uniform_triangle(50, &t, &mut replicate_rng(4, 0));
    for r in [1.5, 2.0, 3.0] {
        let r = RFactor::new(r)?;
        let g1 = gamma1_region(&pts, &t, r)?;
        println!(
            "r = {r}: Γ1 area {:.6}, superset area {:.6}, sample points in Γ1: {}",
            g1.area(),
            superset_area(r),
            pts.iter().filter(|p| g1.contains(p)).count()
        );
    }
    let eps = 3f64.sqrt() / 8.0;
    for alt in [
        AlternativeSpec::segregation(eps)?,
        AlternativeSpec::association(eps)?,
    ] {
        println!(
            "{} with ε = {eps:.4}: degenerate at r = {}",
            alt.name(),
            critical_r(&alt)?
        );
    }
    Ok(())
}
