//! Mean domination number over a Delaunay mesh under the null and both alternatives.

use proxcatch::simulation::{random_mesh, replicate_rng, sample_alternative_mesh};
use proxcatch::{mean_domination, AlternativeSpec, RFactor};

fn main() -> proxcatch::Result<()> {
    let (mesh, _) = random_mesh(10, 13, 2004)?;
    let eps = 3f64.sqrt() / 8.0;
    let models = [
        AlternativeSpec::Null,
        AlternativeSpec::segregation(eps)?,
        AlternativeSpec::association(3f64.sqrt() / 21.0)?,
    ];
    for (i, alt) in models.iter().enumerate() {
        let x = sample_alternative_mesh(1000, alt, &mesh, &mut replicate_rng(5, i as u64))?;
        let m = mean_domination(&mesh, &x, RFactor::THREE_HALVES)?;
        let gammas: Vec<u8> = m.per_triangle.iter().map(|t| t.gamma).collect();
        println!(
            "{:<12} Ḡ = {:.3} over {} triangles, γ per triangle {gammas:?}",
            alt.name(),
            m.g_bar,
            m.j_effective
        );
    }
    Ok(())
}
