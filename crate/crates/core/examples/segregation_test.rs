//! The mean-domination test applied to one null, one segregated and one
//! associated realization.

use proxcatch::simulation::{random_mesh, replicate_rng, sample_alternative_mesh};
use proxcatch::{run_test, AlternativeSpec, RFactor};

fn main() -> proxcatch::Result<()> {
    let (mesh, _) = random_mesh(10, 13, 2004)?;
    let models = [
        AlternativeSpec::Null,
        AlternativeSpec::segregation_from_delta(1.0 / 16.0)?,
        AlternativeSpec::association(3f64.sqrt() / 21.0)?,
    ];
    for (i, alt) in models.iter().enumerate() {
        let x = sample_alternative_mesh(1000, alt, &mesh, &mut replicate_rng(6, i as u64))?;
        let out = run_test(&x, mesh.sites(), RFactor::THREE_HALVES, 0.05)?;
        println!(
            "{:<12} Ḡ = {:.3}, S = {:+.3}, p_seg = {:.4}, p_assoc = {:.4}: {:?}",
            alt.name(),
            out.g_bar,
            out.s,
            out.p_segregation,
            out.p_association,
            out.decision
        );
    }
    Ok(())
}
