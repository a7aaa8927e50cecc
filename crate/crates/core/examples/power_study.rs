//! Empirical size and power of the test with asymptotic and Monte Carlo
//! critical values.
//!
//! Pass a replicate count as the first argument (default 500).

use proxcatch::inference::{power_study, CriticalMode};
use proxcatch::simulation::random_mesh;
use proxcatch::AlternativeSpec;

fn main() -> proxcatch::Result<()> {
    let replicates = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(500);
    let (mesh, _) = random_mesh(10, 13, 2004)?;
    let models = [
        AlternativeSpec::Null,
        AlternativeSpec::segregation(3f64.sqrt() / 8.0)?,
        AlternativeSpec::association(3f64.sqrt() / 21.0)?,
    ];
    for mode in [CriticalMode::Asymptotic, CriticalMode::Empirical] {
        for alt in models {
            let study = power_study(&mesh, 1000, alt, replicates, 0.05, 7, mode)?;
            for r in &study.rates {
                println!(
                    "{:<10} {:<12} {:<12} level {:.3} rate {:.3}",
                    mode.name(),
                    alt.name(),
                    r.side.name(),
                    r.level,
                    r.rate
                );
            }
        }
    }
    Ok(())
}
