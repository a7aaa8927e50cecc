//! Monte Carlo distribution of γ for uniform samples of growing size.
//!
//! Pass a replicate count as the first argument (default 1000).

use proxcatch::simulation::replicate_gamma;
use proxcatch::{RFactor, ReplicationPlan};

fn main() -> proxcatch::Result<()> {
    let replicates = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(1000);
    println!(
        "{:>6} {:>7} {:>7} {:>7} {:>7} {:>7}",
        "n", "P(1)", "P(2)", "P(3)", "mean", "var"
    );
    for n in [10, 30, 100, 300, 1000, 5000] {
        let h = replicate_gamma(&ReplicationPlan::standard(
            n,
            replicates,
            n as u64,
            RFactor::THREE_HALVES,
        ))?;
        println!(
            "{n:>6} {:>7.3} {:>7.3} {:>7.3} {:>7.4} {:>7.4}",
            h.proportion(1),
            h.proportion(2),
            h.proportion(3),
            h.mean(),
            h.variance()
        );
    }
    Ok(())
}
