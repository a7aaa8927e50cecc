//! Domination numbers of random samples, with witnesses and a brute-force check.

use proxcatch::simulation::{replicate_rng, sample_uniform_triangle};
use proxcatch::{
    build_digraph, domination_number, domination_number_bruteforce, RFactor, Triangle,
};

fn main() -> proxcatch::Result<()> {
    let t = Triangle::standard();
    for (seed, n) in [(1, 5), (2, 20), (3, 100)] {
        let pts = sample_uniform_triangle(n, &t, &mut replicate_rng(seed, 0));
        let r = RFactor::THREE_HALVES;
        let d = domination_number(&pts, &t, r)?;
        let g = build_digraph(&pts, &t, r)?;
        println!(
            "n = {n}: γ = {} with witnesses {:?} ({} arcs); brute force agrees: {}",
            d.gamma,
            d.witnesses,
            g.arc_count(),
            domination_number_bruteforce(&pts, &t, r)?.gamma == d.gamma
        );
    }
    Ok(())
}
