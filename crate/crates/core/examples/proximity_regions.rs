//! The r-factor proximity region of a point for several values of r.

use proxcatch::proximity::RegionKind;
use proxcatch::{catches, proximity_region, Point, RFactor, Triangle};

fn main() -> proxcatch::Result<()> {
    let t = Triangle::standard();
    let x = Point::new(0.3, 0.2);
    let z = Point::new(0.55, 0.15);
    for r in [1.0, 1.5, 2.0, f64::INFINITY] {
        let r = RFactor::new(r)?;
        let n = proximity_region(&x, &t, r)?;
        let shape = match n.kind {
            RegionKind::ClippedTriangle { vertex, threshold } => {
                format!("triangle at {vertex}, far edge at distance {threshold:.4}")
            }
            RegionKind::WholeTriangle => "the whole triangle".to_string(),
            RegionKind::DegeneratePoint => "a single point".to_string(),
        };
        println!(
            "r = {r}: N(x) is {shape}; catches z: {}",
            catches(&x, &z, &t, r)?
        );
    }
    Ok(())
}
