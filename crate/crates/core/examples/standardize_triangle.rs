//! Maps an arbitrary triangle onto the equilateral triangle with vertices
//! (0,0), (1,0), (1/2, sqrt(3)/2) and shows that catches are preserved.

use proxcatch::geometry::standardize;
use proxcatch::{catches, vertex_region, Point, RFactor, Triangle};

fn main() -> proxcatch::Result<()> {
    let t = Triangle::new(
        Point::new(0.0, 0.0),
        Point::new(4.0, 1.0),
        Point::new(1.0, 3.0),
    )?;
    let m = standardize(&t);
    println!("linear part {:?}, translation {}", m.linear, m.translation);
    for v in t.vertices() {
        println!("{v} -> {}", m.apply(v));
    }

    let te = Triangle::standard();
    let (x, z) = (Point::new(1.2, 0.9), Point::new(2.0, 1.4));
    let r = RFactor::THREE_HALVES;
    println!(
        "x in {}, z in {}; caught in T: {}, caught after mapping: {}",
        vertex_region(&x, &t)?,
        vertex_region(&z, &t)?,
        catches(&x, &z, &t, r)?,
        catches(&m.apply(&x), &m.apply(&z), &te, r)?
    );
    let back = m.inverse();
    println!("round trip of x: {}", back.apply(&m.apply(&x)));
    Ok(())
}
