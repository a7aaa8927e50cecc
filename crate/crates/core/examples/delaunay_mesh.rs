//! Triangulates random sites and locates query points in the mesh.

use proxcatch::simulation::replicate_rng;
use proxcatch::{delaunay, Point};
use rand::Rng;

fn main() -> proxcatch::Result<()> {
    let mut rng = replicate_rng(1, 0);
    let sites: Vec<Point> = (0..10)
        .map(|_| Point::new(rng.random(), rng.random()))
        .collect();
    let mesh = delaunay(&sites)?;
    println!(
        "{} sites, {} triangles, hull {:?}",
        sites.len(),
        mesh.len(),
        mesh.hull()
    );
    for (j, tri) in mesh.triangles().iter().enumerate() {
        println!(
            "  triangle {j}: {tri:?}, area {:.4}",
            mesh.triangle(j).area()
        );
    }
    println!("hull area {:.4}", mesh.hull_area());
    for q in [Point::new(0.5, 0.5), Point::new(2.0, 2.0)] {
        match mesh.locate(&q) {
            Some(j) => println!("{q} lies in triangle {j}"),
            None => println!("{q} is outside the hull"),
        }
    }
    Ok(())
}
