//! r-factor proximity catch digraphs on triangles and Delaunay
//! tessellations, their domination numbers, and a test of spatial
//! segregation or association based on the mean domination number.
//!
//! A point `x` in a triangle `T` with vertex region `R(y)` catches `z` when
//! `z` lies in `N^r(x)`: the part of `T` within `r` times `x`'s distance
//! from `y` to the line through `x` parallel to the edge opposite `y`. The
//! domination number `γ` of the resulting digraph is always 1, 2 or 3 for
//! a nonempty set and is computed in linear time.
//!
//! Runnable examples, one per capability, live in `examples/`:
//!
//! * `standardize_triangle`: affine map to the equilateral triangle;
//! * `delaunay_mesh`: triangulating sites and locating points;
//! * `proximity_regions`: `N^r(x)` and the catch relation;
//! * `domination_number`: `γ` with witnesses, checked by brute force;
//! * `gamma1_area`: the Γ1-region and superset region areas;
//! * `null_distribution`: Monte Carlo distribution of `γ` under uniformity;
//! * `mean_domination`: `Ḡ` over a Delaunay mesh;
//! * `segregation_test`: the test on simulated data;
//! * `power_study`: rejection rates under the alternatives.
//!
//! ```
//! use proxcatch::{domination_number, Point, RFactor, Triangle};
//!
//! let t = Triangle::standard();
//! let pts = [Point::new(0.5, 0.3), Point::new(0.45, 0.25)];
//! let d = domination_number(&pts, &t, RFactor::THREE_HALVES).unwrap();
//! assert_eq!(d.gamma, 1);
//! ```

pub mod cli;
pub mod domination;
pub mod error;
pub mod geometry;
pub mod inference;
pub mod proximity;
pub mod simulation;

pub use domination::{
    build_digraph, domination_number, domination_number_bruteforce, mean_domination, CatchDigraph,
    DominationResult, MeanDomination,
};
pub use error::{Error, Result};
pub use geometry::{
    delaunay, locate, standardize, vertex_region, DelaunayMesh, Point, Triangle, VertexRegionId,
};
pub use inference::{run_test, test_statistic, Decision, NullConstants, TestOutcome};
pub use proximity::{catches, critical_r, gamma1_region, proximity_region, superset_area, RFactor};
pub use simulation::{AlternativeSpec, ReplicationPlan};
