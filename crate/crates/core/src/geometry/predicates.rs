//! Sign-exact orientation and in-circle tests.
//!
//! Both delegate to Shewchuk's adaptive predicates: a floating-point
//! evaluation with a forward error bound, refined in exact expansion
//! arithmetic only when the fast result is too close to zero to trust.

use robust::Coord;

use super::Point;

#[inline]
fn coord(p: &Point) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

/// Positive if `a, b, c` turn counter-clockwise, negative if clockwise,
/// zero if collinear. The sign is exact.
#[inline]
pub fn orient2d(a: &Point, b: &Point, c: &Point) -> f64 {
    robust::orient2d(coord(a), coord(b), coord(c))
}

/// Positive if `d` lies strictly inside the circle through the
/// counter-clockwise triangle `a, b, c`, negative if outside, zero if
/// cocircular. The sign is exact.
#[inline]
pub fn incircle(a: &Point, b: &Point, c: &Point, d: &Point) -> f64 {
    robust::incircle(coord(a), coord(b), coord(c), coord(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_signs() {
        let (a, b) = (Point::new(0.0, 0.0), Point::new(1.0, 0.0));
        assert!(orient2d(&a, &b, &Point::new(0.5, 1.0)) > 0.0);
        assert!(orient2d(&a, &b, &Point::new(0.5, -1.0)) < 0.0);
        assert_eq!(orient2d(&a, &b, &Point::new(3.0, 0.0)), 0.0);
    }

    #[test]
    fn nearly_collinear_is_resolved_exactly() {
        // Naive evaluation of these rounds to zero.
        let a = Point::new(0.5, 0.5);
        let b = Point::new(12.0, 12.0);
        let c = Point::new(24.0, 24.0 + 2f64.powi(-48));
        assert!(orient2d(&a, &b, &c) > 0.0);
    }

    #[test]
    fn cocircular_square_is_zero() {
        let sq = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        assert_eq!(incircle(&sq[0], &sq[1], &sq[2], &sq[3]), 0.0);
        assert!(incircle(&sq[0], &sq[1], &sq[2], &Point::new(0.5, 0.5)) > 0.0);
        assert!(incircle(&sq[0], &sq[1], &sq[2], &Point::new(2.0, 2.0)) < 0.0);
    }
}
