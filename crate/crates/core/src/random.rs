//! Seeded random rational polytopes.

use rand::Rng;

use crate::geometry::Polytope;
use crate::scalar::{Rational, Scalar};

/// Hull of `points` random points with coordinates in `{0, 1/den, ..., 3}`,
/// redrawn until it is full-dimensional.
pub fn random_polytope<R: Rng + ?Sized>(rng: &mut R, dim: usize, points: usize, den: i64) -> Polytope<Rational> {
    let points = points.max(dim + 1);
    loop {
        let pts: Vec<Vec<Rational>> = (0..points)
            .map(|_| (0..dim).map(|_| Rational::ratio(rng.gen_range(0..=3 * den), den)).collect())
            .collect();
        let p = Polytope::hull_unchecked(pts, dim);
        if p.is_full_dimensional() {
            return p;
        }
    }
}

/// Random simplex with small rational coordinates.
pub fn random_simplex<R: Rng + ?Sized>(rng: &mut R, dim: usize, den: i64) -> Polytope<Rational> {
    random_polytope(rng, dim, dim + 1, den)
}
