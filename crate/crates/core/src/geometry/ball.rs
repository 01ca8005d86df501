//! Rational polytopes bracketing the Euclidean unit ball in dimensions 2 and 3.
//!
//! Inscribed bodies have every vertex exactly on the unit sphere, so they lie
//! inside the ball. Circle points come from the rational parametrization
//! `t ↦ ((1 - t²), 2t) / (1 + t²)`; sphere points are integer solutions of
//! `a² + b² + c² = d²` divided by a fixed `d`, which keeps a small common
//! denominator for the integer hull. Circumscribed bodies are `R` times the
//! inscribed one, with a rational `R` checked exactly to satisfy
//! `R · inradius >= 1`.

use std::collections::BTreeMap;

use super::Polytope;
use crate::error::{Error, Result};
use crate::scalar::{rational_near, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BallSide {
    Inscribed,
    Circumscribed,
}

/// Constant `C` in the Hausdorff bound `d_H(ball_approx, B) <= C 4^-level`.
pub fn hausdorff_constant(n: usize) -> f64 {
    if n == 2 {
        1.0
    } else {
        4.0
    }
}

/// Rational polytope approximating the unit ball of `R^n`, `n ∈ {2, 3}`.
pub fn ball_approx(n: usize, level: u32, side: BallSide) -> Result<Polytope<Rational>> {
    let inner = inscribed(n, level)?;
    Ok(match side {
        BallSide::Inscribed => inner,
        BallSide::Circumscribed => {
            let r = circumscribing_factor(&inner, if n == 2 { 1 << 12 } else { 1 << 6 });
            inner.scale_unchecked(&r)
        }
    })
}

/// Squared inradius of a full-dimensional polytope containing the origin.
pub fn inradius_sq(p: &Polytope<Rational>) -> Rational {
    let (_, hs) = p.facet_inequalities();
    hs.iter()
        .map(|(a, b)| b * b / crate::linalg::norm_sq(a))
        .min()
        .expect("full-dimensional polytope has facets")
}

/// Largest squared vertex norm.
pub fn circumradius_sq(p: &Polytope<Rational>) -> Rational {
    p.vertices()
        .iter()
        .map(|v| crate::linalg::norm_sq(v))
        .max()
        .expect("nonempty")
}

/// Upper bound on the Hausdorff distance from the unit ball, for bodies that
/// either lie inside it with all vertices on the sphere or contain it.
pub fn distance_to_unit_ball(p: &Polytope<Rational>) -> f64 {
    let r_in = inradius_sq(p).to_f64_bounds_sqrt(false);
    let r_out = circumradius_sq(p).to_f64_bounds_sqrt(true);
    if r_in >= 1.0 {
        r_out - 1.0
    } else {
        (1.0 - r_in).max(r_out - 1.0)
    }
}

trait SqrtBound {
    fn to_f64_bounds_sqrt(&self, upper: bool) -> f64;
}

impl SqrtBound for Rational {
    fn to_f64_bounds_sqrt(&self, upper: bool) -> f64 {
        use crate::scalar::Scalar;
        let (lo, hi) = self.to_f64_bounds();
        if upper {
            hi.sqrt().next_up()
        } else {
            lo.max(0.0).sqrt().next_down().max(0.0)
        }
    }
}

/// Smallest `k / den` with `(k / den)² · inradius² >= 1`.
fn circumscribing_factor(inner: &Polytope<Rational>, den: i64) -> Rational {
    use crate::scalar::Scalar;
    let r2 = inradius_sq(inner);
    let (lo, _) = r2.to_f64_bounds();
    let k = (den as f64 / lo.sqrt()).floor() as i64 - 1;
    let mut r = Rational::ratio(k, den);
    let one = Rational::from_int(1);
    let step = Rational::ratio(1, den);
    while &r * &r * &r2 < one {
        r += &step;
    }
    r
}

fn inscribed(n: usize, level: u32) -> Result<Polytope<Rational>> {
    if level == 0 {
        return Err(Error::OutOfRange("ball level must be at least 1".into()));
    }
    let dirs = match n {
        2 => circle_directions(level),
        3 => sphere_directions(level),
        _ => return Err(Error::UnsupportedDimension(n)),
    };
    let den = 1i64 << (2 * level + 6).min(40);
    let mut pts = Vec::with_capacity(2 * dirs.len());
    for u in dirs {
        if !positive_half(&u) {
            continue;
        }
        let p = if n == 2 {
            circle_point(&u, den)
        } else {
            sphere_point(&u, SPHERE_RADIUS)
        };
        let neg: Vec<Rational> = p.iter().map(|c| -c).collect();
        pts.push(p);
        pts.push(neg);
    }
    Ok(Polytope::hull_unchecked(pts, n))
}

fn positive_half(u: &[f64]) -> bool {
    for &c in u {
        if c.abs() > 1e-12 {
            return c > 0.0;
        }
    }
    false
}

fn circle_directions(level: u32) -> Vec<Vec<f64>> {
    let m = 3usize << level;
    (0..m)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
            vec![t.cos(), t.sin()]
        })
        .collect()
}

/// Vertices of the octahedron subdivided `level - 1` times, pushed to the sphere.
fn sphere_directions(level: u32) -> Vec<Vec<f64>> {
    let mut verts: Vec<[f64; 3]> = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for &x in &[0, 1] {
        for &y in &[2, 3] {
            for &z in &[4, 5] {
                faces.push([x, y, z]);
            }
        }
    }
    for _ in 1..level {
        let mut mid: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next = Vec::with_capacity(faces.len() * 4);
        for f in &faces {
            let mut m = [0usize; 3];
            for e in 0..3 {
                let (a, b) = (f[e], f[(e + 1) % 3]);
                let key = (a.min(b), a.max(b));
                m[e] = *mid.entry(key).or_insert_with(|| {
                    let (p, q) = (verts[key.0], verts[key.1]);
                    let s = [p[0] + q[0], p[1] + q[1], p[2] + q[2]];
                    let len = (s[0] * s[0] + s[1] * s[1] + s[2] * s[2]).sqrt();
                    verts.push([s[0] / len, s[1] / len, s[2] / len]);
                    verts.len() - 1
                });
            }
            next.push([f[0], m[0], m[2]]);
            next.push([f[1], m[1], m[0]]);
            next.push([f[2], m[2], m[1]]);
            next.push([m[0], m[1], m[2]]);
        }
        faces = next;
    }
    verts.into_iter().map(|v| v.to_vec()).collect()
}

/// Rational point on the unit circle near the unit vector `u`.
fn circle_point(u: &[f64], den: i64) -> Vec<Rational> {
    // u = ((1 - t^2) / (1 + t^2), 2t / (1 + t^2)) with t = tan(θ/2) = u_y / (1 + u_x)
    let t = rational_near(u[1] / (1.0 + u[0]), den);
    let one = Rational::from_integer(1.into());
    let t2 = &t * &t;
    let d = &one + &t2;
    vec![(&one - &t2) / &d, (&t + &t) / &d]
}

/// Radius of the integer sphere; `1105² = 5² 13² 17²` has thousands of
/// representations as a sum of three squares.
const SPHERE_RADIUS: i64 = 1105;

/// Point of `{a² + b² + c² = d²} / d` whose direction is closest to `u`.
fn sphere_point(u: &[f64], d: i64) -> Vec<Rational> {
    const WINDOW: i64 = 40;
    let axis = (0..3)
        .max_by(|&i, &j| u[i].abs().partial_cmp(&u[j].abs()).expect("finite"))
        .expect("three coordinates");
    let others: Vec<usize> = (0..3).filter(|&i| i != axis).collect();
    let (p, q) = (others[0], others[1]);
    let cp = (u[p] * d as f64).round() as i64;
    let cq = (u[q] * d as f64).round() as i64;
    let sign = if u[axis] >= 0.0 { 1 } else { -1 };
    let mut best: Option<(f64, [i64; 3])> = None;
    for a in (cp - WINDOW)..=(cp + WINDOW) {
        for b in (cq - WINDOW)..=(cq + WINDOW) {
            let rem = d * d - a * a - b * b;
            if rem < 0 {
                continue;
            }
            let c = (rem as f64).sqrt().round() as i64;
            if c * c != rem {
                continue;
            }
            let mut x = [0i64; 3];
            x[p] = a;
            x[q] = b;
            x[axis] = sign * c;
            let score = (0..3).map(|i| u[i] * x[i] as f64).sum::<f64>();
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, x));
            }
        }
    }
    let (_, x) = best.expect("lattice points near every direction");
    x.iter().map(|&c| Rational::new(c.into(), d.into())).collect()
}
