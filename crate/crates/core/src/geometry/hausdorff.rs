//! Hausdorff distance between polytopes.
//!
//! Point-to-polytope distances are minimized exactly over the face lattice:
//! the nearest point lies in the relative interior of some face, where it is
//! the orthogonal projection onto that face's affine hull.

use super::Polytope;
use crate::error::{dim_check, Result};
use crate::linalg::{add, dot, echelon, norm_sq, scale, solve, sub};
use crate::scalar::{Rational, Scalar};

/// Vertex index sets of all nonempty faces, the polytope itself included.
pub fn faces(p: &Polytope<Rational>) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..p.num_vertices()).collect();
    let (frame, hs) = p.facet_inequalities();
    let proj: Vec<Vec<Rational>> = p.vertices().iter().map(|v| frame.project(v)).collect();
    let mut out: Vec<Vec<usize>> = vec![all];
    let mut frontier: Vec<Vec<usize>> = hs
        .iter()
        .map(|(a, b)| (0..proj.len()).filter(|&i| dot(a, &proj[i]) == *b).collect())
        .collect();
    let facets = frontier.clone();
    frontier.sort();
    frontier.dedup();
    // close under intersection with facets
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in frontier {
            if out.contains(&f) {
                continue;
            }
            for g in &facets {
                let i: Vec<usize> = f.iter().copied().filter(|x| g.contains(x)).collect();
                if !i.is_empty() && i.len() < f.len() {
                    next.push(i);
                }
            }
            out.push(f);
        }
        next.sort();
        next.dedup();
        frontier = next;
    }
    out
}

/// Exact squared distance from `x` to the polytope.
pub fn distance_sq_to(p: &Polytope<Rational>, x: &[Rational]) -> Rational {
    let mut best: Option<Rational> = None;
    for face in faces(p) {
        let pts: Vec<Vec<Rational>> = face.iter().map(|&i| p.vertices()[i].clone()).collect();
        let Some(y) = project_onto_affine_hull(&pts, x) else {
            continue;
        };
        let f = Polytope::from_extreme_points(pts, p.dim());
        if !f.contains(&y) {
            continue;
        }
        let d = norm_sq(&sub(x, &y));
        best = match best {
            Some(b) if b <= d => Some(b),
            _ => Some(d),
        };
    }
    best.expect("vertex faces always qualify")
}

/// Orthogonal projection of `x` onto the affine hull of `pts`.
fn project_onto_affine_hull(pts: &[Vec<Rational>], x: &[Rational]) -> Option<Vec<Rational>> {
    let base = &pts[0];
    let diffs: Vec<Vec<Rational>> = pts[1..].iter().map(|v| sub(v, base)).collect();
    let (basis, _) = echelon(&diffs);
    if basis.is_empty() {
        return Some(base.clone());
    }
    let gram: Vec<Vec<Rational>> = basis.iter().map(|u| basis.iter().map(|w| dot(u, w)).collect()).collect();
    let rhs: Vec<Rational> = basis.iter().map(|u| dot(u, &sub(x, base))).collect();
    let c = solve(&gram, &rhs)?;
    let mut y = base.clone();
    for (ci, u) in c.iter().zip(&basis) {
        y = add(&y, &scale(u, ci));
    }
    Some(y)
}

/// Hausdorff distance, exact up to a final square root.
pub fn hausdorff_distance(p: &Polytope<Rational>, q: &Polytope<Rational>) -> Result<f64> {
    dim_check("hausdorff_distance", p.dim(), q.dim())?;
    let mut worst = Rational::from_int(0);
    for v in p.vertices() {
        worst = worst.max(distance_sq_to(q, v));
    }
    for v in q.vertices() {
        worst = worst.max(distance_sq_to(p, v));
    }
    Ok(worst.to_f64_lossy().sqrt())
}
