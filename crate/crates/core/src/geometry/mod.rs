//! Exact polytope arithmetic in vertex representation.
//!
//! A [`Polytope`] stores only its extreme points, sorted lexicographically.
//! Facet data is recomputed on demand by the incremental hull in [`hull`].
//! Lower-dimensional polytopes are ordinary values: their volume and every
//! integral over them is zero.

pub mod ball;
pub mod hausdorff;
pub mod hull;
mod hull_int;

use std::fmt;

use crate::error::{dim_check, Error, Result};
use crate::linalg::{add, determinant, dot, scale, sub};
use crate::scalar::{factorial, Scalar};

pub use ball::{ball_approx, BallSide};
pub use hull::AffineFrame;

/// A point of `R^n` as its coordinate list.
pub type Point<S> = Vec<S>;

/// Convex hull of finitely many points with exact coordinates.
#[derive(Clone, PartialEq)]
pub struct Polytope<S> {
    dim: usize,
    vertices: Vec<Point<S>>,
}

impl<S: Scalar> fmt::Debug for Polytope<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Polytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

/// Method used to cut a full-dimensional polytope into simplices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TriangulationMethod {
    /// Cone from the lexicographically smallest vertex over the boundary.
    #[default]
    Fan,
    /// Simplices swept by the incremental construction.
    Placing,
}

/// Full-dimensional simplices covering a polytope without overlap.
#[derive(Clone, Debug)]
pub struct Triangulation<S> {
    pub dim: usize,
    pub points: Vec<Point<S>>,
    pub simplices: Vec<Vec<usize>>,
    scaled: Option<(Vec<Vec<i128>>, S)>,
}

impl<S: Scalar> Triangulation<S> {
    /// Triangulation of the convex hull of `points`; empty when the hull is
    /// not full-dimensional.
    pub fn of_points(points: Vec<Point<S>>, dim: usize, method: TriangulationMethod) -> Self {
        let mut points = points;
        hull::sort_dedup(&mut points);
        if dim == 0 || points.len() <= dim || AffineFrame::of(&points).rank < dim {
            return Triangulation {
                dim,
                points: Vec::new(),
                simplices: Vec::new(),
                scaled: None,
            };
        }
        let h = hull::build(points, dim);
        let simplices = match method {
            TriangulationMethod::Fan => h.fan(),
            TriangulationMethod::Placing => h.placing.clone(),
        };
        Triangulation {
            dim,
            points: h.points,
            simplices,
            scaled: h.int.map(|d| (d.points, d.scale)),
        }
    }

    pub fn simplex_points(&self, s: &[usize]) -> Vec<Point<S>> {
        s.iter().map(|&i| self.points[i].clone()).collect()
    }

    pub fn volume(&self) -> S {
        if let Some(v) = self.scaled.as_ref().and_then(|(pts, scale)| {
            let mut total: i128 = 0;
            for s in &self.simplices {
                let rows: Vec<Vec<i128>> = s[1..]
                    .iter()
                    .map(|&i| pts[i].iter().zip(&pts[s[0]]).map(|(a, b)| a - b).collect())
                    .collect();
                total = total.checked_add(hull_int::determinant(&rows)?.checked_abs()?)?;
            }
            let denom = crate::scalar::powi(scale, self.dim) * factorial::<S>(self.dim);
            Some(S::from_i128(total)? / denom)
        }) {
            return v;
        }
        let mut acc = S::zero();
        for s in &self.simplices {
            acc = acc + simplex_volume(&self.simplex_points(s));
        }
        acc
    }
}

/// Unsigned volume of a simplex given by `dim + 1` vertices.
pub fn simplex_volume<S: Scalar>(verts: &[Point<S>]) -> S {
    let d = verts.len() - 1;
    let rows: Vec<Vec<S>> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
    determinant(&rows).abs() / factorial::<S>(d)
}

impl<S: Scalar> Polytope<S> {
    /// Convex hull of a nonempty point list; keeps only the extreme points.
    pub fn hull(points: Vec<Point<S>>, dim: usize) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPointSet);
        }
        for p in &points {
            dim_check("hull point", dim, p.len())?;
        }
        Ok(Self::hull_unchecked(points, dim))
    }

    pub(crate) fn hull_unchecked(points: Vec<Point<S>>, dim: usize) -> Self {
        let mut points = points;
        hull::sort_dedup(&mut points);
        if points.len() <= 2 {
            return Polytope { dim, vertices: points };
        }
        let frame = AffineFrame::of(&points);
        let vertices = match frame.rank {
            0 => vec![points[0].clone()],
            1 => {
                // extremes along the line, in lexicographic order
                vec![points[0].clone(), points[points.len() - 1].clone()]
            }
            k => {
                let projected: Vec<Vec<S>> = points.iter().map(|p| frame.project(p)).collect();
                let h = hull::build(projected, k);
                let mut keep = h.extreme_indices();
                // build() keeps the input order of points
                keep.sort_unstable();
                keep.into_iter().map(|i| points[i].clone()).collect()
            }
        };
        let mut vertices = vertices;
        hull::sort_dedup(&mut vertices);
        Polytope { dim, vertices }
    }

    /// Wrap vertices already known to be the extreme points of their hull.
    pub fn from_extreme_points(mut vertices: Vec<Point<S>>, dim: usize) -> Self {
        hull::sort_dedup(&mut vertices);
        Polytope { dim, vertices }
    }

    pub fn point(p: Point<S>) -> Self {
        let dim = p.len();
        Polytope { dim, vertices: vec![p] }
    }

    pub fn origin(dim: usize) -> Self {
        Self::point(vec![S::zero(); dim])
    }

    /// Axis-aligned box `[lo_1, hi_1] x ... x [lo_n, hi_n]`.
    pub fn cuboid(lo: &[S], hi: &[S]) -> Self {
        let mut verts: Vec<Point<S>> = vec![Vec::new()];
        for (l, h) in lo.iter().zip(hi) {
            let mut next = Vec::with_capacity(verts.len() * 2);
            for v in &verts {
                let mut a = v.clone();
                a.push(l.clone());
                next.push(a);
                if h != l {
                    let mut b = v.clone();
                    b.push(h.clone());
                    next.push(b);
                }
            }
            verts = next;
        }
        Self::from_extreme_points(verts, lo.len())
    }

    /// `[0,1]^n`.
    pub fn unit_cube(dim: usize) -> Self {
        Self::cuboid(&vec![S::zero(); dim], &vec![S::one(); dim])
    }

    /// Convex hull of the origin and the standard basis vectors.
    pub fn standard_simplex(dim: usize) -> Self {
        let mut verts = vec![vec![S::zero(); dim]];
        for i in 0..dim {
            let mut e = vec![S::zero(); dim];
            e[i] = S::one();
            verts.push(e);
        }
        Self::from_extreme_points(verts, dim)
    }

    /// Segment between two points.
    pub fn segment(a: Point<S>, b: Point<S>) -> Self {
        let dim = a.len();
        Self::from_extreme_points(vec![a, b], dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point<S>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Rank of the span of vertex differences; 0 for a point.
    pub fn affine_dim(&self) -> usize {
        AffineFrame::of(&self.vertices).rank
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn minkowski_sum(&self, other: &Self) -> Result<Self> {
        dim_check("minkowski_sum", self.dim, other.dim)?;
        Ok(Self::hull_unchecked(pairwise_sums(&self.vertices, &other.vertices), self.dim))
    }

    /// Sum of several polytopes of a common dimension; `{0}` for an empty list.
    pub fn minkowski_sum_all(dim: usize, bodies: &[&Self]) -> Result<Self> {
        let mut acc = Self::origin(dim);
        for b in bodies {
            acc = acc.minkowski_sum(b)?;
        }
        Ok(acc)
    }

    /// `λ P` for `λ >= 0`; `0 P` is the origin.
    pub fn scale(&self, lambda: &S) -> Result<Self> {
        if lambda.is_negative() {
            return Err(Error::NegativeScale);
        }
        Ok(self.scale_unchecked(lambda))
    }

    pub(crate) fn scale_unchecked(&self, lambda: &S) -> Self {
        if lambda.is_zero() {
            return Self::origin(self.dim);
        }
        Self::from_extreme_points(self.vertices.iter().map(|v| scale(v, lambda)).collect(), self.dim)
    }

    pub fn translate(&self, x: &[S]) -> Result<Self> {
        dim_check("translate", self.dim, x.len())?;
        Ok(Self::from_extreme_points(
            self.vertices.iter().map(|v| add(v, x)).collect(),
            self.dim,
        ))
    }

    /// `-P`.
    pub fn reflect(&self) -> Self {
        Self::from_extreme_points(
            self.vertices.iter().map(|v| v.iter().map(|c| -c.clone()).collect()).collect(),
            self.dim,
        )
    }

    /// `P x Q` in `R^(m+n)`.
    pub fn cartesian_product(&self, other: &Self) -> Self {
        let mut verts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend(b.iter().cloned());
                verts.push(v);
            }
        }
        Self::from_extreme_points(verts, self.dim + other.dim)
    }

    /// `P x {0}` with `extra` trailing zero coordinates.
    pub fn pad_after(&self, extra: usize) -> Self {
        self.cartesian_product(&Self::origin(extra))
    }

    /// `{0} x P` with `extra` leading zero coordinates.
    pub fn pad_before(&self, extra: usize) -> Self {
        Self::origin(extra).cartesian_product(self)
    }

    /// Image under `x -> (x, x)`.
    pub fn diagonal_embed(&self) -> Self {
        Self::from_extreme_points(
            self.vertices
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    w.extend(v.iter().cloned());
                    w
                })
                .collect(),
            2 * self.dim,
        )
    }

    /// Image under a linear map; re-hulled only when the map is not injective.
    pub fn map_linear(&self, map: &LinearMap<S>) -> Result<Self> {
        dim_check("linear map source", map.source_dim(), self.dim)?;
        let pts: Vec<Point<S>> = self.vertices.iter().map(|v| map.apply(v)).collect();
        if map.is_injective() {
            Ok(Self::from_extreme_points(pts, map.target_dim()))
        } else {
            Ok(Self::hull_unchecked(pts, map.target_dim()))
        }
    }

    /// Keep the listed coordinates, in order.
    pub fn project_coords(&self, coords: &[usize]) -> Self {
        let pts = self
            .vertices
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Self::hull_unchecked(pts, coords.len())
    }

    /// `h_P(y) = max <y, v>` over the vertices.
    pub fn support(&self, y: &[S]) -> Result<S> {
        dim_check("support direction", self.dim, y.len())?;
        let mut best: Option<S> = None;
        for v in &self.vertices {
            let s = dot(y, v);
            best = match best {
                Some(b) if b >= s => Some(b),
                _ => Some(s),
            };
        }
        Ok(best.expect("polytopes are nonempty"))
    }

    pub fn triangulate(&self, method: TriangulationMethod) -> Triangulation<S> {
        Triangulation::of_points(self.vertices.clone(), self.dim, method)
    }

    /// Exact `n`-dimensional Lebesgue volume; zero for lower-dimensional bodies.
    pub fn volume(&self) -> S {
        self.triangulate(TriangulationMethod::Fan).volume()
    }

    /// Facet inequalities `a·x <= b` of the hull inside its affine hull, in
    /// the coordinates selected by `frame.pivots`.
    pub fn facet_inequalities(&self) -> (AffineFrame<S>, Vec<(Vec<S>, S)>) {
        let frame = AffineFrame::of(&self.vertices);
        if frame.rank == 0 {
            return (frame, Vec::new());
        }
        let projected: Vec<Vec<S>> = self.vertices.iter().map(|p| frame.project(p)).collect();
        let h = hull::build(projected, frame.rank);
        let hs = h.hyperplanes();
        (frame, hs)
    }

    /// Membership test in the closed polytope.
    pub fn contains(&self, x: &[S]) -> bool {
        let (frame, hs) = self.facet_inequalities();
        // x must lie in the affine hull
        let mut rows: Vec<Vec<S>> = self.vertices[1..].iter().map(|v| sub(v, &frame.base)).collect();
        let r = rows.len();
        rows.push(sub(x, &frame.base));
        if crate::linalg::rank(&rows) > crate::linalg::rank(&rows[..r]) {
            return false;
        }
        let px = frame.project(x);
        hs.iter().all(|(a, b)| dot(a, &px) <= *b)
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

pub(crate) fn pairwise_sums<S: Scalar>(a: &[Point<S>], b: &[Point<S>]) -> Vec<Point<S>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(add(x, y));
        }
    }
    out
}

/// Linear map `R^source -> R^target` stored as a `target x source` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap<S> {
    rows: Vec<Vec<S>>,
    source: usize,
}

impl<S: Scalar> LinearMap<S> {
    pub fn new(rows: Vec<Vec<S>>, source: usize) -> Result<Self> {
        for r in &rows {
            dim_check("linear map row", source, r.len())?;
        }
        Ok(LinearMap { rows, source })
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        LinearMap { rows, source: n }
    }

    /// `x -> (x, x)`.
    pub fn diagonal(n: usize) -> Self {
        Self::identity(n).stack(&Self::identity(n))
    }

    /// Coordinate embedding sending `e_j` to `e_{targets[j]}`.
    pub fn coordinate_embedding(targets: &[usize], target_dim: usize) -> Self {
        let rows = (0..target_dim)
            .map(|i| targets.iter().map(|&t| if t == i { S::one() } else { S::zero() }).collect())
            .collect();
        LinearMap {
            rows,
            source: targets.len(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source
    }

    pub fn target_dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn apply(&self, x: &[S]) -> Vec<S> {
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// `[self; other]`: `x -> (self x, other x)`.
    pub fn stack(&self, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        LinearMap {
            rows,
            source: self.source,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        dim_check("composition", self.source, inner.target_dim())?;
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..inner.source)
                    .map(|j| {
                        let mut acc = S::zero();
                        for (k, a) in r.iter().enumerate() {
                            acc = acc + a.clone() * inner.rows[k][j].clone();
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(LinearMap {
            rows,
            source: inner.source,
        })
    }

    pub fn is_injective(&self) -> bool {
        crate::linalg::rank(&self.rows) == self.source
    }

    /// Columns are distinct standard basis vectors.
    pub fn is_coordinate_isometry(&self) -> bool {
        let mut seen = vec![false; self.target_dim()];
        for j in 0..self.source {
            let mut hit = None;
            for (i, r) in self.rows.iter().enumerate() {
                if r[j].is_zero() {
                    continue;
                }
                if r[j] != S::one() || hit.is_some() {
                    return false;
                }
                hit = Some(i);
            }
            match hit {
                Some(i) if !seen[i] => seen[i] = true,
                _ => return false,
            }
        }
        true
    }
}
