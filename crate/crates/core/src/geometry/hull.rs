//! Incremental (beneath-beyond) convex hull with exact orientation tests.
//!
//! The boundary is kept as a simplicial complex of oriented facets; inserting
//! a point beyond some facets replaces the visible region by cones over the
//! horizon ridges. The cones swept during insertion form a placing
//! triangulation of the hull, and the final boundary supports a fan
//! triangulation from any vertex.

use std::cmp::Ordering;
use std::collections::HashMap;

use super::hull_int::{self, Row};
use crate::linalg::{dot, echelon, null_vector, rank, sub};
use crate::scalar::Scalar;

/// Affine hull data of a point set: base point, rank and a set of coordinates
/// whose projection is injective on the affine hull.
#[derive(Clone, Debug)]
pub struct AffineFrame<S> {
    pub base: Vec<S>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<S: Scalar> AffineFrame<S> {
    pub fn of(points: &[Vec<S>]) -> Self {
        let base = points[0].clone();
        let diffs: Vec<Vec<S>> = points[1..].iter().map(|p| sub(p, &base)).collect();
        let (_, pivots) = echelon(&diffs);
        AffineFrame {
            base,
            rank: pivots.len(),
            pivots,
        }
    }

    pub fn project(&self, p: &[S]) -> Vec<S> {
        self.pivots.iter().map(|&c| p[c].clone()).collect()
    }
}

/// Oriented hyperplane through a boundary simplex: `normal·x <= offset` on the hull.
#[derive(Clone, Debug)]
pub struct Facet<S> {
    pub verts: Vec<usize>,
    pub normal: Vec<S>,
    pub offset: S,
}

/// Result of the incremental construction for a full-dimensional point set.
#[derive(Clone, Debug)]
pub struct HullBuild<S> {
    pub dim: usize,
    pub points: Vec<Vec<S>>,
    pub facets: Vec<Facet<S>>,
    pub placing: Vec<Vec<usize>>,
    /// Integer-scaled points with the scale factor, and the facet
    /// inequalities in those coordinates, when the fast path applied.
    pub(crate) int: Option<IntData<S>>,
}

#[derive(Clone, Debug)]
pub(crate) struct IntData<S> {
    pub points: Vec<Row>,
    pub scale: S,
    pub facets: Vec<(Row, i128)>,
}

fn lex_cmp<S: Scalar>(a: &[S], b: &[S]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.partial_cmp(y).unwrap_or(Ordering::Equal) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Sort lexicographically and drop duplicates.
pub fn sort_dedup<S: Scalar>(points: &mut Vec<Vec<S>>) {
    points.sort_by(|a, b| lex_cmp(a, b));
    points.dedup();
}

fn facet_through<S: Scalar>(points: &[Vec<S>], verts: Vec<usize>, interior: &[S], dim: usize) -> Facet<S> {
    let p0 = &points[verts[0]];
    let rows: Vec<Vec<S>> = verts[1..].iter().map(|&v| sub(&points[v], p0)).collect();
    let mut normal = null_vector(&rows, dim).expect("facet vertices are affinely independent");
    let mut offset = dot(&normal, p0);
    if dot(&normal, interior) > offset {
        for a in normal.iter_mut() {
            *a = -a.clone();
        }
        offset = -offset;
    }
    S::canonicalize_hyperplane(&mut normal, &mut offset);
    Facet { verts, normal, offset }
}

/// Build the hull of a point set that affinely spans `R^dim` (`dim >= 1`).
pub fn build<S: Scalar>(points: Vec<Vec<S>>, dim: usize) -> HullBuild<S> {
    let order = insertion_order(&points, dim);
    if let Some((ints, scale)) = S::to_scaled_integers(&points, hull_int::coordinate_bits(dim)) {
        if let Some(h) = hull_int::build(&ints, dim, &order) {
            let facets = h
                .facets
                .iter()
                .map(|f| {
                    let mut normal: Vec<S> = f.normal.iter().map(|&x| S::from_i128(x).expect("integer")).collect();
                    let mut offset = S::from_i128(f.offset).expect("integer") / scale.clone();
                    S::canonicalize_hyperplane(&mut normal, &mut offset);
                    Facet {
                        verts: f.verts.clone(),
                        normal,
                        offset,
                    }
                })
                .collect();
            let int_facets = h.facets.into_iter().map(|f| (f.normal, f.offset)).collect();
            return HullBuild {
                dim,
                points,
                facets,
                placing: h.placing,
                int: Some(IntData {
                    points: ints,
                    scale,
                    facets: int_facets,
                }),
            };
        }
    }
    build_generic(points, dim, &order)
}

/// Far from the centroid first, so that most late points are already inside.
fn insertion_order<S: Scalar>(points: &[Vec<S>], dim: usize) -> Vec<usize> {
    let n = points.len();
    let mut centroid = vec![S::zero(); dim];
    for p in points {
        for (c, x) in centroid.iter_mut().zip(p) {
            *c = c.clone() + x.clone();
        }
    }
    let count = S::from_usize(n).expect("small integer");
    for c in centroid.iter_mut() {
        *c = c.clone() / count.clone();
    }
    let dist: Vec<S> = points
        .iter()
        .map(|p| {
            let d = sub(p, &centroid);
            dot(&d, &d)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dist[b].partial_cmp(&dist[a]).unwrap_or(Ordering::Equal).then(a.cmp(&b)));
    order
}

fn build_generic<S: Scalar>(points: Vec<Vec<S>>, dim: usize, order: &[usize]) -> HullBuild<S> {
    // initial simplex
    let mut simplex = vec![order[0]];
    let mut diffs: Vec<Vec<S>> = Vec::new();
    for &i in &order[1..] {
        if simplex.len() == dim + 1 {
            break;
        }
        let d = sub(&points[i], &points[order[0]]);
        diffs.push(d);
        if rank(&diffs) == diffs.len() {
            simplex.push(i);
        } else {
            diffs.pop();
        }
    }
    assert_eq!(simplex.len(), dim + 1, "point set must be full-dimensional");

    let mut interior = vec![S::zero(); dim];
    for &i in &simplex {
        for (c, x) in interior.iter_mut().zip(&points[i]) {
            *c = c.clone() + x.clone();
        }
    }
    let k = S::from_usize(dim + 1).expect("small integer");
    for c in interior.iter_mut() {
        *c = c.clone() / k.clone();
    }

    let mut facets: Vec<Facet<S>> = (0..=dim)
        .map(|skip| {
            let verts: Vec<usize> = simplex
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            facet_through(&points, sorted(verts), &interior, dim)
        })
        .collect();
    let mut placing = vec![sorted(simplex.clone())];

    for &p in order {
        if simplex.contains(&p) {
            continue;
        }
        let x = &points[p];
        let mut visible = Vec::new();
        let mut keep = Vec::with_capacity(facets.len());
        for f in facets.drain(..) {
            if dot(&f.normal, x) > f.offset {
                visible.push(f);
            } else {
                keep.push(f);
            }
        }
        facets = keep;
        if visible.is_empty() {
            continue;
        }
        let mut ridges: HashMap<Vec<usize>, usize> = HashMap::new();
        for f in &visible {
            for skip in 0..f.verts.len() {
                let r: Vec<usize> = f
                    .verts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                *ridges.entry(r).or_insert(0) += 1;
            }
            let mut s = f.verts.clone();
            s.push(p);
            placing.push(sorted(s));
        }
        let mut horizon: Vec<Vec<usize>> = ridges.into_iter().filter(|(_, c)| *c == 1).map(|(r, _)| r).collect();
        horizon.sort();
        for mut r in horizon {
            r.push(p);
            facets.push(facet_through(&points, sorted(r), &interior, dim));
        }
    }

    HullBuild {
        dim,
        points,
        facets,
        placing,
        int: None,
    }
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

impl<S: Scalar> HullBuild<S> {
    /// Distinct supporting hyperplanes of the facets.
    pub fn hyperplanes(&self) -> Vec<(Vec<S>, S)> {
        let mut hs: Vec<(Vec<S>, S)> = self.facets.iter().map(|f| (f.normal.clone(), f.offset.clone())).collect();
        hs.sort_by(|a, b| lex_cmp(&a.0, &b.0).then(a.1.partial_cmp(&b.1).unwrap_or(Ordering::Equal)));
        hs.dedup();
        hs
    }

    /// Indices (into `points`) of the extreme points.
    pub fn extreme_indices(&self) -> Vec<usize> {
        if let Some(d) = &self.int {
            return self.extreme_indices_int(d);
        }
        let hs = self.hyperplanes();
        let mut cand: Vec<usize> = self.facets.iter().flat_map(|f| f.verts.iter().copied()).collect();
        cand.sort_unstable();
        cand.dedup();
        cand.into_iter()
            .filter(|&v| {
                let p = &self.points[v];
                let active: Vec<Vec<S>> = hs.iter().filter(|(a, b)| dot(a, p) == *b).map(|(a, _)| a.clone()).collect();
                rank(&active) == self.dim
            })
            .collect()
    }

    /// A boundary point is extreme iff the normals of the boundary simplices
    /// containing it have full rank, since every facet through an extreme
    /// point is triangulated using that point. Full rank modulo a prime is a
    /// certificate; the rare deficient cases are rechecked exactly.
    fn extreme_indices_int(&self, d: &IntData<S>) -> Vec<usize> {
        let mut incident: HashMap<usize, Vec<usize>> = HashMap::new();
        for (fi, f) in self.facets.iter().enumerate() {
            for &v in &f.verts {
                incident.entry(v).or_default().push(fi);
            }
        }
        let mut out: Vec<usize> = incident
            .into_iter()
            .filter(|(_, fs)| {
                let mut normals: Vec<&Row> = fs.iter().map(|&fi| &d.facets[fi].0).collect();
                normals.sort();
                normals.dedup();
                let rows: Vec<Row> = normals.into_iter().cloned().collect();
                if hull_int::rank_mod_p(&rows, self.dim) == self.dim {
                    return true;
                }
                let exact: Vec<Vec<S>> = fs.iter().map(|&fi| self.facets[fi].normal.clone()).collect();
                rank(&exact) == self.dim
            })
            .map(|(v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }

    /// Cone from the lexicographically smallest boundary vertex over every
    /// boundary simplex not containing it.
    pub fn fan(&self) -> Vec<Vec<usize>> {
        let apex = self
            .facets
            .iter()
            .flat_map(|f| f.verts.iter().copied())
            .min_by(|&a, &b| lex_cmp(&self.points[a], &self.points[b]))
            .expect("hull has facets");
        if let Some(d) = &self.int {
            let x = &d.points[apex];
            return self
                .facets
                .iter()
                .zip(&d.facets)
                .filter(|(_, (a, b))| hull_int::dot(a, x).expect("bounded coordinates") < *b)
                .map(|(f, _)| {
                    let mut s = f.verts.clone();
                    s.push(apex);
                    sorted(s)
                })
                .collect();
        }
        let x = &self.points[apex];
        self.facets
            .iter()
            .filter(|f| dot(&f.normal, x) < f.offset)
            .map(|f| {
                let mut s = f.verts.clone();
                s.push(apex);
                sorted(s)
            })
            .collect()
    }
}
