//! Integer fast path for the incremental hull.
//!
//! Rational inputs with a common denominator and moderate numerators are
//! scaled to `i128` coordinates. Determinants are computed fraction-free
//! (Bareiss) with checked arithmetic; any overflow abandons the fast path.

use std::collections::HashMap;

pub(crate) type Row = Vec<i128>;

/// Largest coordinate bit length for which every minor of a `dim`-square
/// matrix of coordinate differences fits comfortably in `i128`.
pub(crate) fn coordinate_bits(dim: usize) -> u32 {
    let d = dim.max(1) as f64;
    let bits = 120.0 / d - (2.0 * d.sqrt()).log2() - 1.0;
    bits.clamp(0.0, 60.0) as u32
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn dot(a: &[i128], b: &[i128]) -> Option<i128> {
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        if *x == 0 || *y == 0 {
            continue;
        }
        acc = acc.checked_add(x.checked_mul(*y)?)?;
    }
    Some(acc)
}

fn sub(a: &[i128], b: &[i128]) -> Row {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Fraction-free elimination; returns the rank, and the determinant when square.
pub(crate) fn bareiss(rows: &[Row]) -> Option<(usize, i128)> {
    let mut m: Vec<Row> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            sign = -sign;
        }
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = m[r][c].checked_mul(m[i][j])?.checked_sub(m[i][c].checked_mul(m[r][j])?)?;
                m[i][j] = v / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        r += 1;
    }
    let det = if nrows == ncols && r == nrows { sign * prev } else { 0 };
    Some((r, det))
}

pub(crate) fn determinant(rows: &[Row]) -> Option<i128> {
    if rows.is_empty() {
        return Some(1);
    }
    bareiss(rows).map(|(_, d)| d)
}

pub(crate) fn rank(rows: &[Row]) -> Option<usize> {
    bareiss(rows).map(|(r, _)| r)
}

const PRIME: u128 = (1 << 61) - 1;

fn residue(x: i128) -> u128 {
    x.rem_euclid(PRIME as i128) as u128
}

fn inverse(a: u128) -> u128 {
    // Fermat
    let (mut base, mut e, mut acc) = (a, PRIME - 2, 1u128);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % PRIME;
        }
        base = base * base % PRIME;
        e >>= 1;
    }
    acc
}

/// Rank modulo a prime. Never exceeds the rational rank, so reaching full
/// rank certifies full rank.
pub(crate) fn rank_mod_p(rows: &[Row], target: usize) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut basis: Vec<(usize, Vec<u128>)> = Vec::new();
    for row in rows {
        let mut v: Vec<u128> = row.iter().map(|&x| residue(x)).collect();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + PRIME - f * y % PRIME) % PRIME;
                }
            }
        }
        if let Some(pc) = (0..ncols).find(|&c| v[c] != 0) {
            let inv = inverse(v[pc]);
            for x in v.iter_mut() {
                *x = *x * inv % PRIME;
            }
            basis.push((pc, v));
            if basis.len() == target {
                break;
            }
        }
    }
    basis.len()
}

#[derive(Clone, Debug)]
pub(crate) struct IntFacet {
    pub verts: Vec<usize>,
    pub normal: Row,
    pub offset: i128,
}

#[derive(Clone, Debug)]
pub(crate) struct IntHull {
    pub facets: Vec<IntFacet>,
    pub placing: Vec<Vec<usize>>,
}

/// Normal to the hyperplane through `verts`, oriented so that `interior`
/// (given as `scale` times the actual point) lies on the negative side.
fn facet_through(points: &[Row], verts: Vec<usize>, interior: &[i128], scale: i128, dim: usize) -> Option<IntFacet> {
    let p0 = &points[verts[0]];
    let rows: Vec<Row> = verts[1..].iter().map(|&v| sub(&points[v], p0)).collect();
    let mut normal = vec![0i128; dim];
    for (j, slot) in normal.iter_mut().enumerate() {
        let minor: Vec<Row> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
            .collect();
        let d = determinant(&minor)?;
        *slot = if j % 2 == 0 { d } else { -d };
    }
    let g = normal.iter().fold(0, |g, &x| gcd(g, x));
    if g == 0 {
        return None;
    }
    for x in normal.iter_mut() {
        *x /= g;
    }
    let mut offset = dot(&normal, p0)?;
    if dot(&normal, interior)? > offset.checked_mul(scale)? {
        for x in normal.iter_mut() {
            *x = -*x;
        }
        offset = -offset;
    }
    Some(IntFacet { verts, normal, offset })
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

struct Rec {
    facet: IntFacet,
    /// `neighbors[k]` shares the ridge opposite `facet.verts[k]`.
    neighbors: Vec<usize>,
    alive: bool,
    outside: Vec<usize>,
}

fn height(f: &IntFacet, x: &[i128]) -> Option<i128> {
    dot(&f.normal, x)?.checked_sub(f.offset)
}

fn without(v: &[usize], k: usize) -> Vec<usize> {
    v.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &x)| x).collect()
}

/// Incremental hull with outside sets (quickhull order) over integer points.
/// Points never found outside the current hull are skipped; the cones swept
/// at each insertion are returned as the placing triangulation.
pub(crate) fn build(points: &[Row], dim: usize, order: &[usize]) -> Option<IntHull> {
    let mut simplex = vec![order[0]];
    let mut diffs: Vec<Row> = Vec::new();
    for &i in &order[1..] {
        if simplex.len() == dim + 1 {
            break;
        }
        diffs.push(sub(&points[i], &points[order[0]]));
        if rank(&diffs)? == diffs.len() {
            simplex.push(i);
        } else {
            diffs.pop();
        }
    }
    if simplex.len() != dim + 1 {
        return None;
    }
    let scale = (dim + 1) as i128;
    let mut interior = vec![0i128; dim];
    for &i in &simplex {
        for (c, x) in interior.iter_mut().zip(&points[i]) {
            *c = c.checked_add(*x)?;
        }
    }
    let mut recs: Vec<Rec> = Vec::new();
    for skip in 0..=dim {
        let verts = sorted(without(&simplex, skip));
        let facet = facet_through(points, verts, &interior, scale, dim)?;
        let neighbors = facet
            .verts
            .iter()
            .map(|v| simplex.iter().position(|s| s == v).expect("simplex vertex"))
            .collect();
        recs.push(Rec {
            facet,
            neighbors,
            alive: true,
            outside: Vec::new(),
        });
    }
    let mut placing = vec![sorted(simplex.clone())];
    for &p in order {
        if simplex.contains(&p) {
            continue;
        }
        for r in recs.iter_mut() {
            if height(&r.facet, &points[p])? > 0 {
                r.outside.push(p);
                break;
            }
        }
    }
    let mut stack: Vec<usize> = (0..recs.len()).collect();
    let mut mark: Vec<u32> = vec![0; recs.len()];
    let mut round: u32 = 0;
    while let Some(start) = stack.pop() {
        if !recs[start].alive || recs[start].outside.is_empty() {
            continue;
        }
        // furthest point of the outside set
        let mut q = recs[start].outside[0];
        let mut best = height(&recs[start].facet, &points[q])?;
        for &p in &recs[start].outside[1..] {
            let h = height(&recs[start].facet, &points[p])?;
            if h > best {
                best = h;
                q = p;
            }
        }
        let x = &points[q];
        round += 1;
        let mut visible = vec![start];
        mark[start] = round;
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        let mut head = 0;
        while head < visible.len() {
            let f = visible[head];
            head += 1;
            for k in 0..recs[f].neighbors.len() {
                let g = recs[f].neighbors[k];
                if mark[g] == round {
                    continue;
                }
                if height(&recs[g].facet, x)? > 0 {
                    mark[g] = round;
                    visible.push(g);
                } else {
                    horizon.push((f, k));
                }
            }
        }
        // `mark` distinguishes visible facets; horizon neighbors may repeat
        let mut pending: Vec<usize> = Vec::new();
        for &f in &visible {
            recs[f].alive = false;
            pending.append(&mut recs[f].outside);
            let mut s = recs[f].facet.verts.clone();
            s.push(q);
            placing.push(sorted(s));
        }
        let first_new = recs.len();
        let mut open: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for &(f, k) in &horizon {
            let g = recs[f].neighbors[k];
            let ridge = without(&recs[f].facet.verts, k);
            let mut verts = ridge.clone();
            verts.push(q);
            let verts = sorted(verts);
            let facet = facet_through(points, verts, &interior, scale, dim)?;
            let id = recs.len();
            let mut neighbors = vec![usize::MAX; dim];
            let qpos = facet.verts.iter().position(|&v| v == q).expect("apex");
            neighbors[qpos] = g;
            if let Some(slot) = recs[g].neighbors.iter().position(|&h| h == f) {
                recs[g].neighbors[slot] = id;
            }
            for (slot, _) in facet.verts.iter().enumerate() {
                if slot == qpos {
                    continue;
                }
                let key = without(&facet.verts, slot);
                match open.remove(&key) {
                    Some((other, oslot)) => {
                        neighbors[slot] = other;
                        recs[other].neighbors[oslot] = id;
                    }
                    None => {
                        open.insert(key, (id, slot));
                    }
                }
            }
            recs.push(Rec {
                facet,
                neighbors,
                alive: true,
                outside: Vec::new(),
            });
            mark.push(0);
        }
        if !open.is_empty() {
            return None;
        }
        for p in pending {
            if p == q {
                continue;
            }
            for id in first_new..recs.len() {
                if height(&recs[id].facet, &points[p])? > 0 {
                    recs[id].outside.push(p);
                    break;
                }
            }
        }
        stack.extend(first_new..recs.len());
    }
    let facets = recs.into_iter().filter(|r| r.alive).map(|r| r.facet).collect();
    Some(IntHull { facets, placing })
}
