//! Small dense linear algebra over a [`Scalar`] field.

use crate::scalar::Scalar;

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn norm_sq<S: Scalar>(a: &[S]) -> S {
    dot(a, a)
}

fn pick_pivot<S: Scalar>(m: &[Vec<S>], col: usize, from: usize) -> Option<usize> {
    if S::EXACT {
        (from..m.len()).find(|&r| !m[r][col].is_zero())
    } else {
        let mut best: Option<(usize, S)> = None;
        for (r, row) in m.iter().enumerate().skip(from) {
            let v = row[col].abs();
            if v.is_zero() {
                continue;
            }
            match &best {
                Some((_, b)) if *b >= v => {}
                _ => best = Some((r, v)),
            }
        }
        best.map(|(r, _)| r)
    }
}

/// Row-reduce a copy of `rows` to echelon form; returns the echelon rows and
/// the pivot column of each.
pub fn echelon<S: Scalar>(rows: &[Vec<S>]) -> (Vec<Vec<S>>, Vec<usize>) {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = pick_pivot(&m, c, r) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in (r + 1)..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..ncols {
                if m[r][j].is_zero() {
                    continue;
                }
                let t = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    echelon(rows).1.len()
}

/// Determinant of a square matrix.
pub fn determinant<S: Scalar>(matrix: &[Vec<S>]) -> S {
    let n = matrix.len();
    let mut m = matrix.to_vec();
    let mut det = S::one();
    for c in 0..n {
        let Some(p) = pick_pivot(&m, c, c) else { return S::zero() };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det = det * pivot.clone();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in (c + 1)..n {
                if m[c][j].is_zero() {
                    continue;
                }
                let t = f.clone() * m[c][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    det
}

/// A nonzero vector orthogonal to every row, if the rows have rank `ncols - 1`.
pub fn null_vector<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Option<Vec<S>> {
    // reduced row echelon form
    let (mut m, pivots) = echelon(rows);
    if pivots.len() + 1 != ncols {
        return None;
    }
    for r in (0..m.len()).rev() {
        let pc = pivots[r];
        let pv = m[r][pc].clone();
        for j in pc..ncols {
            m[r][j] = m[r][j].clone() / pv.clone();
        }
        for i in 0..r {
            if m[i][pc].is_zero() {
                continue;
            }
            let f = m[i][pc].clone();
            for j in pc..ncols {
                let t = f.clone() * m[r][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut v = vec![S::zero(); ncols];
    v[free] = S::one();
    for (r, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[r][free].clone();
    }
    Some(v)
}

/// Solve the square system `a x = b`; `None` when singular.
pub fn solve<S: Scalar>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    let mut m: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for c in 0..n {
        let p = pick_pivot(&m, c, c)?;
        m.swap(p, c);
        let pivot = m[c][c].clone();
        for i in 0..n {
            if i == c || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone() / pivot.clone();
            for j in c..=n {
                let t = f.clone() * m[c][j].clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
    }
    Some((0..n).map(|i| m[i][n].clone() / m[i][i].clone()).collect())
}
