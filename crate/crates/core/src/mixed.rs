//! Mixed volumes, Minkowski polynomials and their mixed derivatives.
//!
//! Two independent engines are provided. [`mixed_volume`] polarizes the
//! volume by inclusion–exclusion over sub-sums of its arguments.
//! [`mixed_coefficient`] reads off the mixed first derivative of
//! `λ ↦ ∫_{K + Σ λ_j A_j} f` at zero by an inclusion–exclusion over dilates
//! of `K` and sub-sums of the `A_j`, using the homogeneity of
//! `(μ, λ) ↦ ∫_{μK + Σ λ_j A_j} f_h` for each homogeneous part `f_h` of `f`.
//! [`minkowski_polynomial`] instead interpolates exact evaluations on an
//! integer grid and serves as the cross-check.

use rayon::prelude::*;

use crate::error::{dim_check, Error, Result};
use crate::geometry::TriangulationMethod;
use crate::geometry::{ball_approx, BallSide, Polytope};
use crate::integration::integrate_triangulation;
use crate::interval::Interval;
use crate::linalg::{echelon, sub};
use crate::polynomial::{grid_point, interpolate_grid, Polynomial};
use crate::scalar::{binomial, factorial, Rational, Scalar};

/// Distinct bodies of a list with their multiplicities, in first-seen order.
pub(crate) fn group_bodies<'a, S: Scalar>(bodies: &[&'a Polytope<S>]) -> Vec<(&'a Polytope<S>, usize)> {
    let mut out: Vec<(&Polytope<S>, usize)> = Vec::new();
    for b in bodies {
        match out.iter_mut().find(|(d, _)| *d == *b) {
            Some((_, m)) => *m += 1,
            None => out.push((b, 1)),
        }
    }
    out
}

/// All vectors `c` with `0 <= c_r <= m_r`, in lexicographic order.
pub(crate) fn multiplicity_vectors(m: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &mr in m {
        let mut next = Vec::with_capacity(out.len() * (mr + 1));
        for c in &out {
            for k in 0..=mr {
                let mut d = c.clone();
                d.push(k);
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// Echelon basis of the directions spanned by a polytope.
fn direction_basis<S: Scalar>(p: &Polytope<S>) -> Vec<Vec<S>> {
    let v = p.vertices();
    let diffs: Vec<Vec<S>> = v[1..].iter().map(|x| sub(x, &v[0])).collect();
    echelon(&diffs).0
}

fn spans<S: Scalar>(parts: &[&Vec<Vec<S>>], n: usize) -> bool {
    let rows: Vec<Vec<S>> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
    rows.len() >= n && echelon(&rows).1.len() == n
}

/// `k B + Σ c_r D_r`.
fn weighted_sum<S: Scalar>(
    n: usize,
    base: Option<(&Polytope<S>, usize)>,
    groups: &[(&Polytope<S>, usize)],
    c: &[usize],
) -> Polytope<S> {
    let mut acc = match base {
        Some((b, k)) if k > 0 => b.scale_unchecked(&S::from_usize(k).expect("small integer")),
        _ => Polytope::origin(n),
    };
    for ((d, _), &cr) in groups.iter().zip(c) {
        if cr == 0 {
            continue;
        }
        let term = d.scale_unchecked(&S::from_usize(cr).expect("small integer"));
        acc = acc.minkowski_sum(&term).expect("common dimension");
    }
    acc
}

fn check_bodies<S: Scalar>(n: usize, bodies: &[&Polytope<S>]) -> Result<()> {
    for b in bodies {
        dim_check("body", n, b.dim())?;
    }
    Ok(())
}

/// `V(K_1, ..., K_n)` for `n` bodies in `R^n`, by polarization.
pub fn mixed_volume<S: Scalar>(bodies: &[&Polytope<S>]) -> Result<S> {
    let n = bodies
        .first()
        .map(|b| b.dim())
        .ok_or(Error::WrongArity { expected: 1, found: 0 })?;
    if bodies.len() != n {
        return Err(Error::WrongArity {
            expected: n,
            found: bodies.len(),
        });
    }
    check_bodies(n, bodies)?;
    let groups = group_bodies(bodies);
    let mult: Vec<usize> = groups.iter().map(|g| g.1).collect();
    let bases: Vec<Vec<Vec<S>>> = groups.iter().map(|g| direction_basis(g.0)).collect();
    let jobs: Vec<Vec<usize>> = multiplicity_vectors(&mult)
        .into_iter()
        .filter(|c| {
            let parts: Vec<&Vec<Vec<S>>> = c.iter().zip(&bases).filter(|(k, _)| **k > 0).map(|(_, b)| b).collect();
            spans(&parts, n)
        })
        .collect();
    let vols: Vec<S> = jobs.par_iter().map(|c| weighted_sum(n, None, &groups, c).volume()).collect();
    let mut acc = S::zero();
    for (c, v) in jobs.iter().zip(vols) {
        let size: usize = c.iter().sum();
        let mut w = S::one();
        for (cr, mr) in c.iter().zip(&mult) {
            w = w * binomial::<S>(*mr, *cr);
        }
        if (n - size) % 2 == 1 {
            w = -w;
        }
        acc = acc + w * v;
    }
    Ok(acc / factorial::<S>(n))
}

/// `V(K[i], A_1, ..., A_{n-i})`.
pub fn mixed_volume_repeated<S: Scalar>(k: &Polytope<S>, i: usize, others: &[&Polytope<S>]) -> Result<S> {
    let mut args: Vec<&Polytope<S>> = vec![k; i];
    args.extend(others.iter().copied());
    mixed_volume(&args)
}

/// `∂^s / ∂λ_1 ... ∂λ_s |_0 ∫_{K + Σ λ_j A_j} f dx`, with `f = 1` when absent.
pub fn mixed_coefficient<S: Scalar>(body: &Polytope<S>, slack: &[&Polytope<S>], f: Option<&Polynomial<S>>) -> Result<S> {
    let n = body.dim();
    check_bodies(n, slack)?;
    if let Some(f) = f {
        dim_check("density variables", n, f.num_vars())?;
    }
    let s = slack.len();
    let comps: Vec<(usize, Polynomial<S>)> = match f {
        None => vec![(0, Polynomial::one(n))],
        Some(f) => f
            .homogeneous_degrees()
            .into_iter()
            .filter(|&h| n + h >= s)
            .map(|h| (h, f.homogeneous_component(h)))
            .collect(),
    };
    let Some(kmax) = comps.iter().map(|(h, _)| n + h - s).max() else {
        return Ok(S::zero());
    };
    let groups = group_bodies(slack);
    let mult: Vec<usize> = groups.iter().map(|g| g.1).collect();
    let bases: Vec<Vec<Vec<S>>> = groups.iter().map(|g| direction_basis(g.0)).collect();
    let body_basis = direction_basis(body);
    let vectors = multiplicity_vectors(&mult);
    let mut jobs: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..=kmax {
        for c in &vectors {
            let mut parts: Vec<&Vec<Vec<S>>> = c.iter().zip(&bases).filter(|(m, _)| **m > 0).map(|(_, b)| b).collect();
            if k > 0 {
                parts.push(&body_basis);
            }
            if spans(&parts, n) {
                jobs.push((k, c.clone()));
            }
        }
    }
    let integrals: Vec<Vec<S>> = jobs
        .par_iter()
        .map(|(k, c)| {
            let p = weighted_sum(n, Some((body, *k)), &groups, c);
            let t = p.triangulate(TriangulationMethod::Fan);
            let needed: Vec<&Polynomial<S>> = comps.iter().filter(|(h, _)| n + h - s >= *k).map(|(_, g)| g).collect();
            integrate_triangulation(&t, &needed)
        })
        .collect();
    let mut acc = S::zero();
    for ((k, c), vals) in jobs.iter().zip(integrals) {
        let size: usize = c.iter().sum();
        let mut mw = S::one();
        for (cr, mr) in c.iter().zip(&mult) {
            mw = mw * binomial::<S>(*mr, *cr);
        }
        let mut vals = vals.into_iter();
        for (h, _) in &comps {
            let m = n + h;
            if m - s < *k {
                continue;
            }
            let v = vals.next().expect("one integral per needed component");
            let mut w = mw.clone() * binomial::<S>(m - s, *k) / factorial::<S>(m - s);
            if (m - k - size) % 2 == 1 {
                w = -w;
            }
            acc = acc + w * v;
        }
    }
    Ok(acc)
}

/// `λ ↦ ∫_{K + Σ λ_j A_j} f` (volume when `f` is absent) as an exact
/// polynomial, interpolated on `{0, ..., D}^s` with `D = n + deg f`.
pub fn minkowski_polynomial<S: Scalar>(
    k: &Polytope<S>,
    slack: &[&Polytope<S>],
    f: Option<&Polynomial<S>>,
) -> Result<Polynomial<S>> {
    let n = k.dim();
    check_bodies(n, slack)?;
    if let Some(f) = f {
        dim_check("density variables", n, f.num_vars())?;
    }
    let s = slack.len();
    let d = n + f.map_or(0, |f| f.degree());
    let side = d + 1;
    let points: Vec<Vec<u32>> = (0..side.pow(s as u32)).map(|i| grid_point(s, side, i)).collect();
    let one = Polynomial::one(n);
    let g = f.unwrap_or(&one);
    let values: Vec<S> = points
        .par_iter()
        .map(|e| {
            let mut p = k.clone();
            for (a, &t) in slack.iter().zip(e) {
                if t > 0 {
                    p = p
                        .minkowski_sum(&a.scale_unchecked(&S::from_u32(t).expect("small integer")))
                        .expect("checked");
                }
            }
            let t = p.triangulate(TriangulationMethod::Fan);
            integrate_triangulation(&t, &[g]).remove(0)
        })
        .collect();
    Ok(interpolate_grid(s, d, &values))
}

/// Mixed first partial derivative at zero in the listed variables, i.e. the
/// coefficient of `Π_{j ∈ vars} λ_j`.
pub fn derivative_at_zero<S: Scalar>(mp: &Polynomial<S>, vars: &[usize]) -> Result<S> {
    let mut e = vec![0u32; mp.num_vars()];
    for &v in vars {
        if v >= e.len() {
            return Err(Error::UnknownVariable(v));
        }
        if e[v] == 1 {
            return Err(Error::PreconditionUnmet(format!("variable {v} listed twice")));
        }
        e[v] = 1;
    }
    Ok(mp.coefficient(&e))
}

/// Both sides of `∂^{n-i} vol(K + Σ λ_j A_j) |_0 = n!/i! · V(K[i], A_•)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivativeIdentity<S> {
    pub derivative: S,
    pub scaled_mixed_volume: S,
}

impl<S: Scalar> DerivativeIdentity<S> {
    pub fn holds(&self) -> bool {
        self.derivative == self.scaled_mixed_volume
    }
}

pub fn derivative_identity<S: Scalar>(k: &Polytope<S>, slack: &[&Polytope<S>]) -> Result<DerivativeIdentity<S>> {
    let n = k.dim();
    if slack.len() > n {
        return Err(Error::WrongArity {
            expected: n,
            found: slack.len(),
        });
    }
    let i = n - slack.len();
    let mp = minkowski_polynomial(k, slack, None)?;
    let vars: Vec<usize> = (0..slack.len()).collect();
    let derivative = derivative_at_zero(&mp, &vars)?;
    let mv = mixed_volume_repeated(k, i, slack)?;
    Ok(DerivativeIdentity {
        derivative,
        scaled_mixed_volume: factorial::<S>(n) / factorial::<S>(i) * mv,
    })
}

/// Both sides of the projection identity for a coordinate split `X = Y ⊕ Z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionIdentity<S> {
    pub lhs: S,
    pub rhs: S,
}

impl<S: Scalar> ProjectionIdentity<S> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `V_N(M[n]; A_1, ..., A_{N-n}) = C(N, n)^{-1} vol_n(M) V_{N-n}(Pr_Z A_•)`,
/// where `M` lives in the coordinates `y_coords` of `X = R^N` and `Z` is
/// spanned by the remaining coordinates.
pub fn projection_identity_check<S: Scalar>(
    m: &Polytope<S>,
    a_list: &[&Polytope<S>],
    y_coords: &[usize],
) -> Result<ProjectionIdentity<S>> {
    let n = m.dim();
    if y_coords.len() != n {
        return Err(Error::MisalignedSplit(format!(
            "{} coordinates for a body of dimension {n}",
            y_coords.len()
        )));
    }
    let big_n = a_list.first().map_or(n, |a| a.dim());
    check_bodies(big_n, a_list)?;
    let mut sorted = y_coords.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != n || sorted.iter().any(|&c| c >= big_n) {
        return Err(Error::MisalignedSplit(format!(
            "coordinates {y_coords:?} in dimension {big_n}"
        )));
    }
    if a_list.len() != big_n - n {
        return Err(Error::WrongArity {
            expected: big_n - n,
            found: a_list.len(),
        });
    }
    let z_coords: Vec<usize> = (0..big_n).filter(|c| !sorted.contains(c)).collect();
    // embed M into X
    let embedded: Vec<Vec<S>> = m
        .vertices()
        .iter()
        .map(|v| {
            let mut x = vec![S::zero(); big_n];
            for (c, val) in y_coords.iter().zip(v) {
                x[*c] = val.clone();
            }
            x
        })
        .collect();
    let mx = Polytope::from_extreme_points(embedded, big_n);
    let lhs = mixed_volume_repeated(&mx, n, a_list)?;
    let projected: Vec<Polytope<S>> = a_list.iter().map(|a| a.project_coords(&z_coords)).collect();
    let pz = if projected.is_empty() {
        S::one()
    } else {
        let refs: Vec<&Polytope<S>> = projected.iter().collect();
        mixed_volume(&refs)?
    };
    let rhs = m.volume() * pz / binomial::<S>(big_n, n);
    Ok(ProjectionIdentity { lhs, rhs })
}

/// Volume of the unit `j`-ball bracketed by ball approximations; exact for `j <= 1`.
pub fn kappa(j: usize, level: u32) -> Result<Interval<Rational>> {
    match j {
        0 => Ok(Interval::point(Rational::from_int(1))),
        1 => Ok(Interval::point(Rational::from_int(2))),
        2 | 3 => Ok(Interval::new(
            ball_approx(j, level, BallSide::Inscribed)?.volume(),
            ball_approx(j, level, BallSide::Circumscribed)?.volume(),
        )),
        _ => Err(Error::UnsupportedDimension(j)),
    }
}

/// Brackets for the coefficients of `ε ↦ vol(K + εB)`, lowest power first:
/// the `ε^j` coefficient is `C(n, j) V(K[n-j], B[j])`.
pub fn steiner_coeffs(k: &Polytope<Rational>, level: u32) -> Result<Vec<Interval<Rational>>> {
    let n = k.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let b_in = ball_approx(n, level, BallSide::Inscribed)?;
    let b_out = ball_approx(n, level, BallSide::Circumscribed)?;
    (0..=n)
        .map(|j| {
            let c = binomial::<Rational>(n, j);
            let lo = mixed_volume_repeated(k, n - j, &vec![&b_in; j])?;
            let hi = mixed_volume_repeated(k, n - j, &vec![&b_out; j])?;
            Ok(Interval::new(&c * lo, &c * hi))
        })
        .collect()
}

/// Intrinsic volume brackets `V_0(K), ..., V_n(K)`, with
/// `V_i = C(n, i) V(K[i], B[n-i]) / κ_{n-i}`.
pub fn intrinsic_volumes(k: &Polytope<Rational>, level: u32) -> Result<Vec<Interval<Rational>>> {
    let n = k.dim();
    let steiner = steiner_coeffs(k, level)?;
    (0..=n)
        .map(|i| {
            let kap = kappa(n - i, level)?;
            steiner[n - i]
                .div(&kap)
                .ok_or_else(|| Error::OutOfRange("ball volume bracket contains 0".into()))
        })
        .collect()
}
