//! Isometry-invariant valuations: intrinsic volumes bracketed by ball
//! approximations, their structure constants, and dimension counts.
//!
//! `V_i = C(n, i) V(·[i], B[n - i]) / κ_{n-i}`. Replacing `B` by an inscribed
//! or circumscribed polytope gives lower and upper bounds, because mixed
//! volumes and products of mixed-volume valuations are monotone in each body.
//! `V_0` is taken to be the Euler characteristic.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{ball_approx, BallSide, LinearMap, Polytope};
use crate::interval::Interval;
use crate::mixed::kappa;
use crate::random::random_polytope;
use crate::scalar::{binomial, Rational, Scalar};
use crate::valuation::{product, EvalOptions, QValuation, Valuation};
use crate::QPolytope;

/// Default ball level for `n = 2` and `n = 3`.
pub fn default_level(n: usize) -> u32 {
    if n == 2 {
        5
    } else {
        1
    }
}

/// `U_i = C(n, i) V(·[i], B[n - i])` for both ball approximations, and `κ_{n-i}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicEntry {
    pub inscribed: QValuation,
    pub circumscribed: QValuation,
    pub kappa: Interval<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicBasis {
    pub n: usize,
    pub level: u32,
    pub entries: Vec<IntrinsicEntry>,
}

fn check_dim(n: usize) -> Result<()> {
    if (2..=3).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

fn ratio(num: &Interval<Rational>, den: &Interval<Rational>) -> Result<Interval<Rational>> {
    num.div(den)
        .ok_or_else(|| Error::OutOfRange("bracket denominator contains 0".into()))
}

pub fn intrinsic_basis(n: usize, level: u32) -> Result<IntrinsicBasis> {
    check_dim(n)?;
    let b_in = ball_approx(n, level, BallSide::Inscribed)?;
    let b_out = ball_approx(n, level, BallSide::Circumscribed)?;
    let entries = (0..=n)
        .map(|i| {
            let c = binomial::<Rational>(n, i);
            Ok(IntrinsicEntry {
                inscribed: Valuation::mv(n, vec![b_in.clone(); n - i], c.clone())?,
                circumscribed: Valuation::mv(n, vec![b_out.clone(); n - i], c)?,
                kappa: kappa(n - i, level)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntrinsicBasis { n, level, entries })
}

impl IntrinsicBasis {
    /// `[U_i^in(K), U_i^out(K)]`.
    pub fn unnormalized(&self, i: usize, k: &QPolytope, opts: &EvalOptions) -> Result<Interval<Rational>> {
        let e = &self.entries[i];
        Ok(Interval::new(
            e.inscribed.evaluate_with(k, opts)?,
            e.circumscribed.evaluate_with(k, opts)?,
        ))
    }

    /// Bracket for `V_i(K)` through the ball approximations.
    pub fn evaluate(&self, i: usize, k: &QPolytope, opts: &EvalOptions) -> Result<Interval<Rational>> {
        ratio(&self.unnormalized(i, k, opts)?, &self.entries[i].kappa)
    }

    /// `V_i(K)` with `V_0 = χ`.
    pub fn normalized(&self, i: usize, k: &QPolytope, opts: &EvalOptions) -> Result<Interval<Rational>> {
        if i == 0 {
            return Ok(Interval::point(Rational::from_int(1)));
        }
        self.evaluate(i, k, opts)
    }

    /// Bracket for `(V_i ⋅ V_j)(K)`; `V_0 = χ` acts by the unit law.
    pub fn product_bracket(&self, i: usize, j: usize, k: &QPolytope, opts: &EvalOptions) -> Result<Interval<Rational>> {
        if i == 0 {
            return self.normalized(j, k, opts);
        }
        if j == 0 {
            return self.normalized(i, k, opts);
        }
        let (a, b) = (&self.entries[i], &self.entries[j]);
        let lo = product(&a.inscribed, &b.inscribed)?.evaluate_with(k, opts)?;
        let hi = product(&a.circumscribed, &b.circumscribed)?.evaluate_with(k, opts)?;
        ratio(&Interval::new(lo, hi), &a.kappa.mul(&b.kappa))
    }
}

/// Ratio brackets of `(V_i ⋅ V_j)(K) / V_{i+j}(K)`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub per_body: Vec<Interval<Rational>>,
    /// Intersection of the per-body brackets, `None` if they are disjoint.
    pub combined: Option<Interval<Rational>>,
}

impl StructureEntry {
    pub fn proportional(&self) -> bool {
        self.combined.is_some()
    }

    pub fn excludes_zero(&self) -> bool {
        self.per_body.iter().all(Interval::excludes_zero)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    pub n: usize,
    pub level: u32,
    pub seed: u64,
    pub entries: Vec<StructureEntry>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize) -> Option<&StructureEntry> {
        self.entries.iter().find(|e| e.i == i && e.j == j)
    }
}

/// Unit cube, standard simplex and one random rational polytope.
pub fn default_test_bodies(n: usize, seed: u64) -> Vec<QPolytope> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        Polytope::unit_cube(n),
        Polytope::standard_simplex(n),
        random_polytope(&mut rng, n, n + 2, 2),
    ]
}

fn structure_entry(
    basis: &IntrinsicBasis,
    i: usize,
    j: usize,
    bodies: &[QPolytope],
    opts: &EvalOptions,
) -> Result<StructureEntry> {
    let per_body = bodies
        .iter()
        .map(|k| {
            if i == 0 || j == 0 {
                return Ok(Interval::point(Rational::from_int(1)));
            }
            ratio(&basis.product_bracket(i, j, k, opts)?, &basis.evaluate(i + j, k, opts)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut combined = per_body.first().cloned();
    for b in &per_body[1..] {
        combined = combined.and_then(|c| c.intersect(b));
    }
    Ok(StructureEntry {
        i,
        j,
        per_body,
        combined,
    })
}

/// `c_ij` brackets for all `i + j <= n` on the given bodies.
pub fn structure_constants(
    n: usize,
    level: u32,
    bodies: &[QPolytope],
    seed: u64,
    opts: &EvalOptions,
) -> Result<StructureConstants> {
    check_dim(n)?;
    if bodies.is_empty() {
        return Err(Error::PreconditionUnmet("no test bodies".into()));
    }
    let basis = intrinsic_basis(n, level)?;
    let pairs: Vec<(usize, usize)> = (0..=n).flat_map(|i| (0..=n - i).map(move |j| (i, j))).collect();
    let entries = pairs
        .par_iter()
        .map(|&(i, j)| structure_entry(&basis, i, j, bodies, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(StructureConstants { n, level, seed, entries })
}

/// `V_1^i / V_i` for `i <= n` and products above the top degree.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedReport {
    pub n: usize,
    pub level: u32,
    /// `powers[i - 1]` brackets `V_1^i / V_i`, chained through `c_{1,k}`.
    pub powers: Vec<Interval<Rational>>,
    /// `(i, j, bracket of (V_i ⋅ V_j)(K))` with `i + j > n`, through the diagonal route.
    pub overflow: Vec<(usize, usize, Interval<Rational>)>,
}

impl TruncatedReport {
    pub fn nonzero(&self) -> bool {
        self.powers.iter().all(Interval::excludes_zero)
    }

    pub fn overflow_vanishes(&self) -> bool {
        self.overflow.iter().all(|(_, _, b)| b.contains(&Rational::from_int(0)))
    }

    pub fn pass(&self) -> bool {
        self.nonzero() && self.overflow_vanishes()
    }
}

/// `V_1^i = c_{11} c_{12} ⋯ c_{1,i-1} V_i`; products of total degree above
/// `n` are evaluated on `k` without fast paths.
pub fn truncated_poly_check(sc: &StructureConstants, k: &QPolytope, opts: &EvalOptions) -> Result<TruncatedReport> {
    let n = sc.n;
    let basis = intrinsic_basis(n, sc.level)?;
    let mut powers = vec![Interval::point(Rational::from_int(1))];
    for i in 2..=n {
        let c = sc
            .get(1, i - 1)
            .and_then(|e| e.combined.clone())
            .ok_or_else(|| Error::PreconditionUnmet(format!("c_1{} brackets are disjoint", i - 1)))?;
        let prev = powers.last().expect("nonempty").clone();
        powers.push(prev.mul(&c));
    }
    let diag = opts.diagonal_route();
    let overflow = [(1, n), (n, n)]
        .into_iter()
        .map(|(i, j)| Ok((i, j, basis.product_bracket(i, j, k, &diag)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(TruncatedReport {
        n,
        level: sc.level,
        powers,
        overflow,
    })
}

/// Pullback along a coordinate isometry.
pub fn restriction(v: &QValuation, embed: &LinearMap<Rational>) -> Result<QValuation> {
    v.restrict(embed)
}

/// Brackets of `V_k^{(2)}(K)` and of `V_k^{(3)}` restricted to the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct StableEntry {
    pub planar: Interval<Rational>,
    pub restricted: Interval<Rational>,
}

impl StableEntry {
    pub fn overlaps(&self) -> bool {
        self.planar.overlaps(&self.restricted)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StableReport {
    pub k: usize,
    pub level: u32,
    pub entries: Vec<StableEntry>,
}

impl StableReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(StableEntry::overlaps)
    }
}

/// Compares `V_k` on planar bodies computed in `R^2` and, through the
/// embedding `R^2 → R^3`, in `R^3`.
pub fn stable_iso_check(k: usize, level: u32, planar_bodies: &[QPolytope], opts: &EvalOptions) -> Result<StableReport> {
    if k > 2 {
        return Err(Error::OutOfRange(format!("degree {k} above the plane dimension")));
    }
    let embed = LinearMap::coordinate_embedding(&[0, 1], 3);
    let b2 = intrinsic_basis(2, level)?;
    let b3 = intrinsic_basis(3, level)?;
    let e3 = &b3.entries[k];
    let lo = restriction(&e3.inscribed, &embed)?;
    let hi = restriction(&e3.circumscribed, &embed)?;
    let entries = planar_bodies
        .iter()
        .map(|body| {
            if k == 0 {
                let one = Interval::point(Rational::from_int(1));
                return Ok(StableEntry {
                    planar: one.clone(),
                    restricted: one,
                });
            }
            let restricted = ratio(
                &Interval::new(lo.evaluate_with(body, opts)?, hi.evaluate_with(body, opts)?),
                &e3.kappa,
            )?;
            Ok(StableEntry {
                planar: b2.evaluate(k, body, opts)?,
                restricted,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(StableReport { k, level, entries })
}

/// `dim Val_k^{U(m)} = 1 + ⌊min(k, 2m - k) / 2⌋` for `0 <= k <= 2m`.
pub fn unitary_dimension(k: usize, m: usize) -> Result<usize> {
    if k > 2 * m {
        return Err(Error::OutOfRange(format!("k = {k} exceeds 2m = {}", 2 * m)));
    }
    Ok(1 + k.min(2 * m - k) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LefschetzReport {
    /// `h_i <= h_{i+1}` for all `i < n/2`.
    pub holds: bool,
    /// `h_i = h_{n-i}` for all `i`.
    pub duality: bool,
}

/// Checks the Lefschetz inequalities on `h_0, ..., h_n`.
pub fn lefschetz_check(h: &[usize]) -> LefschetzReport {
    let n = h.len().saturating_sub(1);
    let holds = (0..n).filter(|&i| 2 * i < n).all(|i| h[i] <= h[i + 1]);
    let duality = (0..=n).all(|i| h.get(i) == h.get(n - i));
    LefschetzReport { holds, duality }
}
