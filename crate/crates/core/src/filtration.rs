//! Scaling orders, the γ and W filtrations as sample certificates, and the
//! symbol map.
//!
//! For every implemented valuation `r ↦ φ(rK + x)` is a polynomial of degree
//! at most `n + d`, so limits as `r → 0` reduce to reading its lowest nonzero
//! coefficient.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};
use crate::polynomial::{grid_point, interpolate_1d, interpolate_grid, Polynomial};
use crate::random::random_polytope;
use crate::scalar::{Rational, Scalar};
use crate::valuation::{EvalOptions, Generator, Valuation};

/// `r ↦ φ(rK + x)` with the index of its lowest nonzero coefficient
/// (`None` for the zero polynomial).
#[derive(Clone, Debug, PartialEq)]
pub struct ScalingProfile<S: Scalar> {
    pub polynomial: Polynomial<S>,
    pub lowest_order: Option<usize>,
}

impl<S: Scalar> ScalingProfile<S> {
    /// Coefficient of `r^i`.
    pub fn coefficient(&self, i: usize) -> S {
        self.polynomial.coefficient(&[i as u32])
    }

    /// `r^{-(i-1)} φ(rK + x) → 0`: the coefficients of `r^0, ..., r^{i-1}` vanish.
    pub fn vanishes_to_order(&self, i: usize) -> bool {
        (0..i).all(|k| self.coefficient(k).is_zero())
    }

    /// `r^{-i} φ(rK + x)` has a finite limit: the same coefficients vanish.
    pub fn has_finite_symbol(&self, i: usize) -> bool {
        self.vanishes_to_order(i)
    }

    fn at_least(&self, i: usize) -> bool {
        self.lowest_order.is_none_or(|o| o >= i)
    }
}

fn shifted_dilate<S: Scalar>(k: &Polytope<S>, r: usize, x: &[S]) -> Result<Polytope<S>> {
    k.scale_unchecked(&S::from_usize(r).expect("small integer")).translate(x)
}

pub fn scaling_profile<S: Scalar>(v: &Valuation<S>, k: &Polytope<S>, x: &[S], opts: &EvalOptions) -> Result<ScalingProfile<S>> {
    let d = v.dim() + v.density_degree();
    let values = (0..=d)
        .map(|r| v.evaluate_with(&shifted_dilate(k, r, x)?, opts))
        .collect::<Result<Vec<S>>>()?;
    let coeffs = interpolate_1d(&values);
    let lowest_order = coeffs.iter().position(|c| !c.is_zero());
    Ok(ScalingProfile {
        polynomial: Polynomial::from_univariate(&coeffs),
        lowest_order,
    })
}

/// A sample violating a membership condition.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness<S: Scalar> {
    pub body: Polytope<S>,
    pub point: Option<Point<S>>,
    pub value: S,
    pub lowest_order: Option<usize>,
}

/// Sample-level membership certificate: `pass` means no sample contradicts
/// membership, not that membership is proven.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate<S: Scalar> {
    pub level: usize,
    pub pass: bool,
    pub checked: usize,
    pub witnesses: Vec<Witness<S>>,
}

/// Vanishing on every sample of affine dimension below `i`.
pub fn gamma_membership<S: Scalar>(
    v: &Valuation<S>,
    i: usize,
    samples: &[Polytope<S>],
    opts: &EvalOptions,
) -> Result<Certificate<S>> {
    let low: Vec<&Polytope<S>> = samples.iter().filter(|k| k.affine_dim() < i).collect();
    let values = low.par_iter().map(|k| v.evaluate_with(k, opts)).collect::<Result<Vec<S>>>()?;
    let witnesses: Vec<Witness<S>> = low
        .iter()
        .zip(values)
        .filter(|(_, val)| !val.is_zero())
        .map(|(k, value)| Witness {
            body: (*k).clone(),
            point: None,
            value,
            lowest_order: None,
        })
        .collect();
    Ok(Certificate {
        level: i,
        pass: witnesses.is_empty(),
        checked: low.len(),
        witnesses,
    })
}

fn profiles<S: Scalar>(
    v: &Valuation<S>,
    samples: &[(Polytope<S>, Point<S>)],
    opts: &EvalOptions,
) -> Result<Vec<ScalingProfile<S>>> {
    samples.par_iter().map(|(k, x)| scaling_profile(v, k, x, opts)).collect()
}

/// Every scaling profile has lowest order at least `i`.
pub fn w_membership<S: Scalar>(
    v: &Valuation<S>,
    i: usize,
    samples: &[(Polytope<S>, Point<S>)],
    opts: &EvalOptions,
) -> Result<Certificate<S>> {
    let ps = profiles(v, samples, opts)?;
    Ok(w_certificate(i, samples, &ps))
}

fn w_certificate<S: Scalar>(i: usize, samples: &[(Polytope<S>, Point<S>)], ps: &[ScalingProfile<S>]) -> Certificate<S> {
    let witnesses: Vec<Witness<S>> = samples
        .iter()
        .zip(ps)
        .filter(|(_, p)| !p.at_least(i))
        .map(|((k, x), p)| Witness {
            body: k.clone(),
            point: Some(x.clone()),
            value: p.coefficient(p.lowest_order.expect("nonzero profile")),
            lowest_order: p.lowest_order,
        })
        .collect();
    Certificate {
        level: i,
        pass: witnesses.is_empty(),
        checked: samples.len(),
        witnesses,
    }
}

/// Largest `i` passing [`w_membership`], i.e. the least lowest order;
/// `None` when every profile vanishes.
pub fn w_level<S: Scalar>(v: &Valuation<S>, samples: &[(Polytope<S>, Point<S>)], opts: &EvalOptions) -> Result<Option<usize>> {
    Ok(profiles(v, samples, opts)?.iter().filter_map(|p| p.lowest_order).min())
}

/// Largest `i` passing [`gamma_membership`]: the least affine dimension of
/// a sample with nonzero value, or `n + 1` if there is none.
pub fn gamma_level<S: Scalar>(v: &Valuation<S>, samples: &[Polytope<S>], opts: &EvalOptions) -> Result<usize> {
    let values = samples
        .par_iter()
        .map(|k| v.evaluate_with(k, opts))
        .collect::<Result<Vec<S>>>()?;
    Ok(samples
        .iter()
        .zip(values)
        .filter(|(_, val)| !val.is_zero())
        .map(|(k, _)| k.affine_dim())
        .min()
        .unwrap_or(v.dim() + 1))
}

/// `x ↦ Q(φ)(K)(x)` for each body.
#[derive(Clone, Debug, PartialEq)]
pub struct Symbol<S: Scalar> {
    pub degree: usize,
    pub bodies: Vec<Polytope<S>>,
    /// Coefficient extraction from scaling profiles.
    pub extracted: Vec<Polynomial<S>>,
    /// The closed form, when the generators admit one.
    pub closed_form: Option<Vec<Polynomial<S>>>,
}

impl<S: Scalar> Symbol<S> {
    pub fn routes_agree(&self) -> Option<bool> {
        self.closed_form.as_ref().map(|c| *c == self.extracted)
    }

    pub fn is_zero(&self) -> bool {
        self.extracted.iter().all(Polynomial::is_zero)
    }
}

/// Closed-form symbol at level `i` as pairs (invariant valuation, density):
/// `Q(φ)(K)(x) = Σ ψ_a(K) p_a(x)`. A degree-`i` mixed volume is its own
/// symbol; a density generator `∂^s ∫_{K + Σ λ_j A_j} f` of order `n - s = i`
/// has symbol `f(x) ∂^s vol(K + Σ λ_j A_j)`. Terms of higher order
/// contribute nothing; `None` if some term has no closed form or a lower order.
pub fn closed_form_symbol<S: Scalar>(v: &Valuation<S>, i: usize) -> Option<Vec<(Valuation<S>, Polynomial<S>)>> {
    let n = v.dim();
    let mut out = Vec::new();
    for t in v.terms() {
        let order = match &t.generator {
            Generator::Mv { bodies } => n - bodies.len(),
            Generator::Euler => 0,
            Generator::Pd { slack, base: None, .. } => n - slack.len(),
            _ => return None,
        };
        if order > i || t.coeff.is_zero() {
            continue;
        }
        if order < i {
            return None;
        }
        let pair = match &t.generator {
            Generator::Mv { bodies } => (Valuation::mv(n, bodies.clone(), t.coeff.clone()).ok()?, Polynomial::one(n)),
            Generator::Euler => (Valuation::euler(n).scale(&t.coeff), Polynomial::one(n)),
            Generator::Pd { density, slack, .. } => {
                let c = crate::scalar::factorial::<S>(n) / crate::scalar::factorial::<S>(i);
                (Valuation::mv(n, slack.clone(), t.coeff.clone() * c).ok()?, density.clone())
            }
            _ => unreachable!("filtered above"),
        };
        out.push(pair);
    }
    Some(out)
}

fn evaluate_pairs<S: Scalar>(
    pairs: &[(Valuation<S>, Polynomial<S>)],
    k: &Polytope<S>,
    n: usize,
    opts: &EvalOptions,
) -> Result<Polynomial<S>> {
    let mut acc = Polynomial::zero(n);
    for (v, p) in pairs {
        acc = acc.add(&p.scale(&v.evaluate_with(k, opts)?))?;
    }
    Ok(acc)
}

/// `x ↦ r^i`-coefficient of `φ(rK + x)`, interpolated on `{0, ..., d}^n`.
fn extract<S: Scalar>(v: &Valuation<S>, i: usize, k: &Polytope<S>, opts: &EvalOptions) -> Result<Polynomial<S>> {
    let n = v.dim();
    let d = v.density_degree();
    let side = d + 1;
    let values = (0..side.pow(n as u32))
        .into_par_iter()
        .map(|idx| {
            let x: Vec<S> = grid_point(n, side, idx)
                .into_iter()
                .map(|e| S::from_u32(e).expect("small integer"))
                .collect();
            Ok(scaling_profile(v, k, &x, opts)?.coefficient(i))
        })
        .collect::<Result<Vec<S>>>()?;
    Ok(interpolate_grid(n, d, &values))
}

/// `Q_i(φ)` on each body, by extraction and (when available) in closed form.
pub fn symbol<S: Scalar>(
    v: &Valuation<S>,
    i: usize,
    bodies: &[Polytope<S>],
    x_grid: &[Point<S>],
    opts: &EvalOptions,
) -> Result<Symbol<S>> {
    let samples = pairs_of(bodies, x_grid);
    let cert = w_membership(v, i, &samples, opts)?;
    if !cert.pass {
        return Err(Error::PreconditionUnmet(format!(
            "{} sample profiles have order below {i}",
            cert.witnesses.len()
        )));
    }
    let extracted = bodies.iter().map(|k| extract(v, i, k, opts)).collect::<Result<Vec<_>>>()?;
    let closed_form = match closed_form_symbol(v, i) {
        Some(pairs) => Some(
            bodies
                .iter()
                .map(|k| evaluate_pairs(&pairs, k, v.dim(), opts))
                .collect::<Result<Vec<_>>>()?,
        ),
        None => None,
    };
    Ok(Symbol {
        degree: i,
        bodies: bodies.to_vec(),
        extracted,
        closed_form,
    })
}

/// Both sides of `Q_{i+j}(φ ⋅ ψ) = Q_i(φ) ⋅ Q_j(ψ)` on the diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct QHomomorphismReport<S: Scalar> {
    /// Extracted from the product through the diagonal route.
    pub lhs: Vec<Polynomial<S>>,
    /// `Σ (φ_a ⋅ ψ_b)(K) p_a(x) q_b(x)` from the closed-form symbols.
    pub rhs: Vec<Polynomial<S>>,
}

impl<S: Scalar> QHomomorphismReport<S> {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn q_homomorphism_check<S: Scalar>(
    phi: &Valuation<S>,
    psi: &Valuation<S>,
    i: usize,
    j: usize,
    bodies: &[Polytope<S>],
    x_grid: &[Point<S>],
    opts: &EvalOptions,
) -> Result<QHomomorphismReport<S>> {
    let n = phi.dim();
    if n > 2 {
        return Err(Error::CostGuard { dim: n, limit: 2 });
    }
    let samples = pairs_of(bodies, x_grid);
    for (v, level) in [(phi, i), (psi, j)] {
        if !w_membership(v, level, &samples, opts)?.pass {
            return Err(Error::PreconditionUnmet(format!("factor not in W_{level} on the samples")));
        }
    }
    let (Some(qp), Some(qq)) = (closed_form_symbol(phi, i), closed_form_symbol(psi, j)) else {
        return Err(Error::PreconditionUnmet("factors need closed-form symbols".into()));
    };
    let prod = Valuation::product_generator(phi.clone(), psi.clone())?;
    let diag = opts.diagonal_route();
    let lhs = bodies
        .iter()
        .map(|k| extract(&prod, i + j, k, &diag))
        .collect::<Result<Vec<_>>>()?;
    let mut rhs = Vec::with_capacity(bodies.len());
    for k in bodies {
        let mut acc = Polynomial::zero(n);
        for (a, p) in &qp {
            for (b, q) in &qq {
                let c = crate::valuation::product(a, b)?.evaluate_with(k, opts)?;
                acc = acc.add(&p.mul(q)?.scale(&c))?;
            }
        }
        rhs.push(acc);
    }
    Ok(QHomomorphismReport { lhs, rhs })
}

/// Bodies paired with every grid point.
pub fn pairs_of<S: Scalar>(bodies: &[Polytope<S>], x_grid: &[Point<S>]) -> Vec<(Polytope<S>, Point<S>)> {
    bodies
        .iter()
        .flat_map(|k| x_grid.iter().map(move |x| (k.clone(), x.clone())))
        .collect()
}

/// Deterministic sample bodies and translation points.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub seed: u64,
    pub bodies: Vec<Polytope<Rational>>,
    pub x_grid: Vec<Point<Rational>>,
}

impl SampleSet {
    /// For each `k <= n`: the `k`-cube, the `k`-simplex and one random
    /// rational `k`-polytope in the first `k` coordinates, plus a point;
    /// translation points `0, e_1, e_1 + e_2`.
    pub fn default_for(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut bodies = vec![Polytope::origin(n)];
        for k in 1..=n {
            let pad = |p: Polytope<Rational>| p.pad_after(n - k);
            bodies.push(pad(Polytope::unit_cube(k)));
            bodies.push(pad(Polytope::standard_simplex(k)));
            bodies.push(pad(random_polytope(&mut rng, k, k + 3, 4)));
        }
        let one = Rational::from_int(1);
        let mut x_grid = vec![vec![Rational::from_int(0); n]];
        let mut x = vec![Rational::from_int(0); n];
        for c in 0..n.min(2) {
            x[c] = one.clone();
            x_grid.push(x.clone());
        }
        SampleSet { seed, bodies, x_grid }
    }

    pub fn pairs(&self) -> Vec<(Polytope<Rational>, Point<Rational>)> {
        pairs_of(&self.bodies, &self.x_grid)
    }

    pub fn full_dimensional(&self) -> Vec<Polytope<Rational>> {
        self.bodies.iter().filter(|b| b.is_full_dimensional()).cloned().collect()
    }
}

/// Filtration levels of one generator.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelReport {
    pub gamma_level: usize,
    /// `None` when every profile vanishes.
    pub w_level: Option<usize>,
    /// `γ_{i+1} ⊆ W_i ⊆ γ_i` in certificate form: `w <= γ <= w + 1`.
    pub sandwich: bool,
}

/// `W_{i1} ⋅ W_{i2} ⊆ W_{i1 + i2}` on one pair.
#[derive(Clone, Debug, PartialEq)]
pub struct PairReport {
    pub left: usize,
    pub right: usize,
    pub expected: usize,
    pub product_w_level: Option<usize>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiltrationSuite {
    pub seed: u64,
    pub generators: Vec<LevelReport>,
    pub pairs: Vec<PairReport>,
}

impl FiltrationSuite {
    pub fn pass(&self) -> bool {
        self.generators.iter().all(|g| g.sandwich) && self.pairs.iter().all(|p| p.pass)
    }
}

pub fn level_report(v: &Valuation<Rational>, samples: &SampleSet, opts: &EvalOptions) -> Result<LevelReport> {
    let n = v.dim();
    let gamma_level = gamma_level(v, &samples.bodies, opts)?;
    let w = w_level(v, &samples.pairs(), opts)?;
    let w_eff = w.unwrap_or(n + 1).min(n + 1);
    Ok(LevelReport {
        gamma_level,
        w_level: w,
        sandwich: w_eff <= gamma_level && gamma_level <= w_eff + 1,
    })
}

/// Levels of every generator and, for `n <= 2`, the product check on every
/// unordered pair.
pub fn filtration_suite(generators: &[Valuation<Rational>], samples: &SampleSet, opts: &EvalOptions) -> Result<FiltrationSuite> {
    let levels = generators
        .iter()
        .map(|g| level_report(g, samples, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut pairs = Vec::new();
    let n = generators.first().map_or(0, |g| g.dim());
    if n <= 2 {
        let sample_pairs = samples.pairs();
        for a in 0..generators.len() {
            for b in a..generators.len() {
                let (Some(i1), Some(i2)) = (levels[a].w_level, levels[b].w_level) else {
                    continue;
                };
                let prod = Valuation::product_generator(generators[a].clone(), generators[b].clone())?;
                let expected = i1 + i2;
                let w = w_level(&prod, &sample_pairs, opts)?;
                pairs.push(PairReport {
                    left: a,
                    right: b,
                    expected,
                    product_w_level: w,
                    pass: w.is_none_or(|w| w >= expected),
                });
            }
        }
    }
    Ok(FiltrationSuite {
        seed: samples.seed,
        generators: levels,
        pairs,
    })
}
