//! Valuations generated by mixed volumes and polynomial-density measures,
//! and their products.
//!
//! Every generator except [`Generator::Component`] can be *lowered* to the
//! form `K ↦ ∂^s/∂λ|₀ ∫_{E(K) + A₀ + Σ λ_j A_j} f` for a linear map `E`
//! into some `R^N`. Exterior and diagonal products act on lowered forms by
//! stacking maps, padding slack bodies and multiplying densities, so every
//! product is ultimately evaluated by [`mixed_coefficient`].

mod analysis;
mod product;

pub use analysis::{
    homogeneous_decomposition, pairing_matrix, parity_decomposition, translation_profile, valuation_axiom_check, AxiomReport,
    GradedDecomposition, PairingMatrix,
};
pub use product::{
    closed_form_coefficient, closed_form_product, diagonal_product_evaluate, exterior_product, odd_product_witness, product,
    OddWitness,
};

use crate::error::{dim_check, Error, Result};
use crate::geometry::{LinearMap, Polytope};
use crate::mixed::{mixed_coefficient, mixed_volume_repeated};
use crate::polynomial::{interpolate_1d, Polynomial};
use crate::scalar::{factorial, Rational, Scalar};

/// Evaluation settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    /// Largest ambient dimension of a diagonal product; lowered evaluations
    /// may use up to twice this many coordinates.
    pub max_dim: usize,
    /// Use the unit law, degree vanishing and the complementary-degree closed
    /// form instead of lowering whenever they apply.
    pub fast_paths: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            max_dim: 3,
            fast_paths: true,
        }
    }
}

impl EvalOptions {
    /// Always lower products, including Euler factors.
    pub fn diagonal_route(self) -> Self {
        EvalOptions {
            fast_paths: false,
            ..self
        }
    }
}

/// `K ↦ ∂^s/∂λ|₀ ∫_{map(K) + offset + Σ λ_j slack_j} density`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lowered<S: Scalar> {
    pub map: LinearMap<S>,
    pub offset: Option<Polytope<S>>,
    pub slack: Vec<Polytope<S>>,
    pub density: Option<Polynomial<S>>,
}

impl<S: Scalar> Lowered<S> {
    pub fn source_dim(&self) -> usize {
        self.map.source_dim()
    }

    pub fn target_dim(&self) -> usize {
        self.map.target_dim()
    }

    fn validate(&self) -> Result<()> {
        let t = self.target_dim();
        if let Some(o) = &self.offset {
            dim_check("offset body", t, o.dim())?;
        }
        for a in &self.slack {
            dim_check("slack body", t, a.dim())?;
        }
        if let Some(f) = &self.density {
            dim_check("density variables", t, f.num_vars())?;
        }
        Ok(())
    }

    pub fn evaluate(&self, k: &Polytope<S>, opts: &EvalOptions) -> Result<S> {
        dim_check("body", self.source_dim(), k.dim())?;
        let limit = 2 * opts.max_dim;
        if self.target_dim() > limit {
            return Err(Error::CostGuard {
                dim: self.target_dim(),
                limit,
            });
        }
        let mut body = k.map_linear(&self.map)?;
        if let Some(o) = &self.offset {
            body = body.minkowski_sum(o)?;
        }
        let slack: Vec<&Polytope<S>> = self.slack.iter().collect();
        mixed_coefficient(&body, &slack, self.density.as_ref())
    }

    /// `M ↦ self(M) ⋅ other(M)` for maps from the same space, or the
    /// exterior form when `map` is block diagonal; `map` must send the
    /// source into `R^{N1} × R^{N2}`.
    fn join(&self, other: &Self, map: LinearMap<S>) -> Self {
        let (n1, n2) = (self.target_dim(), other.target_dim());
        let offset = match (&self.offset, &other.offset) {
            (None, None) => None,
            (a, b) => {
                let a = a.clone().unwrap_or_else(|| Polytope::origin(n1));
                let b = b.clone().unwrap_or_else(|| Polytope::origin(n2));
                Some(a.cartesian_product(&b))
            }
        };
        let mut slack: Vec<Polytope<S>> = self.slack.iter().map(|a| a.pad_after(n2)).collect();
        slack.extend(other.slack.iter().map(|b| b.pad_before(n1)));
        let density = match (&self.density, &other.density) {
            (None, None) => None,
            (f, g) => {
                let f = f.clone().unwrap_or_else(|| Polynomial::one(n1));
                let g = g.clone().unwrap_or_else(|| Polynomial::one(n2));
                Some(f.external_product(&g))
            }
        };
        Lowered {
            map,
            offset,
            slack,
            density,
        }
    }

    fn reflect(&self) -> Self {
        Lowered {
            map: self.map.clone(),
            offset: self.offset.as_ref().map(Polytope::reflect),
            slack: self.slack.iter().map(Polytope::reflect).collect(),
            density: self.density.as_ref().map(Polynomial::reflect),
        }
    }

    fn precompose(&self, inner: &LinearMap<S>) -> Result<Self> {
        Ok(Lowered {
            map: self.map.compose(inner)?,
            ..self.clone()
        })
    }
}

/// Generator kinds. Coefficients live on the enclosing [`Term`].
#[derive(Clone, Debug, PartialEq)]
pub enum Generator<S: Scalar> {
    /// `K ↦ V(K[n - m], A_1, ..., A_m)`.
    Mv { bodies: Vec<Polytope<S>> },
    /// `K ↦ ∂^s/∂λ|₀ ∫_{K + base + Σ λ_j A_j} f`.
    Pd {
        density: Polynomial<S>,
        slack: Vec<Polytope<S>>,
        base: Option<Polytope<S>>,
    },
    /// The Euler characteristic, `1` on every nonempty body.
    Euler,
    /// Diagonal product of two valuations on the same space.
    Product {
        left: Box<Valuation<S>>,
        right: Box<Valuation<S>>,
    },
    /// A lowered form with an arbitrary linear map.
    Linear(Lowered<S>),
    /// Degree-`degree` homogeneous component of a translation-invariant valuation.
    Component { inner: Box<Valuation<S>>, degree: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<S: Scalar> {
    pub coeff: S,
    pub generator: Generator<S>,
}

/// Finite linear combination of generators on `R^dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct Valuation<S: Scalar> {
    dim: usize,
    terms: Vec<Term<S>>,
}

pub type QValuation = Valuation<Rational>;

impl<S: Scalar> Generator<S> {
    /// Homogeneity degree when it follows from the structure.
    pub fn degree(&self, n: usize) -> Option<usize> {
        match self {
            Generator::Mv { bodies } => Some(n - bodies.len()),
            Generator::Euler => Some(0),
            Generator::Pd {
                density,
                slack,
                base: None,
            } => {
                let hs = density.homogeneous_degrees();
                match hs.as_slice() {
                    [h] => Some(n + h - slack.len()),
                    _ => None,
                }
            }
            Generator::Product { left, right } => Some(left.degree()? + right.degree()?),
            Generator::Component { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// Upper bound on the polynomial degree of `x ↦ φ(K + x)`.
    pub fn density_degree(&self) -> usize {
        match self {
            Generator::Mv { .. } | Generator::Euler => 0,
            Generator::Pd { density, .. } => density.degree(),
            Generator::Linear(l) => l.density.as_ref().map_or(0, |f| f.degree()),
            Generator::Product { left, right } => left.density_degree() + right.density_degree(),
            Generator::Component { inner, .. } => inner.density_degree(),
        }
    }

    /// Structurally translation invariant.
    pub fn is_translation_invariant(&self) -> bool {
        match self {
            Generator::Mv { .. } | Generator::Euler => true,
            Generator::Pd { density, .. } => density.degree() == 0,
            Generator::Linear(l) => l.density.as_ref().is_none_or(|f| f.degree() == 0),
            Generator::Product { left, right } => left.is_translation_invariant() && right.is_translation_invariant(),
            Generator::Component { inner, .. } => inner.is_translation_invariant(),
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        match self {
            Generator::Mv { bodies } => {
                if bodies.len() > n {
                    return Err(Error::WrongArity {
                        expected: n,
                        found: bodies.len(),
                    });
                }
                bodies.iter().try_for_each(|b| dim_check("mixed volume body", n, b.dim()))
            }
            Generator::Pd { density, slack, base } => {
                dim_check("density variables", n, density.num_vars())?;
                if slack.len() > n {
                    return Err(Error::WrongArity {
                        expected: n,
                        found: slack.len(),
                    });
                }
                if let Some(b) = base {
                    dim_check("base body", n, b.dim())?;
                }
                slack.iter().try_for_each(|b| dim_check("slack body", n, b.dim()))
            }
            Generator::Euler => Ok(()),
            Generator::Product { left, right } => {
                dim_check("left factor", n, left.dim())?;
                dim_check("right factor", n, right.dim())
            }
            Generator::Linear(l) => {
                dim_check("linear map source", n, l.source_dim())?;
                l.validate()
            }
            Generator::Component { inner, degree } => {
                dim_check("component", n, inner.dim())?;
                if *degree > n {
                    return Err(Error::OutOfRange(format!("component degree {degree} exceeds {n}")));
                }
                Ok(())
            }
        }
    }

    /// `K ↦ φ(-K)`.
    pub fn reflect(&self) -> Self {
        match self {
            Generator::Mv { bodies } => Generator::Mv {
                bodies: bodies.iter().map(Polytope::reflect).collect(),
            },
            Generator::Pd { density, slack, base } => Generator::Pd {
                density: density.reflect(),
                slack: slack.iter().map(Polytope::reflect).collect(),
                base: base.as_ref().map(Polytope::reflect),
            },
            Generator::Euler => Generator::Euler,
            Generator::Product { left, right } => Generator::Product {
                left: Box::new(left.reflect()),
                right: Box::new(right.reflect()),
            },
            Generator::Linear(l) => Generator::Linear(l.reflect()),
            Generator::Component { inner, degree } => Generator::Component {
                inner: Box::new(inner.reflect()),
                degree: *degree,
            },
        }
    }

    fn evaluate(&self, n: usize, k: &Polytope<S>, opts: &EvalOptions) -> Result<S> {
        match self {
            Generator::Mv { bodies } => {
                let refs: Vec<&Polytope<S>> = bodies.iter().collect();
                mixed_volume_repeated(k, n - bodies.len(), &refs)
            }
            Generator::Pd { density, slack, base } => {
                let body = match base {
                    Some(b) => k.minkowski_sum(b)?,
                    None => k.clone(),
                };
                let refs: Vec<&Polytope<S>> = slack.iter().collect();
                mixed_coefficient(&body, &refs, Some(density))
            }
            Generator::Euler => Ok(S::one()),
            Generator::Product { left, right } => product::evaluate_product(left, right, k, opts),
            Generator::Linear(l) => l.evaluate(k, opts),
            Generator::Component { inner, degree } => {
                let d = n + inner.density_degree();
                let values = (0..=d)
                    .map(|t| inner.evaluate_with(&k.scale_unchecked(&S::from_usize(t).expect("small integer")), opts))
                    .collect::<Result<Vec<S>>>()?;
                let coeffs = interpolate_1d(&values);
                Ok(coeffs.get(*degree).cloned().unwrap_or_else(S::zero))
            }
        }
    }

    /// Lowered forms with coefficients. Euler factors of products are
    /// dropped by the unit law when fast paths are on; otherwise Euler lowers
    /// to `(1/n!) ∂^n vol(K + Σ λ_j C)` with unit cubes `C`.
    pub(crate) fn lower(&self, n: usize, opts: &EvalOptions) -> Result<Vec<(S, Lowered<S>)>> {
        let id = LinearMap::identity(n);
        let plain = |slack: Vec<Polytope<S>>, offset, density| Lowered {
            map: id.clone(),
            offset,
            slack,
            density,
        };
        Ok(match self {
            Generator::Mv { bodies } => {
                let i = n - bodies.len();
                let c = factorial::<S>(i) / factorial::<S>(n);
                vec![(c, plain(bodies.clone(), None, None))]
            }
            Generator::Pd { density, slack, base } => {
                vec![(S::one(), plain(slack.clone(), base.clone(), Some(density.clone())))]
            }
            Generator::Euler => {
                let cube = Polytope::unit_cube(n);
                vec![(S::one() / factorial::<S>(n), plain(vec![cube; n], None, None))]
            }
            Generator::Linear(l) => vec![(S::one(), l.clone())],
            Generator::Product { left, right } => {
                let mut out = Vec::new();
                for tl in &left.terms {
                    for tr in &right.terms {
                        let c = tl.coeff.clone() * tr.coeff.clone();
                        if opts.fast_paths && tl.generator == Generator::Euler {
                            out.extend(scaled(tr.generator.lower(n, opts)?, &c));
                        } else if opts.fast_paths && tr.generator == Generator::Euler {
                            out.extend(scaled(tl.generator.lower(n, opts)?, &c));
                        } else {
                            for (a, la) in tl.generator.lower(n, opts)? {
                                for (b, lb) in tr.generator.lower(n, opts)? {
                                    let map = la.map.stack(&lb.map);
                                    out.push((c.clone() * a.clone() * b, la.join(&lb, map)));
                                }
                            }
                        }
                    }
                }
                out
            }
            Generator::Component { .. } => return Err(Error::Unsupported("homogeneous components have no lowered form".into())),
        })
    }
}

fn scaled<S: Scalar>(v: Vec<(S, Lowered<S>)>, c: &S) -> Vec<(S, Lowered<S>)> {
    v.into_iter().map(|(a, l)| (a * c.clone(), l)).collect()
}

impl<S: Scalar> Valuation<S> {
    pub fn new(dim: usize, terms: Vec<Term<S>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::UnsupportedDimension(0));
        }
        for t in &terms {
            t.generator.validate(dim)?;
        }
        Ok(Valuation { dim, terms })
    }

    pub fn zero(dim: usize) -> Self {
        Valuation { dim, terms: Vec::new() }
    }

    fn single(dim: usize, coeff: S, generator: Generator<S>) -> Result<Self> {
        Self::new(dim, vec![Term { coeff, generator }])
    }

    /// `K ↦ coeff ⋅ V(K[n - m], A_1, ..., A_m)`.
    pub fn mv(dim: usize, bodies: Vec<Polytope<S>>, coeff: S) -> Result<Self> {
        Self::single(dim, coeff, Generator::Mv { bodies })
    }

    pub fn volume(dim: usize) -> Self {
        Self::mv(dim, Vec::new(), S::one()).expect("no bodies")
    }

    pub fn euler(dim: usize) -> Self {
        Self::single(dim, S::one(), Generator::Euler).expect("always valid")
    }

    pub fn pd(dim: usize, density: Polynomial<S>, slack: Vec<Polytope<S>>, base: Option<Polytope<S>>, coeff: S) -> Result<Self> {
        Self::single(dim, coeff, Generator::Pd { density, slack, base })
    }

    pub fn linear(dim: usize, lowered: Lowered<S>, coeff: S) -> Result<Self> {
        Self::single(dim, coeff, Generator::Linear(lowered))
    }

    /// Unexpanded diagonal product.
    pub fn product_generator(left: Self, right: Self) -> Result<Self> {
        let dim = left.dim;
        Self::single(
            dim,
            S::one(),
            Generator::Product {
                left: Box::new(left),
                right: Box::new(right),
            },
        )
    }

    pub fn component(inner: Self, degree: usize) -> Result<Self> {
        let dim = inner.dim;
        Self::single(
            dim,
            S::one(),
            Generator::Component {
                inner: Box::new(inner),
                degree,
            },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.coeff.is_zero())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        dim_check("valuation sum", self.dim, other.dim)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Valuation { dim: self.dim, terms })
    }

    pub fn scale(&self, c: &S) -> Self {
        Valuation {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone() * c.clone(),
                    generator: t.generator.clone(),
                })
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    /// Common homogeneity degree of all terms, if structurally known.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.terms.iter().map(|t| t.generator.degree(self.dim));
        let first = it.next()??;
        it.all(|d| d == Some(first)).then_some(first)
    }

    pub fn density_degree(&self) -> usize {
        self.terms.iter().map(|t| t.generator.density_degree()).max().unwrap_or(0)
    }

    pub fn is_translation_invariant(&self) -> bool {
        self.terms.iter().all(|t| t.generator.is_translation_invariant())
    }

    /// `K ↦ φ(-K)`.
    pub fn reflect(&self) -> Self {
        Valuation {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.clone(),
                    generator: t.generator.reflect(),
                })
                .collect(),
        }
    }

    pub fn evaluate(&self, k: &Polytope<S>) -> Result<S> {
        self.evaluate_with(k, &EvalOptions::default())
    }

    pub fn evaluate_with(&self, k: &Polytope<S>, opts: &EvalOptions) -> Result<S> {
        dim_check("body", self.dim, k.dim())?;
        let mut acc = S::zero();
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            acc = acc + t.coeff.clone() * t.generator.evaluate(self.dim, k, opts)?;
        }
        Ok(acc)
    }

    /// Lowered forms of all terms, coefficients included.
    pub fn lower(&self, opts: &EvalOptions) -> Result<Vec<(S, Lowered<S>)>> {
        let mut out = Vec::new();
        for t in &self.terms {
            out.extend(scaled(t.generator.lower(self.dim, opts)?, &t.coeff));
        }
        Ok(out)
    }

    /// Pullback `K ↦ φ(embed(K))` along a coordinate isometry `R^k → R^dim`.
    pub fn restrict(&self, embed: &LinearMap<S>) -> Result<Self> {
        dim_check("embedding target", self.dim, embed.target_dim())?;
        if !embed.is_coordinate_isometry() {
            return Err(Error::NotIsometric);
        }
        let k = embed.source_dim();
        let mut terms = Vec::new();
        for t in &self.terms {
            let generator = match &t.generator {
                Generator::Euler => Generator::Euler,
                Generator::Product { left, right } => Generator::Product {
                    left: Box::new(left.restrict(embed)?),
                    right: Box::new(right.restrict(embed)?),
                },
                Generator::Component { inner, degree } => Generator::Component {
                    inner: Box::new(inner.restrict(embed)?),
                    degree: *degree,
                },
                g => {
                    for (c, l) in g.lower(self.dim, &EvalOptions::default())? {
                        terms.push(Term {
                            coeff: t.coeff.clone() * c,
                            generator: Generator::Linear(l.precompose(embed)?),
                        });
                    }
                    continue;
                }
            };
            terms.push(Term {
                coeff: t.coeff.clone(),
                generator,
            });
        }
        Valuation::new(k, terms)
    }

    /// Confirms `φ(λK) = λ^d φ(K)` for `λ ∈ {2, 3}`.
    pub fn degree_probe(&self, k: &Polytope<S>, d: usize, opts: &EvalOptions) -> Result<bool> {
        let base = self.evaluate_with(k, opts)?;
        for lambda in [2usize, 3] {
            let l = S::from_usize(lambda).expect("small integer");
            let v = self.evaluate_with(&k.scale_unchecked(&l), opts)?;
            if v != crate::scalar::powi(&l, d) * base.clone() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
