//! Exterior and diagonal products.

use crate::error::{dim_check, Error, Result};
use crate::geometry::{LinearMap, Polytope};
use crate::mixed::mixed_volume;
use crate::scalar::{binomial, Scalar};

use super::{EvalOptions, Generator, Lowered, Term, Valuation};

fn both_invariant<S: Scalar>(a: &Generator<S>, b: &Generator<S>) -> bool {
    a.is_translation_invariant() && b.is_translation_invariant()
}

fn evaluate_pair<S: Scalar>(n: usize, a: &Generator<S>, b: &Generator<S>, k: &Polytope<S>, opts: &EvalOptions) -> Result<S> {
    if opts.fast_paths {
        if *a == Generator::Euler {
            return b.evaluate(n, k, opts);
        }
        if *b == Generator::Euler {
            return a.evaluate(n, k, opts);
        }
        if let (Some(i), Some(j)) = (a.degree(n), b.degree(n)) {
            if i + j > n && both_invariant(a, b) {
                return Ok(S::zero());
            }
            if let (Generator::Mv { bodies: x }, Generator::Mv { bodies: y }) = (a, b) {
                if i + j == n {
                    return Ok(closed_form_coefficient(x, y, n)? * k.volume());
                }
            }
        }
    }
    if n > opts.max_dim {
        return Err(Error::CostGuard {
            dim: n,
            limit: opts.max_dim,
        });
    }
    let mut acc = S::zero();
    for (ca, la) in a.lower(n, opts)? {
        for (cb, lb) in b.lower(n, opts)? {
            let joined = la.join(&lb, la.map.stack(&lb.map));
            acc = acc + ca.clone() * cb * joined.evaluate(k, opts)?;
        }
    }
    Ok(acc)
}

pub(crate) fn evaluate_product<S: Scalar>(
    left: &Valuation<S>,
    right: &Valuation<S>,
    k: &Polytope<S>,
    opts: &EvalOptions,
) -> Result<S> {
    let n = left.dim();
    let mut acc = S::zero();
    for tl in left.terms() {
        for tr in right.terms() {
            let c = tl.coeff.clone() * tr.coeff.clone();
            if c.is_zero() {
                continue;
            }
            acc = acc + c * evaluate_pair(n, &tl.generator, &tr.generator, k, opts)?;
        }
    }
    Ok(acc)
}

/// `c` with `V(·[i], A_•) ⋅ V(·[n-i], B_•) = c ⋅ vol`, namely
/// `C(n, i)^{-1} V(A_•, -B_•)`, for `n - i` bodies `A` and `i` bodies `B`.
pub fn closed_form_coefficient<S: Scalar>(a: &[Polytope<S>], b: &[Polytope<S>], n: usize) -> Result<S> {
    if a.len() + b.len() != n {
        return Err(Error::DegreeMismatch(format!(
            "degrees {} and {} are not complementary in dimension {n}",
            n.saturating_sub(a.len()),
            n.saturating_sub(b.len())
        )));
    }
    let i = n - a.len();
    let reflected: Vec<Polytope<S>> = b.iter().map(Polytope::reflect).collect();
    let mut args: Vec<&Polytope<S>> = a.iter().collect();
    args.extend(reflected.iter());
    let v = if args.is_empty() { S::one() } else { mixed_volume(&args)? };
    Ok(v / binomial::<S>(n, i))
}

fn mv_terms<S: Scalar>(v: &Valuation<S>) -> Result<Vec<(&S, &Vec<Polytope<S>>)>> {
    v.terms()
        .iter()
        .map(|t| match &t.generator {
            Generator::Mv { bodies } => Ok((&t.coeff, bodies)),
            _ => Err(Error::DegreeMismatch("closed form needs mixed-volume generators".into())),
        })
        .collect()
}

/// Coefficient `c` with `φ ⋅ ψ = c ⋅ vol` for combinations of mixed-volume
/// generators of complementary degrees.
pub(crate) fn pairing_coefficient<S: Scalar>(phi: &Valuation<S>, psi: &Valuation<S>) -> Result<S> {
    let n = phi.dim();
    dim_check("pairing", n, psi.dim())?;
    let mut acc = S::zero();
    for (c1, a) in mv_terms(phi)? {
        for (c2, b) in mv_terms(psi)? {
            acc = acc + c1.clone() * c2.clone() * closed_form_coefficient(a, b, n)?;
        }
    }
    Ok(acc)
}

/// Product of a degree-`i` and a degree-`(n - i)` mixed-volume valuation as
/// a multiple of the volume.
pub fn closed_form_product<S: Scalar>(phi: &Valuation<S>, psi: &Valuation<S>) -> Result<Valuation<S>> {
    let n = phi.dim();
    match (phi.degree(), psi.degree()) {
        (Some(i), Some(j)) if i + j == n => {}
        (i, j) => {
            return Err(Error::DegreeMismatch(format!(
                "degrees {i:?} and {j:?} are not complementary in dimension {n}"
            )))
        }
    }
    let c = pairing_coefficient(phi, psi)?;
    Valuation::mv(n, Vec::new(), c)
}

/// `(φ ⋅ ψ)(K)` through the lowered form on the diagonal `Δ(K) ⊂ R^{2n}`,
/// without any fast path.
pub fn diagonal_product_evaluate<S: Scalar>(
    phi: &Valuation<S>,
    psi: &Valuation<S>,
    k: &Polytope<S>,
    opts: &EvalOptions,
) -> Result<S> {
    dim_check("product factors", phi.dim(), psi.dim())?;
    dim_check("body", phi.dim(), k.dim())?;
    if phi.dim() > opts.max_dim {
        return Err(Error::CostGuard {
            dim: phi.dim(),
            limit: opts.max_dim,
        });
    }
    evaluate_product(phi, psi, k, &opts.diagonal_route())
}

/// Bilinear expansion of `φ ⋅ ψ`. Euler factors are absorbed, products of
/// invariant terms above the top degree are dropped, complementary
/// mixed-volume pairs become multiples of the volume, and everything else
/// stays a lazy product.
pub fn product<S: Scalar>(phi: &Valuation<S>, psi: &Valuation<S>) -> Result<Valuation<S>> {
    let n = phi.dim();
    dim_check("product factors", n, psi.dim())?;
    let mut terms = Vec::new();
    for tl in phi.terms() {
        for tr in psi.terms() {
            let c = tl.coeff.clone() * tr.coeff.clone();
            let (a, b) = (&tl.generator, &tr.generator);
            if *a == Generator::Euler {
                terms.push(Term {
                    coeff: c,
                    generator: b.clone(),
                });
                continue;
            }
            if *b == Generator::Euler {
                terms.push(Term {
                    coeff: c,
                    generator: a.clone(),
                });
                continue;
            }
            if let (Some(i), Some(j)) = (a.degree(n), b.degree(n)) {
                if i + j > n && both_invariant(a, b) {
                    continue;
                }
                if let (Generator::Mv { bodies: x }, Generator::Mv { bodies: y }) = (a, b) {
                    if i + j == n {
                        terms.push(Term {
                            coeff: c * closed_form_coefficient(x, y, n)?,
                            generator: Generator::Mv { bodies: Vec::new() },
                        });
                        continue;
                    }
                }
            }
            terms.push(Term {
                coeff: c,
                generator: Generator::Product {
                    left: Box::new(Valuation::new(
                        n,
                        vec![Term {
                            coeff: S::one(),
                            generator: a.clone(),
                        }],
                    )?),
                    right: Box::new(Valuation::new(
                        n,
                        vec![Term {
                            coeff: S::one(),
                            generator: b.clone(),
                        }],
                    )?),
                },
            });
        }
    }
    Valuation::new(n, terms)
}

fn block_diagonal<S: Scalar>(a: &LinearMap<S>, b: &LinearMap<S>) -> LinearMap<S> {
    let (sa, sb) = (a.source_dim(), b.source_dim());
    let mut rows: Vec<Vec<S>> = a
        .rows()
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.extend(std::iter::repeat_n(S::zero(), sb));
            row
        })
        .collect();
    rows.extend(b.rows().iter().map(|r| {
        let mut row = vec![S::zero(); sa];
        row.extend(r.iter().cloned());
        row
    }));
    LinearMap::new(rows, sa + sb).expect("consistent widths")
}

/// `φ ⊠ ψ` on `V × W`: bodies become `A × {0}` and `{0} × B`, densities
/// become `f(x) g(y)`.
pub fn exterior_product<S: Scalar>(phi: &Valuation<S>, psi: &Valuation<S>) -> Result<Valuation<S>> {
    let opts = EvalOptions::default().diagonal_route();
    let mut terms = Vec::new();
    for (a, la) in phi.lower(&opts)? {
        for (b, lb) in psi.lower(&opts)? {
            let map = block_diagonal(&la.map, &lb.map);
            terms.push(Term {
                coeff: a.clone() * b,
                generator: Generator::Linear(Lowered::join(&la, &lb, map)),
            });
        }
    }
    Valuation::new(phi.dim() + psi.dim(), terms)
}

/// Product coefficient of the odd planar valuations
/// `φ = V(·, A) - V(·, -A)` and `ψ = V(·, B) - V(·, -B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddWitness<S> {
    /// `c` with `φ ⋅ ψ = c ⋅ vol`, from the closed form.
    pub value: S,
    /// The same coefficient read off the diagonal route on the unit square.
    pub diagonal: S,
    /// `V(A, B) - V(A, -B)`.
    pub mixed_difference: S,
}

impl<S: Scalar> OddWitness<S> {
    pub fn routes_agree(&self) -> bool {
        self.value == self.diagonal
    }
}

pub fn odd_product_witness<S: Scalar>(a: &Polytope<S>, b: &Polytope<S>) -> Result<OddWitness<S>> {
    if a.dim() != 2 {
        return Err(Error::UnsupportedDimension(a.dim()));
    }
    dim_check("witness body", 2, b.dim())?;
    let odd = |p: &Polytope<S>| -> Result<Valuation<S>> {
        Valuation::mv(2, vec![p.clone()], S::one())?.sub(&Valuation::mv(2, vec![p.reflect()], S::one())?)
    };
    let (phi, psi) = (odd(a)?, odd(b)?);
    let value = pairing_coefficient(&phi, &psi)?;
    let diagonal = diagonal_product_evaluate(&phi, &psi, &Polytope::unit_cube(2), &EvalOptions::default())?;
    let mixed_difference = mixed_volume(&[a, b])? - mixed_volume(&[a, &b.reflect()])?;
    Ok(OddWitness {
        value,
        diagonal,
        mixed_difference,
    })
}
