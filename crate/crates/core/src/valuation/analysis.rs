//! Gradings, parity, pairings and sample checks on valuations.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::Polytope;
use crate::linalg::rank;
use crate::polynomial::{interpolate_1d, Polynomial};
use crate::scalar::{powi, Scalar};

use super::product::pairing_coefficient;
use super::{EvalOptions, Valuation};

/// Components of a translation-invariant valuation by degree.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedDecomposition<S: Scalar> {
    /// `components[i]` is the degree-`i` part.
    pub components: Vec<Valuation<S>>,
    /// `(even, odd)` split of each component.
    pub parity: Vec<(Valuation<S>, Valuation<S>)>,
    /// Components sum to the original on every test body.
    pub reassembles: bool,
    /// `component_i(λK) = λ^i component_i(K)` for `λ ∈ {1, 2, 3}`.
    pub degree_pure: bool,
}

fn translation_probe<S: Scalar>(v: &Valuation<S>, bodies: &[Polytope<S>], opts: &EvalOptions) -> Result<()> {
    let n = v.dim();
    let x: Vec<S> = (0..n).map(|i| S::from_usize(i + 1).expect("small integer")).collect();
    for k in bodies {
        if v.evaluate_with(k, opts)? != v.evaluate_with(&k.translate(&x)?, opts)? {
            return Err(Error::NotTranslationInvariant);
        }
    }
    Ok(())
}

pub fn homogeneous_decomposition<S: Scalar>(
    v: &Valuation<S>,
    test_bodies: &[Polytope<S>],
    opts: &EvalOptions,
) -> Result<GradedDecomposition<S>> {
    let n = v.dim();
    translation_probe(v, test_bodies, opts)?;
    let components = (0..=n)
        .map(|i| Valuation::component(v.clone(), i))
        .collect::<Result<Vec<_>>>()?;
    let parity = components.iter().map(parity_decomposition).collect();
    let mut reassembles = true;
    let mut degree_pure = true;
    for k in test_bodies {
        let values = components
            .iter()
            .map(|c| c.evaluate_with(k, opts))
            .collect::<Result<Vec<S>>>()?;
        let total = values.iter().fold(S::zero(), |a, b| a + b.clone());
        reassembles &= total == v.evaluate_with(k, opts)?;
        for (i, c) in components.iter().enumerate() {
            for lambda in 1..=3usize {
                let l = S::from_usize(lambda).expect("small integer");
                let scaled = c.evaluate_with(&k.scale_unchecked(&l), opts)?;
                degree_pure &= scaled == powi(&l, i) * values[i].clone();
            }
        }
    }
    Ok(GradedDecomposition {
        components,
        parity,
        reassembles,
        degree_pure,
    })
}

/// `(even, odd) = ((φ + φ∘(-1)) / 2, (φ - φ∘(-1)) / 2)`.
pub fn parity_decomposition<S: Scalar>(v: &Valuation<S>) -> (Valuation<S>, Valuation<S>) {
    let half = S::one() / S::from_int(2);
    let r = v.reflect();
    let even = v.add(&r).expect("same dimension").scale(&half);
    let odd = v.sub(&r).expect("same dimension").scale(&half);
    (even, odd)
}

/// Products of complementary-degree valuations as multiples of the volume.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingMatrix<S> {
    pub entries: Vec<Vec<S>>,
    pub rank: usize,
}

pub fn pairing_matrix<S: Scalar>(left: &[Valuation<S>], right: &[Valuation<S>]) -> Result<PairingMatrix<S>> {
    let n = left.first().or(right.first()).map_or(0, |v| v.dim());
    let degree_of = |v: &Valuation<S>| -> Result<Option<usize>> {
        if v.dim() != n {
            return Err(Error::DimensionMismatch {
                context: "pairing".into(),
                expected: n,
                found: v.dim(),
            });
        }
        Ok(if v.is_zero() { None } else { v.degree() })
    };
    let mut i: Option<usize> = None;
    let mut j: Option<usize> = None;
    for (side, target) in [(left, &mut i), (right, &mut j)] {
        for v in side {
            if let Some(d) = degree_of(v)? {
                if target.is_some_and(|t| t != d) {
                    return Err(Error::DegreeMismatch(format!(
                        "mixed degrees {} and {d} on one side",
                        target.unwrap()
                    )));
                }
                *target = Some(d);
            }
        }
    }
    if let (Some(i), Some(j)) = (i, j) {
        if i + j != n {
            return Err(Error::DegreeMismatch(format!(
                "degrees {i} and {j} are not complementary in dimension {n}"
            )));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..left.len()).flat_map(|p| (0..right.len()).map(move |q| (p, q))).collect();
    let values = pairs
        .par_iter()
        .map(|&(p, q)| {
            if left[p].is_zero() || right[q].is_zero() {
                Ok(S::zero())
            } else {
                pairing_coefficient(&left[p], &right[q])
            }
        })
        .collect::<Result<Vec<S>>>()?;
    let entries: Vec<Vec<S>> = values.chunks(right.len().max(1)).map(|c| c.to_vec()).collect();
    let entries = if right.is_empty() {
        vec![Vec::new(); left.len()]
    } else {
        entries
    };
    let rank = rank(&entries);
    Ok(PairingMatrix { entries, rank })
}

/// `t ↦ φ(K + t ⋅ direction)`, interpolated at `t = 0, ..., n + d`.
pub fn translation_profile<S: Scalar>(
    v: &Valuation<S>,
    k: &Polytope<S>,
    direction: &[S],
    opts: &EvalOptions,
) -> Result<Polynomial<S>> {
    let d = v.dim() + v.density_degree();
    let values = (0..=d)
        .map(|t| {
            let shift: Vec<S> = direction
                .iter()
                .map(|c| c.clone() * S::from_usize(t).expect("small integer"))
                .collect();
            v.evaluate_with(&k.translate(&shift)?, opts)
        })
        .collect::<Result<Vec<S>>>()?;
    Ok(Polynomial::from_univariate(&interpolate_1d(&values)))
}

/// Values of the inclusion–exclusion identity on a box split.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport<S> {
    pub union: S,
    pub first: S,
    pub second: S,
    pub intersection: S,
}

impl<S: Scalar> AxiomReport<S> {
    pub fn holds(&self) -> bool {
        self.union == self.first.clone() + self.second.clone() - self.intersection.clone()
    }
}

/// Splits the box `[lo, hi]` by the hyperplane `x_axis = cut` and evaluates
/// both sides of the valuation identity.
pub fn valuation_axiom_check<S: Scalar>(
    v: &Valuation<S>,
    lo: &[S],
    hi: &[S],
    axis: usize,
    cut: &S,
    opts: &EvalOptions,
) -> Result<AxiomReport<S>> {
    let n = v.dim();
    crate::error::dim_check("box lower corner", n, lo.len())?;
    crate::error::dim_check("box upper corner", n, hi.len())?;
    if axis >= n {
        return Err(Error::OutOfRange(format!("axis {axis} in dimension {n}")));
    }
    if !(lo[axis] < *cut && *cut < hi[axis]) {
        return Err(Error::CutOutsideBox(format!("{:?}", cut.to_f64_lossy())));
    }
    let with = |l: &[S], h: &[S]| Polytope::cuboid(l, h);
    let mut h1 = hi.to_vec();
    h1[axis] = cut.clone();
    let mut l2 = lo.to_vec();
    l2[axis] = cut.clone();
    let mut li = lo.to_vec();
    li[axis] = cut.clone();
    let eval = |p: Polytope<S>| v.evaluate_with(&p, opts);
    Ok(AxiomReport {
        union: eval(with(lo, hi))?,
        first: eval(with(lo, &h1))?,
        second: eval(with(&l2, hi))?,
        intersection: eval(with(&li, &h1))?,
    })
}
