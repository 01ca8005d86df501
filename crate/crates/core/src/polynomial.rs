//! Sparse multivariate polynomials and exact interpolation on integer grids.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{dim_check, Error, Result};
use crate::scalar::{binomial, powi, Scalar};

/// Polynomial in `num_vars` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Polynomial<S> {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c:?}")?;
            for (i, k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Polynomial<S> {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: S) -> Self {
        Self::monomial(vec![0; num_vars], c)
    }

    pub fn one(num_vars: usize) -> Self {
        Self::constant(num_vars, S::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn monomial(exp: Vec<u32>, coef: S) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coef);
        p
    }

    /// Build from `(exponent, coefficient)` pairs, merging repeated exponents.
    pub fn from_terms(num_vars: usize, terms: impl IntoIterator<Item = (Vec<u32>, S)>) -> Result<Self> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            dim_check("polynomial exponent", num_vars, e.len())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, coef: S) {
        if coef.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(c) => {
                *c = c.clone() + coef;
                if c.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, coef);
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exp: &[u32]) -> S {
        self.terms.get(exp).cloned().unwrap_or_else(S::zero)
    }

    /// Maximal total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| total(e)).max().unwrap_or(0)
    }

    /// Degrees of the nonzero homogeneous components, ascending.
    pub fn homogeneous_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|e| total(e)).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn homogeneous_component(&self, degree: usize) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[S]) -> Result<S> {
        dim_check("polynomial evaluation", self.num_vars, x.len())?;
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                if k > 0 {
                    t = t * powi(xi, k as usize);
                }
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        dim_check("polynomial sum", self.num_vars, other.num_vars)?;
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        if s.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.clone() * s.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        dim_check("polynomial product", self.num_vars, other.num_vars)?;
        let mut p = Self::zero(self.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        Ok(p)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.num_vars);
        for _ in 0..k {
            acc = acc.mul(self).expect("same arity");
        }
        acc
    }

    /// `(x, y) ↦ f(x) g(y)` on `num_vars(f) + num_vars(g)` variables.
    pub fn external_product(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.num_vars + other.num_vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = e1.clone();
                e.extend(e2.iter().copied());
                p.add_term(e, c1.clone() * c2.clone());
            }
        }
        p
    }

    /// `y ↦ f(M y + b)` for a `num_vars x m` matrix `M`; the result has `m` variables.
    pub fn substitute_affine(&self, m: &[Vec<S>], b: &[S], new_vars: usize) -> Result<Self> {
        dim_check("substitution rows", self.num_vars, m.len())?;
        dim_check("substitution offset", self.num_vars, b.len())?;
        let images: Vec<Self> = m
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut p = Self::constant(new_vars, bi.clone());
                for (j, a) in row.iter().enumerate() {
                    p.add_term(unit(new_vars, j), a.clone());
                }
                p
            })
            .collect();
        // cache powers of each image
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(new_vars), p.clone()]).collect();
        let mut out = Self::zero(new_vars);
        for (e, c) in &self.terms {
            let mut t = Self::constant(new_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let k = k as usize;
                while powers[i].len() <= k {
                    let next = powers[i].last().unwrap().mul(&images[i])?;
                    powers[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&powers[i][k])?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// `y ↦ f(y + x)`.
    pub fn translate(&self, x: &[S]) -> Result<Self> {
        let n = self.num_vars;
        let id: Vec<Vec<S>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        self.substitute_affine(&id, x, n)
    }

    /// `y ↦ f(-y)`.
    pub fn reflect(&self) -> Self {
        Polynomial {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    if total(e) % 2 == 1 {
                        (e.clone(), -c.clone())
                    } else {
                        (e.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Univariate coefficient list `c_0, c_1, ...` of a one-variable polynomial.
    pub fn univariate_coefficients(&self) -> Result<Vec<S>> {
        if self.num_vars != 1 {
            return Err(Error::DimensionMismatch {
                context: "univariate polynomial".into(),
                expected: 1,
                found: self.num_vars,
            });
        }
        let mut out = vec![S::zero(); self.degree() + 1];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        Ok(out)
    }

    pub fn from_univariate(coeffs: &[S]) -> Self {
        let mut p = Self::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    /// Apply `g` to every coefficient.
    pub fn map_coefficients<T: Scalar>(&self, g: impl Fn(&S) -> T) -> Polynomial<T> {
        let mut p = Polynomial::zero(self.num_vars);
        for (e, c) in &self.terms {
            p.add_term(e.clone(), g(c));
        }
        p
    }
}

pub(crate) fn total(e: &[u32]) -> usize {
    e.iter().map(|&k| k as usize).sum()
}

fn unit(n: usize, j: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

/// Monomial coefficients of the polynomial of degree `<= values.len() - 1`
/// taking `values[t]` at `t = 0, 1, ...`.
pub fn interpolate_1d<S: Scalar>(values: &[S]) -> Vec<S> {
    let m = values.len();
    // forward differences Δ^k y_0
    let mut diffs = values.to_vec();
    let mut newton = Vec::with_capacity(m);
    for _ in 0..m {
        newton.push(diffs[0].clone());
        diffs = diffs.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    }
    // Σ Δ^k y_0 · C(t, k), with C(t, k) expanded into monomials
    let mut out = vec![S::zero(); m];
    let mut falling = vec![S::one()]; // t (t-1) ... (t-k+1)
    for (k, d) in newton.iter().enumerate() {
        if !d.is_zero() {
            let kf = crate::scalar::factorial::<S>(k);
            for (j, c) in falling.iter().enumerate() {
                out[j] = out[j].clone() + d.clone() * c.clone() / kf.clone();
            }
        }
        let shift = S::from_usize(k).expect("small integer");
        let mut next = vec![S::zero(); falling.len() + 1];
        for (j, c) in falling.iter().enumerate() {
            next[j + 1] = next[j + 1].clone() + c.clone();
            next[j] = next[j].clone() - c.clone() * shift.clone();
        }
        falling = next;
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Polynomial in `s` variables of degree `<= d` in each variable, recovered
/// from its values on `{0, ..., d}^s`; `values` is indexed in row-major order
/// with the last variable fastest.
pub fn interpolate_grid<S: Scalar>(s: usize, d: usize, values: &[S]) -> Polynomial<S> {
    let side = d + 1;
    assert_eq!(values.len(), side.pow(s as u32));
    let mut coef = values.to_vec();
    for axis in 0..s {
        let stride = side.pow((s - 1 - axis) as u32);
        let blocks = coef.len() / (stride * side);
        for b in 0..blocks {
            for r in 0..stride {
                let base = b * stride * side + r;
                let fiber: Vec<S> = (0..side).map(|t| coef[base + t * stride].clone()).collect();
                let mut c = interpolate_1d(&fiber);
                c.resize(side, S::zero());
                for (t, v) in c.into_iter().enumerate() {
                    coef[base + t * stride] = v;
                }
            }
        }
    }
    let mut p = Polynomial::zero(s);
    for (idx, c) in coef.into_iter().enumerate() {
        p.add_term(grid_point(s, side, idx), c);
    }
    p
}

/// Multi-index of the `idx`-th point of `{0, ..., side-1}^s` in row-major order.
pub fn grid_point(s: usize, side: usize, mut idx: usize) -> Vec<u32> {
    let mut e = vec![0u32; s];
    for k in (0..s).rev() {
        e[k] = (idx % side) as u32;
        idx /= side;
    }
    e
}

/// Binomial expansion helper: coefficient of `t^k` in `(a + b t)^m`.
pub fn binomial_term<S: Scalar>(a: &S, b: &S, m: usize, k: usize) -> S {
    binomial::<S>(m, k) * powi(a, m - k) * powi(b, k)
}
