//! Exact integration of polynomials over simplices and polytopes.
//!
//! A simplex is pulled back to the standard simplex by its barycentric
//! parametrization, and monomials are integrated there with the Dirichlet
//! formula `∫ t^a = a_1! ... a_n! / (n + |a|)!`.

use crate::error::{dim_check, Error, Result};
use crate::geometry::{Point, Polytope, Triangulation, TriangulationMethod};
use crate::linalg::{determinant, sub};
use crate::polynomial::{total, Polynomial};
use crate::scalar::{factorial, Scalar};

/// `∫ t^a dt` over `{t >= 0, Σ t <= 1}` in `R^n`.
pub fn standard_simplex_monomial<S: Scalar>(exp: &[u32]) -> S {
    let n = exp.len();
    let mut num = S::one();
    for &a in exp {
        num = num * factorial::<S>(a as usize);
    }
    num / factorial::<S>(n + total(exp))
}

/// Exact integral of `f` over the simplex spanned by `verts` (`n + 1` points of `R^n`).
pub fn integrate_simplex<S: Scalar>(verts: &[Point<S>], f: &Polynomial<S>) -> Result<S> {
    let n = f.num_vars();
    if verts.len() != n + 1 {
        return Err(Error::WrongVertexCount {
            expected: n + 1,
            found: verts.len(),
        });
    }
    for v in verts {
        dim_check("simplex vertex", n, v.len())?;
    }
    Ok(simplex_integral(verts, f))
}

fn simplex_integral<S: Scalar>(verts: &[Point<S>], f: &Polynomial<S>) -> S {
    let n = verts.len() - 1;
    let edges: Vec<Vec<S>> = verts[1..].iter().map(|v| sub(v, &verts[0])).collect();
    let jac = determinant(&edges).abs();
    if jac.is_zero() || f.is_zero() {
        return S::zero();
    }
    if f.degree() == 0 {
        return jac * f.coefficient(&vec![0; n]) / factorial::<S>(n);
    }
    // x = v0 + Σ t_j e_j, i.e. column j of the substitution matrix is e_j
    let m: Vec<Vec<S>> = (0..n).map(|i| edges.iter().map(|e| e[i].clone()).collect()).collect();
    let g = f.substitute_affine(&m, &verts[0], n).expect("dimensions checked by caller");
    let mut acc = S::zero();
    for (e, c) in g.terms() {
        acc = acc + c.clone() * standard_simplex_monomial::<S>(e);
    }
    jac * acc
}

/// Integrals of several polynomials over one triangulation.
pub fn integrate_triangulation<S: Scalar>(t: &Triangulation<S>, fs: &[&Polynomial<S>]) -> Vec<S> {
    let mut out = vec![S::zero(); fs.len()];
    for s in &t.simplices {
        let pts = t.simplex_points(s);
        for (o, f) in out.iter_mut().zip(fs) {
            *o = o.clone() + simplex_integral(&pts, f);
        }
    }
    out
}

/// `∫_P f dx`; zero when `P` is not full-dimensional.
pub fn integrate<S: Scalar>(p: &Polytope<S>, f: &Polynomial<S>) -> Result<S> {
    integrate_with(p, f, TriangulationMethod::Fan)
}

pub fn integrate_with<S: Scalar>(p: &Polytope<S>, f: &Polynomial<S>, method: TriangulationMethod) -> Result<S> {
    dim_check("integrand variables", p.dim(), f.num_vars())?;
    let t = p.triangulate(method);
    Ok(integrate_triangulation(&t, &[f]).remove(0))
}
