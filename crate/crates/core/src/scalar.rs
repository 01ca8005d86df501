//! Scalar field abstraction.
//!
//! Every geometric and algebraic routine in the crate is written against
//! [`Scalar`]. Exact results require [`Rational`]; the float instances are
//! useful for quick estimates but their predicates are not robust.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number, the exact carrier of the library.
pub type Rational = BigRational;

/// An ordered field usable by the kernel.
pub trait Scalar:
    Clone + Debug + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    /// `true` when arithmetic is exact, so equality tests are meaningful.
    const EXACT: bool;

    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits the scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Best-effort conversion to `f64`.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Rescale a hyperplane `a·x <= b` in place to a canonical positive multiple.
    ///
    /// Two hyperplanes describing the same oriented half-space must map to the
    /// same representative.
    fn canonicalize_hyperplane(normal: &mut [Self], offset: &mut Self) {
        let mut scale = Self::zero();
        for a in normal.iter() {
            let m = a.abs();
            if m > scale {
                scale = m;
            }
        }
        if scale.is_zero() {
            return;
        }
        for a in normal.iter_mut() {
            *a = a.clone() / scale.clone();
        }
        *offset = offset.clone() / scale;
    }

    /// Lower and upper `f64` bounds enclosing the value.
    fn to_f64_bounds(&self) -> (f64, f64) {
        let x = self.to_f64_lossy();
        (x, x)
    }

    /// Points multiplied by a common positive scale so that every coordinate
    /// is an integer of at most `bits` bits; `None` when no such form exists.
    fn to_scaled_integers(_points: &[Vec<Self>], _bits: u32) -> Option<(Vec<Vec<i128>>, Self)> {
        None
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
}

impl Scalar for f32 {
    const EXACT: bool = false;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    /// Integer-primitive representative: clears denominators and divides out
    /// the gcd, so later dot products stay on small integers.
    fn canonicalize_hyperplane(normal: &mut [Self], offset: &mut Self) {
        let mut lcm = BigInt::one();
        for a in normal.iter().chain(std::iter::once(&*offset)) {
            lcm = lcm.lcm(a.denom());
        }
        let mut g = BigInt::zero();
        for a in normal.iter().chain(std::iter::once(&*offset)) {
            let v = a.numer() * (&lcm / a.denom());
            g = g.gcd(&v);
        }
        if g.is_zero() {
            return;
        }
        let factor = Rational::new(lcm, g);
        for a in normal.iter_mut() {
            *a = &*a * &factor;
        }
        *offset = &*offset * &factor;
    }

    fn to_scaled_integers(points: &[Vec<Self>], bits: u32) -> Option<(Vec<Vec<i128>>, Self)> {
        let mut lcm = BigInt::one();
        for p in points {
            for x in p {
                if !x.denom().is_one() {
                    lcm = lcm.lcm(x.denom());
                    if lcm.bits() > u64::from(bits) {
                        return None;
                    }
                }
            }
        }
        let limit = 1i128 << bits;
        let mut out = Vec::with_capacity(points.len());
        for p in points {
            let mut row = Vec::with_capacity(p.len());
            for x in p {
                let v = (x.numer() * (&lcm / x.denom())).to_i128()?;
                if v.abs() >= limit {
                    return None;
                }
                row.push(v);
            }
            out.push(row);
        }
        Some((out, Rational::from_integer(lcm)))
    }

    fn to_f64_bounds(&self) -> (f64, f64) {
        let x = self.to_f64_lossy();
        if !x.is_finite() {
            return (f64::NEG_INFINITY, f64::INFINITY);
        }
        match Rational::from_float(x) {
            Some(exact) if &exact == self => (x, x),
            Some(exact) if &exact < self => (x, x.next_up()),
            Some(_) => (x.next_down(), x),
            None => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

/// `n!` as a scalar.
pub fn factorial<S: Scalar>(n: usize) -> S {
    let mut acc = S::one();
    for k in 2..=n {
        acc = acc * S::from_usize(k).expect("small integer");
    }
    acc
}

/// Binomial coefficient `C(n, k)` as a scalar; zero when `k > n`.
pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = S::one();
    for j in 0..k {
        acc = acc * S::from_usize(n - j).expect("small integer") / S::from_usize(j + 1).expect("small integer");
    }
    acc
}

/// Integer power.
pub fn powi<S: Scalar>(x: &S, e: usize) -> S {
    let mut acc = S::one();
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// Parse `"p/q"`, `"p"` or a decimal integer string into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str_radix(p.trim(), 10).ok()?;
            let q = BigInt::from_str_radix(q.trim(), 10).ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => BigInt::from_str_radix(s, 10).ok().map(Rational::from_integer),
    }
}

/// Canonical string form: `"p/q"` in lowest terms, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Shorthand for building exact rationals in code and tests.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an exact integer.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational approximation `round(x * den) / den`.
pub fn rational_near(x: f64, den: i64) -> Rational {
    let num = (x * den as f64).round();
    Rational::new(BigInt::from_f64(num).expect("finite float"), BigInt::from(den))
}
