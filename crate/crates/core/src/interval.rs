//! Closed intervals with exact endpoints.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

#[derive(Clone, PartialEq)]
pub struct Interval<S> {
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> fmt::Debug for Interval<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64();
        write!(f, "[{lo}, {hi}]")
    }
}

impl<S: Scalar> Interval<S> {
    /// Interval spanned by two values in either order.
    pub fn new(a: S, b: S) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: S) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> S {
        self.hi.clone() - self.lo.clone()
    }

    pub fn midpoint(&self) -> S {
        (self.lo.clone() + self.hi.clone()) / S::from_int(2)
    }

    pub fn contains(&self, x: &S) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Contains a value given as a float, using outward-rounded endpoints.
    pub fn contains_f64(&self, x: f64) -> bool {
        let (lo, hi) = self.to_f64();
        lo <= x && x <= hi
    }

    pub fn excludes_zero(&self) -> bool {
        self.lo.is_positive() || self.hi.is_negative()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = if self.lo >= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi <= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo <= other.lo {
            self.lo.clone()
        } else {
            other.lo.clone()
        };
        let hi = if self.hi >= other.hi {
            self.hi.clone()
        } else {
            other.hi.clone()
        };
        Interval { lo, hi }
    }

    pub fn add(&self, other: &Self) -> Self {
        Interval {
            lo: self.lo.clone() + other.lo.clone(),
            hi: self.hi.clone() + other.hi.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let c = [
            self.lo.clone() * other.lo.clone(),
            self.lo.clone() * other.hi.clone(),
            self.hi.clone() * other.lo.clone(),
            self.hi.clone() * other.hi.clone(),
        ];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for x in &c[1..] {
            if *x < lo {
                lo = x.clone();
            }
            if *x > hi {
                hi = x.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.lo.clone() * s.clone(), self.hi.clone() * s.clone())
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.excludes_zero() {
            return None;
        }
        let inv = Self::new(S::one() / other.lo.clone(), S::one() / other.hi.clone());
        Some(self.mul(&inv))
    }

    /// Outward-rounded float enclosure.
    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64_bounds().0, self.hi.to_f64_bounds().1)
    }

    pub fn to_float_interval(&self) -> FloatInterval {
        let (lo, hi) = self.to_f64();
        FloatInterval { lo, hi }
    }
}

/// Float enclosure used in reports.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FloatInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FloatInterval {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}
