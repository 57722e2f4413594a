//! Scalar bounds shared by the dense polynomial kernels.
//!
//! The univariate and bivariate kernels are generic over any exact scalar
//! that behaves like a field under `num_traits::Num`. In practice the crate
//! instantiates them with [`BigRational`](num_rational::BigRational).

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One};

/// Coefficient type for the polynomial kernels.
///
/// Division must be exact (`a / b * b == a` for `b != 0`), so integer types
/// only qualify for operations that never divide.
pub trait Scalar: Clone + PartialEq + fmt::Debug + Num + Neg<Output = Self> {
    /// Decimal rendering used by the canonical printers.
    fn render(&self) -> String;

    /// `xs` as integers over one common denominator, when the type allows
    /// exact products to be formed that way.
    fn lift_integers(_xs: &[&Self]) -> Option<(Vec<BigInt>, BigInt)> {
        None
    }

    /// `self + other`; types with a cheaper route for common cases override it.
    fn plus(&self, other: &Self) -> Self {
        self.clone() + other.clone()
    }

    fn minus(&self, other: &Self) -> Self {
        self.clone() - other.clone()
    }

    /// Inverse of [`Scalar::lift_integers`] for a single value.
    fn from_scaled(_n: BigInt, _d: &BigInt) -> Self {
        unreachable!("from_scaled without lift_integers")
    }
}

impl Scalar for BigRational {
    fn plus(&self, other: &Self) -> Self {
        if self.denom().is_one() && other.denom().is_one() {
            return BigRational::from_integer(self.numer() + other.numer());
        }
        self + other
    }

    fn minus(&self, other: &Self) -> Self {
        if self.denom().is_one() && other.denom().is_one() {
            return BigRational::from_integer(self.numer() - other.numer());
        }
        self - other
    }

    fn lift_integers(xs: &[&Self]) -> Option<(Vec<BigInt>, BigInt)> {
        let d = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ns = xs.iter().map(|x| x.numer() * (&d / x.denom())).collect();
        Some((ns, d))
    }

    fn from_scaled(n: BigInt, d: &BigInt) -> Self {
        if d.is_one() {
            return BigRational::from_integer(n);
        }
        BigRational::new(n, d.clone())
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for num_rational::Ratio<i64> {
    fn render(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn is_atomic_rendering(s: &str) -> bool {
    // a product of literals and identifier powers, read left to right
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty() && !body.contains([' ', '+', '-', '(', ')'])
}
