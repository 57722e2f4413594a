//! Dense univariate polynomials over an exact scalar.
//!
//! `UPoly<T>` stores coefficients in ascending degree order. The vector is
//! empty for the zero polynomial and otherwise ends in a nonzero entry.

use num_bigint::BigInt;
use num_traits::Zero;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{is_atomic_rendering, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UPoly<T> {
    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_vec(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        UPoly { coeffs }
    }

    /// Build from ascending coefficients; trailing zeros are dropped.
    pub fn from_vec(coeffs: Vec<T>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_vec(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push(c.clone() * k.clone());
            }
            k = k + T::one();
        }
        Self::from_vec(out)
    }

    /// Divide by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let mut quo = vec![T::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        (Self::from_vec(quo), Self::from_vec(rem))
    }

    /// `Some(q)` with `q * d == self`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = T::one() / lc;
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// Product of the distinct monic irreducible factors (characteristic 0).
    pub fn squarefree_part(&self) -> Self {
        if self.is_constant() {
            return if self.is_zero() {
                Self::zero()
            } else {
                Self::one()
            };
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Canonical text with `var` as the indeterminate, highest degree first.
    pub fn render(&self, var: &str) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = c.render();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono
            } else if is_atomic_rendering(&mag) {
                format!("{mag}*{mono}")
            } else {
                format!("({mag})*{mono}")
            };
            parts.push((neg, body));
        }
        join_signed(parts)
    }
}

/// Join `(negative, magnitude)` pieces into `a - b + c` form.
pub(crate) fn join_signed(parts: Vec<(bool, String)>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    out
}

impl<'a, T: Scalar> Add<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: &UPoly<T>) -> UPoly<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = long.coeffs.clone();
        for (o, c) in out.iter_mut().zip(&short.coeffs) {
            *o = o.plus(c);
        }
        UPoly::from_vec(out)
    }
}

impl<'a, T: Scalar> Sub<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        let at = |p: &UPoly<T>, i: usize| -> T { p.coeffs.get(i).unwrap_or(&zero).clone() };
        UPoly::from_vec(
            (0..n)
                .map(|i| at(self, i).minus(rhs.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }
}

impl<'a, T: Scalar> Mul<&'a UPoly<T>> for &'a UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let len = self.coeffs.len() + rhs.coeffs.len() - 1;
        let lifted = (
            T::lift_integers(&self.coeffs.iter().collect::<Vec<_>>()),
            T::lift_integers(&rhs.coeffs.iter().collect::<Vec<_>>()),
        );
        if let (Some((a, da)), Some((b, db))) = lifted {
            let mut out = vec![BigInt::zero(); len];
            for (i, x) in a.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            let d = da * db;
            return UPoly::from_vec(out.into_iter().map(|n| T::from_scaled(n, &d)).collect());
        }
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = std::mem::replace(&mut out[i + j], T::zero()) + a.clone() * b.clone();
            }
        }
        UPoly::from_vec(out)
    }
}

impl<T: Scalar> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}
