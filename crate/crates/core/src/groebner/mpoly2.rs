use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::scalar::{is_atomic_rendering, Scalar};
use crate::upoly::{join_signed, UPoly};

/// Exponent pair `z^z * w^w`, ordered by graded reverse lexicographic order
/// with `z > w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono {
    pub z: u32,
    pub w: u32,
}

impl Mono {
    pub const ONE: Mono = Mono { z: 0, w: 0 };

    pub fn new(z: u32, w: u32) -> Self {
        Mono { z, w }
    }

    pub fn degree(self) -> u32 {
        self.z + self.w
    }

    pub fn divides(self, other: Mono) -> bool {
        self.z <= other.z && self.w <= other.w
    }

    pub fn lcm(self, other: Mono) -> Mono {
        Mono::new(self.z.max(other.z), self.w.max(other.w))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn cofactor_in(self, other: Mono) -> Mono {
        Mono::new(other.z - self.z, other.w - self.w)
    }

    pub fn mul(self, other: Mono) -> Mono {
        Mono::new(self.z + other.z, self.w + other.w)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        // with two variables grevlex reduces to: degree, then smaller w wins
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.w.cmp(&self.w))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in two variables `z, w` over an exact scalar.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly2<T> {
    terms: BTreeMap<Mono, T>,
}

impl<T: Scalar> Default for MPoly2<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Scalar> MPoly2<T> {
    pub fn zero() -> Self {
        MPoly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn term(c: T, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly2 { terms }
    }

    pub fn z() -> Self {
        Self::term(T::one(), Mono::new(1, 0))
    }

    pub fn w() -> Self {
        Self::term(T::one(), Mono::new(0, 1))
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Mono, T)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.plus(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &T)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Mono) -> T {
        self.terms.get(&m).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn as_constant(&self) -> Option<T> {
        if self.is_zero() {
            Some(T::zero())
        } else if self.is_constant() {
            Some(self.coeff(Mono::ONE))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<(Mono, &T)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn leading_mono(&self) -> Option<Mono> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.terms.values().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.z).max()
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (*m, a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &T, m: Mono) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly2 {
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a.clone() * c.clone()))
                .collect(),
        }
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

    /// Scale so the grevlex-leading coefficient is one.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&(T::one() / lc.clone())),
        }
    }

    /// Exact quotient by `d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let lc = lc.clone();
        let mut rem = self.clone();
        let mut quo = Self::zero();
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.cofactor_in(m);
            let qc = c.clone() / lc.clone();
            rem = &rem - &d.mul_term(&qc, qm);
            quo.add_term(qm, qc);
        }
        Some(quo)
    }

    pub fn eval(&self, z: &T, w: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for _ in 0..m.z {
                t = t * z.clone();
            }
            for _ in 0..m.w {
                t = t * w.clone();
            }
            acc + t
        })
    }

    /// View as a polynomial in `z` whose coefficients are polynomials in `w`.
    pub fn to_z_major(&self) -> Vec<UPoly<T>> {
        let dz = self.degree_z().map_or(0, |d| d as usize + 1);
        let mut cols: Vec<Vec<T>> = vec![Vec::new(); dz];
        for (m, c) in &self.terms {
            let col = &mut cols[m.z as usize];
            if col.len() <= m.w as usize {
                col.resize(m.w as usize + 1, T::zero());
            }
            col[m.w as usize] = c.clone();
        }
        cols.into_iter().map(UPoly::from_vec).collect()
    }

    pub fn from_z_major(cols: &[UPoly<T>]) -> Self {
        Self::from_terms(cols.iter().enumerate().flat_map(|(i, col)| {
            col.coeffs()
                .iter()
                .enumerate()
                .map(move |(j, c)| (Mono::new(i as u32, j as u32), c.clone()))
        }))
    }

    /// Canonical text, leading term first.
    pub fn render(&self, vars: [&str; 2]) -> String {
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            for (e, v) in [(m.z, vars[0]), (m.w, vars[1])] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let mono = factors.join("*");
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

impl<'a, T: Scalar> Add<&'a MPoly2<T>> for &'a MPoly2<T> {
    type Output = MPoly2<T>;
    fn add(self, rhs: &MPoly2<T>) -> MPoly2<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Sub<&'a MPoly2<T>> for &'a MPoly2<T> {
    type Output = MPoly2<T>;
    fn sub(self, rhs: &MPoly2<T>) -> MPoly2<T> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a, T: Scalar> Mul<&'a MPoly2<T>> for &'a MPoly2<T> {
    type Output = MPoly2<T>;
    fn mul(self, rhs: &MPoly2<T>) -> MPoly2<T> {
        let lifted = (
            T::lift_integers(&self.terms.values().collect::<Vec<_>>()),
            T::lift_integers(&rhs.terms.values().collect::<Vec<_>>()),
        );
        if let (Some((a, da)), Some((b, db))) = lifted {
            let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
            for (m1, x) in self.terms.keys().zip(&a) {
                for (m2, y) in rhs.terms.keys().zip(&b) {
                    *acc.entry(m1.mul(*m2)).or_default() += x * y;
                }
            }
            let d = da * db;
            return MPoly2::from_terms(
                acc.into_iter()
                    .filter(|(_, n)| !n.is_zero())
                    .map(|(m, n)| (m, T::from_scaled(n, &d))),
            );
        }
        let mut out = MPoly2::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(*m2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &MPoly2<T> {
    type Output = MPoly2<T>;
    fn neg(self) -> MPoly2<T> {
        MPoly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = MPoly2<BigRational>;

    #[test]
    fn grevlex_order() {
        let mut ms = vec![
            Mono::new(0, 2),
            Mono::new(1, 1),
            Mono::new(2, 0),
            Mono::new(0, 1),
        ];
        ms.sort();
        assert_eq!(
            ms,
            vec![
                Mono::new(0, 1),
                Mono::new(0, 2),
                Mono::new(1, 1),
                Mono::new(2, 0)
            ]
        );
    }

    #[test]
    fn arithmetic_and_division() {
        let z = P::z();
        let w = P::w();
        let a = &(&z * &z) - &(&w * &w);
        let b = &z - &w;
        assert_eq!(a.exact_div(&b), Some(&z + &w));
        assert_eq!(z.exact_div(&w), None);
        assert_eq!(a.render(["z", "w"]), "z^2 - w^2");
        let c = P::from_terms([(Mono::new(1, 1), rat(-3)), (Mono::ONE, rat(2))]);
        assert_eq!(c.render(["z", "w"]), "-3*z*w + 2");
    }

    #[test]
    fn z_major_round_trip() {
        let p = P::from_terms([
            (Mono::new(2, 1), rat(1)),
            (Mono::new(0, 3), rat(-2)),
            (Mono::new(1, 0), rat(5)),
        ]);
        assert_eq!(P::from_z_major(&p.to_z_major()), p);
    }
}
