//! Polynomials in the automorphism variables `X, Y` over a coefficient ring.
//!
//! A [`BiPoly`] only stores coefficients; every operation takes the ring
//! context, so the same type serves `R[X,Y]` and `K[X,Y]`.

use std::collections::BTreeMap;

use crate::coeffring::{Domain, Field, FracCoeff, Ring, RingResult};
use crate::scalar::is_atomic_rendering;
use crate::upoly::join_signed;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly<E> {
    /// `(i, j) -> coefficient of X^i Y^j`, no zero entries.
    terms: BTreeMap<(u32, u32), E>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> BiPoly<E> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn term<R: Ring<Elem = E>>(ring: &R, c: E, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(ring, (i, j), c);
        p
    }

    pub fn constant<R: Ring<Elem = E>>(ring: &R, c: E) -> Self {
        Self::term(ring, c, 0, 0)
    }

    pub fn x<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::term(ring, ring.one(), 1, 0)
    }

    pub fn y<R: Ring<Elem = E>>(ring: &R) -> Self {
        Self::term(ring, ring.one(), 0, 1)
    }

    pub fn from_terms<R: Ring<Elem = E>>(
        ring: &R,
        terms: impl IntoIterator<Item = ((u32, u32), E)>,
    ) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(ring, m, c);
        }
        p
    }

    fn add_term<R: Ring<Elem = E>>(&mut self, ring: &R, m: (u32, u32), c: E) {
        if ring.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = ring.add(&old, &c);
                if !ring.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &E)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, i: u32, j: u32) -> E {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut ds = self.terms.keys().map(|(i, j)| i + j);
        match ds.next() {
            None => true,
            Some(d) => ds.all(|e| e == d),
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Homogeneous part of top degree; `None` for zero.
    pub fn top_component(&self) -> Option<Self> {
        self.total_degree().map(|d| self.homogeneous_component(d))
    }

    /// Term of top total degree with the largest power of `X`.
    pub fn leading_term(&self) -> Option<((u32, u32), &E)> {
        self.terms
            .iter()
            .max_by_key(|((i, j), _)| (i + j, *i))
            .map(|(m, c)| (*m, c))
    }

    /// Apply `f` to every coefficient (zero results dropped).
    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&E) -> S::Elem) -> BiPoly<S::Elem> {
        BiPoly::from_terms(target, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Pull every coefficient back through a partial map.
    pub fn try_map_coeffs<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&E) -> Option<S::Elem>,
    ) -> Option<BiPoly<S::Elem>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((*m, f(c)?));
        }
        Some(BiPoly::from_terms(target, out))
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(ring, *m, c.clone());
        }
        out
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, ring.neg(c))).collect(),
        }
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(ring, *m, ring.neg(c));
        }
        out
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term(ring, (i1 + i2, j1 + j2), ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        BiPoly::from_terms(ring, self.terms.iter().map(|(m, a)| (*m, ring.mul(a, c))))
    }

    pub fn pow<R: Ring<Elem = E>>(&self, ring: &R, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(ring, ring.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ring, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ring, &base);
            }
        }
        acc
    }

    /// `self(g1, g2)`, as a Horner scheme in `g1` over inner sums in
    /// powers of `g2`.
    pub fn substitute<R: Ring<Elem = E>>(&self, ring: &R, g1: &Self, g2: &Self) -> Self {
        let Some(top_i) = self.terms.keys().map(|&(i, _)| i).max() else {
            return Self::zero();
        };
        let mut rows: Vec<Vec<(u32, &E)>> = vec![Vec::new(); top_i as usize + 1];
        for ((i, j), c) in &self.terms {
            rows[*i as usize].push((*j, c));
        }
        let mut powers: Vec<Self> = vec![Self::constant(ring, ring.one())];
        let mut inner = |row: &[(u32, &E)]| -> Self {
            let mut acc = Self::zero();
            for &(j, c) in row {
                while powers.len() <= j as usize {
                    let next = powers.last().expect("nonempty").mul(ring, g2);
                    powers.push(next);
                }
                acc = acc.add(ring, &powers[j as usize].scale(ring, c));
            }
            acc
        };
        let mut out = Self::zero();
        for row in rows.iter().rev() {
            out = out.mul(ring, g1).add(ring, &inner(row));
        }
        out
    }

    /// Canonical text: terms by descending total degree, then descending
    /// power of `X`.
    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| std::cmp::Reverse((i + j, i)));
        let mut parts = Vec::new();
        for (i, j) in keys {
            let cs = ring.render(&self.terms[&(i, j)]);
            let mut vars = Vec::new();
            for (e, v) in [(i, "X"), (j, "Y")] {
                match e {
                    0 => {}
                    1 => vars.push(v.to_string()),
                    _ => vars.push(format!("{v}^{e}")),
                }
            }
            let mono = vars.join("*");
            if mono.is_empty() {
                // constant term: its own sign structure reads correctly inline
                match cs.strip_prefix('-') {
                    Some(rest) => parts.push((true, rest.to_string())),
                    None => parts.push((false, cs)),
                }
                continue;
            }
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) if is_atomic_rendering(rest) => (true, rest.to_string()),
                _ => (false, cs),
            };
            let body = if mag == "1" {
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

/// `c` with `h = c * g^e` over a field, or `None` if there is none.
pub fn power_proportionality_in<K: Field>(
    k: &K,
    h: &BiPoly<K::Elem>,
    g: &BiPoly<K::Elem>,
    e: u32,
) -> Option<K::Elem> {
    let ge = g.pow(k, e);
    let ((i, j), lc) = ge.leading_term()?;
    let c = k.div(&h.coeff(k, i, j), lc)?;
    if k.is_zero(&c) {
        return None;
    }
    (ge.scale(k, &c) == *h).then_some(c)
}

/// `c` in the fraction field with `h = c * g^e`, as a reduced fraction over
/// the domain.
pub fn power_proportionality<D: Domain>(
    dom: &D,
    h: &BiPoly<D::Elem>,
    g: &BiPoly<D::Elem>,
    e: u32,
) -> RingResult<Option<FracCoeff<D::Elem>>> {
    let k = dom.fraction_field();
    let hk = h.map_coeffs(&k, |c| dom.embed(c));
    let gk = g.map_coeffs(&k, |c| dom.embed(c));
    match power_proportionality_in(&k, &hk, &gk, e) {
        None => Ok(None),
        Some(c) => {
            let (num, den) = dom.split(&c);
            Ok(Some(FracCoeff { num, den }))
        }
    }
}

/// Coefficients `(a, b)` presenting the module `R*h1 + R*h2` as the ideal
/// `(a, b)`, with `h2 * a = h1 * b`. The common factor `G` (with `h1 = a*G`,
/// `h2 = b*G`) is returned when it has coefficients in `R`.
pub type IdealPair<E> = (E, E, Option<BiPoly<E>>);

pub fn extract_ideal_pair<D: Domain>(
    dom: &D,
    h1: &BiPoly<D::Elem>,
    h2: &BiPoly<D::Elem>,
) -> RingResult<Option<IdealPair<D::Elem>>> {
    let Some(lambda) = power_proportionality(dom, h2, h1, 1)? else {
        return Ok(None);
    };
    let (a, b) = (lambda.den, lambda.num);
    let g = h1.try_map_coeffs(dom, |c| dom.exact_div(c, &a).ok().flatten());
    let g = g.filter(|g| g.scale(dom, &b) == *h2);
    Ok(Some((a, b, g)))
}
