//! Polynomial maps of the plane, their affine and elementary factors, and
//! decompositions into such factors.
//!
//! Composition is substitution: `(F ∘ G)_i = F_i(G1, G2)`, so in a product
//! `A ∘ B ∘ C` the map `C` is applied first. A [`Decomposition`] lists its
//! factors left to right in that reading.

use std::cmp::Ordering;
use std::fmt;

use crate::bivariate::BiPoly;
use crate::coeffring::{Ring, RingError, RingResult};

/// `(F1, F2)`: `X ↦ F1`, `Y ↦ F2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyMap<E> {
    pub f1: BiPoly<E>,
    pub f2: BiPoly<E>,
}

/// Component degrees, compared in the product order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegVec {
    pub d1: u32,
    pub d2: u32,
}

impl PartialOrd for DegVec {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.d1.cmp(&other.d1), self.d2.cmp(&other.d2)) {
            (a, b) if a == b => Some(a),
            (Ordering::Equal, b) => Some(b),
            (a, Ordering::Equal) => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for DegVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d1, self.d2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `(X + p(Y), Y)`
    First,
    /// `(X, Y + p(X))`
    Second,
}

impl Axis {
    pub fn index(self) -> u8 {
        match self {
            Axis::First => 1,
            Axis::Second => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Factor<E> {
    /// `(m11 X + m12 Y + t1, m21 X + m22 Y + t2)`
    Affine {
        matrix: [[E; 2]; 2],
        translation: [E; 2],
    },
    /// `p` by ascending coefficients, of degree at least two (or zero).
    Elementary { axis: Axis, p: Vec<E> },
}

impl<E: Clone + PartialEq + fmt::Debug> PolyMap<E> {
    pub fn new(f1: BiPoly<E>, f2: BiPoly<E>) -> Self {
        PolyMap { f1, f2 }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R) -> Self {
        PolyMap::new(BiPoly::x(ring), BiPoly::y(ring))
    }

    /// `self ∘ g`.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R, g: &Self) -> Self {
        PolyMap::new(
            self.f1.substitute(ring, &g.f1, &g.f2),
            self.f2.substitute(ring, &g.f1, &g.f2),
        )
    }

    /// `None` when a component is constant.
    pub fn deg_vec(&self) -> Option<DegVec> {
        let d1 = self.f1.total_degree().filter(|&d| d > 0)?;
        let d2 = self.f2.total_degree().filter(|&d| d > 0)?;
        Some(DegVec { d1, d2 })
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        *self == Self::identity(ring)
    }

    pub fn map_coeffs<S: Ring>(&self, target: &S, f: impl Fn(&E) -> S::Elem) -> PolyMap<S::Elem> {
        PolyMap::new(
            self.f1.map_coeffs(target, &f),
            self.f2.map_coeffs(target, &f),
        )
    }

    pub fn try_map_coeffs<S: Ring>(
        &self,
        target: &S,
        f: impl Fn(&E) -> Option<S::Elem>,
    ) -> Option<PolyMap<S::Elem>> {
        Some(PolyMap::new(
            self.f1.try_map_coeffs(target, &f)?,
            self.f2.try_map_coeffs(target, &f)?,
        ))
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        format!("({}, {})", self.f1.render(ring), self.f2.render(ring))
    }

    /// All coefficients, for ring-membership checks.
    pub fn coefficients(&self) -> impl Iterator<Item = &E> {
        self.f1.terms().chain(self.f2.terms()).map(|(_, c)| c)
    }
}

fn upoly_in<R: Ring>(ring: &R, p: &[R::Elem], var: BiPoly<R::Elem>) -> BiPoly<R::Elem> {
    let mut out = BiPoly::zero();
    let mut power = BiPoly::constant(ring, ring.one());
    for c in p {
        out = out.add(ring, &power.scale(ring, c));
        power = power.mul(ring, &var);
    }
    out
}

fn trim<R: Ring>(ring: &R, mut p: Vec<R::Elem>) -> Vec<R::Elem> {
    while p.last().is_some_and(|c| ring.is_zero(c)) {
        p.pop();
    }
    p
}

impl<E: Clone + PartialEq + fmt::Debug> Factor<E> {
    /// Affine factor with invertible linear part.
    pub fn affine<R: Ring<Elem = E>>(
        ring: &R,
        matrix: [[E; 2]; 2],
        translation: [E; 2],
    ) -> RingResult<Self> {
        let f = Factor::Affine {
            matrix,
            translation,
        };
        if !ring.is_unit(&f.determinant(ring).expect("affine")) {
            return Err(RingError::NotInRing(
                "affine determinant is not a unit".to_string(),
            ));
        }
        Ok(f)
    }

    pub fn linear<R: Ring<Elem = E>>(ring: &R, matrix: [[E; 2]; 2]) -> RingResult<Self> {
        Self::affine(ring, matrix, [ring.zero(), ring.zero()])
    }

    pub fn elementary<R: Ring<Elem = E>>(ring: &R, axis: Axis, p: Vec<E>) -> RingResult<Self> {
        let p = trim(ring, p);
        if p.len() == 1 || p.len() == 2 {
            return Err(RingError::InvalidElement(
                "elementary factors need degree at least two".to_string(),
            ));
        }
        Ok(Factor::Elementary { axis, p })
    }

    pub fn swap<R: Ring<Elem = E>>(ring: &R) -> Self {
        Factor::Affine {
            matrix: [[ring.zero(), ring.one()], [ring.one(), ring.zero()]],
            translation: [ring.zero(), ring.zero()],
        }
    }

    pub fn determinant<R: Ring<Elem = E>>(&self, ring: &R) -> Option<E> {
        match self {
            Factor::Affine { matrix: m, .. } => {
                Some(ring.sub(&ring.mul(&m[0][0], &m[1][1]), &ring.mul(&m[0][1], &m[1][0])))
            }
            Factor::Elementary { .. } => None,
        }
    }

    pub fn to_map<R: Ring<Elem = E>>(&self, ring: &R) -> PolyMap<E> {
        let (x, y) = (BiPoly::x(ring), BiPoly::y(ring));
        match self {
            Factor::Affine {
                matrix: m,
                translation: t,
            } => {
                let row = |r: &[E; 2], c: &E| {
                    x.scale(ring, &r[0])
                        .add(ring, &y.scale(ring, &r[1]))
                        .add(ring, &BiPoly::constant(ring, c.clone()))
                };
                PolyMap::new(row(&m[0], &t[0]), row(&m[1], &t[1]))
            }
            Factor::Elementary {
                axis: Axis::First,
                p,
            } => PolyMap::new(x.add(ring, &upoly_in(ring, p, y.clone())), y),
            Factor::Elementary {
                axis: Axis::Second,
                p,
            } => {
                let f2 = y.add(ring, &upoly_in(ring, p, x.clone()));
                PolyMap::new(x, f2)
            }
        }
    }

    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> RingResult<Self> {
        match self {
            Factor::Elementary { axis, p } => Ok(Factor::Elementary {
                axis: *axis,
                p: p.iter().map(|c| ring.neg(c)).collect(),
            }),
            Factor::Affine {
                matrix: m,
                translation: t,
            } => {
                let det = self.determinant(ring).expect("affine");
                let di = ring.exact_div(&ring.one(), &det)?.ok_or_else(|| {
                    RingError::NotInRing("affine determinant is not a unit".to_string())
                })?;
                let inv = [
                    [ring.mul(&m[1][1], &di), ring.neg(&ring.mul(&m[0][1], &di))],
                    [ring.neg(&ring.mul(&m[1][0], &di)), ring.mul(&m[0][0], &di)],
                ];
                let shift = |r: &[E; 2]| {
                    ring.neg(&ring.add(&ring.mul(&r[0], &t[0]), &ring.mul(&r[1], &t[1])))
                };
                let translation = [shift(&inv[0]), shift(&inv[1])];
                Ok(Factor::Affine {
                    matrix: inv,
                    translation,
                })
            }
        }
    }

    pub fn is_identity<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        match self {
            Factor::Elementary { p, .. } => p.is_empty(),
            Factor::Affine { .. } => self.to_map(ring).is_identity(ring),
        }
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        self.to_map(ring).render(ring)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&E) -> S::Elem) -> Factor<S::Elem> {
        match self {
            Factor::Affine {
                matrix: m,
                translation: t,
            } => Factor::Affine {
                matrix: [[f(&m[0][0]), f(&m[0][1])], [f(&m[1][0]), f(&m[1][1])]],
                translation: [f(&t[0]), f(&t[1])],
            },
            Factor::Elementary { axis, p } => Factor::Elementary {
                axis: *axis,
                p: p.iter().map(f).collect(),
            },
        }
    }

    pub fn try_map_coeffs<S: Ring>(
        &self,
        f: impl Fn(&E) -> Option<S::Elem>,
    ) -> Option<Factor<S::Elem>> {
        Some(match self {
            Factor::Affine {
                matrix: m,
                translation: t,
            } => Factor::Affine {
                matrix: [[f(&m[0][0])?, f(&m[0][1])?], [f(&m[1][0])?, f(&m[1][1])?]],
                translation: [f(&t[0])?, f(&t[1])?],
            },
            Factor::Elementary { axis, p } => Factor::Elementary {
                axis: *axis,
                p: p.iter().map(f).collect::<Option<_>>()?,
            },
        })
    }

    /// Zero translation and one nonzero entry per row and column.
    fn is_monomial_linear<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        match self {
            Factor::Affine {
                matrix: m,
                translation: t,
            } => {
                let z = |e: &E| ring.is_zero(e);
                z(&t[0])
                    && z(&t[1])
                    && ((z(&m[0][1]) && z(&m[1][0])) || (z(&m[0][0]) && z(&m[1][1])))
            }
            Factor::Elementary { .. } => false,
        }
    }
}

/// Read an affine factor off a map of degree at most one.
fn affine_from_map<R: Ring>(ring: &R, m: &PolyMap<R::Elem>) -> Factor<R::Elem> {
    let row = |p: &BiPoly<R::Elem>| [p.coeff(ring, 1, 0), p.coeff(ring, 0, 1)];
    Factor::Affine {
        matrix: [row(&m.f1), row(&m.f2)],
        translation: [m.f1.coeff(ring, 0, 0), m.f2.coeff(ring, 0, 0)],
    }
}

/// Read an elementary factor off a map, if it has that shape.
fn elementary_from_map<R: Ring>(ring: &R, m: &PolyMap<R::Elem>) -> Option<Factor<R::Elem>> {
    let (x, y) = (BiPoly::x(ring), BiPoly::y(ring));
    let univariate = |q: &BiPoly<R::Elem>, in_x: bool| -> Option<Vec<R::Elem>> {
        let d = q.total_degree().unwrap_or(0);
        let mut p = Vec::new();
        for ((i, j), _) in q.terms() {
            if (in_x && *j != 0) || (!in_x && *i != 0) {
                return None;
            }
        }
        for k in 0..=d {
            p.push(if in_x {
                q.coeff(ring, k, 0)
            } else {
                q.coeff(ring, 0, k)
            });
        }
        Some(trim(ring, p))
    };
    if m.f2 == y {
        let p = univariate(&m.f1.sub(ring, &x), false)?;
        return Factor::elementary(ring, Axis::First, p).ok();
    }
    if m.f1 == x {
        let p = univariate(&m.f2.sub(ring, &y), true)?;
        return Factor::elementary(ring, Axis::Second, p).ok();
    }
    None
}

/// A list of factors together with the map it composes to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub factors: Vec<Factor<E>>,
    pub target: PolyMap<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> Decomposition<E> {
    /// `factors[0] ∘ factors[1] ∘ ... ∘ factors[n-1]`.
    pub fn compose<R: Ring<Elem = E>>(&self, ring: &R) -> PolyMap<E> {
        compose_factors(ring, &self.factors)
    }

    pub fn verify<R: Ring<Elem = E>>(&self, ring: &R) -> bool {
        self.compose(ring) == self.target
    }

    /// Whether `target` and `f` are mutually inverse. The compositions are
    /// formed one factor at a time, `((f ∘ φ1) ∘ φ2) ∘ ...` and
    /// `φ1 ∘ (φ2 ∘ (... ∘ f))`; when `f` really is the inverse the
    /// intermediate degrees shrink instead of multiplying.
    pub fn inverts<R: Ring<Elem = E>>(&self, ring: &R, f: &PolyMap<E>) -> bool {
        if !self.verify(ring) {
            return false;
        }
        let right = self
            .factors
            .iter()
            .fold(f.clone(), |acc, phi| acc.compose(ring, &phi.to_map(ring)));
        let left = self
            .factors
            .iter()
            .rev()
            .fold(f.clone(), |acc, phi| phi.to_map(ring).compose(ring, &acc));
        right.is_identity(ring) && left.is_identity(ring)
    }

    /// Decomposition of the inverse map.
    pub fn inverse<R: Ring<Elem = E>>(&self, ring: &R) -> RingResult<Decomposition<E>> {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| f.inverse(ring))
            .collect::<RingResult<Vec<_>>>()?;
        let target = compose_factors(ring, &factors);
        Ok(Decomposition { factors, target })
    }

    /// Shorter equivalent list: diagonal and anti-diagonal linear factors are
    /// moved left past elementary ones (conjugating them), adjacent affine
    /// factors are merged and identities dropped.
    pub fn regrouped<R: Ring<Elem = E>>(&self, ring: &R) -> Decomposition<E> {
        let mut fs = self.factors.clone();
        loop {
            let mut changed = false;
            fs.retain(|f| !f.is_identity(ring));
            let mut i = 1;
            while i < fs.len() {
                let (left, right) = (&fs[i - 1], &fs[i]);
                if matches!(left, Factor::Affine { .. }) && matches!(right, Factor::Affine { .. }) {
                    let m = left.to_map(ring).compose(ring, &right.to_map(ring));
                    fs[i - 1] = affine_from_map(ring, &m);
                    fs.remove(i);
                    changed = true;
                    continue;
                }
                if matches!(left, Factor::Elementary { .. }) && right.is_monomial_linear(ring) {
                    // E ∘ A = A ∘ (A^-1 ∘ E ∘ A)
                    if let Ok(ai) = right.inverse(ring) {
                        let conj = ai
                            .to_map(ring)
                            .compose(ring, &left.to_map(ring))
                            .compose(ring, &right.to_map(ring));
                        if let Some(e) = elementary_from_map(ring, &conj) {
                            let a = right.clone();
                            fs[i - 1] = a;
                            fs[i] = e;
                            changed = true;
                        }
                    }
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        let out = Decomposition {
            factors: fs,
            target: self.target.clone(),
        };
        debug_assert!(out.verify(ring));
        out
    }

    pub fn elementary_count(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| matches!(f, Factor::Elementary { .. }))
            .count()
    }

    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        self.factors
            .iter()
            .map(|f| f.render(ring))
            .collect::<Vec<_>>()
            .join(" ∘ ")
    }
}

pub fn compose_factors<R: Ring>(ring: &R, factors: &[Factor<R::Elem>]) -> PolyMap<R::Elem> {
    factors
        .iter()
        .rev()
        .fold(PolyMap::identity(ring), |acc, f| {
            f.to_map(ring).compose(ring, &acc)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{Field, Integers, QPolyRing, RatFunc, RatFuncField};
    use crate::QPoly;
    use num_bigint::BigInt;

    fn zk() -> RatFuncField {
        RatFuncField::new("z")
    }

    fn zpow(k: &RatFuncField, e: i32) -> RatFunc {
        let z = RatFunc::from_poly(QPoly::x());
        if e >= 0 {
            k.pow(&z, e as u32)
        } else {
            k.inv(&k.pow(&z, (-e) as u32)).unwrap()
        }
    }

    fn nagata(r: &QPolyRing) -> PolyMap<QPoly> {
        let z = QPoly::x();
        let (x, y) = (BiPoly::x(r), BiPoly::y(r));
        let t = x.scale(r, &z).add(r, &y.pow(r, 2));
        let f1 = x
            .sub(r, &y.mul(r, &t).scale(r, &r.from_i64(2)))
            .sub(r, &t.pow(r, 2).scale(r, &z));
        let f2 = y.add(r, &t.scale(r, &z));
        PolyMap::new(f1, f2)
    }

    #[test]
    fn nagata_factorization_convention() {
        let k = zk();
        let (zero, one) = (k.zero(), k.one());
        let a = Factor::elementary(
            &k,
            Axis::First,
            vec![zero.clone(), zero.clone(), k.neg(&zpow(&k, -1))],
        )
        .unwrap();
        let b = Factor::linear(
            &k,
            [[one.clone(), zero.clone()], [zpow(&k, 2), one.clone()]],
        )
        .unwrap();
        let c =
            Factor::elementary(&k, Axis::First, vec![zero.clone(), zero, zpow(&k, -1)]).unwrap();
        let f = compose_factors(&k, &[a, b, c]);
        let r = QPolyRing::new("z");
        let n = nagata(&r).map_coeffs(&k, |c| RatFunc::from_poly(c.clone()));
        assert_eq!(f, n);
        assert_eq!(nagata(&r).deg_vec(), Some(DegVec { d1: 4, d2: 2 }));
    }

    #[test]
    fn elementary_and_affine_inverses() {
        let zz = Integers;
        let z = |n: i64| BigInt::from(n);
        let e = Factor::elementary(&zz, Axis::Second, vec![z(0), z(0), z(1)]).unwrap();
        assert_eq!(
            e.inverse(&zz).unwrap(),
            Factor::Elementary {
                axis: Axis::Second,
                p: vec![z(0), z(0), z(-1)]
            }
        );
        let a = Factor::linear(&zz, [[z(-2), z(-3)], [z(1), z(1)]]).unwrap();
        let ai = a.inverse(&zz).unwrap();
        assert_eq!(
            ai,
            Factor::linear(&zz, [[z(1), z(3)], [z(-1), z(-2)]]).unwrap()
        );
        assert!(ai.to_map(&zz).compose(&zz, &a.to_map(&zz)).is_identity(&zz));
        let s = Factor::swap(&zz);
        assert_eq!(s.inverse(&zz).unwrap(), s);
        assert!(Factor::linear(&zz, [[z(2), z(0)], [z(0), z(1)]]).is_err());
        assert!(Factor::elementary(&zz, Axis::First, vec![z(0), z(1)]).is_err());
    }

    #[test]
    fn composition_cancels() {
        let zz = Integers;
        let z = |n: i64| BigInt::from(n);
        let e = Factor::elementary(&zz, Axis::Second, vec![z(0), z(0), z(1)]).unwrap();
        let m = e
            .to_map(&zz)
            .compose(&zz, &e.inverse(&zz).unwrap().to_map(&zz));
        assert!(m.is_identity(&zz));
        assert_eq!(m.deg_vec(), Some(DegVec { d1: 1, d2: 1 }));
        let swap = Factor::swap(&zz).to_map(&zz);
        assert!(!swap.is_identity(&zz));
        assert_eq!(swap.render(&zz), "(Y, X)");
    }

    #[test]
    fn degree_order_is_partial() {
        let a = DegVec { d1: 4, d2: 2 };
        let b = DegVec { d1: 2, d2: 2 };
        let c = DegVec { d1: 2, d2: 4 };
        assert!(b < a && b < c);
        assert_eq!(a.partial_cmp(&c), None);
    }
}
