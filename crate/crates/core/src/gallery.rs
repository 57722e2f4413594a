//! Named examples, independent principality oracles and random generators.
//!
//! The classical examples live over the complex numbers; here the base field
//! is ℚ, which changes nothing the engine relies on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng as RandRng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autmap::{Axis, Decomposition, Factor, PolyMap};
use crate::bivariate::BiPoly;
use crate::coeffring::{
    CuspidalCubic, Field, Integers, ModuleVerdict, NonPrincipalWitness, PrincipalCert, QPolyRing,
    QuadImag5, Ring, RingError, RingResult, Zr5,
};
use crate::groebner::Mono;
use crate::tamengine::{decide_tame, TameVerdict};
use crate::{QPoly, QPoly2};

/// Nagata's map `(X - 2Y T - z T^2, Y + z T)` with `T = zX + Y^2`.
pub fn nagata<R: Ring>(ring: &R, z: &R::Elem) -> PolyMap<R::Elem> {
    let x = BiPoly::x(ring);
    let y = BiPoly::y(ring);
    let t = x.scale(ring, z).add(ring, &y.pow(ring, 2));
    let f1 = x
        .sub(ring, &y.mul(ring, &t).scale(ring, &ring.from_i64(2)))
        .sub(ring, &t.pow(ring, 2).scale(ring, z));
    let f2 = y.add(ring, &t.scale(ring, z));
    PolyMap::new(f1, f2)
}

/// Inverse of [`nagata`]: `(X + 2Y T - z T^2, Y - z T)`, same `T`.
pub fn nagata_inverse<R: Ring>(ring: &R, z: &R::Elem) -> PolyMap<R::Elem> {
    let x = BiPoly::x(ring);
    let y = BiPoly::y(ring);
    let t = x.scale(ring, z).add(ring, &y.pow(ring, 2));
    let f1 = x
        .add(ring, &y.mul(ring, &t).scale(ring, &ring.from_i64(2)))
        .sub(ring, &t.pow(ring, 2).scale(ring, z));
    let f2 = y.sub(ring, &t.scale(ring, z));
    PolyMap::new(f1, f2)
}

/// Data of the family `(X + w q(zX + wY), Y - z q(zX + wY))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanExSpec<E> {
    pub z: E,
    pub w: E,
    /// Coefficients of `q`, constant term first.
    pub q: Vec<E>,
}

impl<E: Clone> CanExSpec<E> {
    pub fn new<R: Ring<Elem = E>>(ring: &R, z: E, w: E, q: Vec<E>) -> RingResult<Self> {
        let mut q = q;
        while q.last().is_some_and(|c| ring.is_zero(c)) {
            q.pop();
        }
        if q.len() < 3 {
            return Err(RingError::InvalidElement(
                "q must have degree at least 2".to_string(),
            ));
        }
        if ring.is_zero(&z) && ring.is_zero(&w) {
            return Err(RingError::BothZero);
        }
        Ok(CanExSpec { z, w, q })
    }
}

fn q_of<R: Ring>(ring: &R, q: &[R::Elem], t: &BiPoly<R::Elem>) -> BiPoly<R::Elem> {
    let mut acc = BiPoly::zero();
    for c in q.iter().rev() {
        acc = acc
            .mul(ring, t)
            .add(ring, &BiPoly::constant(ring, c.clone()));
    }
    acc
}

fn can_ex_map<R: Ring>(ring: &R, spec: &CanExSpec<R::Elem>, sign: i64) -> PolyMap<R::Elem> {
    let x = BiPoly::x(ring);
    let y = BiPoly::y(ring);
    let t = x.scale(ring, &spec.z).add(ring, &y.scale(ring, &spec.w));
    let qt = q_of(ring, &spec.q, &t).scale(ring, &ring.from_i64(sign));
    PolyMap::new(
        x.add(ring, &qt.scale(ring, &spec.w)),
        y.sub(ring, &qt.scale(ring, &spec.z)),
    )
}

/// The map `F` of the family and its inverse `(X - w q, Y + z q)`.
pub fn canonical_example<R: Ring>(
    ring: &R,
    spec: &CanExSpec<R::Elem>,
) -> RingResult<(PolyMap<R::Elem>, PolyMap<R::Elem>)> {
    let f = can_ex_map(ring, spec, 1);
    let finv = can_ex_map(ring, spec, -1);
    if !f.compose(ring, &finv).is_identity(ring) {
        return Err(RingError::InvalidElement(
            "composition with the inverse is not the identity".to_string(),
        ));
    }
    Ok((f, finv))
}

/// `(t^2 - a^2, t^3 - a^3)` in `ℚ[t^2, t^3]`.
pub fn cuspidal_ideal(a: &BigRational) -> (QPoly, QPoly) {
    let t2 = QPoly::monomial(BigRational::one(), 2);
    let t3 = QPoly::monomial(BigRational::one(), 3);
    (
        &t2 - &QPoly::constant(a * a),
        &t3 - &QPoly::constant(a * a * a),
    )
}

/// The Can-Ex map for `cuspidal_ideal(a)` with the given `q`.
pub fn cuspidal_example(
    a: &BigRational,
    q: Vec<QPoly>,
) -> RingResult<(PolyMap<QPoly>, PolyMap<QPoly>)> {
    let (z, w) = cuspidal_ideal(a);
    let ring = CuspidalCubic;
    canonical_example(&ring, &CanExSpec::new(&ring, z, w, q)?)
}

/// Decide tameness after passing to the normalization `ℚ[t]`.
pub fn tame_over_normalization(f: &PolyMap<QPoly>) -> TameVerdict<QPoly> {
    decide_tame(&QPolyRing::new("t"), f)
}

/// Principality by exhaustive search, kept apart from the ring's own
/// two-generator reduction so the two can be compared.
pub trait BruteForcePrincipality: Ring {
    fn brute_force_principality(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        bound: u64,
    ) -> ModuleVerdict<Self::Elem>;
}

fn exhausted<E>(what: &str, bound: u64) -> ModuleVerdict<E> {
    ModuleVerdict::Unknown {
        reason: format!("{what} exhausted at bound {bound}"),
    }
}

fn exact_int(a: &BigInt, d: &BigInt) -> Option<BigInt> {
    if d.is_zero() {
        return a.is_zero().then(BigInt::zero);
    }
    let (q, r) = a.div_rem(d);
    r.is_zero().then_some(q)
}

impl BruteForcePrincipality for Integers {
    /// Search `g = 1..=bound` with `g | a, b` and `g = s a + t b`,
    /// `|s| <= bound`.
    fn brute_force_principality(
        &self,
        a: &BigInt,
        b: &BigInt,
        bound: u64,
    ) -> ModuleVerdict<BigInt> {
        if a.is_zero() && b.is_zero() {
            return ModuleVerdict::Unknown {
                reason: "both generators are zero".to_string(),
            };
        }
        let lim = BigInt::from(bound);
        for g in 1..=bound {
            let g = BigInt::from(g);
            let (Some(a0), Some(b0)) = (exact_int(a, &g), exact_int(b, &g)) else {
                continue;
            };
            let mut s = -lim.clone();
            while s <= lim {
                let rest = BigInt::one() - &s * &a0;
                let t = if b0.is_zero() {
                    rest.is_zero().then(BigInt::zero)
                } else {
                    exact_int(&rest, &b0)
                };
                if let Some(t) = t {
                    return ModuleVerdict::Principal(PrincipalCert { g, a0, b0, s, t });
                }
                s += 1;
            }
        }
        exhausted("generator search", bound)
    }
}

fn r5_times(x: &Zr5) -> Zr5 {
    Zr5 {
        re: BigInt::from(-5) * &x.im,
        im: x.re.clone(),
    }
}

fn r5_div(a: &Zr5, g: &Zr5) -> Option<Zr5> {
    let n = g.norm();
    if n.is_zero() {
        return a.is_zero().then(|| Zr5::new(0, 0));
    }
    let conj = Zr5 {
        re: g.re.clone(),
        im: -&g.im,
    };
    let p = a.mul(&conj);
    Some(Zr5 {
        re: exact_int(&p.re, &n)?,
        im: exact_int(&p.im, &n)?,
    })
}

/// Index of the additive subgroup of `ℤ^2` spanned by `a, a r5, b, b r5`:
/// the gcd of all 2x2 minors.
fn lattice_index(a: &Zr5, b: &Zr5) -> BigInt {
    let vs = [a.clone(), r5_times(a), b.clone(), r5_times(b)];
    let mut g = BigInt::zero();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let m = &vs[i].re * &vs[j].im - &vs[i].im * &vs[j].re;
            g = g.gcd(&m);
        }
    }
    g
}

fn elements_of_norm(n: &BigInt) -> Vec<Zr5> {
    let mut out = Vec::new();
    let mut y = BigInt::zero();
    while BigInt::from(5) * &y * &y <= *n {
        let rest = n - BigInt::from(5) * &y * &y;
        let x = rest.sqrt();
        if &x * &x == rest {
            for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let e = Zr5 {
                    re: &x * sx,
                    im: &y * sy,
                };
                if !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        y += 1;
    }
    out
}

impl BruteForcePrincipality for QuadImag5 {
    /// A generator of `(a, b)` must have norm equal to the index of the ideal
    /// in `ℤ[√−5]` and divide both generators; conversely such an element
    /// generates an ideal of the same index containing `(a, b)`. Elements of
    /// norm up to `bound` are searched; cofactors with parts bounded by
    /// `bound` are searched for the certificate.
    fn brute_force_principality(&self, a: &Zr5, b: &Zr5, bound: u64) -> ModuleVerdict<Zr5> {
        if a.is_zero() && b.is_zero() {
            return ModuleVerdict::Unknown {
                reason: "both generators are zero".to_string(),
            };
        }
        let n = lattice_index(a, b);
        if n > BigInt::from(bound) {
            return exhausted("norm search", bound);
        }
        let Some((g, a0, b0)) = elements_of_norm(&n).into_iter().find_map(|g| {
            let a0 = r5_div(a, &g)?;
            let b0 = r5_div(b, &g)?;
            Some((g, a0, b0))
        }) else {
            return ModuleVerdict::NotPrincipal(NonPrincipalWitness::NoElementOfNorm {
                ideal_norm: n,
            });
        };
        let lim = bound.min(60) as i64;
        for s1 in -lim..=lim {
            for s2 in -lim..=lim {
                let s = Zr5::new(s1, s2);
                let rest = self.sub(&self.one(), &s.mul(&a0));
                let t = if b0.is_zero() {
                    rest.is_zero().then(|| Zr5::new(0, 0))
                } else {
                    r5_div(&rest, &b0)
                };
                if let Some(t) = t {
                    return ModuleVerdict::Principal(PrincipalCert { g, a0, b0, s, t });
                }
            }
        }
        exhausted("cofactor search", bound)
    }
}

/// A random elementary factor of the given degree, or a random affine
/// factor when `deg` is `None`.
pub fn random_factor<K: Field, G: RandRng>(
    k: &K,
    rng: &mut G,
    deg: Option<u32>,
    sample: &mut impl FnMut(&mut G) -> K::Elem,
) -> Factor<K::Elem> {
    match deg {
        Some(deg) => {
            let mut p: Vec<K::Elem> = (0..deg).map(|_| sample(rng)).collect();
            let mut lead = sample(rng);
            while k.is_zero(&lead) {
                lead = sample(rng);
            }
            p.push(lead);
            let axis = if rng.gen_bool(0.5) {
                Axis::First
            } else {
                Axis::Second
            };
            Factor::elementary(k, axis, p).expect("degree at least 2")
        }
        None => loop {
            let m = [[sample(rng), sample(rng)], [sample(rng), sample(rng)]];
            let tr = [sample(rng), sample(rng)];
            if let Ok(f) = Factor::affine(k, m, tr) {
                return f;
            }
        },
    }
}

/// Composition of `n` random factors, with the factors it came from.
/// Elementary factors have degree 2 or 3, and the product of their degrees
/// stays within `max_degree`.
pub fn random_field_decomposition<K: Field, G: RandRng>(
    k: &K,
    rng: &mut G,
    n: usize,
    max_degree: u32,
    mut sample: impl FnMut(&mut G) -> K::Elem,
) -> Decomposition<K::Elem> {
    let mut budget = 1;
    let mut factors = Vec::with_capacity(n);
    for _ in 0..n {
        let deg = rng.gen_range(2..=3);
        let deg = (rng.gen_bool(0.5) && budget * deg <= max_degree).then_some(deg);
        if let Some(d) = deg {
            budget *= d;
        }
        factors.push(random_factor(k, rng, deg, &mut sample));
    }
    let target = crate::autmap::compose_factors(k, &factors);
    Decomposition { factors, target }
}

/// A random family member. Half the time `(z, w)` is built as
/// `g * (1 + c b0, b0)`, which generates the principal ideal `(g)`.
pub fn random_can_ex<R: Ring, G: RandRng>(
    ring: &R,
    rng: &mut G,
    mut sample: impl FnMut(&mut G) -> R::Elem,
) -> CanExSpec<R::Elem> {
    loop {
        let (z, w) = if rng.gen_bool(0.5) {
            let (g, b0, c) = (sample(rng), sample(rng), sample(rng));
            let a0 = ring.add(&ring.one(), &ring.mul(&c, &b0));
            let pair = (ring.mul(&g, &a0), ring.mul(&g, &b0));
            if rng.gen_bool(0.5) {
                pair
            } else {
                (pair.1, pair.0)
            }
        } else {
            (sample(rng), sample(rng))
        };
        let deg = rng.gen_range(2..=4);
        let q: Vec<_> = (0..=deg).map(|_| sample(rng)).collect();
        if let Ok(spec) = CanExSpec::new(ring, z, w, q) {
            return spec;
        }
    }
}

/// Random integer of absolute value at most `height`.
pub fn random_int<G: RandRng>(rng: &mut G, height: i64) -> BigInt {
    BigInt::from(rng.gen_range(-height..=height))
}

/// Random rational with numerator and denominator bounded by `height`.
pub fn random_rational<G: RandRng>(rng: &mut G, height: i64) -> BigRational {
    BigRational::new(
        random_int(rng, height),
        BigInt::from(rng.gen_range(1..=height)),
    )
}

/// Random polynomial in one variable of degree at most `deg`, small integer
/// coefficients.
pub fn random_qpoly<G: RandRng>(rng: &mut G, deg: usize, height: i64) -> QPoly {
    QPoly::from_vec(
        (0..=deg)
            .map(|_| BigRational::from_integer(random_int(rng, height)))
            .collect(),
    )
}

/// Deterministic generator for the random batteries.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random polynomial in `z, w` of total degree at most `deg`.
pub fn random_qpoly2<G: RandRng>(rng: &mut G, deg: u32, height: i64) -> QPoly2 {
    let mut terms = Vec::new();
    for d in 0..=deg {
        for i in 0..=d {
            if rng.gen_bool(0.4) {
                terms.push((
                    Mono::new(i, d - i),
                    BigRational::from_integer(random_int(rng, height)),
                ));
            }
        }
    }
    QPoly2::from_terms(terms)
}

/// Random element of `ℤ[√−5]` with parts bounded by `height`.
pub fn random_zr5<G: RandRng>(rng: &mut G, height: i64) -> Zr5 {
    Zr5::new(
        rng.gen_range(-height..=height),
        rng.gen_range(-height..=height),
    )
}
