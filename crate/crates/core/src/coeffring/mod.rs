//! Coefficient rings.
//!
//! A ring is a small context value (modulus, variable names, inverted
//! element, ...) and its elements are plain data in canonical form, so
//! structural equality is ring equality. Operations always go through the
//! context: `ring.add(&a, &b)`.
//!
//! Every domain knows its fraction field and can decide principality of
//! two-generated ideals, globally ([`Domain::two_gen_reduce`]) and after
//! localizing at a prime ([`Domain::two_gen_reduce_at`]).

mod bivar;
mod cusp;
mod integers;
mod lattice;
mod localized;
mod primefield;
mod quad5;
mod rational;
mod univar;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use bivar::{BivarRatFunc, BivarRatFuncField, QBivarRing};
pub use cusp::{is_cusp_element, CuspidalCubic};
pub use integers::Integers;
pub use lattice::Lattice;
pub use localized::{LocElem, Localized};
pub use primefield::PrimeField;
pub use quad5::{small_primes, QuadField5, QuadImag5, Zr5, Q5};
pub use rational::Rationals;
pub use univar::{QPolyRing, RatFunc, RatFuncField};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("both generators are zero")]
    BothZero,
    #[error("unsupported prime for {ring}: {reason}")]
    UnsupportedPrime { ring: String, reason: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element not in canonical form: {0}")]
    InvalidElement(String),
    #[error("{0}")]
    NotInRing(String),
}

pub type RingResult<T> = Result<T, RingError>;

/// Which member of the ring portfolio a context describes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingKind {
    RationalField,
    PrimeField {
        p: u64,
    },
    Integers,
    UnivarPoly {
        var: String,
    },
    BivarPolyRing {
        vars: [String; 2],
    },
    Localized {
        base: Box<RingKind>,
        multiplier: String,
    },
    /// `Z[sqrt(-5)]`
    QuadImag5,
    /// `Q[t^2, t^3]`
    CuspidalCubic,
    FractionField {
        base: Box<RingKind>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub has_gcd: bool,
    pub has_ext_gcd: bool,
    /// `two_gen_reduce` never answers `Unknown`.
    pub principality_complete: bool,
    pub is_field: bool,
    pub is_pid: bool,
    pub is_dedekind: bool,
}

impl Capabilities {
    const FIELD: Capabilities = Capabilities {
        has_gcd: true,
        has_ext_gcd: true,
        principality_complete: true,
        is_field: true,
        is_pid: true,
        is_dedekind: false,
    };
    const PID: Capabilities = Capabilities {
        has_gcd: true,
        has_ext_gcd: true,
        principality_complete: true,
        is_field: false,
        is_pid: true,
        is_dedekind: true,
    };
}

impl RingKind {
    pub fn capabilities(&self) -> Capabilities {
        match self {
            RingKind::RationalField | RingKind::PrimeField { .. } => Capabilities::FIELD,
            RingKind::FractionField { .. } => Capabilities::FIELD,
            RingKind::Integers | RingKind::UnivarPoly { .. } => Capabilities::PID,
            RingKind::BivarPolyRing { .. } => Capabilities {
                has_gcd: true,
                has_ext_gcd: false,
                principality_complete: true,
                is_field: false,
                is_pid: false,
                is_dedekind: false,
            },
            RingKind::Localized { base, .. } => {
                let b = base.capabilities();
                Capabilities {
                    has_gcd: true,
                    has_ext_gcd: b.has_ext_gcd,
                    principality_complete: true,
                    is_field: false,
                    is_pid: b.is_pid,
                    is_dedekind: b.is_dedekind,
                }
            }
            RingKind::QuadImag5 => Capabilities {
                has_gcd: false,
                has_ext_gcd: false,
                principality_complete: true,
                is_field: false,
                is_pid: false,
                is_dedekind: true,
            },
            // the cofactor construction in `cusp.rs` decides every pair
            RingKind::CuspidalCubic => Capabilities {
                has_gcd: false,
                has_ext_gcd: false,
                principality_complete: true,
                is_field: false,
                is_pid: false,
                is_dedekind: false,
            },
        }
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::RationalField => write!(f, "Q"),
            RingKind::PrimeField { p } => write!(f, "F_{p}"),
            RingKind::Integers => write!(f, "Z"),
            RingKind::UnivarPoly { var } => write!(f, "Q[{var}]"),
            RingKind::BivarPolyRing { vars } => write!(f, "Q[{},{}]", vars[0], vars[1]),
            RingKind::Localized { base, multiplier } => write!(f, "{base}[1/({multiplier})]"),
            RingKind::QuadImag5 => write!(f, "Z[r5]"),
            RingKind::CuspidalCubic => write!(f, "Q[t^2,t^3]"),
            RingKind::FractionField { base } => write!(f, "Frac({base})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDescriptor {
    pub kind: RingKind,
    pub caps: Capabilities,
}

impl RingDescriptor {
    pub fn new(kind: RingKind) -> Self {
        let caps = kind.capabilities();
        RingDescriptor { kind, caps }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// A commutative ring with identity whose elements are canonical values.
pub trait Ring: Clone + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn descriptor(&self) -> RingDescriptor;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `Ok(Some(q))` with `q * b == a`, `Ok(None)` if `b` does not divide `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> RingResult<Option<Self::Elem>>;

    /// Canonical text (decimal numbers, generators by name, `r5` for
    /// `sqrt(-5)`).
    fn render(&self, a: &Self::Elem) -> String;

    /// Validate that a value is a canonical element of this ring.
    fn check(&self, _a: &Self::Elem) -> RingResult<()> {
        Ok(())
    }

    fn generator_names(&self) -> Vec<String> {
        Vec::new()
    }

    fn generator(&self, _name: &str) -> Option<Self::Elem> {
        None
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn arith(&self, op: ArithOp, a: &Self::Elem, b: &Self::Elem) -> RingResult<Self::Elem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
        })
    }
}

pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

pub type FracElem<D> = <<D as Domain>::Frac as Ring>::Elem;

/// Prime ideal of a domain. Primality is trusted, not verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSpec<E> {
    Element(E),
    Generators(Vec<E>),
    Zero,
}

/// Numerator and denominator in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracCoeff<E> {
    pub num: E,
    pub den: E,
}

impl<E: Clone + PartialEq + fmt::Debug> FracCoeff<E> {
    pub fn render<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        render_fraction(&ring.render(&self.num), &ring.render(&self.den))
    }
}

/// `num/den` in the CLI grammar, bracketing where precedence needs it.
pub fn render_fraction(num: &str, den: &str) -> String {
    if den == "1" {
        return num.to_string();
    }
    let num = if num.contains(' ') {
        format!("({num})")
    } else {
        num.to_string()
    };
    let den = if is_single_factor(den) {
        den.to_string()
    } else {
        format!("({den})")
    };
    format!("{num}/{den}")
}

fn is_single_factor(s: &str) -> bool {
    !s.is_empty() && !s.contains([' ', '*', '/', '-', '+'])
}

pub(crate) fn bracket(s: &str) -> String {
    if is_single_factor(s) {
        s.to_string()
    } else {
        format!("({s})")
    }
}

/// Principality certificate: `a = g*a0`, `b = g*b0`, `s*a0 + t*b0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalCert<E> {
    pub g: E,
    pub a0: E,
    pub b0: E,
    pub s: E,
    pub t: E,
}

impl<E: Clone + PartialEq + fmt::Debug> PrincipalCert<E> {
    pub fn verify<R: Ring<Elem = E>>(&self, ring: &R, a: &E, b: &E) -> bool {
        ring.mul(&self.g, &self.a0) == *a
            && ring.mul(&self.g, &self.b0) == *b
            && ring.is_one(&ring.add(&ring.mul(&self.s, &self.a0), &ring.mul(&self.t, &self.b0)))
    }
}

/// Why a two-generated ideal is not principal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonPrincipalWitness {
    /// No element of the ideal has norm equal to the ideal norm.
    NoElementOfNorm { ideal_norm: BigInt },
    /// After removing the gcd the pair generates a proper ideal.
    ProperReducedPair { gcd: String, basis: Vec<String> },
    /// No power of the inverted element lies in the reduced pair's ideal.
    NotSaturated {
        gcd: String,
        basis: Vec<String>,
        dimension: u64,
    },
    /// The gcd over the normalization is not in the subring.
    GcdNotInSubring { gcd: String },
    /// A generator divided by the gcd leaves the subring.
    QuotientNotInSubring { gcd: String, quotient: String },
    /// In the local ring neither generator divides the other.
    NeitherDivides { a: String, b: String },
}

impl NonPrincipalWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            NonPrincipalWitness::NoElementOfNorm { .. } => "NoElementOfNorm",
            NonPrincipalWitness::ProperReducedPair { .. } => "ProperReducedPair",
            NonPrincipalWitness::NotSaturated { .. } => "NotSaturated",
            NonPrincipalWitness::GcdNotInSubring { .. } => "GcdNotInSubring",
            NonPrincipalWitness::QuotientNotInSubring { .. } => "QuotientNotInSubring",
            NonPrincipalWitness::NeitherDivides { .. } => "NeitherDivides",
        }
    }
}

impl fmt::Display for NonPrincipalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonPrincipalWitness::NoElementOfNorm { ideal_norm } => {
                write!(f, "no x, y with x^2 + 5y^2 = {ideal_norm} in the ideal")
            }
            NonPrincipalWitness::ProperReducedPair { gcd, basis } => write!(
                f,
                "gcd {gcd}; reduced pair has Groebner basis {{{}}} != {{1}}",
                basis.join(", ")
            ),
            NonPrincipalWitness::NotSaturated {
                gcd,
                basis,
                dimension,
            } => write!(
                f,
                "gcd {gcd}; no power of the inverted element lies in ({}) (quotient dimension {dimension})",
                basis.join(", ")
            ),
            NonPrincipalWitness::GcdNotInSubring { gcd } => {
                write!(f, "gcd {gcd} over Q[t] is not in Q[t^2,t^3]")
            }
            NonPrincipalWitness::QuotientNotInSubring { gcd, quotient } => {
                write!(f, "generator / {gcd} = {quotient} is not in Q[t^2,t^3]")
            }
            NonPrincipalWitness::NeitherDivides { a, b } => {
                write!(f, "neither {a} nor {b} divides the other locally")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleVerdict<E> {
    Principal(PrincipalCert<E>),
    NotPrincipal(NonPrincipalWitness),
    Unknown { reason: String },
}

impl<E> ModuleVerdict<E> {
    pub fn is_principal(&self) -> bool {
        matches!(self, ModuleVerdict::Principal(_))
    }

    pub fn is_not_principal(&self) -> bool {
        matches!(self, ModuleVerdict::NotPrincipal(_))
    }

    pub fn map<F, G: FnMut(E) -> F>(self, mut g: G) -> ModuleVerdict<F> {
        match self {
            ModuleVerdict::Principal(c) => ModuleVerdict::Principal(PrincipalCert {
                g: g(c.g),
                a0: g(c.a0),
                b0: g(c.b0),
                s: g(c.s),
                t: g(c.t),
            }),
            ModuleVerdict::NotPrincipal(w) => ModuleVerdict::NotPrincipal(w),
            ModuleVerdict::Unknown { reason } => ModuleVerdict::Unknown { reason },
        }
    }
}

/// An integral domain together with its fraction field.
pub trait Domain: Ring {
    type Frac: Field;

    fn fraction_field(&self) -> Self::Frac;

    fn embed(&self, a: &Self::Elem) -> FracElem<Self>;

    /// The element of the ring equal to `x`, if there is one.
    fn pull_back(&self, x: &FracElem<Self>) -> Option<Self::Elem>;

    /// A fixed numerator/denominator representative of `x`, reduced and
    /// unit-normalized where the ring has gcds.
    fn split(&self, x: &FracElem<Self>) -> (Self::Elem, Self::Elem);

    /// Decide whether `(a, b)` is principal.
    fn two_gen_reduce(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> RingResult<ModuleVerdict<Self::Elem>>;

    /// Validate a prime for this ring.
    fn check_prime(&self, p: &PrimeSpec<Self::Elem>) -> RingResult<()> {
        match p {
            PrimeSpec::Zero => Ok(()),
            _ => Err(self.unsupported_prime("only the zero ideal is supported")),
        }
    }

    fn in_prime(&self, a: &Self::Elem, p: &PrimeSpec<Self::Elem>) -> RingResult<bool> {
        self.check_prime(p)?;
        match p {
            PrimeSpec::Zero => Ok(self.is_zero(a)),
            _ => Err(self.unsupported_prime("only the zero ideal is supported")),
        }
    }

    /// Whether `x` lies in the localization at `p`.
    fn local_contains(&self, _x: &FracElem<Self>, p: &PrimeSpec<Self::Elem>) -> RingResult<bool> {
        self.check_prime(p)?;
        match p {
            PrimeSpec::Zero => Ok(true),
            _ => Err(self.unsupported_prime("only the zero ideal is supported")),
        }
    }

    /// Generator as an element of the fraction field. Differs from
    /// `generator` only when the name denotes something outside the ring.
    fn fraction_generator(&self, name: &str) -> Option<FracElem<Self>> {
        self.generator(name).map(|g| self.embed(&g))
    }

    /// Smallest power of the named generator that lies in the ring.
    fn generator_min_power(&self, _name: &str) -> u32 {
        1
    }

    fn unsupported_prime(&self, reason: &str) -> RingError {
        RingError::UnsupportedPrime {
            ring: self.descriptor().kind.to_string(),
            reason: reason.to_string(),
        }
    }

    fn frac_normalize(
        &self,
        num: &Self::Elem,
        den: &Self::Elem,
    ) -> RingResult<FracCoeff<Self::Elem>> {
        if self.is_zero(den) {
            return Err(RingError::DivisionByZero);
        }
        let k = self.fraction_field();
        let x = k
            .div(&self.embed(num), &self.embed(den))
            .ok_or(RingError::DivisionByZero)?;
        let (num, den) = self.split(&x);
        Ok(FracCoeff { num, den })
    }

    /// Local rule: in a local ring a two-generated ideal is principal iff one
    /// generator divides the other (Nakayama).
    fn local_principal_pair(
        &self,
        a: &FracElem<Self>,
        b: &FracElem<Self>,
        p: &PrimeSpec<Self::Elem>,
    ) -> RingResult<ModuleVerdict<FracElem<Self>>> {
        let k = self.fraction_field();
        let (zero, one) = (k.zero(), k.one());
        if k.is_zero(a) && k.is_zero(b) {
            return Err(RingError::BothZero);
        }
        if k.is_zero(a) {
            return Ok(ModuleVerdict::Principal(PrincipalCert {
                g: b.clone(),
                a0: zero.clone(),
                b0: one.clone(),
                s: zero,
                t: one,
            }));
        }
        let ratio = k.div(b, a).expect("a is nonzero");
        if self.local_contains(&ratio, p)? {
            return Ok(ModuleVerdict::Principal(PrincipalCert {
                g: a.clone(),
                a0: one.clone(),
                b0: ratio,
                s: one,
                t: zero,
            }));
        }
        let inv = k.div(a, b).expect("ratio not local, so b is nonzero");
        if self.local_contains(&inv, p)? {
            return Ok(ModuleVerdict::Principal(PrincipalCert {
                g: b.clone(),
                a0: inv,
                b0: one.clone(),
                s: zero,
                t: one,
            }));
        }
        Ok(ModuleVerdict::NotPrincipal(
            NonPrincipalWitness::NeitherDivides {
                a: k.render(a),
                b: k.render(b),
            },
        ))
    }

    /// Principality of `(a, b)` in the localization at `p`; the certificate
    /// lives in the fraction field with every entry in the local ring.
    fn two_gen_reduce_at(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        p: &PrimeSpec<Self::Elem>,
    ) -> RingResult<ModuleVerdict<FracElem<Self>>> {
        self.check_prime(p)?;
        self.local_principal_pair(&self.embed(a), &self.embed(b), p)
    }
}

/// Domains with gcds (the bases allowed under localization).
pub trait GcdDomain: Domain {
    /// Greatest common divisor, unit-normalized.
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Canonical associate.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;

    /// For coprime `a, b`: `Ok((u, v, k))` with `u*a + v*b = f^k`, or the
    /// witness that no power of `f` lies in `(a, b)`.
    fn unit_ideal_after_inverting(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        f: &Self::Elem,
    ) -> RingResult<Result<(Self::Elem, Self::Elem, u32), NonPrincipalWitness>>;
}

/// Principal ideal domains with computable prime factors.
pub trait Pid: GcdDomain {
    /// `(g, s, t)` with `s*a + t*b = g`, `g` normalized.
    fn ext_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);

    /// Distinct normalized factors of `a`, pairwise coprime, whose product is
    /// the radical of `a`. Irreducible whenever the ring can certify it.
    fn prime_factors(&self, a: &Self::Elem) -> Vec<Self::Elem>;
}

/// Field rule for `(a, b)`: `g = a` (or `b` when `a = 0`).
pub(crate) fn field_two_gen<F: Field>(
    k: &F,
    a: &F::Elem,
    b: &F::Elem,
) -> RingResult<ModuleVerdict<F::Elem>> {
    let (zero, one) = (k.zero(), k.one());
    if k.is_zero(a) && k.is_zero(b) {
        return Err(RingError::BothZero);
    }
    if k.is_zero(a) {
        return Ok(ModuleVerdict::Principal(PrincipalCert {
            g: b.clone(),
            a0: zero.clone(),
            b0: one.clone(),
            s: zero,
            t: one,
        }));
    }
    Ok(ModuleVerdict::Principal(PrincipalCert {
        g: a.clone(),
        a0: one.clone(),
        b0: k.div(b, a).expect("nonzero"),
        s: one,
        t: zero,
    }))
}

macro_rules! field_domain {
    ($t:ty) => {
        impl $crate::coeffring::Domain for $t {
            type Frac = $t;

            fn fraction_field(&self) -> $t {
                self.clone()
            }

            fn embed(&self, a: &Self::Elem) -> Self::Elem {
                a.clone()
            }

            fn pull_back(&self, x: &Self::Elem) -> Option<Self::Elem> {
                Some(x.clone())
            }

            fn split(&self, x: &Self::Elem) -> (Self::Elem, Self::Elem) {
                (x.clone(), $crate::coeffring::Ring::one(self))
            }

            fn two_gen_reduce(
                &self,
                a: &Self::Elem,
                b: &Self::Elem,
            ) -> $crate::coeffring::RingResult<$crate::coeffring::ModuleVerdict<Self::Elem>> {
                $crate::coeffring::field_two_gen(self, a, b)
            }
        }
    };
}
pub(crate) use field_domain;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_rendering() {
        assert_eq!(render_fraction("-1", "z"), "-1/z");
        assert_eq!(render_fraction("z + 1", "z"), "(z + 1)/z");
        assert_eq!(render_fraction("1", "z*w"), "1/(z*w)");
        assert_eq!(render_fraction("3", "1"), "3");
        assert_eq!(render_fraction("1", "z^2"), "1/z^2");
    }

    #[test]
    fn capability_table() {
        let c = RingKind::QuadImag5.capabilities();
        assert!(!c.has_gcd && c.principality_complete && c.is_dedekind);
        let c = RingKind::BivarPolyRing {
            vars: ["z".into(), "w".into()],
        }
        .capabilities();
        assert!(c.has_gcd && !c.has_ext_gcd && c.principality_complete && !c.is_pid);
        assert!(RingKind::Integers.capabilities().is_pid);
        assert!(RingKind::RationalField.capabilities().is_field);
        let loc = RingKind::Localized {
            base: Box::new(RingKind::Integers),
            multiplier: "2".into(),
        };
        assert!(loc.capabilities().is_pid && !loc.capabilities().is_field);
    }
}
