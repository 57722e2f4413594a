//! The tameness decision.
//!
//! One reduction step looks at the degrees `(d1, d2)` of a map `F`:
//!
//! - `(1, 1)`: `F` is affine and the loop stops.
//! - `d1 ≠ d2`: the smaller degree must divide the larger, say `d2 = e*d1`,
//!   and the top component of `F2` must equal `c * top(F1)^e`. Then
//!   `(F1, F2 - c F1^e)` has smaller degree, provided `c` is a coefficient.
//! - `d1 = d2`: the tops are proportional, `top(F2) = λ top(F1)`, and the
//!   module spanned by the two tops is isomorphic to an ideal `(a, b)` with
//!   `b/a = λ`. If `(a, b) = (g)` with `a = g a0`, `b = g b0`,
//!   `s a0 + t b0 = 1`, the determinant-one matrix `[[b0, -a0], [s, t]]`
//!   cancels the top of the first component.
//!
//! Over a field every automorphism reduces to an affine map this way. Over a
//! ring the same loop can be blocked by a constant `c` outside the ring or by
//! a non-principal pair, and since `c` and `λ` are determined by `F` alone the
//! block is an obstruction to tameness. What counts as "in the ring" and
//! "principal" is abstracted by a [`View`]: the ring itself, its localization
//! at a prime, or (in [`overring`]) a localization `R[1/r]` of a PID.

pub mod overring;

use std::fmt;

use crate::autmap::{Axis, Decomposition, DegVec, Factor, PolyMap};
use crate::bivariate::{power_proportionality_in, BiPoly};
use crate::coeffring::{
    Domain, Field, FracCoeff, FracElem, ModuleVerdict, NonPrincipalWitness, PrimeSpec, Ring,
    RingError, RingResult,
};

pub use overring::{minimal_overring, OverringError, OverringResult};

/// Why the reduction loop stopped short of an affine map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction<E> {
    /// Neither degree divides the other.
    DegreeDivisibility {
        d1: u32,
        d2: u32,
        step: usize,
    },
    /// The top components are not proportional in the required way.
    TopsNotProportional {
        degrees: DegVec,
        step: usize,
    },
    /// The forced constant `c` is not a coefficient of the ring.
    CoefficientNotInRing {
        c: FracCoeff<E>,
        step: usize,
    },
    /// The module spanned by the two tops is not free.
    NonPrincipalPair {
        a: FracCoeff<E>,
        b: FracCoeff<E>,
        witness: NonPrincipalWitness,
        step: usize,
    },
    /// The final affine map has a non-unit determinant.
    FinalAffineNotInvertible {
        det: FracCoeff<E>,
    },
    PrincipalityUnknown {
        reason: String,
        step: usize,
    },
}

impl<E> Obstruction<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Obstruction::DegreeDivisibility { .. } => "DegreeDivisibility",
            Obstruction::TopsNotProportional { .. } => "TopsNotProportional",
            Obstruction::CoefficientNotInRing { .. } => "CoefficientNotInRing",
            Obstruction::NonPrincipalPair { .. } => "NonPrincipalPair",
            Obstruction::FinalAffineNotInvertible { .. } => "FinalAffineNotInvertible",
            Obstruction::PrincipalityUnknown { .. } => "PrincipalityUnknown",
        }
    }

    /// Blocks that already rule out invertibility over the fraction field.
    fn is_field_level(&self) -> bool {
        matches!(
            self,
            Obstruction::DegreeDivisibility { .. } | Obstruction::TopsNotProportional { .. }
        )
    }
}

impl<E: Clone + PartialEq + fmt::Debug> Obstruction<E> {
    pub fn describe<D: Domain<Elem = E>>(&self, dom: &D) -> String {
        match self {
            Obstruction::DegreeDivisibility { d1, d2, step } => {
                format!("step {step}: degrees {d1} and {d2}, neither divides the other")
            }
            Obstruction::TopsNotProportional { degrees, step } => {
                format!("step {step}: top components at degree {degrees} are not proportional")
            }
            Obstruction::CoefficientNotInRing { c, step } => {
                format!(
                    "step {step}: forced coefficient c = {} is not in the ring",
                    c.render(dom)
                )
            }
            Obstruction::NonPrincipalPair {
                a,
                b,
                witness,
                step,
            } => format!(
                "step {step}: ideal ({}, {}) is not principal: {witness}",
                a.render(dom),
                b.render(dom)
            ),
            Obstruction::FinalAffineNotInvertible { det } => {
                format!(
                    "final affine map has determinant {}, not a unit",
                    det.render(dom)
                )
            }
            Obstruction::PrincipalityUnknown { reason, step } => {
                format!("step {step}: principality undecided: {reason}")
            }
        }
    }
}

/// Outcome of a tameness decision. `E` is the coefficient type of the
/// factors, `B` the base ring's element type used in obstructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TameVerdict<E, B = E> {
    Tame(Decomposition<E>),
    NotTame(Obstruction<B>),
    NotAutomorphismOverK(String),
    Unknown(String),
}

impl<E, B> TameVerdict<E, B> {
    pub fn is_tame(&self) -> bool {
        matches!(self, TameVerdict::Tame(_))
    }

    pub fn is_not_tame(&self) -> bool {
        matches!(self, TameVerdict::NotTame(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            TameVerdict::Tame(_) => "tame",
            TameVerdict::NotTame(_) => "not_tame",
            TameVerdict::NotAutomorphismOverK(_) => "not_automorphism",
            TameVerdict::Unknown(_) => "unknown",
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction<B>> {
        match self {
            TameVerdict::NotTame(o) => Some(o),
            _ => None,
        }
    }

    pub fn decomposition(&self) -> Option<&Decomposition<E>> {
        match self {
            TameVerdict::Tame(d) => Some(d),
            _ => None,
        }
    }
}

/// The coefficient ring seen by the reduction loop.
pub trait View {
    type D: Domain;
    type W: Ring;

    fn domain(&self) -> &Self::D;
    fn ring(&self) -> &Self::W;
    fn to_frac(&self, x: &<Self::W as Ring>::Elem) -> FracElem<Self::D>;
    /// `c` as a coefficient, if it is one.
    fn from_frac(&self, c: &FracElem<Self::D>) -> RingResult<Option<<Self::W as Ring>::Elem>>;
    /// Generators `(a, b)` of an ideal isomorphic to `R*h + R*(λ h)`.
    fn pair(
        &self,
        lambda: &FracElem<Self::D>,
    ) -> (<Self::W as Ring>::Elem, <Self::W as Ring>::Elem);
    fn principal(
        &self,
        a: &<Self::W as Ring>::Elem,
        b: &<Self::W as Ring>::Elem,
    ) -> RingResult<ModuleVerdict<<Self::W as Ring>::Elem>>;

    fn is_unit(&self, x: &<Self::W as Ring>::Elem) -> RingResult<bool> {
        let k = self.domain().fraction_field();
        let xf = self.to_frac(x);
        match k.inv(&xf) {
            None => Ok(false),
            Some(inv) => Ok(self.from_frac(&inv)?.is_some()),
        }
    }

    fn frac_coeff(&self, x: &<Self::W as Ring>::Elem) -> FracCoeff<<Self::D as Ring>::Elem> {
        let (num, den) = self.domain().split(&self.to_frac(x));
        FracCoeff { num, den }
    }
}

/// Coefficients in `R` itself.
pub struct GlobalView<'a, D: Domain> {
    pub dom: &'a D,
}

impl<D: Domain> View for GlobalView<'_, D> {
    type D = D;
    type W = D;

    fn domain(&self) -> &D {
        self.dom
    }

    fn ring(&self) -> &D {
        self.dom
    }

    fn to_frac(&self, x: &D::Elem) -> FracElem<D> {
        self.dom.embed(x)
    }

    fn from_frac(&self, c: &FracElem<D>) -> RingResult<Option<D::Elem>> {
        Ok(self.dom.pull_back(c))
    }

    fn pair(&self, lambda: &FracElem<D>) -> (D::Elem, D::Elem) {
        let (num, den) = self.dom.split(lambda);
        (den, num)
    }

    fn principal(&self, a: &D::Elem, b: &D::Elem) -> RingResult<ModuleVerdict<D::Elem>> {
        self.dom.two_gen_reduce(a, b)
    }

    fn is_unit(&self, x: &D::Elem) -> RingResult<bool> {
        Ok(self.dom.is_unit(x))
    }
}

/// Coefficients in the localization `R_P`, carried as fraction-field
/// elements. The zero prime gives the fraction field itself.
pub struct LocalView<'a, D: Domain> {
    pub dom: &'a D,
    pub prime: PrimeSpec<D::Elem>,
    k: D::Frac,
}

impl<'a, D: Domain> LocalView<'a, D> {
    pub fn new(dom: &'a D, prime: PrimeSpec<D::Elem>) -> RingResult<Self> {
        dom.check_prime(&prime)?;
        Ok(LocalView {
            dom,
            prime,
            k: dom.fraction_field(),
        })
    }

    pub fn field(dom: &'a D) -> Self {
        LocalView {
            dom,
            prime: PrimeSpec::Zero,
            k: dom.fraction_field(),
        }
    }
}

impl<D: Domain> View for LocalView<'_, D> {
    type D = D;
    type W = D::Frac;

    fn domain(&self) -> &D {
        self.dom
    }

    fn ring(&self) -> &D::Frac {
        &self.k
    }

    fn to_frac(&self, x: &FracElem<D>) -> FracElem<D> {
        x.clone()
    }

    fn from_frac(&self, c: &FracElem<D>) -> RingResult<Option<FracElem<D>>> {
        Ok(self.dom.local_contains(c, &self.prime)?.then(|| c.clone()))
    }

    fn pair(&self, lambda: &FracElem<D>) -> (FracElem<D>, FracElem<D>) {
        (self.k.one(), lambda.clone())
    }

    fn principal(
        &self,
        a: &FracElem<D>,
        b: &FracElem<D>,
    ) -> RingResult<ModuleVerdict<FracElem<D>>> {
        self.dom.local_principal_pair(a, b, &self.prime)
    }
}

/// Result of one reduction step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step<E, B> {
    /// `next = factor ∘ F` with strictly smaller degree.
    Reduced {
        factor: Factor<E>,
        next: PolyMap<E>,
    },
    AlreadyAffine,
    Blocked(Obstruction<B>),
}

type ViewElem<V> = <<V as View>::W as Ring>::Elem;
type BaseElem<V> = <<V as View>::D as Ring>::Elem;

fn top_in_k<V: View>(view: &V, p: &BiPoly<ViewElem<V>>) -> BiPoly<FracElem<V::D>> {
    let k = view.domain().fraction_field();
    p.top_component()
        .expect("nonzero component")
        .map_coeffs(&k, |c| view.to_frac(c))
}

/// One reduction step of `f` (components must be nonconstant).
pub fn reduction_step<V: View>(
    view: &V,
    f: &PolyMap<ViewElem<V>>,
    step: usize,
) -> RingResult<Step<ViewElem<V>, BaseElem<V>>> {
    let w = view.ring();
    let k = view.domain().fraction_field();
    let dv = f
        .deg_vec()
        .ok_or_else(|| RingError::InvalidElement("map has a constant component".to_string()))?;
    let (d1, d2) = (dv.d1, dv.d2);
    if d1 == 1 && d2 == 1 {
        return Ok(Step::AlreadyAffine);
    }
    let (lo, hi) = (d1.min(d2), d1.max(d2));
    if hi % lo != 0 {
        return Ok(Step::Blocked(Obstruction::DegreeDivisibility {
            d1,
            d2,
            step,
        }));
    }
    if d1 != d2 {
        let e = hi / lo;
        let first_is_big = d1 > d2;
        let (big, small) = if first_is_big {
            (&f.f1, &f.f2)
        } else {
            (&f.f2, &f.f1)
        };
        let Some(c) = power_proportionality_in(&k, &top_in_k(view, big), &top_in_k(view, small), e)
        else {
            return Ok(Step::Blocked(Obstruction::TopsNotProportional {
                degrees: dv,
                step,
            }));
        };
        let Some(cw) = view.from_frac(&c)? else {
            let (num, den) = view.domain().split(&c);
            return Ok(Step::Blocked(Obstruction::CoefficientNotInRing {
                c: FracCoeff { num, den },
                step,
            }));
        };
        let mut p = vec![w.zero(); e as usize + 1];
        p[e as usize] = w.neg(&cw);
        let reduced = big.sub(w, &small.pow(w, e).scale(w, &cw));
        let (axis, next) = if first_is_big {
            (Axis::First, PolyMap::new(reduced, f.f2.clone()))
        } else {
            (Axis::Second, PolyMap::new(f.f1.clone(), reduced))
        };
        return Ok(Step::Reduced {
            factor: Factor::Elementary { axis, p },
            next,
        });
    }
    let Some(lambda) =
        power_proportionality_in(&k, &top_in_k(view, &f.f2), &top_in_k(view, &f.f1), 1)
    else {
        return Ok(Step::Blocked(Obstruction::TopsNotProportional {
            degrees: dv,
            step,
        }));
    };
    let (a, b) = view.pair(&lambda);
    match view.principal(&a, &b)? {
        ModuleVerdict::Principal(cert) => {
            let factor = Factor::Affine {
                matrix: [
                    [cert.b0.clone(), w.neg(&cert.a0)],
                    [cert.s.clone(), cert.t.clone()],
                ],
                translation: [w.zero(), w.zero()],
            };
            let next = PolyMap::new(
                f.f1.scale(w, &cert.b0).sub(w, &f.f2.scale(w, &cert.a0)),
                f.f1.scale(w, &cert.s).add(w, &f.f2.scale(w, &cert.t)),
            );
            Ok(Step::Reduced { factor, next })
        }
        ModuleVerdict::NotPrincipal(witness) => Ok(Step::Blocked(Obstruction::NonPrincipalPair {
            a: view.frac_coeff(&a),
            b: view.frac_coeff(&b),
            witness,
            step,
        })),
        ModuleVerdict::Unknown { reason } => Ok(Step::Blocked(Obstruction::PrincipalityUnknown {
            reason,
            step,
        })),
    }
}

/// A full run of the loop, with the degree vector seen at every step.
#[derive(Clone, Debug)]
pub struct Run<E, B> {
    pub verdict: TameVerdict<E, B>,
    pub degrees: Vec<DegVec>,
}

pub fn run<V: View>(
    view: &V,
    f: &PolyMap<ViewElem<V>>,
) -> RingResult<Run<ViewElem<V>, BaseElem<V>>> {
    let w = view.ring();
    let mut cur = f.clone();
    let mut inverses = Vec::new();
    let mut degrees = Vec::new();
    let done = |verdict, degrees| Ok(Run { verdict, degrees });
    for step in 0.. {
        let Some(dv) = cur.deg_vec() else {
            return done(
                TameVerdict::NotAutomorphismOverK(format!("step {step}: a component is constant")),
                degrees,
            );
        };
        degrees.push(dv);
        match reduction_step(view, &cur, step)? {
            Step::Reduced { factor, next } => {
                inverses.push(factor.inverse(w)?);
                cur = next;
            }
            Step::Blocked(o) => return done(TameVerdict::NotTame(o), degrees),
            Step::AlreadyAffine => {
                let row = |p: &BiPoly<ViewElem<V>>| [p.coeff(w, 1, 0), p.coeff(w, 0, 1)];
                let last = Factor::Affine {
                    matrix: [row(&cur.f1), row(&cur.f2)],
                    translation: [cur.f1.coeff(w, 0, 0), cur.f2.coeff(w, 0, 0)],
                };
                let det = last.determinant(w).expect("affine");
                if w.is_zero(&det) {
                    return done(
                        TameVerdict::NotAutomorphismOverK(
                            "final affine map is singular".to_string(),
                        ),
                        degrees,
                    );
                }
                if !view.is_unit(&det)? {
                    return done(
                        TameVerdict::NotTame(Obstruction::FinalAffineNotInvertible {
                            det: view.frac_coeff(&det),
                        }),
                        degrees,
                    );
                }
                inverses.push(last);
                let d = Decomposition {
                    factors: inverses,
                    target: f.clone(),
                };
                if !d.verify(w) {
                    return done(
                        TameVerdict::Unknown(
                            "internal error: decomposition does not recompose".to_string(),
                        ),
                        degrees,
                    );
                }
                return done(TameVerdict::Tame(d), degrees);
            }
        }
    }
    unreachable!()
}

/// Re-examine a ring-level block over the fraction field: a map that does not
/// reduce there is not an automorphism at all.
fn settle<E, B, D: Domain<Elem = B>>(
    dom: &D,
    f_k: &PolyMap<FracElem<D>>,
    verdict: TameVerdict<E, B>,
) -> TameVerdict<E, B>
where
    B: Clone + PartialEq + fmt::Debug,
{
    match verdict {
        TameVerdict::NotTame(o) => {
            if o.is_field_level() {
                return TameVerdict::NotAutomorphismOverK(o.describe(dom));
            }
            if let Obstruction::PrincipalityUnknown { reason, .. } = &o {
                return TameVerdict::Unknown(reason.clone());
            }
            match run(&LocalView::field(dom), f_k) {
                Ok(Run {
                    verdict: TameVerdict::Tame(_),
                    ..
                }) => TameVerdict::NotTame(o),
                Ok(Run {
                    verdict: TameVerdict::NotTame(ko),
                    ..
                }) => TameVerdict::NotAutomorphismOverK(ko.describe(dom)),
                Ok(Run { verdict, .. }) => match verdict {
                    TameVerdict::NotAutomorphismOverK(s) => TameVerdict::NotAutomorphismOverK(s),
                    TameVerdict::Unknown(s) => TameVerdict::Unknown(s),
                    _ => unreachable!(),
                },
                Err(e) => TameVerdict::Unknown(e.to_string()),
            }
        }
        other => other,
    }
}

fn embed_map<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> PolyMap<FracElem<D>> {
    f.map_coeffs(&dom.fraction_field(), |c| dom.embed(c))
}

/// Decide membership of `f` in the tame subgroup over `dom`, with the degree
/// trace of the reduction.
pub fn decide_tame_traced<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> Run<D::Elem, D::Elem> {
    match run(&GlobalView { dom }, f) {
        Ok(r) => Run {
            verdict: settle(dom, &embed_map(dom, f), r.verdict),
            degrees: r.degrees,
        },
        Err(e) => Run {
            verdict: TameVerdict::Unknown(e.to_string()),
            degrees: Vec::new(),
        },
    }
}

pub fn decide_tame<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> TameVerdict<D::Elem> {
    decide_tame_traced(dom, f).verdict
}

/// Tameness over the localization at `prime`; factors have fraction-field
/// coefficients lying in the local ring.
pub fn decide_locally_tame<D: Domain>(
    dom: &D,
    f: &PolyMap<D::Elem>,
    prime: &PrimeSpec<D::Elem>,
) -> RingResult<TameVerdict<FracElem<D>, D::Elem>> {
    decide_locally_tame_k(dom, &embed_map(dom, f), prime)
}

/// As [`decide_locally_tame`] for a map given over the fraction field; its
/// coefficients must lie in the local ring.
pub fn decide_locally_tame_k<D: Domain>(
    dom: &D,
    f: &PolyMap<FracElem<D>>,
    prime: &PrimeSpec<D::Elem>,
) -> RingResult<TameVerdict<FracElem<D>, D::Elem>> {
    let view = LocalView::new(dom, prime.clone())?;
    for c in f.coefficients() {
        if !dom.local_contains(c, prime)? {
            return Err(RingError::NotInRing(format!(
                "coefficient {} is not in the local ring",
                dom.fraction_field().render(c)
            )));
        }
    }
    let r = run(&view, f)?;
    Ok(settle(dom, f, r.verdict))
}

/// Tameness over the fraction field.
pub fn decide_tame_over_k<D: Domain>(
    dom: &D,
    f: &PolyMap<FracElem<D>>,
) -> TameVerdict<FracElem<D>, D::Elem> {
    match run(&LocalView::field(dom), f) {
        Ok(r) => match r.verdict {
            TameVerdict::NotTame(o) => TameVerdict::NotAutomorphismOverK(o.describe(dom)),
            v => v,
        },
        Err(e) => TameVerdict::Unknown(e.to_string()),
    }
}

/// Decomposition of the inverse of a fraction-field automorphism, whose
/// target is the inverse map.
pub fn inverse_decomposition<D: Domain>(
    dom: &D,
    f: &PolyMap<FracElem<D>>,
) -> Result<Decomposition<FracElem<D>>, String> {
    let k = dom.fraction_field();
    match decide_tame_over_k(dom, f) {
        TameVerdict::Tame(d) => d.inverse(&k).map_err(|e| e.to_string()),
        TameVerdict::NotAutomorphismOverK(s) | TameVerdict::Unknown(s) => Err(s),
        TameVerdict::NotTame(o) => Err(o.describe(dom)),
    }
}

/// Inverse of a fraction-field automorphism, from its decomposition.
pub fn inverse_over_k<D: Domain>(
    dom: &D,
    f: &PolyMap<FracElem<D>>,
) -> Result<PolyMap<FracElem<D>>, String> {
    inverse_decomposition(dom, f).map(|d| d.target)
}

/// Whether a map given over the fraction field is an automorphism of
/// `R[X, Y]`: all coefficients of it and of its inverse lie in `R`.
pub fn is_automorphism<D: Domain>(dom: &D, f: &PolyMap<FracElem<D>>) -> bool {
    let k = dom.fraction_field();
    if f.try_map_coeffs(dom, |c| dom.pull_back(c)).is_none() {
        return false;
    }
    match inverse_decomposition(dom, f) {
        Ok(d) => d.target.try_map_coeffs(dom, |c| dom.pull_back(c)).is_some() && d.inverts(&k, f),
        Err(_) => false,
    }
}

/// [`is_automorphism`] for a map with coefficients in `R`.
pub fn is_automorphism_over<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> bool {
    is_automorphism(dom, &embed_map(dom, f))
}

/// Pull a fraction-field map back to the ring, if all coefficients lie there.
pub fn pull_back_map<D: Domain>(dom: &D, f: &PolyMap<FracElem<D>>) -> Option<PolyMap<D::Elem>> {
    f.try_map_coeffs(dom, |c| dom.pull_back(c))
}

/// Re-verify the data carried by an obstruction, independently of the run
/// that produced it. `prime` selects the local ring the verdict was about.
pub fn recheck_obstruction<D: Domain>(
    dom: &D,
    o: &Obstruction<D::Elem>,
    prime: Option<&PrimeSpec<D::Elem>>,
) -> bool {
    let k = dom.fraction_field();
    let frac = |c: &FracCoeff<D::Elem>| k.div(&dom.embed(&c.num), &dom.embed(&c.den));
    let inside = |x: &FracElem<D>| match prime {
        None => Ok(dom.pull_back(x).is_some()),
        Some(p) => dom.local_contains(x, p),
    };
    match o {
        Obstruction::DegreeDivisibility { d1, d2, .. } => {
            *d1 > 0 && *d2 > 0 && d1 % d2 != 0 && d2 % d1 != 0
        }
        Obstruction::TopsNotProportional { .. } | Obstruction::PrincipalityUnknown { .. } => false,
        Obstruction::CoefficientNotInRing { c, .. } => {
            matches!(frac(c).map(|x| inside(&x)), Some(Ok(false)))
        }
        Obstruction::FinalAffineNotInvertible { det } => match frac(det) {
            Some(d) if !k.is_zero(&d) => {
                matches!(inside(&d), Ok(true))
                    && matches!(inside(&k.inv(&d).expect("nonzero")), Ok(false))
            }
            _ => false,
        },
        Obstruction::NonPrincipalPair { a, b, .. } => {
            let (Some(a), Some(b)) = (frac(a), frac(b)) else {
                return false;
            };
            match prime {
                Some(p) => matches!(
                    dom.local_principal_pair(&a, &b, p),
                    Ok(ModuleVerdict::NotPrincipal(_))
                ),
                None => match (dom.pull_back(&a), dom.pull_back(&b)) {
                    (Some(a), Some(b)) => matches!(
                        dom.two_gen_reduce(&a, &b),
                        Ok(ModuleVerdict::NotPrincipal(_))
                    ),
                    _ => false,
                },
            }
        }
    }
}

#[cfg(test)]
mod tests;
