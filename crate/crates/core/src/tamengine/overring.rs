//! Smallest localization `R[1/r]` of a PID over which a map becomes tame.
//!
//! The search runs the reduction loop over `R`, and each time it is blocked by
//! a forced coefficient `c` outside the current ring it inverts the prime
//! factors of the denominator of `c` and starts again. Over a PID every pair is
//! principal, so the only other blocks are field-level ones, which mean the
//! map is not an automorphism at all.
//!
//! Minimality is certified afterwards: for each inverted prime `p` the map is
//! checked to be not tame over the local ring `R_p`. Any `R[1/s]` over which
//! the map is tame embeds in `R_q` for every prime `q` not dividing `s`, so `s`
//! must be divisible by every certified `p`, i.e. `R[1/s]` contains `R[1/r]`.

use crate::autmap::{Decomposition, PolyMap};
use crate::coeffring::{Domain, FracElem, Localized, Pid, PrimeSpec};

use super::{decide_locally_tame, decide_tame, Obstruction, TameVerdict};

#[derive(Clone, Debug)]
pub struct OverringResult<D: Domain> {
    /// Normalized product of the inverted primes; `1` when `F` is already tame.
    pub r: D::Elem,
    /// Inverted primes, each with the step at which it was forced.
    pub primes: Vec<(D::Elem, usize)>,
    /// Decomposition over `R[1/r]`, with coefficients written in `K`.
    pub decomposition: Decomposition<FracElem<D>>,
    /// For each prime: `Some(true)` if the map was confirmed not tame over
    /// `R_p`, `None` if the local check was not available.
    pub local_checks: Vec<Option<bool>>,
}

impl<D: Domain> OverringResult<D> {
    pub fn is_certified_minimal(&self) -> bool {
        self.local_checks.iter().all(|c| *c == Some(true))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OverringError {
    NotAutomorphism(String),
    Unknown(String),
}

impl std::fmt::Display for OverringError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OverringError::NotAutomorphism(s) => {
                write!(f, "not an automorphism over the fraction field: {s}")
            }
            OverringError::Unknown(s) => write!(f, "undecided: {s}"),
        }
    }
}

enum Attempt<K> {
    Tame(Decomposition<K>),
    Blocked { den: K, step: usize },
}

fn attempt<D: Domain, S: Domain<Frac = D::Frac>>(
    dom: &S,
    f: &PolyMap<S::Elem>,
) -> Result<Attempt<FracElem<D>>, OverringError> {
    let k = dom.fraction_field();
    match decide_tame(dom, f) {
        TameVerdict::Tame(d) => Ok(Attempt::Tame(Decomposition {
            factors: d
                .factors
                .iter()
                .map(|x| x.map_coeffs::<D::Frac>(|c| dom.embed(c)))
                .collect(),
            target: d.target.map_coeffs(&k, |c| dom.embed(c)),
        })),
        TameVerdict::NotTame(Obstruction::CoefficientNotInRing { c, step }) => {
            Ok(Attempt::Blocked {
                den: dom.embed(&c.den),
                step,
            })
        }
        TameVerdict::NotTame(o) => Err(OverringError::Unknown(o.describe(dom))),
        TameVerdict::NotAutomorphismOverK(s) => Err(OverringError::NotAutomorphism(s)),
        TameVerdict::Unknown(s) => Err(OverringError::Unknown(s)),
    }
}

/// Find the smallest `r` with `F` tame over `R[1/r]`.
pub fn minimal_overring<D: Pid>(
    dom: &D,
    f: &PolyMap<D::Elem>,
) -> Result<OverringResult<D>, OverringError> {
    let mut r = dom.one();
    let mut primes: Vec<(D::Elem, usize)> = Vec::new();
    loop {
        let outcome = if dom.is_unit(&r) {
            attempt::<D, D>(dom, f)?
        } else {
            let loc = Localized::new(dom.clone(), &r)
                .map_err(|e| OverringError::Unknown(e.to_string()))?;
            let g = f.map_coeffs(&loc, |c| loc.from_base(c));
            attempt::<D, Localized<D>>(&loc, &g)?
        };
        match outcome {
            Attempt::Tame(decomposition) => {
                let local_checks = primes
                    .iter()
                    .map(|(p, _)| {
                        match decide_locally_tame(dom, f, &PrimeSpec::Element(p.clone())) {
                            Ok(v) => Some(v.is_not_tame()),
                            Err(_) => None,
                        }
                    })
                    .collect();
                return Ok(OverringResult {
                    r: dom.normalize(&r),
                    primes,
                    decomposition,
                    local_checks,
                });
            }
            Attempt::Blocked { den, step } => {
                let den = dom.pull_back(&den).ok_or_else(|| {
                    OverringError::Unknown("denominator outside the ring".to_string())
                })?;
                let mut added = false;
                for p in dom.prime_factors(&den) {
                    if dom.is_unit(&dom.gcd(&p, &r)) {
                        r = dom.mul(&r, &p);
                        primes.push((p, step));
                        added = true;
                    }
                }
                if !added {
                    return Err(OverringError::Unknown(format!(
                        "step {step}: denominator {} already inverted",
                        dom.render(&den)
                    )));
                }
            }
        }
    }
}
