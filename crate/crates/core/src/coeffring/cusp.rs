//! The cuspidal cubic ring `Q[t^2, t^3]`: polynomials in `t` without a
//! linear term. Its normalization is `Q[t]`, and its fraction field is `Q(t)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{
    Domain, ModuleVerdict, NonPrincipalWitness, PrimeSpec, PrincipalCert, RatFunc, RatFuncField,
    Ring, RingDescriptor, RingError, RingKind, RingResult,
};
use crate::QPoly;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CuspidalCubic;

fn in_subring(p: &QPoly) -> bool {
    p.coeff(1).is_zero()
}

impl CuspidalCubic {
    /// Squarefree polynomial whose roots are the points of the prime
    /// (after passing to `Q[t]`); `None` for the zero ideal.
    fn prime_radical(&self, p: &PrimeSpec<QPoly>) -> RingResult<Option<QPoly>> {
        let g = match p {
            PrimeSpec::Zero => return Ok(None),
            PrimeSpec::Element(e) => e.clone(),
            PrimeSpec::Generators(gs) => gs.iter().fold(QPoly::zero(), |g, x| g.gcd(x)),
        };
        if g.is_zero() {
            return Ok(None);
        }
        if g.is_constant() {
            return Err(self.unsupported_prime("the unit ideal is not prime"));
        }
        Ok(Some(g.squarefree_part()))
    }

    /// The cusp ideal `(t^2, t^3)`.
    pub fn cusp_prime() -> PrimeSpec<QPoly> {
        PrimeSpec::Generators(vec![QPoly::x().pow(2), QPoly::x().pow(3)])
    }
}

impl Ring for CuspidalCubic {
    type Elem = QPoly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::CuspidalCubic)
    }

    fn zero(&self) -> QPoly {
        QPoly::zero()
    }

    fn one(&self) -> QPoly {
        QPoly::one()
    }

    fn from_bigint(&self, n: &BigInt) -> QPoly {
        QPoly::constant(BigRational::from_integer(n.clone()))
    }

    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a + b
    }

    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a - b
    }

    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a * b
    }

    fn neg(&self, a: &QPoly) -> QPoly {
        -a
    }

    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &QPoly) -> bool {
        a.degree() == Some(0)
    }

    fn exact_div(&self, a: &QPoly, b: &QPoly) -> RingResult<Option<QPoly>> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(a.exact_div(b).filter(in_subring))
    }

    fn render(&self, a: &QPoly) -> String {
        a.render("t")
    }

    fn check(&self, a: &QPoly) -> RingResult<()> {
        if in_subring(a) {
            Ok(())
        } else {
            Err(RingError::NotInRing(format!(
                "{} has a linear term",
                a.render("t")
            )))
        }
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["t".to_string()]
    }

    /// `t` itself is not in the ring; use `fraction_generator`.
    fn generator(&self, _name: &str) -> Option<QPoly> {
        None
    }
}

impl Domain for CuspidalCubic {
    type Frac = RatFuncField;

    fn fraction_field(&self) -> RatFuncField {
        RatFuncField::new("t")
    }

    fn embed(&self, a: &QPoly) -> RatFunc {
        RatFunc::from_poly(a.clone())
    }

    fn pull_back(&self, x: &RatFunc) -> Option<QPoly> {
        (x.is_polynomial() && in_subring(x.num())).then(|| x.num().clone())
    }

    fn split(&self, x: &RatFunc) -> (QPoly, QPoly) {
        let (p, q) = (x.num().clone(), x.den().clone());
        if in_subring(&p) && in_subring(&q) {
            (p, q)
        } else {
            let t2 = QPoly::x().pow(2);
            (&p * &t2, &q * &t2)
        }
    }

    fn two_gen_reduce(&self, a: &QPoly, b: &QPoly) -> RingResult<ModuleVerdict<QPoly>> {
        if a.is_zero() && b.is_zero() {
            return Err(RingError::BothZero);
        }
        let h = a.gcd(b);
        if !in_subring(&h) {
            return Ok(ModuleVerdict::NotPrincipal(
                NonPrincipalWitness::GcdNotInSubring { gcd: h.render("t") },
            ));
        }
        let a0 = a.exact_div(&h).expect("gcd divides");
        let b0 = b.exact_div(&h).expect("gcd divides");
        for q in [&a0, &b0] {
            if !in_subring(q) {
                return Ok(ModuleVerdict::NotPrincipal(
                    NonPrincipalWitness::QuotientNotInSubring {
                        gcd: h.render("t"),
                        quotient: q.render("t"),
                    },
                ));
            }
        }
        // u1*a0 + v1*b0 = 1 in Q[t]; shift by k*(b0, -a0) with k = k1*t to
        // kill the linear terms of both cofactors
        let (_, u1, v1) = a0.ext_gcd(&b0);
        let k1 = if !b0.coeff(0).is_zero() {
            -u1.coeff(1) / b0.coeff(0)
        } else {
            v1.coeff(1) / a0.coeff(0)
        };
        let k = QPoly::monomial(k1, 1);
        let s = &u1 + &(&k * &b0);
        let t = &v1 - &(&k * &a0);
        let cert = PrincipalCert { g: h, a0, b0, s, t };
        if in_subring(&cert.s) && in_subring(&cert.t) && cert.verify(self, a, b) {
            Ok(ModuleVerdict::Principal(cert))
        } else {
            Ok(ModuleVerdict::Unknown {
                reason: "cofactor adjustment left a linear term".to_string(),
            })
        }
    }

    fn check_prime(&self, p: &PrimeSpec<QPoly>) -> RingResult<()> {
        self.prime_radical(p).map(|_| ())
    }

    fn in_prime(&self, a: &QPoly, p: &PrimeSpec<QPoly>) -> RingResult<bool> {
        Ok(match self.prime_radical(p)? {
            None => a.is_zero(),
            Some(pi) => pi.divides(a),
        })
    }

    /// `p/q` lies in the local ring when it is regular along the prime and,
    /// at the cusp, its derivative also vanishes at `t = 0`.
    fn local_contains(&self, x: &RatFunc, p: &PrimeSpec<QPoly>) -> RingResult<bool> {
        let Some(pi) = self.prime_radical(p)? else {
            return Ok(true);
        };
        let (num, den) = (x.num(), x.den());
        if !den.gcd(&pi).is_constant() {
            return Ok(false);
        }
        if pi.coeff(0).is_zero() {
            let d = num.coeff(1) * den.coeff(0) - num.coeff(0) * den.coeff(1);
            return Ok(d.is_zero());
        }
        Ok(true)
    }

    fn fraction_generator(&self, name: &str) -> Option<RatFunc> {
        (name == "t").then(|| RatFunc::from_poly(QPoly::x()))
    }

    fn generator_min_power(&self, _name: &str) -> u32 {
        2
    }
}

/// Whether `p` is in `Q[t^2, t^3]`.
pub fn is_cusp_element(p: &QPoly) -> bool {
    in_subring(p)
}
