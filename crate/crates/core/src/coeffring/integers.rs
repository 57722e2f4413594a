use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    Domain, GcdDomain, ModuleVerdict, NonPrincipalWitness, Pid, PrimeSpec, PrincipalCert,
    Rationals, Ring, RingDescriptor, RingError, RingKind, RingResult,
};

/// The rational integers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

/// `(g, s, t)` with `s*a + t*b = g >= 0`, from the Euclidean remainder
/// sequence with truncating division.
pub(crate) fn int_ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (BigInt::one(), BigInt::zero());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if r0.is_negative() {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

impl Integers {
    /// Generator of a prime ideal, `None` for the zero ideal.
    fn prime_generator(&self, p: &PrimeSpec<BigInt>) -> RingResult<Option<BigInt>> {
        let g = match p {
            PrimeSpec::Zero => return Ok(None),
            PrimeSpec::Element(e) => e.abs(),
            PrimeSpec::Generators(gs) => gs.iter().fold(BigInt::zero(), |g, x| g.gcd(x)),
        };
        if g.is_zero() {
            return Ok(None);
        }
        if g.is_one() {
            return Err(self.unsupported_prime("the unit ideal is not prime"));
        }
        Ok(Some(g))
    }
}

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::Integers)
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }

    fn exact_div(&self, a: &BigInt, b: &BigInt) -> RingResult<Option<BigInt>> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let (q, r) = a.div_rem(b);
        Ok(r.is_zero().then_some(q))
    }

    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl Domain for Integers {
    type Frac = Rationals;

    fn fraction_field(&self) -> Rationals {
        Rationals
    }

    fn embed(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }

    fn pull_back(&self, x: &BigRational) -> Option<BigInt> {
        x.is_integer().then(|| x.numer().clone())
    }

    fn split(&self, x: &BigRational) -> (BigInt, BigInt) {
        (x.numer().clone(), x.denom().clone())
    }

    fn two_gen_reduce(&self, a: &BigInt, b: &BigInt) -> RingResult<ModuleVerdict<BigInt>> {
        if a.is_zero() && b.is_zero() {
            return Err(RingError::BothZero);
        }
        let (g, s, t) = int_ext_gcd(a, b);
        Ok(ModuleVerdict::Principal(PrincipalCert {
            a0: a / &g,
            b0: b / &g,
            g,
            s,
            t,
        }))
    }

    fn check_prime(&self, p: &PrimeSpec<BigInt>) -> RingResult<()> {
        self.prime_generator(p).map(|_| ())
    }

    fn in_prime(&self, a: &BigInt, p: &PrimeSpec<BigInt>) -> RingResult<bool> {
        Ok(match self.prime_generator(p)? {
            None => a.is_zero(),
            Some(q) => (a % q).is_zero(),
        })
    }

    fn local_contains(&self, x: &BigRational, p: &PrimeSpec<BigInt>) -> RingResult<bool> {
        Ok(match self.prime_generator(p)? {
            None => true,
            Some(q) => !(x.denom() % q).is_zero(),
        })
    }
}

impl GcdDomain for Integers {
    fn gcd(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a.gcd(b)
    }

    fn normalize(&self, a: &BigInt) -> BigInt {
        a.abs()
    }

    fn unit_ideal_after_inverting(
        &self,
        a: &BigInt,
        b: &BigInt,
        f: &BigInt,
    ) -> RingResult<Result<(BigInt, BigInt, u32), NonPrincipalWitness>> {
        let (g, s, t) = int_ext_gcd(a, b);
        // (a, b) = (g), which becomes the unit ideal iff g divides a power of f
        let mut rest = g.clone();
        let mut k = 0u32;
        loop {
            let c = rest.gcd(f);
            if c.is_one() {
                break;
            }
            rest /= &c;
            k += 1;
        }
        if !rest.is_one() {
            return Ok(Err(NonPrincipalWitness::ProperReducedPair {
                gcd: "1".to_string(),
                basis: vec![g.to_string()],
            }));
        }
        let cof = f.pow(k) / &g;
        Ok(Ok((s * &cof, t * &cof, k)))
    }
}

impl Pid for Integers {
    fn ext_gcd(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
        int_ext_gcd(a, b)
    }

    fn prime_factors(&self, a: &BigInt) -> Vec<BigInt> {
        let mut n = a.abs();
        let mut out = Vec::new();
        if n.is_zero() {
            return out;
        }
        let mut q = BigInt::from(2);
        let limit = BigInt::from(1_000_000u32);
        while &q * &q <= n && q <= limit {
            if (&n % &q).is_zero() {
                out.push(q.clone());
                while (&n % &q).is_zero() {
                    n /= &q;
                }
            }
            q += 1;
        }
        if !n.is_one() {
            out.push(n);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn ext_gcd_examples() {
        assert_eq!(int_ext_gcd(&z(4), &z(6)), (z(2), z(-1), z(1)));
        assert_eq!(int_ext_gcd(&z(3), &z(-2)), (z(1), z(1), z(1)));
        assert_eq!(int_ext_gcd(&z(0), &z(-5)), (z(5), z(0), z(-1)));
    }

    #[test]
    fn reduce_pair() {
        let ModuleVerdict::Principal(c) = Integers.two_gen_reduce(&z(4), &z(6)).unwrap() else {
            panic!()
        };
        assert_eq!((c.g, c.a0, c.b0), (z(2), z(2), z(3)));
        assert!(Integers.two_gen_reduce(&z(0), &z(0)).is_err());
    }

    #[test]
    fn localization_at_primes() {
        let p = PrimeSpec::Element(z(2));
        let half = BigRational::new(z(1), z(2));
        let third = BigRational::new(z(1), z(3));
        assert!(!Integers.local_contains(&half, &p).unwrap());
        assert!(Integers.local_contains(&third, &p).unwrap());
        assert!(Integers.check_prime(&PrimeSpec::Element(z(1))).is_err());
        assert_eq!(Integers.prime_factors(&z(-360)), vec![z(2), z(3), z(5)]);
    }
}
