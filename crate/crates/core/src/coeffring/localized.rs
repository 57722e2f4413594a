use num_bigint::BigInt;

use super::{
    bracket, render_fraction, Domain, FracElem, GcdDomain, ModuleVerdict, NonPrincipalWitness, Pid,
    PrimeSpec, PrincipalCert, Ring, RingDescriptor, RingError, RingKind, RingResult,
};

/// `B[1/f]` for a gcd domain `B` and a non-unit `f`.
#[derive(Clone, Debug)]
pub struct Localized<B: GcdDomain> {
    base: B,
    f: B::Elem,
}

/// `num / f^k` with `k` minimal: `f` does not divide `num` unless `k = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocElem<E> {
    pub num: E,
    pub k: u32,
}

impl<B: GcdDomain> Localized<B> {
    pub fn new(base: B, f: &B::Elem) -> RingResult<Self> {
        if base.is_zero(f) || base.is_unit(f) {
            return Err(RingError::InvalidRing(format!(
                "cannot invert {}: the multiplier must be a nonzero non-unit",
                base.render(f)
            )));
        }
        let f = base.normalize(f);
        Ok(Localized { base, f })
    }

    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn multiplier(&self) -> &B::Elem {
        &self.f
    }

    pub fn make(&self, num: B::Elem, mut k: u32) -> LocElem<B::Elem> {
        let mut num = num;
        if self.base.is_zero(&num) {
            return LocElem { num, k: 0 };
        }
        while k > 0 {
            match self.base.exact_div(&num, &self.f).expect("f is nonzero") {
                Some(q) => {
                    num = q;
                    k -= 1;
                }
                None => break,
            }
        }
        LocElem { num, k }
    }

    pub fn from_base(&self, a: &B::Elem) -> LocElem<B::Elem> {
        LocElem {
            num: a.clone(),
            k: 0,
        }
    }

    /// Numerators over the common denominator `f^m`.
    fn align(&self, a: &LocElem<B::Elem>, b: &LocElem<B::Elem>) -> (B::Elem, B::Elem, u32) {
        let m = a.k.max(b.k);
        let an = self.base.mul(&a.num, &self.base.pow(&self.f, m - a.k));
        let bn = self.base.mul(&b.num, &self.base.pow(&self.f, m - b.k));
        (an, bn, m)
    }

    /// Remove every factor of `a` that divides a power of `f`.
    fn strip_f_part(&self, a: &B::Elem) -> B::Elem {
        let mut rest = a.clone();
        loop {
            let c = self.base.gcd(&rest, &self.f);
            if self.base.is_unit(&c) || self.base.is_zero(&rest) {
                return rest;
            }
            rest = self
                .base
                .exact_div(&rest, &c)
                .expect("gcd divides")
                .expect("gcd divides");
        }
    }
}

impl<B: GcdDomain> Ring for Localized<B> {
    type Elem = LocElem<B::Elem>;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::Localized {
            base: Box::new(self.base.descriptor().kind),
            multiplier: self.base.render(&self.f),
        })
    }

    fn zero(&self) -> Self::Elem {
        self.from_base(&self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_base(&self.base.one())
    }

    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.make(self.base.from_bigint(n), 0)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (an, bn, m) = self.align(a, b);
        self.make(self.base.add(&an, &bn), m)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.make(self.base.mul(&a.num, &b.num), a.k + b.k)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        LocElem {
            num: self.base.neg(&a.num),
            k: a.k,
        }
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.num)
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.base.is_zero(&a.num) && self.base.is_unit(&self.strip_f_part(&a.num))
    }

    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> RingResult<Option<Self::Elem>> {
        if self.is_zero(b) {
            return Err(RingError::DivisionByZero);
        }
        let k = self.fraction_field();
        let x = super::Field::div(&k, &self.embed(a), &self.embed(b))
            .ok_or(RingError::DivisionByZero)?;
        Ok(self.pull_back(&x))
    }

    fn render(&self, a: &Self::Elem) -> String {
        let num = self.base.render(&a.num);
        match a.k {
            0 => num,
            1 => render_fraction(&num, &bracket(&self.base.render(&self.f))),
            k => render_fraction(
                &num,
                &format!("{}^{k}", bracket(&self.base.render(&self.f))),
            ),
        }
    }

    fn check(&self, a: &Self::Elem) -> RingResult<()> {
        if self.make(a.num.clone(), a.k) == *a {
            Ok(())
        } else {
            Err(RingError::InvalidElement(
                "localized element not in lowest terms".to_string(),
            ))
        }
    }

    fn generator_names(&self) -> Vec<String> {
        self.base.generator_names()
    }

    fn generator(&self, name: &str) -> Option<Self::Elem> {
        self.base.generator(name).map(|g| self.from_base(&g))
    }
}

impl<B: GcdDomain> Domain for Localized<B> {
    type Frac = B::Frac;

    fn fraction_field(&self) -> B::Frac {
        self.base.fraction_field()
    }

    fn embed(&self, a: &Self::Elem) -> FracElem<B> {
        let k = self.base.fraction_field();
        let den = self.base.embed(&self.base.pow(&self.f, a.k));
        super::Field::div(&k, &self.base.embed(&a.num), &den).expect("f is nonzero")
    }

    fn pull_back(&self, x: &FracElem<B>) -> Option<Self::Elem> {
        let (p, q) = self.base.split(x);
        if !self.base.is_unit(&self.strip_f_part(&q)) {
            return None;
        }
        let mut fk = self.base.one();
        for k in 0.. {
            let lifted = self.base.mul(&p, &fk);
            if let Some(num) = self.base.exact_div(&lifted, &q).ok()? {
                return Some(self.make(num, k));
            }
            fk = self.base.mul(&fk, &self.f);
        }
        unreachable!()
    }

    fn split(&self, x: &FracElem<B>) -> (Self::Elem, Self::Elem) {
        let (p, q) = self.base.split(x);
        (self.make(p, 0), self.make(q, 0))
    }

    fn two_gen_reduce(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
    ) -> RingResult<ModuleVerdict<Self::Elem>> {
        if self.is_zero(a) && self.is_zero(b) {
            return Err(RingError::BothZero);
        }
        let (zero, one) = (self.zero(), self.one());
        if self.is_zero(a) {
            return Ok(ModuleVerdict::Principal(PrincipalCert {
                g: b.clone(),
                a0: zero.clone(),
                b0: one.clone(),
                s: zero,
                t: one,
            }));
        }
        if self.is_zero(b) {
            return Ok(ModuleVerdict::Principal(PrincipalCert {
                g: a.clone(),
                a0: one.clone(),
                b0: zero.clone(),
                s: one,
                t: zero,
            }));
        }
        let (an, bn, m) = self.align(a, b);
        let g0 = self.base.gcd(&an, &bn);
        let div = |x: &B::Elem| {
            self.base
                .exact_div(x, &g0)
                .expect("nonzero")
                .expect("gcd divides")
        };
        let (a0, b0) = (div(&an), div(&bn));
        match self.base.unit_ideal_after_inverting(&a0, &b0, &self.f)? {
            Ok((u, v, k)) => Ok(ModuleVerdict::Principal(PrincipalCert {
                g: self.make(g0, m),
                a0: self.make(a0, 0),
                b0: self.make(b0, 0),
                s: self.make(u, k),
                t: self.make(v, k),
            })),
            Err(w) => Ok(ModuleVerdict::NotPrincipal(match w {
                NonPrincipalWitness::NotSaturated {
                    basis, dimension, ..
                } => NonPrincipalWitness::NotSaturated {
                    gcd: self.render(&self.make(g0, m)),
                    basis,
                    dimension,
                },
                NonPrincipalWitness::ProperReducedPair { basis, .. } => {
                    NonPrincipalWitness::ProperReducedPair {
                        gcd: self.render(&self.make(g0, m)),
                        basis,
                    }
                }
                other => other,
            })),
        }
    }

    fn check_prime(&self, p: &PrimeSpec<Self::Elem>) -> RingResult<()> {
        let bp = self.base_prime(p);
        self.base.check_prime(&bp)?;
        if self.base.in_prime(&self.f, &bp)? {
            return Err(self.unsupported_prime("the prime contains the inverted element"));
        }
        Ok(())
    }

    fn in_prime(&self, a: &Self::Elem, p: &PrimeSpec<Self::Elem>) -> RingResult<bool> {
        self.check_prime(p)?;
        self.base.in_prime(&a.num, &self.base_prime(p))
    }

    fn local_contains(&self, x: &FracElem<B>, p: &PrimeSpec<Self::Elem>) -> RingResult<bool> {
        self.check_prime(p)?;
        self.base.local_contains(x, &self.base_prime(p))
    }

    fn fraction_generator(&self, name: &str) -> Option<FracElem<B>> {
        self.base.fraction_generator(name)
    }
}

impl<B: GcdDomain> Localized<B> {
    /// The prime of `B` below a prime of `B[1/f]` (generators cleared of
    /// denominators, which are units).
    pub fn base_prime(&self, p: &PrimeSpec<LocElem<B::Elem>>) -> PrimeSpec<B::Elem> {
        match p {
            PrimeSpec::Zero => PrimeSpec::Zero,
            PrimeSpec::Element(e) => PrimeSpec::Element(e.num.clone()),
            PrimeSpec::Generators(gs) => {
                PrimeSpec::Generators(gs.iter().map(|g| g.num.clone()).collect())
            }
        }
    }
}

impl<B: GcdDomain> GcdDomain for Localized<B> {
    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let g = self.base.gcd(&a.num, &b.num);
        self.normalize(&self.from_base(&g))
    }

    /// Canonical associate: drop factors of `f` and normalize in the base.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        if self.is_zero(a) {
            return a.clone();
        }
        self.from_base(&self.base.normalize(&self.strip_f_part(&a.num)))
    }

    fn unit_ideal_after_inverting(
        &self,
        a: &Self::Elem,
        b: &Self::Elem,
        f: &Self::Elem,
    ) -> RingResult<Result<(Self::Elem, Self::Elem, u32), NonPrincipalWitness>> {
        let (an, bn, _) = self.align(a, b);
        let ff = self.base.mul(&f.num, &self.f);
        Ok(self
            .base
            .unit_ideal_after_inverting(&an, &bn, &ff)?
            .map(|(u, v, k)| (self.make(u, 0), self.make(v, 0), k)))
    }
}

impl<B: Pid> Pid for Localized<B> {
    fn ext_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        match self.two_gen_reduce(a, b) {
            Ok(ModuleVerdict::Principal(c)) => {
                let g = self.normalize(&c.g);
                // c.g = g * unit
                let unit = self.exact_div(&c.g, &g).ok().flatten().expect("associates");
                let ui = self
                    .exact_div(&self.one(), &unit)
                    .ok()
                    .flatten()
                    .expect("unit");
                (g, self.mul(&c.s, &ui), self.mul(&c.t, &ui))
            }
            _ => (self.zero(), self.zero(), self.zero()),
        }
    }

    fn prime_factors(&self, a: &Self::Elem) -> Vec<Self::Elem> {
        self.base
            .prime_factors(&self.strip_f_part(&a.num))
            .into_iter()
            .map(|p| self.from_base(&p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{Integers, QBivarRing};
    use crate::groebner::Mono;
    use crate::scalar::rat;
    use crate::QPoly2;

    fn z(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn integers_with_two_inverted() {
        let r = Localized::new(Integers, &z(2)).unwrap();
        let half = r.make(z(1), 1);
        assert_eq!(r.render(&half), "1/2");
        assert!(r.is_unit(&r.from_base(&z(4))));
        assert!(!r.is_unit(&r.from_base(&z(6))));
        assert_eq!(r.add(&half, &half), r.one());
        let v = r
            .two_gen_reduce(&r.from_base(&z(4)), &r.from_base(&z(6)))
            .unwrap();
        let ModuleVerdict::Principal(c) = v else {
            panic!()
        };
        assert!(c.verify(&r, &r.from_base(&z(4)), &r.from_base(&z(6))));
        assert!(Localized::new(Integers, &z(-1)).is_err());
    }

    #[test]
    fn bivariate_saturation() {
        let base = QBivarRing::new("z", "w");
        let zw = |t: &[(u32, u32, i64)]| {
            QPoly2::from_terms(t.iter().map(|&(i, j, c)| (Mono::new(i, j), rat(c))))
        };
        // (z, w) becomes the unit ideal once z is inverted
        let r = Localized::new(base.clone(), &QPoly2::z()).unwrap();
        let (a, b) = (r.from_base(&QPoly2::z()), r.from_base(&QPoly2::w()));
        let ModuleVerdict::Principal(c) = r.two_gen_reduce(&a, &b).unwrap() else {
            panic!()
        };
        assert!(c.verify(&r, &a, &b));
        // inverting z + 1 leaves (z, w) proper
        let r = Localized::new(base, &zw(&[(1, 0, 1), (0, 0, 1)])).unwrap();
        let (a, b) = (r.from_base(&QPoly2::z()), r.from_base(&QPoly2::w()));
        assert!(r.two_gen_reduce(&a, &b).unwrap().is_not_principal());
    }
}
