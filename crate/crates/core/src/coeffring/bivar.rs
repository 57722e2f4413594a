use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{
    render_fraction, Domain, Field, GcdDomain, ModuleVerdict, NonPrincipalWitness, PrimeSpec,
    PrincipalCert, Ring, RingDescriptor, RingError, RingKind, RingResult,
};
use crate::groebner::{
    gcd_bivar, groebner_basis, ideal_membership, is_unit_constant, saturation_cofactors, Saturation,
};
use crate::QPoly2;

/// `Q[z, w]` with configurable variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBivarRing {
    vars: [String; 2],
}

/// `Q(z, w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivarRatFuncField {
    vars: [String; 2],
}

/// Reduced quotient with grevlex-monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarRatFunc {
    num: QPoly2,
    den: QPoly2,
}

impl BivarRatFunc {
    pub fn new(num: &QPoly2, den: &QPoly2) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(BivarRatFunc::from_poly(QPoly2::zero()));
        }
        let g = gcd_bivar(num, den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let inv = BigRational::one() / den.leading_coeff().expect("nonzero").clone();
        Some(BivarRatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: QPoly2) -> Self {
        BivarRatFunc {
            num: p,
            den: QPoly2::one(),
        }
    }

    pub fn num(&self) -> &QPoly2 {
        &self.num
    }

    pub fn den(&self) -> &QPoly2 {
        &self.den
    }
}

impl QBivarRing {
    pub fn new(z: &str, w: &str) -> Self {
        QBivarRing {
            vars: [z.to_string(), w.to_string()],
        }
    }

    pub fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }

    fn checked_prime<'a>(&self, p: &'a PrimeSpec<QPoly2>) -> RingResult<&'a PrimeSpec<QPoly2>> {
        match p {
            PrimeSpec::Zero => {}
            PrimeSpec::Element(e) => {
                if e.is_zero() || is_unit_constant(e) {
                    return Err(
                        self.unsupported_prime("a prime element must be a non-constant polynomial")
                    );
                }
            }
            PrimeSpec::Generators(gs) => {
                if gs.iter().all(|g| g.is_zero()) {
                    return Ok(p);
                }
                if groebner_basis(gs).is_unit_ideal() {
                    return Err(self.unsupported_prime("the generators span the unit ideal"));
                }
            }
        }
        Ok(p)
    }

    fn member(&self, a: &QPoly2, p: &PrimeSpec<QPoly2>) -> bool {
        match p {
            PrimeSpec::Zero => a.is_zero(),
            PrimeSpec::Element(e) => a.exact_div(e).is_some(),
            PrimeSpec::Generators(gs) => ideal_membership(a, gs),
        }
    }
}

impl BivarRatFuncField {
    pub fn new(z: &str, w: &str) -> Self {
        BivarRatFuncField {
            vars: [z.to_string(), w.to_string()],
        }
    }

    fn vars(&self) -> [&str; 2] {
        [&self.vars[0], &self.vars[1]]
    }
}

fn named_generator(vars: &[String; 2], name: &str) -> Option<QPoly2> {
    if name == vars[0] {
        Some(QPoly2::z())
    } else if name == vars[1] {
        Some(QPoly2::w())
    } else {
        None
    }
}

impl Ring for QBivarRing {
    type Elem = QPoly2;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::BivarPolyRing {
            vars: self.vars.clone(),
        })
    }

    fn zero(&self) -> QPoly2 {
        QPoly2::zero()
    }

    fn one(&self) -> QPoly2 {
        QPoly2::one()
    }

    fn from_bigint(&self, n: &BigInt) -> QPoly2 {
        QPoly2::constant(BigRational::from_integer(n.clone()))
    }

    fn add(&self, a: &QPoly2, b: &QPoly2) -> QPoly2 {
        a + b
    }

    fn sub(&self, a: &QPoly2, b: &QPoly2) -> QPoly2 {
        a - b
    }

    fn mul(&self, a: &QPoly2, b: &QPoly2) -> QPoly2 {
        a * b
    }

    fn neg(&self, a: &QPoly2) -> QPoly2 {
        -a
    }

    fn is_zero(&self, a: &QPoly2) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &QPoly2) -> bool {
        is_unit_constant(a)
    }

    fn exact_div(&self, a: &QPoly2, b: &QPoly2) -> RingResult<Option<QPoly2>> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(a.exact_div(b))
    }

    fn render(&self, a: &QPoly2) -> String {
        a.render(self.vars())
    }

    fn generator_names(&self) -> Vec<String> {
        self.vars.to_vec()
    }

    fn generator(&self, name: &str) -> Option<QPoly2> {
        named_generator(&self.vars, name)
    }
}

impl Ring for BivarRatFuncField {
    type Elem = BivarRatFunc;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::FractionField {
            base: Box::new(RingKind::BivarPolyRing {
                vars: self.vars.clone(),
            }),
        })
    }

    fn zero(&self) -> BivarRatFunc {
        BivarRatFunc::from_poly(QPoly2::zero())
    }

    fn one(&self) -> BivarRatFunc {
        BivarRatFunc::from_poly(QPoly2::one())
    }

    fn from_bigint(&self, n: &BigInt) -> BivarRatFunc {
        BivarRatFunc::from_poly(QPoly2::constant(BigRational::from_integer(n.clone())))
    }

    fn add(&self, a: &BivarRatFunc, b: &BivarRatFunc) -> BivarRatFunc {
        if a.den == b.den {
            return BivarRatFunc::new(&(&a.num + &b.num), &a.den).expect("nonzero");
        }
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        BivarRatFunc::new(&num, &(&a.den * &b.den)).expect("nonzero")
    }

    fn mul(&self, a: &BivarRatFunc, b: &BivarRatFunc) -> BivarRatFunc {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        BivarRatFunc::new(&(&a.num * &b.num), &(&a.den * &b.den)).expect("nonzero")
    }

    fn neg(&self, a: &BivarRatFunc) -> BivarRatFunc {
        BivarRatFunc {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    fn is_zero(&self, a: &BivarRatFunc) -> bool {
        a.num.is_zero()
    }

    fn is_unit(&self, a: &BivarRatFunc) -> bool {
        !a.num.is_zero()
    }

    fn exact_div(&self, a: &BivarRatFunc, b: &BivarRatFunc) -> RingResult<Option<BivarRatFunc>> {
        self.div(a, b).map(Some).ok_or(RingError::DivisionByZero)
    }

    fn render(&self, a: &BivarRatFunc) -> String {
        render_fraction(&a.num.render(self.vars()), &a.den.render(self.vars()))
    }

    fn check(&self, a: &BivarRatFunc) -> RingResult<()> {
        match BivarRatFunc::new(&a.num, &a.den) {
            Some(r) if r == *a => Ok(()),
            _ => Err(RingError::InvalidElement(format!("{a:?} is not reduced"))),
        }
    }

    fn generator_names(&self) -> Vec<String> {
        self.vars.to_vec()
    }

    fn generator(&self, name: &str) -> Option<BivarRatFunc> {
        named_generator(&self.vars, name).map(BivarRatFunc::from_poly)
    }
}

impl Field for BivarRatFuncField {
    fn inv(&self, a: &BivarRatFunc) -> Option<BivarRatFunc> {
        BivarRatFunc::new(&a.den, &a.num)
    }
}

super::field_domain!(BivarRatFuncField);

impl Domain for QBivarRing {
    type Frac = BivarRatFuncField;

    fn fraction_field(&self) -> BivarRatFuncField {
        BivarRatFuncField {
            vars: self.vars.clone(),
        }
    }

    fn embed(&self, a: &QPoly2) -> BivarRatFunc {
        BivarRatFunc::from_poly(a.clone())
    }

    fn pull_back(&self, x: &BivarRatFunc) -> Option<QPoly2> {
        x.den.is_constant().then(|| x.num.clone())
    }

    fn split(&self, x: &BivarRatFunc) -> (QPoly2, QPoly2) {
        (x.num.clone(), x.den.clone())
    }

    fn two_gen_reduce(&self, a: &QPoly2, b: &QPoly2) -> RingResult<ModuleVerdict<QPoly2>> {
        if a.is_zero() && b.is_zero() {
            return Err(RingError::BothZero);
        }
        let g = gcd_bivar(a, b);
        let a0 = a.exact_div(&g).expect("gcd divides");
        let b0 = b.exact_div(&g).expect("gcd divides");
        let gb = groebner_basis(&[a0.clone(), b0.clone()]);
        if !gb.is_unit_ideal() {
            return Ok(ModuleVerdict::NotPrincipal(
                NonPrincipalWitness::ProperReducedPair {
                    gcd: self.render(&g),
                    basis: gb.polys.iter().map(|p| self.render(p)).collect(),
                },
            ));
        }
        let cof = &gb.cofactors[0];
        Ok(ModuleVerdict::Principal(PrincipalCert {
            g,
            a0,
            b0,
            s: cof[0].clone(),
            t: cof[1].clone(),
        }))
    }

    fn check_prime(&self, p: &PrimeSpec<QPoly2>) -> RingResult<()> {
        self.checked_prime(p).map(|_| ())
    }

    fn in_prime(&self, a: &QPoly2, p: &PrimeSpec<QPoly2>) -> RingResult<bool> {
        Ok(self.member(a, self.checked_prime(p)?))
    }

    fn local_contains(&self, x: &BivarRatFunc, p: &PrimeSpec<QPoly2>) -> RingResult<bool> {
        Ok(!self.member(&x.den, self.checked_prime(p)?))
    }
}

impl GcdDomain for QBivarRing {
    fn gcd(&self, a: &QPoly2, b: &QPoly2) -> QPoly2 {
        gcd_bivar(a, b)
    }

    fn normalize(&self, a: &QPoly2) -> QPoly2 {
        a.monic()
    }

    fn unit_ideal_after_inverting(
        &self,
        a: &QPoly2,
        b: &QPoly2,
        f: &QPoly2,
    ) -> RingResult<Result<(QPoly2, QPoly2, u32), NonPrincipalWitness>> {
        Ok(match saturation_cofactors(a, b, f) {
            Saturation::Unit { u, v, k } => Ok((u, v, k)),
            Saturation::NotUnit { basis, dimension } => Err(NonPrincipalWitness::NotSaturated {
                gcd: "1".to_string(),
                basis: basis.iter().map(|p| self.render(p)).collect(),
                dimension,
            }),
            Saturation::PositiveDimension { basis } => {
                Err(NonPrincipalWitness::ProperReducedPair {
                    gcd: "1".to_string(),
                    basis: basis.iter().map(|p| self.render(p)).collect(),
                })
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Mono;
    use crate::scalar::rat;

    fn zw(terms: &[(u32, u32, i64)]) -> QPoly2 {
        QPoly2::from_terms(terms.iter().map(|&(i, j, c)| (Mono::new(i, j), rat(c))))
    }

    #[test]
    fn maximal_ideal_is_not_principal() {
        let r = QBivarRing::new("z", "w");
        let v = r.two_gen_reduce(&QPoly2::z(), &QPoly2::w()).unwrap();
        let ModuleVerdict::NotPrincipal(NonPrincipalWitness::ProperReducedPair { gcd, basis }) = v
        else {
            panic!("{v:?}")
        };
        assert_eq!(gcd, "1");
        assert_eq!(basis, vec!["w", "z"]);
    }

    #[test]
    fn principal_after_common_factor() {
        let r = QBivarRing::new("z", "w");
        let a = zw(&[(2, 1, 1), (1, 2, 1)]);
        let b = zw(&[(1, 1, 1), (0, 0, 0)]);
        let v = r.two_gen_reduce(&a, &b).unwrap();
        let ModuleVerdict::Principal(c) = v else {
            panic!()
        };
        assert!(c.verify(&r, &a, &b));
        assert_eq!(c.g, zw(&[(1, 1, 1)]));
    }

    #[test]
    fn local_membership() {
        let r = QBivarRing::new("z", "w");
        let m = PrimeSpec::Generators(vec![QPoly2::z(), QPoly2::w()]);
        let k = r.fraction_field();
        let inv_z1 = k.inv(&r.embed(&zw(&[(1, 0, 1), (0, 0, 1)]))).unwrap();
        let inv_z = k.inv(&r.embed(&QPoly2::z())).unwrap();
        assert!(r.local_contains(&inv_z1, &m).unwrap());
        assert!(!r.local_contains(&inv_z, &m).unwrap());
        assert_eq!(
            k.render(&k.mul(&inv_z, &k.inv(&r.embed(&QPoly2::w())).unwrap())),
            "1/(z*w)"
        );
    }
}
