use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice::Lattice;
use super::{
    Domain, Field, ModuleVerdict, NonPrincipalWitness, PrimeSpec, PrincipalCert, Ring,
    RingDescriptor, RingError, RingKind, RingResult,
};
use crate::scalar::{is_atomic_rendering, Scalar};
use crate::upoly::join_signed;

/// `re + im*sqrt(-5)` with integer parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Zr5 {
    pub re: BigInt,
    pub im: BigInt,
}

/// `re + im*sqrt(-5)` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Q5 {
    pub re: BigRational,
    pub im: BigRational,
}

impl Zr5 {
    pub fn new(re: i64, im: i64) -> Self {
        Zr5 {
            re: BigInt::from(re),
            im: BigInt::from(im),
        }
    }

    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + BigInt::from(5) * &self.im * &self.im
    }

    pub fn mul(&self, o: &Zr5) -> Zr5 {
        Zr5 {
            re: &self.re * &o.re - BigInt::from(5) * &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Q5 {
    fn mul(&self, o: &Q5) -> Q5 {
        let five = BigRational::from_integer(BigInt::from(5));
        Q5 {
            re: &self.re * &o.re - five * &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

/// `Z[sqrt(-5)]`, rendered with `r5` for the square root.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadImag5;

/// `Q(sqrt(-5))`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QuadField5;

fn render_parts(re: String, im: String) -> String {
    let mut parts = Vec::new();
    if re != "0" {
        let (neg, body) = split_sign(re);
        parts.push((neg, body));
    }
    if im != "0" {
        let (neg, mag) = split_sign(im);
        let body = if mag == "1" {
            "r5".to_string()
        } else if is_atomic_rendering(&mag) {
            format!("{mag}*r5")
        } else {
            format!("({mag})*r5")
        };
        parts.push((neg, body));
    }
    join_signed(parts)
}

fn split_sign(s: String) -> (bool, String) {
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

impl Ring for QuadImag5 {
    type Elem = Zr5;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::QuadImag5)
    }

    fn zero(&self) -> Zr5 {
        Zr5::new(0, 0)
    }

    fn one(&self) -> Zr5 {
        Zr5::new(1, 0)
    }

    fn from_bigint(&self, n: &BigInt) -> Zr5 {
        Zr5 {
            re: n.clone(),
            im: BigInt::zero(),
        }
    }

    fn add(&self, a: &Zr5, b: &Zr5) -> Zr5 {
        Zr5 {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    fn mul(&self, a: &Zr5, b: &Zr5) -> Zr5 {
        a.mul(b)
    }

    fn neg(&self, a: &Zr5) -> Zr5 {
        Zr5 {
            re: -&a.re,
            im: -&a.im,
        }
    }

    fn is_unit(&self, a: &Zr5) -> bool {
        a.norm().is_one()
    }

    fn exact_div(&self, a: &Zr5, b: &Zr5) -> RingResult<Option<Zr5>> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        let n = b.norm();
        let conj = Zr5 {
            re: b.re.clone(),
            im: -&b.im,
        };
        let p = a.mul(&conj);
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        Ok((rr.is_zero() && ri.is_zero()).then_some(Zr5 { re: qr, im: qi }))
    }

    fn render(&self, a: &Zr5) -> String {
        render_parts(a.re.to_string(), a.im.to_string())
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["r5".to_string()]
    }

    fn generator(&self, name: &str) -> Option<Zr5> {
        (name == "r5").then(|| Zr5::new(0, 1))
    }
}

impl Ring for QuadField5 {
    type Elem = Q5;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::FractionField {
            base: Box::new(RingKind::QuadImag5),
        })
    }

    fn zero(&self) -> Q5 {
        Q5 {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn one(&self) -> Q5 {
        Q5 {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }

    fn from_bigint(&self, n: &BigInt) -> Q5 {
        Q5 {
            re: BigRational::from_integer(n.clone()),
            im: BigRational::zero(),
        }
    }

    fn add(&self, a: &Q5, b: &Q5) -> Q5 {
        Q5 {
            re: &a.re + &b.re,
            im: &a.im + &b.im,
        }
    }

    fn mul(&self, a: &Q5, b: &Q5) -> Q5 {
        a.mul(b)
    }

    fn neg(&self, a: &Q5) -> Q5 {
        Q5 {
            re: -&a.re,
            im: -&a.im,
        }
    }

    fn is_unit(&self, a: &Q5) -> bool {
        !(a.re.is_zero() && a.im.is_zero())
    }

    fn exact_div(&self, a: &Q5, b: &Q5) -> RingResult<Option<Q5>> {
        self.div(a, b).map(Some).ok_or(RingError::DivisionByZero)
    }

    fn render(&self, a: &Q5) -> String {
        render_parts(a.re.render(), a.im.render())
    }

    fn generator_names(&self) -> Vec<String> {
        vec!["r5".to_string()]
    }

    fn generator(&self, name: &str) -> Option<Q5> {
        (name == "r5").then(|| Q5 {
            re: BigRational::zero(),
            im: BigRational::one(),
        })
    }
}

impl Field for QuadField5 {
    fn inv(&self, a: &Q5) -> Option<Q5> {
        let five = BigRational::from_integer(BigInt::from(5));
        let n = &a.re * &a.re + five * &a.im * &a.im;
        if n.is_zero() {
            return None;
        }
        Some(Q5 {
            re: &a.re / &n,
            im: -&a.im / &n,
        })
    }
}

super::field_domain!(QuadField5);

impl QuadImag5 {
    fn prime_lattice(&self, p: &PrimeSpec<Zr5>) -> RingResult<Option<Lattice>> {
        let gens = match p {
            PrimeSpec::Zero => return Ok(None),
            PrimeSpec::Element(e) => vec![e.clone()],
            PrimeSpec::Generators(gs) => gs.clone(),
        };
        let Some(l) = Lattice::ideal(&gens) else {
            return Ok(None);
        };
        let n = l.index();
        if n.is_one() {
            return Err(self.unsupported_prime("the unit ideal is not prime"));
        }
        let not_prime = || self.unsupported_prime(&format!("the ideal of norm {n} is not prime"));
        let Some(q) = small_prime_root(&n) else {
            return Err(not_prime());
        };
        if q != n {
            // norm q^2: prime only as (q) with q inert
            let inert = q != BigInt::from(2)
                && q != BigInt::from(5)
                && BigInt::from(-5).modpow(&((&q - 1u32) / 2u32), &q) != BigInt::one();
            let qi = Lattice::ideal(&[Zr5 {
                re: q,
                im: BigInt::zero(),
            }])
            .expect("nonzero");
            if !inert || qi.basis() != l.basis() {
                return Err(not_prime());
            }
        }
        Ok(Some(l))
    }

    /// An element of `lattice` with norm exactly `n`, normalized to `re > 0`
    /// or `re = 0, im > 0`.
    fn element_of_norm(lattice: &Lattice, n: &BigInt) -> Option<Zr5> {
        let five = BigInt::from(5);
        let mut y = BigInt::zero();
        while &five * &y * &y <= *n {
            let r = n - &five * &y * &y;
            let x = r.sqrt();
            if &x * &x == r {
                let mut cands = vec![Zr5 {
                    re: x.clone(),
                    im: y.clone(),
                }];
                if !x.is_zero() && !y.is_zero() {
                    cands.push(Zr5 {
                        re: x.clone(),
                        im: -&y,
                    });
                }
                if let Some(c) = cands.into_iter().find(|c| lattice.contains(c)) {
                    return Some(c);
                }
            }
            y += 1;
        }
        None
    }

    fn denominator(x: &Q5) -> BigInt {
        x.re.denom().lcm(x.im.denom())
    }
}

impl Domain for QuadImag5 {
    type Frac = QuadField5;

    fn fraction_field(&self) -> QuadField5 {
        QuadField5
    }

    fn embed(&self, a: &Zr5) -> Q5 {
        Q5 {
            re: BigRational::from_integer(a.re.clone()),
            im: BigRational::from_integer(a.im.clone()),
        }
    }

    fn pull_back(&self, x: &Q5) -> Option<Zr5> {
        (x.re.is_integer() && x.im.is_integer()).then(|| Zr5 {
            re: x.re.to_integer(),
            im: x.im.to_integer(),
        })
    }

    /// Clears the rational denominators; the result need not be reduced.
    fn split(&self, x: &Q5) -> (Zr5, Zr5) {
        let d = Self::denominator(x);
        let dq = BigRational::from_integer(d.clone());
        let num = Zr5 {
            re: (&x.re * &dq).to_integer(),
            im: (&x.im * &dq).to_integer(),
        };
        (num, self.from_bigint(&d))
    }

    fn two_gen_reduce(&self, a: &Zr5, b: &Zr5) -> RingResult<ModuleVerdict<Zr5>> {
        if a.is_zero() && b.is_zero() {
            return Err(RingError::BothZero);
        }
        let lattice = Lattice::ideal(&[a.clone(), b.clone()]).expect("nonzero ideal has rank two");
        let n = lattice.index();
        let Some(g) = Self::element_of_norm(&lattice, &n) else {
            return Ok(ModuleVerdict::NotPrincipal(
                NonPrincipalWitness::NoElementOfNorm { ideal_norm: n },
            ));
        };
        let a0 = self.exact_div(a, &g)?.expect("generator divides");
        let b0 = self.exact_div(b, &g)?.expect("generator divides");
        let unit = Lattice::ideal(&[a0.clone(), b0.clone()]).expect("nonzero");
        let k = unit
            .coords(&BigInt::one(), &BigInt::zero())
            .expect("reduced pair spans the unit ideal");
        let s = Zr5 {
            re: k[0].clone(),
            im: k[1].clone(),
        };
        let t = Zr5 {
            re: k[2].clone(),
            im: k[3].clone(),
        };
        Ok(ModuleVerdict::Principal(PrincipalCert { g, a0, b0, s, t }))
    }

    fn check_prime(&self, p: &PrimeSpec<Zr5>) -> RingResult<()> {
        self.prime_lattice(p).map(|_| ())
    }

    fn in_prime(&self, a: &Zr5, p: &PrimeSpec<Zr5>) -> RingResult<bool> {
        Ok(match self.prime_lattice(p)? {
            None => a.is_zero(),
            Some(l) => l.contains(a),
        })
    }

    fn local_contains(&self, x: &Q5, p: &PrimeSpec<Zr5>) -> RingResult<bool> {
        let Some(l) = self.prime_lattice(p)? else {
            return Ok(true);
        };
        if self.fraction_field().is_zero(x) {
            return Ok(true);
        }
        let (num, den) = self.split(x);
        Ok(l.valuation(&num) >= l.valuation(&den))
    }
}

/// `q` when `n` is `q` or `q^2` for a prime `q` below `10^12`.
fn small_prime_root(n: &BigInt) -> Option<BigInt> {
    let is_prime = |q: &BigInt| {
        if *q < BigInt::from(2) || *q > BigInt::from(1_000_000_000_000u64) {
            return false;
        }
        let mut d = BigInt::from(2);
        while &d * &d <= *q {
            if (q % &d).is_zero() {
                return false;
            }
            d += 1;
        }
        true
    };
    let r = n.sqrt();
    if &r * &r == *n && is_prime(&r) {
        return Some(r);
    }
    is_prime(n).then(|| n.clone())
}

/// The primes above 2, 3 and 7 that split or ramify in `Z[sqrt(-5)]`.
pub fn small_primes() -> Vec<(&'static str, Vec<Zr5>)> {
    vec![
        ("(2, 1 + r5)", vec![Zr5::new(2, 0), Zr5::new(1, 1)]),
        ("(3, 1 + r5)", vec![Zr5::new(3, 0), Zr5::new(1, 1)]),
        ("(3, 1 - r5)", vec![Zr5::new(3, 0), Zr5::new(1, -1)]),
        ("(7, 3 + r5)", vec![Zr5::new(7, 0), Zr5::new(3, 1)]),
        ("(7, 3 - r5)", vec![Zr5::new(7, 0), Zr5::new(3, -1)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_prime_ideals_accepted() {
        let r = QuadImag5;
        let el = |a, b| PrimeSpec::Element(Zr5::new(a, b));
        for ok in [
            el(11, 0),
            el(13, 0),
            PrimeSpec::Generators(vec![Zr5::new(2, 0), Zr5::new(1, 1)]),
            el(0, 1),
        ] {
            assert!(r.check_prime(&ok).is_ok());
        }
        for bad in [el(2, 0), el(3, 0), el(7, 0), el(1, 1), el(6, 0), el(4, 0)] {
            assert!(matches!(
                r.check_prime(&bad),
                Err(RingError::UnsupportedPrime { .. })
            ));
        }
    }

    #[test]
    fn render_examples() {
        let r = QuadImag5;
        assert_eq!(r.render(&Zr5::new(1, 1)), "1 + r5");
        assert_eq!(r.render(&Zr5::new(2, -3)), "2 - 3*r5");
        assert_eq!(r.render(&Zr5::new(0, -1)), "-r5");
        assert_eq!(r.render(&Zr5::new(0, 0)), "0");
    }

    #[test]
    fn classic_non_principal_pair() {
        let v = QuadImag5
            .two_gen_reduce(&Zr5::new(2, 0), &Zr5::new(1, 1))
            .unwrap();
        assert_eq!(
            v,
            ModuleVerdict::NotPrincipal(NonPrincipalWitness::NoElementOfNorm {
                ideal_norm: BigInt::from(2)
            })
        );
    }

    #[test]
    fn principal_pair_with_cofactors() {
        let r = QuadImag5;
        let (a, b) = (Zr5::new(3, 3), Zr5::new(6, 0));
        // (3 + 3r5, 6) = 3 * (1 + r5, 2), not principal; multiply in r5 instead
        assert!(r.two_gen_reduce(&a, &b).unwrap().is_not_principal());
        let (a, b) = (Zr5::new(2, 2), Zr5::new(6, 0));
        let v = r.two_gen_reduce(&a, &b).unwrap();
        assert!(v.is_not_principal());
        let (a, b) = (Zr5::new(3, 0), Zr5::new(0, 2));
        let ModuleVerdict::Principal(c) = r.two_gen_reduce(&a, &b).unwrap() else {
            panic!()
        };
        assert!(c.verify(&r, &a, &b));
        assert!(r.is_unit(&c.g));
    }

    #[test]
    fn local_rings_at_primes_over_two() {
        let r = QuadImag5;
        let p2 = PrimeSpec::Generators(vec![Zr5::new(2, 0), Zr5::new(1, 1)]);
        let k = QuadField5;
        let x = k
            .div(&r.embed(&Zr5::new(1, 1)), &r.embed(&Zr5::new(2, 0)))
            .unwrap();
        // v(1 + r5) = 1 and v(2) = 2 at the prime over 2
        assert!(!r.local_contains(&x, &p2).unwrap());
        let y = k.inv(&x).unwrap();
        assert!(r.local_contains(&y, &p2).unwrap());
        // locally the ideal (2, 1 + r5) is principal
        let v = r
            .two_gen_reduce_at(&Zr5::new(2, 0), &Zr5::new(1, 1), &p2)
            .unwrap();
        assert!(v.is_principal());
    }
}
