use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{
    render_fraction, Domain, Field, GcdDomain, ModuleVerdict, NonPrincipalWitness, Pid, PrimeSpec,
    PrincipalCert, Ring, RingDescriptor, RingError, RingKind, RingResult,
};
use crate::QPoly;

/// `Q[var]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPolyRing {
    var: String,
}

/// `Q(var)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFuncField {
    var: String,
}

/// Reduced quotient of polynomials with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    /// `None` when `den` is zero.
    pub fn new(num: &QPoly, den: &QPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFunc::from_poly(QPoly::zero()));
        }
        let g = num.gcd(den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().expect("nonzero").clone();
        let inv = BigRational::one() / lc;
        Some(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }
}

impl QPolyRing {
    pub fn new(var: &str) -> Self {
        QPolyRing {
            var: var.to_string(),
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    fn prime_generator(&self, p: &PrimeSpec<QPoly>) -> RingResult<Option<QPoly>> {
        let g = match p {
            PrimeSpec::Zero => return Ok(None),
            PrimeSpec::Element(e) => e.monic(),
            PrimeSpec::Generators(gs) => gs.iter().fold(QPoly::zero(), |g, x| g.gcd(x)),
        };
        if g.is_zero() {
            return Ok(None);
        }
        if g.is_constant() {
            return Err(self.unsupported_prime("the unit ideal is not prime"));
        }
        Ok(Some(g))
    }
}

impl RatFuncField {
    pub fn new(var: &str) -> Self {
        RatFuncField {
            var: var.to_string(),
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }
}

impl Ring for QPolyRing {
    type Elem = QPoly;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::UnivarPoly {
            var: self.var.clone(),
        })
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
        Ok(a.exact_div(b))
    }

    fn render(&self, a: &QPoly) -> String {
        a.render(&self.var)
    }

    fn generator_names(&self) -> Vec<String> {
        vec![self.var.clone()]
    }

    fn generator(&self, name: &str) -> Option<QPoly> {
        (name == self.var).then(QPoly::x)
    }
}

impl Ring for RatFuncField {
    type Elem = RatFunc;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::FractionField {
            base: Box::new(RingKind::UnivarPoly {
                var: self.var.clone(),
            }),
        })
    }

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(QPoly::zero())
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_poly(QPoly::one())
    }

    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        RatFunc::from_poly(QPoly::constant(BigRational::from_integer(n.clone())))
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if a.den == b.den {
            return RatFunc::new(&(&a.num + &b.num), &a.den).expect("nonzero");
        }
        let num = &(&a.num * &b.den) + &(&b.num * &a.den);
        RatFunc::new(&num, &(&a.den * &b.den)).expect("nonzero")
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        RatFunc::new(&(&a.num * &b.num), &(&a.den * &b.den)).expect("nonzero")
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: -&a.num,
            den: a.den.clone(),
        }
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }

    fn is_unit(&self, a: &RatFunc) -> bool {
        !a.num.is_zero()
    }

    fn exact_div(&self, a: &RatFunc, b: &RatFunc) -> RingResult<Option<RatFunc>> {
        self.div(a, b).map(Some).ok_or(RingError::DivisionByZero)
    }

    fn render(&self, a: &RatFunc) -> String {
        render_fraction(&a.num.render(&self.var), &a.den.render(&self.var))
    }

    fn check(&self, a: &RatFunc) -> RingResult<()> {
        match RatFunc::new(&a.num, &a.den) {
            Some(r) if r == *a => Ok(()),
            _ => Err(RingError::InvalidElement(format!("{a:?} is not reduced"))),
        }
    }

    fn generator_names(&self) -> Vec<String> {
        vec![self.var.clone()]
    }

    fn generator(&self, name: &str) -> Option<RatFunc> {
        (name == self.var).then(|| RatFunc::from_poly(QPoly::x()))
    }
}

impl Field for RatFuncField {
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        RatFunc::new(&a.den, &a.num)
    }
}

super::field_domain!(RatFuncField);

impl Domain for QPolyRing {
    type Frac = RatFuncField;

    fn fraction_field(&self) -> RatFuncField {
        RatFuncField::new(&self.var)
    }

    fn embed(&self, a: &QPoly) -> RatFunc {
        RatFunc::from_poly(a.clone())
    }

    fn pull_back(&self, x: &RatFunc) -> Option<QPoly> {
        x.is_polynomial()
            .then(|| x.num.scale(&(BigRational::one() / x.den.coeff(0))))
    }

    fn split(&self, x: &RatFunc) -> (QPoly, QPoly) {
        (x.num.clone(), x.den.clone())
    }

    fn two_gen_reduce(&self, a: &QPoly, b: &QPoly) -> RingResult<ModuleVerdict<QPoly>> {
        if a.is_zero() && b.is_zero() {
            return Err(RingError::BothZero);
        }
        let (g, s, t) = a.ext_gcd(b);
        Ok(ModuleVerdict::Principal(PrincipalCert {
            a0: a.exact_div(&g).expect("gcd divides"),
            b0: b.exact_div(&g).expect("gcd divides"),
            g,
            s,
            t,
        }))
    }

    fn check_prime(&self, p: &PrimeSpec<QPoly>) -> RingResult<()> {
        self.prime_generator(p).map(|_| ())
    }

    fn in_prime(&self, a: &QPoly, p: &PrimeSpec<QPoly>) -> RingResult<bool> {
        Ok(match self.prime_generator(p)? {
            None => a.is_zero(),
            Some(q) => q.divides(a),
        })
    }

    fn local_contains(&self, x: &RatFunc, p: &PrimeSpec<QPoly>) -> RingResult<bool> {
        Ok(match self.prime_generator(p)? {
            None => true,
            Some(q) => x.den.gcd(&q).is_constant(),
        })
    }
}

impl GcdDomain for QPolyRing {
    fn gcd(&self, a: &QPoly, b: &QPoly) -> QPoly {
        a.gcd(b)
    }

    fn normalize(&self, a: &QPoly) -> QPoly {
        a.monic()
    }

    fn unit_ideal_after_inverting(
        &self,
        a: &QPoly,
        b: &QPoly,
        f: &QPoly,
    ) -> RingResult<Result<(QPoly, QPoly, u32), NonPrincipalWitness>> {
        let (g, s, t) = a.ext_gcd(b);
        let mut rest = g.clone();
        let mut k = 0u32;
        while !rest.is_zero() {
            let c = rest.gcd(f);
            if c.is_constant() {
                break;
            }
            rest = rest.exact_div(&c).expect("gcd divides");
            k += 1;
        }
        if !rest.is_constant() || rest.is_zero() {
            return Ok(Err(NonPrincipalWitness::ProperReducedPair {
                gcd: "1".to_string(),
                basis: vec![g.render(&self.var)],
            }));
        }
        let cof = f.pow(k).exact_div(&g).expect("g divides f^k");
        Ok(Ok((&s * &cof, &t * &cof, k)))
    }
}

fn divisors_up_to(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let mut small = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if d > BigInt::from(limit) {
            return None;
        }
        if (&n % &d).is_zero() {
            small.push(d.clone());
        }
        d += 1;
    }
    let mut all = small.clone();
    for s in small.iter().rev() {
        let q = &n / s;
        if &q != s {
            all.push(q);
        }
    }
    Some(all)
}

/// Rational roots of a squarefree polynomial, by the rational root test.
/// `None` when the coefficients are too large to enumerate candidates.
fn rational_roots(p: &QPoly) -> Option<Vec<BigRational>> {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    let mut lo = 0;
    while ints[lo].is_zero() {
        roots.push(BigRational::zero());
        lo += 1;
    }
    if lo + 1 == ints.len() {
        return Some(roots);
    }
    let ps = divisors_up_to(&ints[lo], 1_000)?;
    let qs = divisors_up_to(ints.last().expect("nonzero"), 1_000)?;
    for pn in &ps {
        for qd in &qs {
            for sign in [1, -1] {
                let r = BigRational::new(pn * sign, qd.clone());
                if !roots.contains(&r) && p.eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Some(roots)
}

impl Pid for QPolyRing {
    fn ext_gcd(&self, a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        a.ext_gcd(b)
    }

    fn prime_factors(&self, a: &QPoly) -> Vec<QPoly> {
        let sq = a.squarefree_part();
        if sq.is_constant() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut rest = sq.clone();
        for r in rational_roots(&sq).unwrap_or_default() {
            let lin = QPoly::from_vec(vec![-r, BigRational::one()]);
            rest = rest.exact_div(&lin).expect("root");
            out.push(lin);
        }
        if !rest.is_constant() {
            out.push(rest.monic());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_vec(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn polynomial_arithmetic() {
        let r = QPolyRing::new("z");
        assert_eq!(r.mul(&p(&[1, 1]), &p(&[-1, 1])), p(&[-1, 0, 1]));
        assert_eq!(
            r.exact_div(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(),
            Some(p(&[1, 1]))
        );
        assert!(r.is_unit(&p(&[3])));
        assert!(!r.is_unit(&p(&[0, 1])));
    }

    #[test]
    fn fractions_render_reduced() {
        let k = RatFuncField::new("z");
        let x = RatFunc::new(&p(&[0, -2]), &p(&[0, 0, 2])).unwrap();
        assert_eq!(k.render(&x), "-1/z");
        let y = RatFunc::new(&p(&[1, 1]), &p(&[0, 1])).unwrap();
        assert_eq!(k.render(&y), "(z + 1)/z");
        assert_eq!(k.render(&k.add(&x, &y)), "1");
    }

    #[test]
    fn factors_of_cubic() {
        let r = QPolyRing::new("z");
        // z^2 (z - 1)(z^2 + 1)
        let a = &(&p(&[0, 0, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        let fs = r.prime_factors(&a);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&p(&[0, 1])));
        assert!(fs.contains(&p(&[-1, 1])));
        assert!(fs.contains(&p(&[1, 0, 1])));
    }
}
