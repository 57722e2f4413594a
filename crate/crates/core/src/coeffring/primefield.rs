use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{field_domain, Field, Ring, RingDescriptor, RingError, RingKind, RingResult};

/// Integers modulo a prime `p < 2^63`, elements in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // deterministic Miller-Rabin for 64-bit inputs
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> RingResult<Self> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(RingError::InvalidRing(format!(
                "{p} is not a prime below 2^63"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::PrimeField { p: self.p })
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced below p")
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.mulmod(*a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }

    fn exact_div(&self, a: &u64, b: &u64) -> RingResult<Option<u64>> {
        self.div(a, b).map(Some).ok_or(RingError::DivisionByZero)
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn check(&self, a: &u64) -> RingResult<()> {
        if *a < self.p {
            Ok(())
        } else {
            Err(RingError::InvalidElement(format!(
                "{a} is not reduced mod {}",
                self.p
            )))
        }
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        Some(pow_u64(self, *a, self.p - 2))
    }
}

fn pow_u64(f: &PrimeField, mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1 % f.p;
    while e > 0 {
        if e & 1 == 1 {
            acc = f.mulmod(acc, b);
        }
        b = f.mulmod(b, b);
        e >>= 1;
    }
    acc
}

field_domain!(PrimeField);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_7() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.neg(&0), 0);
        assert_eq!(f.from_i64(-1), 6);
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1_000_000_007).is_ok());
    }
}
