use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{field_domain, Field, Ring, RingDescriptor, RingError, RingKind, RingResult};
use crate::scalar::Scalar;

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> RingDescriptor {
        RingDescriptor::new(RingKind::RationalField)
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }

    fn exact_div(&self, a: &BigRational, b: &BigRational) -> RingResult<Option<BigRational>> {
        if b.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Some(a / b))
    }

    fn render(&self, a: &BigRational) -> String {
        a.render()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

field_domain!(Rationals);
