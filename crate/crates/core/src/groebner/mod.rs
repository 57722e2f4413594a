//! Gröbner and gcd kernel for `Q[z, w]`.
//!
//! Fixed graded reverse lexicographic order; Buchberger with full cofactor
//! tracking so every unit-ideal answer is constructive.

mod buchberger;
mod gcd;
mod mpoly2;

pub use buchberger::{
    divide, groebner_basis, ideal_membership, saturation_cofactors, unit_ideal_cofactors, Division,
    GroebnerBasis, Saturation,
};
pub(crate) use gcd::is_unit_constant;
pub use gcd::{gcd_bivar, gcd_many};
pub use mpoly2::{MPoly2, Mono};
