//! Deciding tameness of polynomial automorphisms of the plane over
//! commutative rings.
//!
//! A map `F = (F1, F2)` with coefficients in a domain `R` is run through a
//! degree-reduction loop over the fraction field `K`. Each step either peels
//! off an elementary map, or (when the top components have equal degree)
//! needs the ideal generated by the two leading coefficients to be principal.
//! Over a field everything goes through; over a ring the loop can be blocked,
//! and the blocking step is reported as an obstruction.
//!
//! Modules, bottom up:
//! - [`coeffring`]: the ring portfolio and ideal principality;
//! - [`groebner`]: bivariate polynomials over `Q`, gcds, Groebner bases;
//! - [`bivariate`]: polynomials in `X, Y` over any of those rings;
//! - [`autmap`]: maps, affine and elementary factors, composition;
//! - [`tamengine`]: the reduction loop and its global and local variants;
//! - [`gallery`]: named examples, random generators and brute-force oracles.

pub mod autmap;
pub mod bivariate;
pub mod coeffring;
pub mod gallery;
pub mod groebner;
pub mod scalar;
pub mod tamengine;
pub mod upoly;

use num_rational::BigRational;

pub use autmap::{Decomposition, DegVec, Factor, PolyMap};
pub use bivariate::BiPoly;
pub use coeffring::{
    Domain, Field, FracCoeff, GcdDomain, ModuleVerdict, NonPrincipalWitness, Pid, PrimeSpec,
    PrincipalCert, Ring, RingDescriptor, RingError, RingKind,
};
pub use scalar::Scalar;
pub use tamengine::{Obstruction, TameVerdict};
pub use upoly::UPoly;

/// Univariate polynomials over `Q`.
pub type QPoly = UPoly<BigRational>;
/// Bivariate polynomials over `Q` in the coefficient variables.
pub type QPoly2 = groebner::MPoly2<BigRational>;

/// `Z[1/n]`.
pub type ZLoc = coeffring::Localized<coeffring::Integers>;
/// `Q[z][1/f]`.
pub type QzLoc = coeffring::Localized<coeffring::QPolyRing>;
/// `Q[z, w][1/f]`.
pub type QzwLoc = coeffring::Localized<coeffring::QBivarRing>;
