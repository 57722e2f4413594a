//! Bivariate gcd over a field via the primitive polynomial remainder sequence.
//!
//! The input is viewed in `(k[w])[z]`: contents are univariate gcds in `w`,
//! primitive parts are handled by pseudo-division in `z`.

use super::mpoly2::MPoly2;
use crate::scalar::Scalar;
use crate::upoly::UPoly;

type Col<T> = Vec<UPoly<T>>;

fn trim<T: Scalar>(v: &mut Col<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content<T: Scalar>(v: &Col<T>) -> UPoly<T> {
    v.iter().fold(UPoly::zero(), |g, c| g.gcd(c))
}

fn primitive_part<T: Scalar>(v: &Col<T>) -> Col<T> {
    let c = content(v);
    if c.is_zero() {
        return Vec::new();
    }
    v.iter()
        .map(|x| x.exact_div(&c).expect("content divides every coefficient"))
        .collect()
}

/// Pseudo-remainder of `f` by `g` in `(k[w])[z]`.
fn pseudo_rem<T: Scalar>(f: &Col<T>, g: &Col<T>) -> Col<T> {
    let dg = g.len() - 1;
    let lc = g[dg].clone();
    let mut r = f.clone();
    trim(&mut r);
    while r.len() > dg {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - dg;
        for c in r.iter_mut() {
            *c = &*c * &lc;
        }
        for (i, gc) in g.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * gc);
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor of two bivariate polynomials, normalized so the
/// grevlex-leading coefficient is one. Returns zero only for two zero inputs.
pub fn gcd_bivar<T: Scalar>(a: &MPoly2<T>, b: &MPoly2<T>) -> MPoly2<T> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let (va, vb) = (a.to_z_major(), b.to_z_major());
    let c = content(&va).gcd(&content(&vb));
    let (mut f, mut g) = (primitive_part(&va), primitive_part(&vb));
    if f.len() < g.len() {
        std::mem::swap(&mut f, &mut g);
    }
    let pp = loop {
        if g.len() == 1 {
            break vec![UPoly::one()];
        }
        let r = pseudo_rem(&f, &g);
        if r.is_empty() {
            break g;
        }
        f = g;
        g = primitive_part(&r);
    };
    let cz = MPoly2::from_z_major(&[c]);
    (&MPoly2::from_z_major(&pp) * &cz).monic()
}

/// `gcd_bivar` on a whole list.
pub fn gcd_many<T: Scalar>(items: &[MPoly2<T>]) -> MPoly2<T> {
    items.iter().fold(MPoly2::zero(), |g, x| gcd_bivar(&g, x))
}

pub(crate) fn is_unit_constant<T: Scalar>(p: &MPoly2<T>) -> bool {
    p.as_constant().is_some_and(|c| !c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::mpoly2::Mono;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = MPoly2<BigRational>;

    fn zw(terms: &[(u32, u32, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(i, j, c)| (Mono::new(i, j), rat(c))))
    }

    #[test]
    fn examples() {
        // (z^2 - w^2, z - w) -> z - w
        let a = zw(&[(2, 0, 1), (0, 2, -1)]);
        let b = zw(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(gcd_bivar(&a, &b), b);
        // (z, w) -> 1
        assert_eq!(gcd_bivar(&P::z(), &P::w()), P::one());
        // (z^2 w + z w^2, z w) -> z w
        let a = zw(&[(2, 1, 1), (1, 2, 1)]);
        let b = zw(&[(1, 1, 1)]);
        assert_eq!(gcd_bivar(&a, &b), b);
    }

    #[test]
    fn content_in_w_only() {
        // (w^2 - 1) * (z + 1) and (w - 1) * (z^2 + w)
        let a = &zw(&[(0, 2, 1), (0, 0, -1)]) * &zw(&[(1, 0, 1), (0, 0, 1)]);
        let b = &zw(&[(0, 1, 1), (0, 0, -1)]) * &zw(&[(2, 0, 1), (0, 1, 1)]);
        assert_eq!(gcd_bivar(&a, &b), zw(&[(0, 1, 1), (0, 0, -1)]));
        assert!(is_unit_constant(&gcd_bivar(
            &P::z(),
            &(&P::z() + &P::one())
        )));
    }
}
