//! Buchberger's algorithm with cofactor tracking.
//!
//! Every basis element carries its expression as a combination of the input
//! generators, so unit-ideal and membership answers come with certificates.

use std::collections::VecDeque;

use super::mpoly2::{MPoly2, Mono};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GroebnerBasis<T> {
    /// Reduced basis, monic, sorted by ascending leading monomial.
    pub polys: Vec<MPoly2<T>>,
    /// `polys[i] == sum_j cofactors[i][j] * gens[j]`.
    pub cofactors: Vec<Vec<MPoly2<T>>>,
}

/// Result of dividing by a basis: `p == sum q_k * polys[k] + remainder`.
#[derive(Clone, Debug)]
pub struct Division<T> {
    pub quotients: Vec<MPoly2<T>>,
    pub remainder: MPoly2<T>,
}

fn combine<T: Scalar>(acc: &mut [MPoly2<T>], other: &[MPoly2<T>], c: &T, m: Mono) {
    for (a, o) in acc.iter_mut().zip(other) {
        *a = &*a + &o.mul_term(c, m);
    }
}

/// Full reduction of `p` by the polynomials `basis` (any order, leading terms
/// taken under grevlex).
pub fn divide<T: Scalar>(p: &MPoly2<T>, basis: &[MPoly2<T>]) -> Division<T> {
    let mut quotients = vec![MPoly2::zero(); basis.len()];
    let mut remainder = MPoly2::zero();
    let mut rest = p.clone();
    while let Some((m, c)) = rest.leading() {
        let c = c.clone();
        let hit = basis.iter().enumerate().find_map(|(k, g)| {
            let (lm, lc) = g.leading()?;
            lm.divides(m).then(|| (k, lm, lc.clone()))
        });
        match hit {
            Some((k, lm, lc)) => {
                let q = c / lc;
                let qm = lm.cofactor_in(m);
                rest = &rest - &basis[k].mul_term(&q, qm);
                quotients[k] = &quotients[k] + &MPoly2::term(q, qm);
            }
            None => {
                let t = MPoly2::term(c, m);
                rest = &rest - &t;
                remainder = &remainder + &t;
            }
        }
    }
    Division {
        quotients,
        remainder,
    }
}

struct Entry<T> {
    poly: MPoly2<T>,
    cof: Vec<MPoly2<T>>,
}

fn reduce_entry<T: Scalar>(e: Entry<T>, basis: &[Entry<T>]) -> Entry<T> {
    let polys: Vec<MPoly2<T>> = basis.iter().map(|b| b.poly.clone()).collect();
    let div = divide(&e.poly, &polys);
    let mut cof = e.cof;
    for (q, b) in div.quotients.iter().zip(basis) {
        for (qm, qc) in q.terms() {
            combine(&mut cof, &b.cof, &-qc.clone(), *qm);
        }
    }
    Entry {
        poly: div.remainder,
        cof,
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// The zero ideal yields an empty basis.
pub fn groebner_basis<T: Scalar>(gens: &[MPoly2<T>]) -> GroebnerBasis<T> {
    let n = gens.len();
    let unit = |i: usize| -> Vec<MPoly2<T>> {
        (0..n)
            .map(|j| {
                if i == j {
                    MPoly2::one()
                } else {
                    MPoly2::zero()
                }
            })
            .collect()
    };
    let mut basis: Vec<Entry<T>> = gens
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| Entry {
            poly: g.clone(),
            cof: unit(i),
        })
        .collect();

    let mut pairs: VecDeque<(usize, usize)> = VecDeque::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push_back((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop_front() {
        let (mi, ci) = {
            let (m, c) = basis[i].poly.leading().expect("nonzero basis element");
            (m, c.clone())
        };
        let (mj, cj) = {
            let (m, c) = basis[j].poly.leading().expect("nonzero basis element");
            (m, c.clone())
        };
        // coprime leading monomials: the S-polynomial reduces to zero
        if mi.lcm(mj) == mi.mul(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let (fi, fj) = (T::one() / ci, T::one() / cj);
        let (ui, uj) = (mi.cofactor_in(l), mj.cofactor_in(l));
        let poly = &basis[i].poly.mul_term(&fi, ui) - &basis[j].poly.mul_term(&fj, uj);
        let mut cof = vec![MPoly2::zero(); n];
        combine(&mut cof, &basis[i].cof, &fi, ui);
        combine(&mut cof, &basis[j].cof, &-fj, uj);
        let red = reduce_entry(Entry { poly, cof }, &basis);
        if !red.poly.is_zero() {
            let k = basis.len();
            basis.push(red);
            for i in 0..k {
                pairs.push_back((i, k));
            }
        }
    }

    // minimize: drop elements whose leading monomial is a multiple of another's
    let mut keep: Vec<Entry<T>> = Vec::new();
    for (idx, e) in basis.iter().enumerate() {
        let lm = e.poly.leading_mono().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(jdx, o)| {
            let om = o.poly.leading_mono().expect("nonzero");
            jdx != idx && om.divides(lm) && (om != lm || jdx < idx)
        });
        if !redundant {
            keep.push(Entry {
                poly: e.poly.clone(),
                cof: e.cof.clone(),
            });
        }
    }

    // interreduce and normalize
    let mut reduced: Vec<Entry<T>> = Vec::new();
    for k in 0..keep.len() {
        let others: Vec<Entry<T>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, e)| Entry {
                poly: e.poly.clone(),
                cof: e.cof.clone(),
            })
            .collect();
        let lead = keep[k].poly.leading().map(|(m, c)| (m, c.clone()));
        let (lm, lc) = lead.expect("nonzero");
        // keep the leading term, reduce the tail
        let tail = &keep[k].poly - &MPoly2::term(lc.clone(), lm);
        let red_tail = reduce_entry(
            Entry {
                poly: tail,
                cof: vec![MPoly2::zero(); n],
            },
            &others,
        );
        let poly = &MPoly2::term(lc.clone(), lm) + &red_tail.poly;
        let mut cof = keep[k].cof.clone();
        // tail - sum q*others = red_tail.poly, red_tail.cof holds -sum q*cof(others)
        for (a, b) in cof.iter_mut().zip(&red_tail.cof) {
            *a = &*a + b;
        }
        let inv = T::one() / lc;
        reduced.push(Entry {
            poly: poly.scale(&inv),
            cof: cof.iter().map(|c| c.scale(&inv)).collect(),
        });
    }
    reduced.sort_by_key(|e| e.poly.leading_mono());
    GroebnerBasis {
        polys: reduced.iter().map(|e| e.poly.clone()).collect(),
        cofactors: reduced.into_iter().map(|e| e.cof).collect(),
    }
}

impl<T: Scalar> GroebnerBasis<T> {
    pub fn is_unit_ideal(&self) -> bool {
        self.polys.len() == 1 && self.polys[0] == MPoly2::one()
    }

    /// Express `p` in the input generators if it lies in the ideal.
    pub fn lift(&self, p: &MPoly2<T>) -> Option<Vec<MPoly2<T>>> {
        let div = divide(p, &self.polys);
        if !div.remainder.is_zero() {
            return None;
        }
        let n = self.cofactors.first().map_or(0, |c| c.len());
        let mut out = vec![MPoly2::zero(); n];
        for (q, cof) in div.quotients.iter().zip(&self.cofactors) {
            for (m, c) in q.terms() {
                combine(&mut out, cof, c, *m);
            }
        }
        Some(out)
    }

    /// `dim_k k[z,w]/I` when the ideal is zero-dimensional.
    pub fn quotient_dimension(&self) -> Option<u64> {
        let lms: Vec<Mono> = self.polys.iter().filter_map(|p| p.leading_mono()).collect();
        let az = lms.iter().filter(|m| m.w == 0).map(|m| m.z).min()?;
        let bw = lms.iter().filter(|m| m.z == 0).map(|m| m.w).min()?;
        let mut count = 0;
        for i in 0..az {
            for j in 0..bw {
                let m = Mono::new(i, j);
                if !lms.iter().any(|l| l.divides(m)) {
                    count += 1;
                }
            }
        }
        Some(count)
    }

    /// S-polynomials of every pair reduce to zero.
    pub fn is_groebner(&self) -> bool {
        for j in 0..self.polys.len() {
            for i in 0..j {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let (ma, ca) = a.leading().expect("nonzero");
                let (mb, cb) = b.leading().expect("nonzero");
                let l = ma.lcm(mb);
                let s = &a.mul_term(&(T::one() / ca.clone()), ma.cofactor_in(l))
                    - &b.mul_term(&(T::one() / cb.clone()), mb.cofactor_in(l));
                if !divide(&s, &self.polys).remainder.is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// `Some((s, t))` with `s*a + t*b == 1` when `(a, b)` is the unit ideal.
pub fn unit_ideal_cofactors<T: Scalar>(
    a: &MPoly2<T>,
    b: &MPoly2<T>,
) -> Option<(MPoly2<T>, MPoly2<T>)> {
    let gb = groebner_basis(&[a.clone(), b.clone()]);
    if !gb.is_unit_ideal() {
        return None;
    }
    let cof = &gb.cofactors[0];
    let (s, t) = (cof[0].clone(), cof[1].clone());
    debug_assert!((&(&s * a) + &(&t * b)) == MPoly2::one());
    Some((s, t))
}

pub fn ideal_membership<T: Scalar>(g: &MPoly2<T>, gens: &[MPoly2<T>]) -> bool {
    let gb = groebner_basis(gens);
    divide(g, &gb.polys).remainder.is_zero()
}

/// Outcome of asking whether `(a, b)` becomes the unit ideal once `f` is
/// inverted.
#[derive(Clone, Debug)]
pub enum Saturation<T> {
    /// `u*a + v*b == f^k`.
    Unit { u: MPoly2<T>, v: MPoly2<T>, k: u32 },
    /// `f^k` is not in the ideal for `k` equal to the quotient dimension, so no
    /// power of `f` is.
    NotUnit {
        basis: Vec<MPoly2<T>>,
        dimension: u64,
    },
    /// The ideal is not zero-dimensional (only possible for non-coprime input).
    PositiveDimension { basis: Vec<MPoly2<T>> },
}

/// Decide whether some power of `f` lies in `(a, b)` for a zero-dimensional
/// ideal, using that nilpotents of a `D`-dimensional algebra vanish at power `D`.
pub fn saturation_cofactors<T: Scalar>(
    a: &MPoly2<T>,
    b: &MPoly2<T>,
    f: &MPoly2<T>,
) -> Saturation<T> {
    let gb = groebner_basis(&[a.clone(), b.clone()]);
    if gb.is_unit_ideal() {
        let cof = &gb.cofactors[0];
        return Saturation::Unit {
            u: cof[0].clone(),
            v: cof[1].clone(),
            k: 0,
        };
    }
    let Some(dim) = gb.quotient_dimension() else {
        return Saturation::PositiveDimension { basis: gb.polys };
    };
    let k = dim.max(1) as u32;
    match gb.lift(&f.pow(k)) {
        Some(cof) => Saturation::Unit {
            u: cof[0].clone(),
            v: cof[1].clone(),
            k,
        },
        None => Saturation::NotUnit {
            basis: gb.polys,
            dimension: dim,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    type P = MPoly2<BigRational>;

    fn zw(terms: &[(u32, u32, i64)]) -> P {
        P::from_terms(terms.iter().map(|&(i, j, c)| (Mono::new(i, j), rat(c))))
    }

    #[test]
    fn unit_ideal_examples() {
        let z = P::z();
        let one_minus_z = &P::one() - &z;
        let (s, t) = unit_ideal_cofactors(&z, &one_minus_z).unwrap();
        assert_eq!(&(&s * &z) + &(&t * &one_minus_z), P::one());
        assert!(unit_ideal_cofactors(&z, &P::w()).is_none());
        let a = zw(&[(1, 0, 1), (0, 0, 1)]);
        let b = zw(&[(2, 0, 1)]);
        let (s, t) = unit_ideal_cofactors(&a, &b).unwrap();
        assert_eq!(&(&s * &a) + &(&t * &b), P::one());
    }

    #[test]
    fn membership_examples() {
        let z = P::z();
        let w = P::w();
        assert!(ideal_membership(&(&z + &w), &[z.clone(), w.clone()]));
        assert!(!ideal_membership(&P::one(), &[z.clone(), w.clone()]));
        // z^2 = (z + w)(z - w) + w^2
        assert!(ideal_membership(&(&z * &z), &[&z - &w, &w * &w]));
    }

    #[test]
    fn reduced_basis_is_groebner() {
        let gens = [zw(&[(2, 0, 1), (0, 1, -1)]), zw(&[(1, 1, 1), (0, 0, -1)])];
        let gb = groebner_basis(&gens);
        assert!(gb.is_groebner());
        for (p, cof) in gb.polys.iter().zip(&gb.cofactors) {
            let recombined = &(&cof[0] * &gens[0]) + &(&cof[1] * &gens[1]);
            assert_eq!(&recombined, p);
        }
    }

    #[test]
    fn saturation_by_inverting() {
        // (w, -z) becomes the unit ideal after inverting z
        let s = saturation_cofactors(&P::w(), &-&P::z(), &P::z());
        match s {
            Saturation::Unit { u, v, k } => {
                assert_eq!(&(&u * &P::w()) + &(&v * &-&P::z()), P::z().pow(k));
            }
            other => panic!("unexpected {other:?}"),
        }
        // (z, w) stays proper after inverting z + 1
        let f = &P::z() + &P::one();
        assert!(matches!(
            saturation_cofactors(&P::z(), &P::w(), &f),
            Saturation::NotUnit { dimension: 1, .. }
        ));
    }
}
