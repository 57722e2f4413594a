//! Rank-two sublattices of `Z^2`, used for ideals of `Z[sqrt(-5)]` with
//! `x + y*sqrt(-5)` stored as `(x, y)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::integers::int_ext_gcd;
use super::quad5::Zr5;

/// Hermite basis `(a, b), (0, c)` with `a, c > 0` and `0 <= b < c`, plus the
/// integer combinations of the input vectors giving each basis row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    t1: Vec<BigInt>,
    t2: Vec<BigInt>,
}

#[derive(Clone)]
struct Row {
    x: BigInt,
    y: BigInt,
    t: Vec<BigInt>,
}

impl Row {
    fn combine(&self, s: &BigInt, other: &Row, u: &BigInt) -> Row {
        Row {
            x: s * &self.x + u * &other.x,
            y: s * &self.y + u * &other.y,
            t: self
                .t
                .iter()
                .zip(&other.t)
                .map(|(p, q)| s * p + u * q)
                .collect(),
        }
    }
}

impl Lattice {
    /// `None` when the vectors do not span a rank-two lattice.
    pub fn from_vectors(gens: &[(BigInt, BigInt)]) -> Option<Lattice> {
        let n = gens.len();
        let unit = |i: usize| {
            (0..n)
                .map(|j| BigInt::from((i == j) as u8))
                .collect::<Vec<_>>()
        };
        let zero_row = Row {
            x: BigInt::zero(),
            y: BigInt::zero(),
            t: vec![BigInt::zero(); n],
        };
        let one = BigInt::from(1);
        let mut piv = zero_row.clone();
        let mut rest: Vec<Row> = Vec::new();
        for (i, (x, y)) in gens.iter().enumerate() {
            let row = Row {
                x: x.clone(),
                y: y.clone(),
                t: unit(i),
            };
            if row.x.is_zero() {
                rest.push(row);
            } else if piv.x.is_zero() {
                rest.push(std::mem::replace(&mut piv, row));
            } else {
                let (g, s, u) = int_ext_gcd(&piv.x, &row.x);
                let new = piv.combine(&s, &row, &u);
                let other = piv.combine(&(&row.x / &g), &row, &-(&piv.x / &g));
                rest.push(other);
                piv = new;
            }
        }
        let mut col = zero_row;
        for r in rest {
            if r.y.is_zero() {
                continue;
            }
            let (_, s, u) = int_ext_gcd(&col.y, &r.y);
            col = col.combine(&s, &r, &u);
        }
        if piv.x.is_zero() || col.y.is_zero() {
            return None;
        }
        if piv.x.is_negative() {
            piv = piv.combine(&-&one, &col, &BigInt::zero());
        }
        let q = piv.y.div_floor(&col.y);
        piv = piv.combine(&one, &col, &-q);
        Some(Lattice {
            a: piv.x,
            b: piv.y,
            c: col.y,
            t1: piv.t,
            t2: col.t,
        })
    }

    /// The ideal generated by `gens`; coordinates refer to the list
    /// `g0, g0*r5, g1, g1*r5, ...`.
    pub fn ideal(gens: &[Zr5]) -> Option<Lattice> {
        let mut vs = Vec::with_capacity(2 * gens.len());
        for g in gens {
            vs.push((g.re.clone(), g.im.clone()));
            vs.push((-BigInt::from(5) * &g.im, g.re.clone()));
        }
        Lattice::from_vectors(&vs)
    }

    /// Group index in `Z^2`, the norm of the ideal.
    pub fn index(&self) -> BigInt {
        &self.a * &self.c
    }

    pub fn basis(&self) -> [(BigInt, BigInt); 2] {
        [
            (self.a.clone(), self.b.clone()),
            (BigInt::zero(), self.c.clone()),
        ]
    }

    /// Combination of the input vectors equal to `(x, y)`.
    pub fn coords(&self, x: &BigInt, y: &BigInt) -> Option<Vec<BigInt>> {
        let (k1, r) = x.div_rem(&self.a);
        if !r.is_zero() {
            return None;
        }
        let (k2, r) = (y - &k1 * &self.b).div_rem(&self.c);
        if !r.is_zero() {
            return None;
        }
        Some(
            self.t1
                .iter()
                .zip(&self.t2)
                .map(|(p, q)| &k1 * p + &k2 * q)
                .collect(),
        )
    }

    pub fn contains(&self, e: &Zr5) -> bool {
        self.coords(&e.re, &e.im).is_some()
    }

    /// Product of two ideals.
    pub fn mul(&self, other: &Lattice) -> Lattice {
        let mine = self.basis().map(|(x, y)| Zr5 { re: x, im: y });
        let theirs = other.basis().map(|(x, y)| Zr5 { re: x, im: y });
        let mut vs = Vec::new();
        for p in &mine {
            for q in &theirs {
                let r = p.mul(q);
                vs.push((r.re, r.im));
            }
        }
        Lattice::from_vectors(&vs).expect("product of nonzero ideals is nonzero")
    }

    /// Largest `k` with `x` in the `k`-th power of this ideal (`x != 0`,
    /// ideal proper).
    pub fn valuation(&self, x: &Zr5) -> u32 {
        let mut k = 0;
        let mut pow = self.clone();
        while pow.contains(x) {
            k += 1;
            pow = pow.mul(self);
        }
        k
    }
}
