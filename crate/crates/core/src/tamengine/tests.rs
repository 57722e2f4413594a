use num_bigint::BigInt;

use super::*;
use crate::coeffring::{Integers, QPolyRing, RatFunc};
use crate::gallery::{canonical_example, nagata, nagata_inverse, CanExSpec};
use crate::scalar::rat;
use crate::QPoly;

fn z() -> QPoly {
    QPoly::x()
}

fn z_minus(c: i64) -> QPoly {
    QPoly::from_vec(vec![rat(-c), rat(1)])
}

#[test]
fn nagata_first_step_over_field() {
    let r = QPolyRing::new("z");
    let k = r.fraction_field();
    let f = embed_map(&r, &nagata(&r, &z()));
    let view = LocalView::field(&r);
    let Step::Reduced { factor, next } = reduction_step(&view, &f, 0).unwrap() else {
        panic!("expected a reduction");
    };
    let minus_inv_z = RatFunc::new(&QPoly::constant(rat(-1)), &z()).unwrap();
    assert_eq!(
        factor,
        Factor::Elementary {
            axis: Axis::First,
            p: vec![k.zero(), k.zero(), k.neg(&minus_inv_z)]
        }
    );
    // (X + Y^2/z, z^2 X + z Y^2 + Y)
    let zk = r.embed(&z());
    let x = BiPoly::x(&k);
    let y = BiPoly::y(&k);
    let inv_z = k.inv(&zk).unwrap();
    let expected = PolyMap::new(
        x.add(&k, &y.pow(&k, 2).scale(&k, &inv_z)),
        x.scale(&k, &k.mul(&zk, &zk))
            .add(&k, &y.pow(&k, 2).scale(&k, &zk))
            .add(&k, &y),
    );
    assert_eq!(next, expected);
    assert_eq!(next.deg_vec(), Some(DegVec { d1: 2, d2: 2 }));
}

#[test]
fn nagata_not_tame_over_polynomial_ring() {
    let r = QPolyRing::new("z");
    let v = decide_tame(&r, &nagata(&r, &z()));
    match v {
        TameVerdict::NotTame(Obstruction::CoefficientNotInRing { c, step }) => {
            assert_eq!(step, 0);
            assert_eq!(c.num, QPoly::constant(rat(-1)));
            assert_eq!(c.den, z());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn nagata_tame_over_field_and_inverse() {
    let r = QPolyRing::new("z");
    let k = r.fraction_field();
    let f = embed_map(&r, &nagata(&r, &z()));
    let TameVerdict::Tame(d) = decide_tame_over_k(&r, &f) else {
        panic!("tame over the field");
    };
    assert!(d.verify(&k));
    let inv = inverse_over_k(&r, &f).unwrap();
    assert_eq!(inv, embed_map(&r, &nagata_inverse(&r, &z())));
    assert!(is_automorphism(&r, &f));
}

#[test]
fn can_ex_over_integers_first_step() {
    let zz = Integers;
    let spec = CanExSpec::new(
        &zz,
        BigInt::from(2),
        BigInt::from(3),
        vec![BigInt::from(0), BigInt::from(0), BigInt::from(1)],
    )
    .unwrap();
    let (f, _) = canonical_example(&zz, &spec).unwrap();
    let Step::Reduced { factor, .. } = reduction_step(&GlobalView { dom: &zz }, &f, 0).unwrap()
    else {
        panic!("expected a reduction");
    };
    let i = |n: i64| BigInt::from(n);
    assert_eq!(
        factor,
        Factor::linear(&zz, [[i(-2), i(-3)], [i(1), i(1)]]).unwrap()
    );
    assert!(decide_tame(&zz, &f).is_tame());
}

#[test]
fn nagata_locally() {
    let r = QPolyRing::new("z");
    let f = nagata(&r, &z());
    let at_z = decide_locally_tame(&r, &f, &PrimeSpec::Element(z())).unwrap();
    assert!(at_z.is_not_tame(), "{at_z:?}");
    let at_one = decide_locally_tame(&r, &f, &PrimeSpec::Element(z_minus(1))).unwrap();
    assert!(at_one.is_tame(), "{at_one:?}");
}

#[test]
fn nagata_minimal_overrings() {
    let r = QPolyRing::new("z");
    let res = minimal_overring(&r, &nagata(&r, &z())).unwrap();
    assert_eq!(res.r, z());
    assert!(res.is_certified_minimal());

    let zz = Integers;
    let res = minimal_overring(&zz, &nagata(&zz, &BigInt::from(2))).unwrap();
    assert_eq!(res.r, BigInt::from(2));
    assert_eq!(res.primes, vec![(BigInt::from(2), 0)]);
    assert!(res.is_certified_minimal());

    let res = minimal_overring(&zz, &nagata(&zz, &BigInt::from(1))).unwrap();
    assert_eq!(res.r, BigInt::from(1));
    assert!(res.primes.is_empty());
}

#[test]
fn trace_and_degenerate_maps() {
    let r = QPolyRing::new("z");
    let run = decide_tame_traced(&r, &nagata(&r, &QPoly::zero()));
    assert!(run.verdict.is_tame());
    assert_eq!(run.degrees[0], DegVec { d1: 3, d2: 1 });

    let x = BiPoly::x(&r);
    let squash = PolyMap::new(x.clone(), x.pow(&r, 2));
    assert!(matches!(
        decide_tame(&r, &squash),
        TameVerdict::NotAutomorphismOverK(_)
    ));
    let ident = PolyMap::identity(&r);
    assert!(decide_tame(&r, &ident).is_tame());
    let twice = PolyMap::new(x.scale(&r, &QPoly::constant(rat(2))), BiPoly::y(&r));
    assert!(decide_tame(&r, &twice).is_tame());

    let zz = Integers;
    let twice = PolyMap::new(BiPoly::x(&zz).scale(&zz, &BigInt::from(2)), BiPoly::y(&zz));
    assert!(matches!(
        decide_tame(&zz, &twice),
        TameVerdict::NotTame(Obstruction::FinalAffineNotInvertible { .. })
    ));
}

#[test]
fn obstructions_recheck() {
    let r = QPolyRing::new("z");
    let f = nagata(&r, &z());
    let o = decide_tame(&r, &f).obstruction().cloned().unwrap();
    assert!(recheck_obstruction(&r, &o, None));
    let at_z = PrimeSpec::Element(z());
    let v = decide_locally_tame(&r, &f, &at_z).unwrap();
    assert!(recheck_obstruction(
        &r,
        v.obstruction().unwrap(),
        Some(&at_z)
    ));
    // the same coefficient is fine away from z
    assert!(!recheck_obstruction(
        &r,
        &o,
        Some(&PrimeSpec::Element(z_minus(1)))
    ));

    let zz = Integers;
    let twice = PolyMap::new(BiPoly::x(&zz).scale(&zz, &BigInt::from(2)), BiPoly::y(&zz));
    let o = decide_tame(&zz, &twice).obstruction().cloned().unwrap();
    assert!(recheck_obstruction(&zz, &o, None));
    assert!(!recheck_obstruction(
        &zz,
        &Obstruction::DegreeDivisibility {
            d1: 2,
            d2: 4,
            step: 0
        },
        None
    ));
}
