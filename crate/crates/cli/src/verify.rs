//! Randomized property batteries behind `planetame verify`.
//!
//! Case `i` of every battery draws from its own generator seeded with
//! `seed + i`, so a run is reproducible from `(seed, count)` alone and any
//! single case can be replayed.

use num_traits::Zero;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

use planetame::coeffring::{CuspidalCubic, Integers, PrimeField, QPolyRing, QuadImag5, Rationals};
use planetame::gallery::{
    canonical_example, cuspidal_example, nagata, random_can_ex, random_field_decomposition,
    random_int, random_qpoly, random_rational, random_zr5, seeded_rng, BruteForcePrincipality,
};
use planetame::tamengine::{
    decide_tame, decide_tame_traced, inverse_decomposition, recheck_obstruction,
};
use planetame::{BiPoly, Domain, Field, ModuleVerdict, PolyMap, QPoly, Ring, TameVerdict};

use crate::grammar::parse_map;
use crate::report::Battery;

type Case = Result<(), String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Case {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn battery(
    name: &str,
    seed: u64,
    count: usize,
    mut case: impl FnMut(&mut ChaCha8Rng) -> Case,
) -> Battery {
    let mut b = Battery {
        name: name.to_string(),
        passed: 0,
        failed: 0,
        first_failure: None,
    };
    for i in 0..count {
        let case_seed = seed.wrapping_add(i as u64);
        match case(&mut seeded_rng(case_seed)) {
            Ok(()) => b.passed += 1,
            Err(e) => {
                b.failed += 1;
                b.first_failure
                    .get_or_insert(format!("case seed {case_seed}: {e}"));
            }
        }
    }
    b
}

fn round_trips<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> Case {
    let text = f.render(dom);
    match parse_map(dom, &text) {
        Ok(g) if g == *f => Ok(()),
        Ok(_) => Err(format!("{text} re-parses to a different map")),
        Err(e) => Err(format!("{text}: {e}")),
    }
}

/// Family members are tame exactly when `(z, w)` is principal, and every
/// certificate re-verifies.
fn family_case<D: Domain>(
    dom: &D,
    rng: &mut ChaCha8Rng,
    sample: impl FnMut(&mut ChaCha8Rng) -> D::Elem,
) -> Case {
    let spec = random_can_ex(dom, rng, sample);
    let (f, finv) = canonical_example(dom, &spec).map_err(|e| e.to_string())?;
    ensure(finv.compose(dom, &f).is_identity(dom), || {
        "Finv∘F is not the identity".to_string()
    })?;
    let principal = dom
        .two_gen_reduce(&spec.z, &spec.w)
        .map_err(|e| e.to_string())?
        .is_principal();
    match decide_tame(dom, &f) {
        TameVerdict::Tame(d) => {
            ensure(principal, || {
                "tame although (z, w) is not principal".to_string()
            })?;
            ensure(d.verify(dom), || {
                "decomposition does not recompose".to_string()
            })
        }
        TameVerdict::NotTame(o) => {
            ensure(!principal, || {
                "not tame although (z, w) is principal".to_string()
            })?;
            ensure(recheck_obstruction(dom, &o, None), || {
                format!("obstruction {} does not re-verify", o.kind())
            })
        }
        other => Err(format!("unexpected verdict {}", other.label())),
    }
}

pub fn run(seed: u64, count: usize) -> Vec<Battery> {
    let qz = QPolyRing::new("z");
    let fp = PrimeField::new(101).expect("101 is prime");
    let small_qz = |r: &mut ChaCha8Rng| random_qpoly(r, 1, 5);
    vec![
        battery("parse/print round trip", seed, count, |rng| {
            let z = random_qpoly(rng, 2, 9);
            round_trips(&qz, &nagata(&qz, &z))?;
            let (f, _) = canonical_example(
                &Integers,
                &random_can_ex(&Integers, rng, |r| random_int(r, 9)),
            )
            .map_err(|e| e.to_string())?;
            round_trips(&Integers, &f)?;
            let (f, _) = canonical_example(
                &QuadImag5,
                &random_can_ex(&QuadImag5, rng, |r| random_zr5(r, 3)),
            )
            .map_err(|e| e.to_string())?;
            round_trips(&QuadImag5, &f)?;
            let a = random_rational(rng, 5);
            let q = vec![
                QPoly::zero(),
                QPoly::zero(),
                QPoly::monomial(random_rational(rng, 5), 2),
            ];
            if let Ok((f, _)) = cuspidal_example(&a, q) {
                round_trips(&CuspidalCubic, &f)?;
            }
            let k = qz.fraction_field();
            let d = random_field_decomposition(&k, rng, 3, 6, |r| {
                let n = random_qpoly(r, 1, 4);
                let d = random_qpoly(r, 1, 4);
                k.div(&qz.embed(&n), &qz.embed(&d))
                    .unwrap_or_else(|| k.one())
            });
            round_trips(&k, &d.target)?;
            let d = random_field_decomposition(&Rationals, rng, 3, 6, |r| random_rational(r, 9));
            round_trips(&Rationals, &d.target)
        }),
        battery("family equivalence over Z", seed, count, |rng| {
            family_case(&Integers, rng, |r| random_int(r, 20))
        }),
        battery("family equivalence over Q[z]", seed, count, |rng| {
            family_case(&qz, rng, small_qz)
        }),
        battery("family equivalence over Z[r5]", seed, count, |rng| {
            family_case(&QuadImag5, rng, |r| random_zr5(r, 3))
        }),
        battery("field completeness over Q and F_101", seed, count, |rng| {
            let len = rng.gen_range(1..=6);
            let d = random_field_decomposition(&Rationals, rng, len, 12, |r| random_rational(r, 9));
            let run = decide_tame_traced(&Rationals, &d.target);
            ensure(run.verdict.is_tame(), || {
                format!("verdict {} over Q", run.verdict.label())
            })?;
            ensure(
                run.degrees
                    .iter()
                    .all(|v| v.d1 % v.d2 == 0 || v.d2 % v.d1 == 0),
                || "degree pair without divisibility".to_string(),
            )?;
            let d =
                random_field_decomposition(&fp, rng, len, 12, |r| fp.from_i64(r.gen_range(0..101)));
            let v = decide_tame(&fp, &d.target);
            ensure(v.decomposition().is_some_and(|x| x.verify(&fp)), || {
                format!("verdict {} over F_101", v.label())
            })
        }),
        battery("non-automorphisms rejected", seed, count, |rng| {
            let q = Rationals;
            let d = random_field_decomposition(&q, rng, 3, 6, |r| random_rational(r, 9));
            let (x, y) = (BiPoly::x(&q), BiPoly::y(&q));
            let bad = PolyMap::new(x.pow(&q, rng.gen_range(2..=3)), y);
            let f = d.target.compose(&q, &bad);
            ensure(
                matches!(decide_tame(&q, &f), TameVerdict::NotAutomorphismOverK(_)),
                || "a non-injective map was not rejected".to_string(),
            )
        }),
        battery("inverse round trip", seed, count, |rng| {
            let len = rng.gen_range(1..=6);
            let d = random_field_decomposition(&Rationals, rng, len, 12, |r| random_rational(r, 9));
            let inv = inverse_decomposition(&Rationals, &d.target)?;
            ensure(inv.inverts(&Rationals, &d.target), || {
                "not an inverse".to_string()
            })
        }),
        battery("principality oracle agreement", seed, count, |rng| {
            let (a, b) = (random_int(rng, 50), random_int(rng, 50));
            if !(a.is_zero() && b.is_zero()) {
                let fast = Integers.two_gen_reduce(&a, &b).map_err(|e| e.to_string())?;
                let slow = Integers.brute_force_principality(&a, &b, 100);
                ensure(fast.is_principal() == slow.is_principal(), || {
                    format!("disagree on ({a}, {b})")
                })?;
            }
            let (x, y) = (random_zr5(rng, 4), random_zr5(rng, 4));
            if !(x.is_zero() && y.is_zero()) {
                let fast = QuadImag5
                    .two_gen_reduce(&x, &y)
                    .map_err(|e| e.to_string())?;
                let slow = QuadImag5.brute_force_principality(&x, &y, 100);
                if !matches!(slow, ModuleVerdict::Unknown { .. }) {
                    ensure(fast.is_principal() == slow.is_principal(), || {
                        format!(
                            "disagree on ({}, {})",
                            QuadImag5.render(&x),
                            QuadImag5.render(&y)
                        )
                    })?;
                }
            }
            Ok(())
        }),
    ]
}
