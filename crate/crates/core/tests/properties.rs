use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::Rng as _;

use planetame::autmap::compose_factors;
use planetame::bivariate::{extract_ideal_pair, power_proportionality};
use planetame::coeffring::{
    small_primes, Integers, Lattice, Localized, PrimeField, QBivarRing, QPolyRing, QuadImag5,
    Rationals, Zr5,
};
use planetame::gallery::{
    canonical_example, nagata, random_can_ex, random_factor, random_field_decomposition,
    random_int, random_qpoly, random_qpoly2, random_rational, random_zr5, seeded_rng,
    BruteForcePrincipality, CanExSpec,
};
use planetame::groebner::{
    divide, gcd_bivar, groebner_basis, ideal_membership, unit_ideal_cofactors, Mono,
};
use planetame::scalar::rat;
use planetame::tamengine::{
    decide_locally_tame, decide_tame, decide_tame_over_k, decide_tame_traced,
    inverse_decomposition, recheck_obstruction,
};
use planetame::{
    BiPoly, Decomposition, Domain, Factor, GcdDomain, ModuleVerdict, Pid, PolyMap, PrimeSpec,
    QPoly, QPoly2, Ring, TameVerdict,
};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig {
        cases: n,
        ..ProptestConfig::default()
    }
}

fn int(h: i64) -> impl Strategy<Value = BigInt> {
    (-h..=h).prop_map(BigInt::from)
}

fn qpoly(deg: usize, h: i64) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-h..=h, 0..=deg + 1)
        .prop_map(|v| QPoly::from_vec(v.into_iter().map(rat).collect()))
}

fn qpoly2(deg: u32, h: i64) -> impl Strategy<Value = QPoly2> {
    prop::collection::vec((0..=deg, 0..=deg, -h..=h), 0..5).prop_map(move |ts| {
        QPoly2::from_terms(
            ts.into_iter()
                .filter(|(i, j, _)| i + j <= deg)
                .map(|(i, j, c)| (Mono::new(i, j), rat(c))),
        )
    })
}

fn zr5(h: i64) -> impl Strategy<Value = Zr5> {
    (-h..=h, -h..=h).prop_map(|(a, b)| Zr5::new(a, b))
}

fn bipoly_z(deg: u32, h: i64) -> impl Strategy<Value = BiPoly<BigInt>> {
    prop::collection::vec((0..=deg, 0..=deg, -h..=h), 0..6).prop_map(|ts| {
        BiPoly::from_terms(
            &Integers,
            ts.into_iter().map(|(i, j, c)| ((i, j), BigInt::from(c))),
        )
    })
}

fn cert_holds<D: Domain>(d: &D, a: &D::Elem, b: &D::Elem) -> bool {
    if d.is_zero(a) && d.is_zero(b) {
        return true;
    }
    match d.two_gen_reduce(a, b).unwrap() {
        ModuleVerdict::Principal(c) => c.verify(d, a, b),
        _ => true,
    }
}

fn global_implies_local<D: Domain>(
    d: &D,
    a: &D::Elem,
    b: &D::Elem,
    p: &PrimeSpec<D::Elem>,
) -> bool {
    if d.is_zero(a) && d.is_zero(b) {
        return true;
    }
    !(d.two_gen_reduce(a, b).unwrap().is_principal()
        && d.two_gen_reduce_at(a, b, p).unwrap().is_not_principal())
}

fn embed_map<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> PolyMap<<D::Frac as Ring>::Elem> {
    f.map_coeffs(&dom.fraction_field(), |c| dom.embed(c))
}

// ---- coefficient rings ----

proptest! {
    #![proptest_config(cases(200))]

    #[test]
    fn certificates_verify_over_integers(a in int(60), b in int(60)) {
        prop_assert!(cert_holds(&Integers, &a, &b));
    }

    #[test]
    fn integer_generator_is_the_gcd(a in int(60), b in int(60)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let zz = Integers;
        let ModuleVerdict::Principal(c) = zz.two_gen_reduce(&a, &b).unwrap() else {
            return Err(TestCaseError::fail("integers are a PID"));
        };
        prop_assert_eq!(zz.normalize(&c.g), zz.ext_gcd(&a, &b).0);
        prop_assert_eq!(c.g.abs(), num_integer::Integer::gcd(&a, &b));
    }

    #[test]
    fn exact_division_round_trip_integers(a in int(1000), b in int(1000)) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(Integers.exact_div(&(&a * &b), &b).unwrap(), Some(a));
    }

    #[test]
    fn integer_primes_are_additive(a in int(100), b in int(100), i in 0usize..4) {
        let p = PrimeSpec::Element(BigInt::from([2, 3, 5, 7][i]));
        let zz = Integers;
        if zz.in_prime(&a, &p).unwrap() && zz.in_prime(&b, &p).unwrap() {
            prop_assert!(zz.in_prime(&(&a + &b), &p).unwrap());
        }
        prop_assert!(global_implies_local(&zz, &a, &b, &p));
    }
}

proptest! {
    #![proptest_config(cases(100))]

    #[test]
    fn certificates_verify_over_qz(a in qpoly(3, 5), b in qpoly(3, 5)) {
        let r = QPolyRing::new("z");
        prop_assert!(cert_holds(&r, &a, &b));
        if !(a.is_zero() && b.is_zero()) {
            if let ModuleVerdict::Principal(c) = r.two_gen_reduce(&a, &b).unwrap() {
                prop_assert_eq!(r.normalize(&c.g), r.ext_gcd(&a, &b).0);
            }
        }
    }

    #[test]
    fn exact_division_round_trip_qz(a in qpoly(3, 9), b in qpoly(3, 9)) {
        prop_assume!(!b.is_zero());
        let r = QPolyRing::new("z");
        prop_assert_eq!(r.exact_div(&r.mul(&a, &b), &b).unwrap(), Some(a));
    }

    #[test]
    fn qz_primes(a in qpoly(3, 5), b in qpoly(3, 5), root in -2i64..=2) {
        let r = QPolyRing::new("z");
        let p = PrimeSpec::Element(QPoly::from_vec(vec![rat(-root), rat(1)]));
        if r.in_prime(&a, &p).unwrap() && r.in_prime(&b, &p).unwrap() {
            prop_assert!(r.in_prime(&r.add(&a, &b), &p).unwrap());
        }
        prop_assert!(global_implies_local(&r, &a, &b, &p));
    }

    #[test]
    fn certificates_verify_over_zr5(a in zr5(6), b in zr5(6)) {
        prop_assert!(cert_holds(&QuadImag5, &a, &b));
    }

    #[test]
    fn zr5_verdicts_match_the_ideal_norm(a in zr5(6), b in zr5(6)) {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let lattice = Lattice::ideal(&[a.clone(), b.clone()]).unwrap();
        let n = lattice.index();
        match QuadImag5.two_gen_reduce(&a, &b).unwrap() {
            ModuleVerdict::Principal(c) => prop_assert_eq!(c.g.norm(), n),
            ModuleVerdict::NotPrincipal(_) => {
                let n: i64 = n.try_into().unwrap();
                let mut y = 0i64;
                while 5 * y * y <= n {
                    let x2 = n - 5 * y * y;
                    let x = (x2 as f64).sqrt().round() as i64;
                    if x * x == x2 {
                        for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                            prop_assert!(!lattice.contains(&Zr5::new(sx * x, sy * y)));
                        }
                    }
                    y += 1;
                }
            }
            ModuleVerdict::Unknown { reason } => return Err(TestCaseError::fail(reason)),
        }
    }

    #[test]
    fn zr5_exact_division_and_primes(a in zr5(20), b in zr5(20), i in 0usize..5) {
        let r = QuadImag5;
        if !b.is_zero() {
            prop_assert_eq!(r.exact_div(&r.mul(&a, &b), &b).unwrap(), Some(a.clone()));
        }
        let p = PrimeSpec::Generators(small_primes()[i].1.clone());
        if r.in_prime(&a, &p).unwrap() && r.in_prime(&b, &p).unwrap() {
            prop_assert!(r.in_prime(&r.add(&a, &b), &p).unwrap());
        }
        prop_assert!(global_implies_local(&r, &a, &b, &p));
    }

    #[test]
    fn qzw_certificates_and_division(a in qpoly2(2, 4), b in qpoly2(2, 4)) {
        let r = QBivarRing::new("z", "w");
        prop_assert!(cert_holds(&r, &a, &b));
        if !b.is_zero() {
            prop_assert_eq!(r.exact_div(&r.mul(&a, &b), &b).unwrap(), Some(a.clone()));
        }
        let p = PrimeSpec::Generators(vec![QPoly2::z(), QPoly2::w()]);
        if r.in_prime(&a, &p).unwrap() && r.in_prime(&b, &p).unwrap() {
            prop_assert!(r.in_prime(&r.add(&a, &b), &p).unwrap());
        }
        prop_assert!(global_implies_local(&r, &a, &b, &p));
    }
}

// ---- bivariate polynomials ----

proptest! {
    #![proptest_config(cases(100))]

    #[test]
    fn homogeneous_components_sum_up(p in bipoly_z(4, 9)) {
        let zz = Integers;
        let Some(d) = p.total_degree() else {
            return Ok(());
        };
        let sum = (0..=d).fold(BiPoly::zero(), |acc, k| acc.add(&zz, &p.homogeneous_component(k)));
        prop_assert_eq!(&sum, &p);
        prop_assert_eq!(p.top_component().unwrap(), p.homogeneous_component(d));
    }

    #[test]
    fn substitution_is_associative(
        p in bipoly_z(2, 4),
        g1 in bipoly_z(2, 3),
        g2 in bipoly_z(2, 3),
        h1 in bipoly_z(1, 3),
        h2 in bipoly_z(1, 3),
    ) {
        let zz = Integers;
        let lhs = p.substitute(&zz, &g1, &g2).substitute(&zz, &h1, &h2);
        let rhs = p.substitute(&zz, &g1.substitute(&zz, &h1, &h2), &g2.substitute(&zz, &h1, &h2));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn power_proportionality_reverifies(
        g in bipoly_z(2, 4),
        a in int(12),
        b in int(12),
        e in 1u32..=3,
        noise in bipoly_z(2, 2),
    ) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let zz = Integers;
        let base = g.scale(&zz, &b);
        let gen = g.pow(&zz, e).scale(&zz, &a);
        for h in [gen.clone(), gen.add(&zz, &noise)] {
            if let Some(c) = power_proportionality(&zz, &h, &base, e).unwrap() {
                prop_assert_eq!(h.scale(&zz, &c.den), base.pow(&zz, e).scale(&zz, &c.num));
            }
        }
        prop_assert!(power_proportionality(&zz, &gen, &base, e).unwrap().is_some());
    }

    #[test]
    fn ideal_pair_contract(g in bipoly_z(2, 5), a in int(12), b in int(12)) {
        prop_assume!(!g.is_zero() && !a.is_zero() && !b.is_zero());
        let zz = Integers;
        let (h1, h2) = (g.scale(&zz, &a), g.scale(&zz, &b));
        let (a0, b0, common) = extract_ideal_pair(&zz, &h1, &h2).unwrap().unwrap();
        prop_assert_eq!(h2.scale(&zz, &a0), h1.scale(&zz, &b0));
        let common = common.unwrap();
        prop_assert_eq!(common.scale(&zz, &a0), h1);
        prop_assert_eq!(common.scale(&zz, &b0), h2);
    }
}

// ---- maps and factors ----

fn q_factor(rng: &mut rand_chacha::ChaCha8Rng, max_deg: u32) -> Factor<BigRational> {
    let deg = rng.gen_range(1..=max_deg);
    let deg = (deg >= 2).then_some(deg);
    random_factor(
        &Rationals,
        rng,
        deg,
        &mut |r: &mut rand_chacha::ChaCha8Rng| random_rational(r, 6),
    )
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = seeded_rng(seed);
        let [a, b, c] = [(); 3].map(|_| q_factor(&mut rng, 2).to_map(&q));
        prop_assert_eq!(a.compose(&q, &b).compose(&q, &c), a.compose(&q, &b.compose(&q, &c)));
    }

    #[test]
    fn factor_inverse_cancels(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = seeded_rng(seed);
        let f = q_factor(&mut rng, 4);
        let inv = f.inverse(&q).unwrap();
        prop_assert!(f.to_map(&q).compose(&q, &inv.to_map(&q)).is_identity(&q));
        prop_assert!(inv.to_map(&q).compose(&q, &f.to_map(&q)).is_identity(&q));
    }

    #[test]
    fn degrees_collapse_against_the_inverse(seed in any::<u64>()) {
        let q = Rationals;
        let mut rng = seeded_rng(seed);
        let d = random_field_decomposition(&q, &mut rng, 4, 6, |r| random_rational(r, 5));
        let inv = d.inverse(&q).unwrap();
        let id = d.target.compose(&q, &inv.target);
        prop_assert_eq!(id.deg_vec().map(|v| (v.d1, v.d2)), Some((1, 1)));
    }
}

// ---- Groebner layer ----

fn gauss_member(g: &QPoly2, gens: &[QPoly2], bound: u32) -> bool {
    let mut rows: Vec<BTreeMap<Mono, BigRational>> = Vec::new();
    for f in gens {
        for d in 0..=bound {
            for i in 0..=d {
                let m = Mono::new(i, d - i);
                let p = f.mul_term(&BigRational::one(), m);
                rows.push(p.terms().map(|(m, c)| (*m, c.clone())).collect());
            }
        }
    }
    let rank = |rows: &[BTreeMap<Mono, BigRational>]| {
        let mut basis: Vec<BTreeMap<Mono, BigRational>> = Vec::new();
        for r in rows {
            let mut r = r.clone();
            for b in &basis {
                let (pivot, pc) = b.iter().next_back().unwrap();
                if let Some(c) = r.get(pivot).cloned() {
                    let f = c / pc;
                    for (m, v) in b {
                        let e = r.entry(*m).or_insert_with(BigRational::zero);
                        *e -= &f * v;
                    }
                    r.retain(|_, v| !v.is_zero());
                }
            }
            if !r.is_empty() {
                basis.push(r);
                basis.sort_by(|x, y| y.keys().next_back().cmp(&x.keys().next_back()));
            }
        }
        basis.len()
    };
    let before = rank(&rows);
    rows.push(g.terms().map(|(m, c)| (*m, c.clone())).collect());
    rank(&rows) == before
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn bivariate_gcd_divides_and_scales(a in qpoly2(2, 4), b in qpoly2(2, 4), c in qpoly2(1, 3)) {
        prop_assume!(!a.is_zero() && !b.is_zero() && !c.is_zero());
        let g = gcd_bivar(&a, &b);
        prop_assert!(a.exact_div(&g).is_some() && b.exact_div(&g).is_some());
        let gc = gcd_bivar(&(&a * &c), &(&b * &c));
        prop_assert_eq!(gc.monic(), (&g * &c).monic());
    }

    #[test]
    fn unit_ideal_cofactors_reverify(a in qpoly2(2, 4), b in qpoly2(2, 4)) {
        if let Some((s, t)) = unit_ideal_cofactors(&a, &b) {
            prop_assert_eq!(&(&s * &a) + &(&t * &b), QPoly2::one());
        }
    }

    #[test]
    fn membership_matches_linear_algebra(
        a in qpoly2(2, 3),
        b in qpoly2(2, 3),
        u in qpoly2(1, 3),
        v in qpoly2(1, 3),
        g in qpoly2(2, 3),
    ) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let gens = [a.clone(), b.clone()];
        let built = &(&u * &a) + &(&v * &b);
        prop_assert!(ideal_membership(&built, &gens));
        prop_assert!(gauss_member(&built, &gens, 1));
        if gauss_member(&g, &gens, 2) {
            prop_assert!(ideal_membership(&g, &gens));
        }
        if !ideal_membership(&g, &gens) {
            prop_assert!(!gauss_member(&g, &gens, 2));
        }
    }

    #[test]
    fn buchberger_output_is_groebner(a in qpoly2(2, 3), b in qpoly2(2, 3), c in qpoly2(2, 3)) {
        let gb = groebner_basis(&[a, b, c]);
        let polys = &gb.polys;
        for (i, f) in polys.iter().enumerate() {
            for g in &polys[i + 1..] {
                let ((mf, cf), (mg, cg)) = (f.leading().unwrap(), g.leading().unwrap());
                let l = mf.lcm(mg);
                let s = &f.mul_term(&(BigRational::one() / cf), mf.cofactor_in(l))
                    - &g.mul_term(&(BigRational::one() / cg), mg.cofactor_in(l));
                prop_assert!(divide(&s, polys).remainder.is_zero());
            }
        }
    }
}

// ---- tameness engine ----

fn q_decomposition(seed: u64, len: usize) -> Decomposition<BigRational> {
    let mut rng = seeded_rng(seed);
    random_field_decomposition(&Rationals, &mut rng, len, 12, |r| random_rational(r, 5))
}

fn int_spec(seed: u64) -> CanExSpec<BigInt> {
    let mut rng = seeded_rng(seed);
    random_can_ex(&Integers, &mut rng, |r| random_int(r, 6))
}

fn qz_spec(seed: u64) -> CanExSpec<QPoly> {
    let mut rng = seeded_rng(seed);
    let spec = random_can_ex(&QPolyRing::new("z"), &mut rng, |r| random_qpoly(r, 1, 5));
    CanExSpec {
        q: spec.q.into_iter().take(4).collect(),
        ..spec
    }
}

proptest! {
    #![proptest_config(cases(60))]

    #[test]
    fn reduction_terminates(seed in any::<u64>(), len in 1usize..=6) {
        let q = Rationals;
        let d = q_decomposition(seed, len);
        let run = decide_tame_traced(&q, &d.target);
        prop_assert!(run.verdict.is_tame());
        let sums: Vec<u32> = run.degrees.iter().map(|v| v.d1 + v.d2).collect();
        prop_assert!(sums.windows(2).all(|w| w[1] < w[0]));
        prop_assert!(sums.len() as u32 <= sums[0]);
        for v in &run.degrees {
            prop_assert!(v.d1 % v.d2 == 0 || v.d2 % v.d1 == 0);
        }
    }

    #[test]
    fn field_completeness(seed in any::<u64>(), len in 1usize..=6) {
        let q = Rationals;
        let d = q_decomposition(seed, len);
        let TameVerdict::Tame(found) = decide_tame(&q, &d.target) else {
            return Err(TestCaseError::fail("tame over Q"));
        };
        prop_assert_eq!(found.compose(&q), d.target.clone());

        let fp = PrimeField::new(101).unwrap();
        let mut rng = seeded_rng(seed);
        let d = random_field_decomposition(&fp, &mut rng, len, 12, |r| fp.from_i64(r.gen_range(0..101)));
        prop_assert!(decide_tame(&fp, &d.target).is_tame());
    }

    #[test]
    fn non_invertible_maps_are_rejected(seed in any::<u64>(), which in 0usize..3) {
        let q = Rationals;
        let d = q_decomposition(seed, 3);
        let (x, y) = (BiPoly::x(&q), BiPoly::y(&q));
        let bad = [
            PolyMap::new(x.pow(&q, 2), y.clone()),
            PolyMap::new(x.clone(), y.pow(&q, 2).add(&q, &x.pow(&q, 2))),
            PolyMap::new(x.add(&q, &y), x.add(&q, &y)),
        ][which]
            .clone();
        for f in [d.target.compose(&q, &bad), bad.compose(&q, &d.target)] {
            prop_assert!(matches!(decide_tame(&q, &f), TameVerdict::NotAutomorphismOverK(_)));
        }
    }

    #[test]
    fn inverse_round_trip(seed in any::<u64>(), len in 1usize..=5) {
        let q = Rationals;
        let d = q_decomposition(seed, len);
        let inv = inverse_decomposition(&q, &d.target).unwrap();
        prop_assert!(inv.inverts(&q, &d.target));
        prop_assert!(d.target.compose(&q, &inv.target).is_identity(&q));
    }
}

fn tame_certificate_sound<D: Domain>(dom: &D, f: &PolyMap<D::Elem>) -> Result<(), TestCaseError> {
    match decide_tame(dom, f) {
        TameVerdict::Tame(d) => {
            prop_assert_eq!(&d.compose(dom), f);
            for factor in &d.factors {
                prop_assert!(factor.inverse(dom).is_ok());
                if let Some(det) = factor.determinant(dom) {
                    prop_assert!(dom.is_unit(&det));
                }
            }
        }
        TameVerdict::NotTame(o) => prop_assert!(recheck_obstruction(dom, &o, None), "{:?}", o),
        TameVerdict::NotAutomorphismOverK(s) | TameVerdict::Unknown(s) => {
            return Err(TestCaseError::fail(format!(
                "family members are automorphisms: {s}"
            )))
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(cases(40))]

    #[test]
    fn certificates_over_integers(seed in any::<u64>()) {
        let zz = Integers;
        let (f, _) = canonical_example(&zz, &int_spec(seed)).unwrap();
        tame_certificate_sound(&zz, &f)?;
    }

    #[test]
    fn certificates_over_qz(seed in any::<u64>()) {
        let r = QPolyRing::new("z");
        let (f, _) = canonical_example(&r, &qz_spec(seed)).unwrap();
        tame_certificate_sound(&r, &f)?;
    }

    #[test]
    fn certificates_over_zr5(seed in any::<u64>()) {
        let r = QuadImag5;
        let mut rng = seeded_rng(seed);
        let spec = random_can_ex(&r, &mut rng, |g| random_zr5(g, 3));
        let (f, finv) = canonical_example(&r, &spec).unwrap();
        prop_assert!(finv.compose(&r, &f).is_identity(&r));
        tame_certificate_sound(&r, &f)?;
        let tame = decide_tame(&r, &f).is_tame();
        prop_assert_eq!(tame, r.two_gen_reduce(&spec.z, &spec.w).unwrap().is_principal());
    }

    #[test]
    fn nagata_obstructions_recheck(z in int(40)) {
        prop_assume!(!z.is_zero());
        let zz = Integers;
        let f = nagata(&zz, &z);
        let v = decide_tame(&zz, &f);
        prop_assert_eq!(v.is_tame(), z.abs().is_one());
        if let Some(o) = v.obstruction() {
            prop_assert!(recheck_obstruction(&zz, o, None));
        }
        for p in zz.prime_factors(&z) {
            let p = PrimeSpec::Element(p);
            let local = decide_locally_tame(&zz, &f, &p).unwrap();
            prop_assert!(local.is_not_tame());
            prop_assert!(recheck_obstruction(&zz, local.obstruction().unwrap(), Some(&p)));
        }
    }
}

// ---- family-level properties ----

fn product<R: Ring>(r: &R, items: &[R::Elem], mask: u32) -> R::Elem {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (2 * i) & 3 != 0)
        .fold(r.one(), |acc, (i, x)| {
            r.mul(&acc, &r.pow(x, mask >> (2 * i) & 3))
        })
}

fn local_global<D: Domain>(
    dom: &D,
    f: &PolyMap<D::Elem>,
    primes: &[PrimeSpec<D::Elem>],
) -> Result<(), TestCaseError> {
    let global = decide_tame(dom, f);
    prop_assume!(matches!(
        global,
        TameVerdict::Tame(_) | TameVerdict::NotTame(_)
    ));
    let local: Vec<bool> = primes
        .iter()
        .map(|p| decide_locally_tame(dom, f, p).unwrap().is_tame())
        .collect();
    prop_assert_eq!(
        global.is_tame(),
        local.iter().all(|t| *t),
        "local verdicts {:?}",
        local
    );
    Ok(())
}

fn can_ex_q<R: Ring>(r: &R, z: R::Elem, w: R::Elem, q: Vec<R::Elem>) -> Option<PolyMap<R::Elem>> {
    let spec = CanExSpec::new(r, z, w, q).ok()?;
    Some(canonical_example(r, &spec).unwrap().0)
}

proptest! {
    #![proptest_config(cases(40))]

    #[test]
    fn canonical_examples_compose_to_identity(seed in any::<u64>()) {
        let zz = Integers;
        let (f, finv) = canonical_example(&zz, &int_spec(seed)).unwrap();
        prop_assert!(f.compose(&zz, &finv).is_identity(&zz));
        prop_assert!(finv.compose(&zz, &f).is_identity(&zz));
        let r = QPolyRing::new("z");
        let (f, finv) = canonical_example(&r, &qz_spec(seed)).unwrap();
        prop_assert!(finv.compose(&r, &f).is_identity(&r));
    }

    #[test]
    fn family_equivalence_over_pids(seed in any::<u64>()) {
        let zz = Integers;
        let spec = int_spec(seed);
        let (f, _) = canonical_example(&zz, &spec).unwrap();
        prop_assert!(zz.two_gen_reduce(&spec.z, &spec.w).unwrap().is_principal());
        prop_assert!(decide_tame(&zz, &f).is_tame());
        let r = QPolyRing::new("z");
        let spec = qz_spec(seed);
        let (f, _) = canonical_example(&r, &spec).unwrap();
        prop_assert!(r.two_gen_reduce(&spec.z, &spec.w).unwrap().is_principal());
        prop_assert!(decide_tame(&r, &f).is_tame());
    }

    #[test]
    fn local_global_over_integers(zm in 1u32..256, wm in 0u32..256, sz in any::<bool>(), q in prop::collection::vec(-4i64..=4, 3..5)) {
        let zz = Integers;
        let primes: Vec<BigInt> = [2, 3, 5, 7].map(BigInt::from).to_vec();
        let mut z = product(&zz, &primes, zm);
        if sz {
            z = -z;
        }
        let w = if wm == 0 { BigInt::zero() } else { product(&zz, &primes, wm) };
        let Some(f) = can_ex_q(&zz, z, w, q.into_iter().map(BigInt::from).collect()) else {
            return Ok(());
        };
        let specs: Vec<_> = primes.into_iter().map(PrimeSpec::Element).collect();
        local_global(&zz, &f, &specs)?;
    }

    #[test]
    fn local_global_over_qz(zm in 1u32..256, wm in 1u32..256, q in prop::collection::vec(-3i64..=3, 3..5)) {
        let r = QPolyRing::new("z");
        let l = |c: &[i64]| QPoly::from_vec(c.iter().map(|x| rat(*x)).collect());
        let primes = vec![l(&[0, 1]), l(&[-1, 1]), l(&[1, 1]), l(&[1, 0, 1])];
        let (z, w) = (product(&r, &primes, zm), product(&r, &primes, wm));
        let Some(f) = can_ex_q(&r, z, w, q.into_iter().map(|c| QPoly::constant(rat(c))).collect()) else {
            return Ok(());
        };
        let specs: Vec<_> = primes.into_iter().map(PrimeSpec::Element).collect();
        local_global(&r, &f, &specs)?;
    }
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn local_global_over_qzw(zm in 1u32..64, wm in 1u32..64, q in prop::collection::vec(-3i64..=3, 3..4)) {
        let r = QBivarRing::new("z", "w");
        let one = QPoly2::one();
        let lin = [QPoly2::z(), QPoly2::w(), &QPoly2::z() - &one, &(&QPoly2::z() + &QPoly2::w()) + &one];
        // exponents up to 1 keep the composed maps small
        let (zm, wm) = (zm & 0x55, wm & 0x55);
        prop_assume!(zm != 0 && wm != 0);
        let (z, w) = (product(&r, &lin, zm), product(&r, &lin, wm));
        let Some(f) = can_ex_q(&r, z, w, q.into_iter().map(|c| QPoly2::constant(rat(c))).collect()) else {
            return Ok(());
        };
        let mut specs: Vec<_> = lin.iter().cloned().map(PrimeSpec::Element).collect();
        for (i, a) in lin.iter().enumerate() {
            for b in &lin[i + 1..] {
                if !groebner_basis(&[a.clone(), b.clone()]).is_unit_ideal() {
                    specs.push(PrimeSpec::Generators(vec![a.clone(), b.clone()]));
                }
            }
        }
        local_global(&r, &f, &specs)?;
    }

    #[test]
    fn monotonicity(seed in any::<u64>(), n in 2i64..30) {
        let zz = Integers;
        let (f, _) = canonical_example(&zz, &int_spec(seed)).unwrap();
        let TameVerdict::Tame(d) = decide_tame(&zz, &f) else {
            return Ok(());
        };
        let loc = Localized::new(zz, &BigInt::from(n)).unwrap();
        let factors: Vec<_> = d.factors.iter().map(|x| x.map_coeffs::<Localized<Integers>>(|c| loc.from_base(c))).collect();
        let f_loc = f.map_coeffs(&loc, |c| loc.from_base(c));
        prop_assert_eq!(compose_factors(&loc, &factors), f_loc.clone());
        for x in &factors {
            prop_assert!(x.inverse(&loc).is_ok());
        }
        prop_assert!(decide_tame(&loc, &f_loc).is_tame());

        let q = Rationals;
        let factors: Vec<_> = d.factors.iter().map(|x| x.map_coeffs::<Rationals>(|c| zz.embed(c))).collect();
        prop_assert_eq!(compose_factors(&q, &factors), embed_map(&zz, &f));
        prop_assert!(decide_tame_over_k(&zz, &embed_map(&zz, &f)).is_tame());
    }

    #[test]
    fn scaling_consistency(seed in any::<u64>(), u in prop::sample::select(vec![-3i64, -2, -1, 2, 5])) {
        let zz = Integers;
        let spec = int_spec(seed);
        let (f, _) = canonical_example(&zz, &spec).unwrap();
        let neg = CanExSpec {
            z: -&spec.z,
            w: -&spec.w,
            q: spec.q.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect(),
        };
        let (g, _) = canonical_example(&zz, &neg).unwrap();
        prop_assert_eq!(decide_tame(&zz, &f).label(), decide_tame(&zz, &g).label());

        let r = QPolyRing::new("z");
        let spec = qz_spec(seed);
        let (f, _) = canonical_example(&r, &spec).unwrap();
        let u = rat(u);
        let uc = QPoly::constant(u.clone());
        let scaled = CanExSpec {
            z: r.mul(&uc, &spec.z),
            w: r.mul(&uc, &spec.w),
            q: spec
                .q
                .iter()
                .enumerate()
                .map(|(i, c)| c.scale(&(BigRational::one() / num_traits::pow(u.clone(), i))))
                .collect(),
        };
        let (g, _) = canonical_example(&r, &scaled).unwrap();
        prop_assert_eq!(decide_tame(&r, &f).label(), decide_tame(&r, &g).label());
    }

    #[test]
    fn oracle_equivalence(a in int(50), b in int(50), x in zr5(4), y in zr5(4)) {
        let zz = Integers;
        if !(a.is_zero() && b.is_zero()) {
            let fast = zz.two_gen_reduce(&a, &b).unwrap();
            let slow = zz.brute_force_principality(&a, &b, 100);
            prop_assert_eq!(fast.is_principal(), slow.is_principal());
        }
        if !(x.is_zero() && y.is_zero()) {
            let r = QuadImag5;
            let fast = r.two_gen_reduce(&x, &y).unwrap();
            let slow = r.brute_force_principality(&x, &y, 100);
            if !matches!(slow, ModuleVerdict::Unknown { .. }) {
                prop_assert_eq!(fast.is_principal(), slow.is_principal());
            }
        }
    }

    #[test]
    fn qzw_family_equivalence(seed in any::<u64>()) {
        let r = QBivarRing::new("z", "w");
        let mut rng = seeded_rng(seed);
        let spec = random_can_ex(&r, &mut rng, |g| random_qpoly2(g, 1, 4));
        let spec = CanExSpec { q: spec.q.into_iter().take(3).collect(), ..spec };
        prop_assume!(spec.q.len() == 3 && !spec.q[2].is_zero());
        let (f, _) = canonical_example(&r, &spec).unwrap();
        let v = decide_tame(&r, &f);
        prop_assert_eq!(v.is_tame(), r.two_gen_reduce(&spec.z, &spec.w).unwrap().is_principal());
        if let Some(o) = v.obstruction() {
            prop_assert!(recheck_obstruction(&r, o, None));
        }
    }
}
