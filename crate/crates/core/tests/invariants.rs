mod support;

use std::cmp::Ordering;

use mwb_core::blowup::build_blowup;
use mwb_core::groebner::{is_unit, saturate};
use mwb_core::invariant::{compare, invariant_at, invariant_literal, logord_at, Entry, Invariant, LogOrder};
use mwb_core::monomial::MonomialIdeal;
use mwb_core::poly::{lattice_to_exponent, rat, LogAmbient, PolyIdeal, Polynomial, Rational};
use mwb_core::Error;
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use support::oracle::random_generators;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn entry() -> impl Strategy<Value = Entry> {
    prop_oneof![
        4 => (0i64..=6, 1i64..=3).prop_map(|(a, b)| Entry::Finite(Rational::new(a.into(), b.into()))),
        1 => Just(Entry::Infinite),
    ]
}

fn invariant() -> impl Strategy<Value = Invariant> {
    prop::collection::vec(entry(), 1..=4).prop_map(Invariant)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn compare_is_a_total_order(a in invariant(), b in invariant(), c in invariant()) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
        prop_assert_eq!(compare(&a, &b) == Ordering::Equal, a == b);
        if compare(&a, &b) != Ordering::Greater && compare(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare(&a, &c), Ordering::Greater);
        }
    }

    #[test]
    fn proper_prefix_is_larger(a in invariant(), e in entry()) {
        let mut longer = a.clone();
        longer.0.push(e);
        prop_assert_eq!(compare(&a, &longer), Ordering::Greater);
    }
}

/// Random polynomial with up to three terms in `n` variables, degree at most `deg` per variable.
fn random_poly(rng: &mut StdRng, n: usize, deg: u32) -> Polynomial {
    let k = rng.gen_range(1..=3);
    let terms: Vec<(Vec<u32>, Rational)> = (0..k)
        .map(|_| {
            let e = (0..n).map(|_| rng.gen_range(0..=deg)).collect();
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (e, rat(c))
        })
        .collect();
    Polynomial::from_terms(n, terms)
}

fn random_ambient(rng: &mut StdRng, n: usize) -> LogAmbient {
    let r = rng.gen_range(0..=n);
    LogAmbient::from_names(&NAMES[..n - r], &NAMES[n - r..n]).unwrap()
}

#[test]
fn weighted_invariant_matches_literal_coefficient_ideals() {
    let mut rng = StdRng::seed_from_u64(21);
    let small = BigInt::from(6);
    let (mut compared, mut skipped) = (0, 0);
    for _ in 0..300 {
        let n = rng.gen_range(1..=3);
        let a = random_ambient(&mut rng, n);
        let f = random_poly(&mut rng, n, 3);
        if f.is_zero() {
            continue;
        }
        let i = PolyIdeal::new(a, vec![f]).unwrap();
        let origin = vec![rat(0); n];
        let (w, center) = invariant_at(&i, &origin).unwrap();
        // literal coefficient ideals are only tractable for orders up to 4
        if center.d.as_ref().is_none_or(|d| *d > small) {
            skipped += 1;
            continue;
        }
        match invariant_literal(&i, &origin) {
            Ok(l) => {
                assert_eq!(w, l, "{}", i.display());
                compared += 1;
            }
            Err(Error::ComputationLimit(_)) => skipped += 1,
            Err(e) => panic!("{}: {e}", i.display()),
        }
    }
    assert!(compared >= 150, "compared {compared}, skipped {skipped}");
}

/// Least number of derivations (ordinary partials, logarithmic Euler operators) leaving
/// some generator nonzero at `p`.
fn logord_oracle(i: &PolyIdeal, p: &[Rational]) -> LogOrder {
    let n = i.nvars();
    let bound = i.generators.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0);
    let mut level: Vec<Polynomial> = i.generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    for m in 0..=bound {
        if level.iter().any(|g| !g.evaluate(p).is_zero()) {
            return LogOrder::Finite(m as u64);
        }
        level = level
            .iter()
            .flat_map(|g| (0..n).map(|j| g.log_derivation(&i.ambient, j)).collect::<Vec<_>>())
            .filter(|g| !g.is_zero())
            .collect();
        level.sort_by_key(|g| g.display(&i.ambient.names()));
        level.dedup();
    }
    LogOrder::Infinite
}

#[test]
fn logord_matches_derivation_oracle() {
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let a = random_ambient(&mut rng, n);
        let f = random_poly(&mut rng, n, 3);
        if f.is_zero() {
            continue;
        }
        let i = PolyIdeal::new(a.clone(), vec![f]).unwrap();
        let p: Vec<Rational> = (0..n)
            .map(|j| {
                if a.kind(j).is_log() && rng.gen_bool(0.5) {
                    rat(0)
                } else {
                    rat(rng.gen_range(-1..=1))
                }
            })
            .collect();
        assert_eq!(logord_at(&i, &p), logord_oracle(&i, &p), "{} at {p:?}", i.display());
    }
}

fn monomial_poly_ideal(gens: &[Vec<i64>], a: &LogAmbient) -> PolyIdeal {
    let polys = gens
        .iter()
        .map(|g| Polynomial::monomial(a.len(), lattice_to_exponent(g), rat(1)))
        .collect();
    PolyIdeal::new(a.clone(), polys).unwrap()
}

#[test]
fn total_transform_factors_through_weak_transform() {
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let a = LogAmbient::from_names(&NAMES[..n], &[]).unwrap();
        let center = MonomialIdeal::new(n, &random_generators(&mut rng, n, 4));
        let bl = build_blowup(&center, &[], &a).unwrap();
        let f = random_poly(&mut rng, n, 3);
        if f.is_zero() {
            continue;
        }
        let i = PolyIdeal::new(a.clone(), vec![f]).unwrap();
        let total = bl.total_transform(&i).unwrap();
        let (weak, mult) = bl.weak_transform(&i).unwrap();
        let mut e = vec![0u32; bl.cox.len()];
        for &(r, k) in &mult {
            e[r] = k as u32;
        }
        for (t, w) in total.generators.iter().zip(&weak.generators) {
            assert_eq!(*t, w.mul_term(&e, &rat(1)));
        }
    }
}

#[test]
fn blowup_is_identity_off_the_exceptional_locus() {
    let mut rng = StdRng::seed_from_u64(24);
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let a = LogAmbient::from_names(&NAMES[..n], &[]).unwrap();
        let center = MonomialIdeal::new(n, &random_generators(&mut rng, n, 4));
        let bl = build_blowup(&center, &[], &a).unwrap();
        let f = random_poly(&mut rng, n, 3);
        let i = PolyIdeal::new(a.clone(), vec![f.clone()]).unwrap();
        let mut g = bl.total_transform(&i).unwrap().generators[0].clone();
        let mut keep = Vec::new();
        for (r, ray) in bl.fan.rays.iter().enumerate() {
            match ray.id {
                mwb_core::lattice::RayId::Exceptional(_) => g = g.specialize(r, &rat(1)),
                mwb_core::lattice::RayId::Standard(i) => keep.push((r, i)),
            }
        }
        let images: Vec<Polynomial> = (0..bl.cox.len())
            .map(|r| match keep.iter().find(|&&(s, _)| s == r) {
                Some(&(_, i)) => Polynomial::var(n, i),
                None => Polynomial::zero(n),
            })
            .collect();
        assert_eq!(g.substitute(&images, n), f);
    }
}

#[test]
fn center_is_principal_and_exceptional_on_every_chart() {
    let mut rng = StdRng::seed_from_u64(25);
    for _ in 0..60 {
        let n = rng.gen_range(2..=3);
        let a = LogAmbient::from_names(&NAMES[..n], &[]).unwrap();
        let gens = random_generators(&mut rng, n, 4);
        let center = MonomialIdeal::new(n, &gens);
        let bl = build_blowup(&center, &[], &a).unwrap();
        let (weak, _) = bl.weak_transform(&monomial_poly_ideal(&center.generators, &a)).unwrap();
        let m = bl.cox.len();
        for c in &bl.charts {
            let mut e = vec![0u32; m];
            for &r in &c.inverted {
                e[r] = 1;
            }
            let unit = Polynomial::monomial(m, e, rat(1));
            let sat = saturate(&weak.generators, m, &unit);
            assert!(is_unit(&sat, m), "{gens:?} chart {:?}", c.inverted);
        }
    }
}
