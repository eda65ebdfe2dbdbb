mod support;

use mwb_core::invariant::compare;
use mwb_core::parse::parse_polynomial;
use mwb_core::poly::{LogAmbient, PolyIdeal};
use mwb_core::resolve::{self, LeafStatus, Mode, Options, ResolutionTree};
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::cmp::Ordering;
use support::oracle::random_trinomial;

const VARS: [&str; 3] = ["x", "y", "z"];

fn check_tree(t: &ResolutionTree, what: &str) {
    for (parent, child) in t.edges() {
        assert_eq!(
            compare(&child.invariant, &parent.invariant),
            Ordering::Less,
            "{what}: {} -> {} at {}",
            parent.invariant,
            child.invariant,
            child.path()
        );
    }
    for s in t.steps_taken() {
        assert_eq!(s.identity_failure, None, "{what}: center {}", s.center);
    }
    for leaf in t.leaves() {
        assert!(
            !matches!(leaf.status, Some(LeafStatus::Error(_))),
            "{what}: {:?}",
            leaf.status
        );
    }
}

#[test]
fn random_trinomials_resolve_with_dropping_invariant() {
    let mut rng = StdRng::seed_from_u64(31);
    for _ in 0..30 {
        let n = rng.gen_range(2..=3);
        let r = rng.gen_range(0..=n);
        let src = random_trinomial(&mut rng, n);
        let a = LogAmbient::from_names(&VARS[..n - r], &VARS[n - r..n]).unwrap();
        let f = parse_polynomial(&src, &a.names()).unwrap();
        let i = PolyIdeal::new(a, vec![f]).unwrap();
        for mode in [Mode::Resolve, Mode::Principalize] {
            let what = format!("{src} with {r} monomial variables, {mode:?}");
            let t = resolve::run(&i, &Options::new(mode)).unwrap_or_else(|e| panic!("{what}: {e}"));
            check_tree(&t, &what);
        }
    }
}

#[test]
fn ideal_with_two_generators_principalizes() {
    let a = LogAmbient::from_names(&["x", "y", "z"], &[]).unwrap();
    let names = a.names();
    let gens = ["x^2 + y^2", "z - y^2"]
        .iter()
        .map(|s| parse_polynomial(s, &names).unwrap())
        .collect();
    let i = PolyIdeal::new(a, gens).unwrap();
    let t = resolve::principalize(&i, &Options::new(Mode::Principalize)).unwrap();
    check_tree(&t, "(x^2 + y^2, z - y^2)");
    assert!(t.steps() >= 1);
}
