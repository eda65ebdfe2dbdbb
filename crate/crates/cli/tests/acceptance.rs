//! Acceptance criteria, one line per criterion.

mod common;
#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};

use common::{golden, json};
use mwb_core::blowup::{build_blowup, CenterIdeal, MultiWeightedBlowup};
use mwb_core::groebner::{ideal_eq, is_unit, member, saturate};
use mwb_core::invariant::{compare, invariant_at, Entry, Invariant};
use mwb_core::lattice::{dot, newton_polyhedron};
use mwb_core::monomial::MonomialIdeal;
use mwb_core::nondegenerate::{newton_nondegenerate, one_step_check};
use mwb_core::parse::{parse_monomial_list, parse_polynomial};
use mwb_core::poly::{lattice_to_exponent, rat, LogAmbient, PolyIdeal, Polynomial, Rational};
use mwb_core::resolve::{self, Mode, Options, ResolutionTree};
use rand::{rngs::StdRng, Rng, SeedableRng};
use serde_json::{json, Value};

type Check = Result<(), String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const F: &str = "x^2+y^2*z+z^3";

/// The four log structures on affine 3-space used with `F`, as `(ordinary, monomial)`.
const AMBIENTS: [(&[&str], &[&str]); 4] = [
    (&[], &["x", "y", "z"]),
    (&["x"], &["y", "z"]),
    (&["x", "y", "z"], &[]),
    (&["x", "y"], &["z"]),
];

fn ideal(ord: &[&str], mon: &[&str], gens: &[&str]) -> PolyIdeal {
    let a = LogAmbient::from_names(ord, mon).unwrap();
    let names = a.names();
    let polys = gens.iter().map(|g| parse_polynomial(g, &names).unwrap()).collect();
    PolyIdeal::new(a, polys).unwrap()
}

fn strings(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn pullback(v: &Value) -> Vec<(String, String)> {
    v["pullback"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["variable"].as_str().unwrap().into(),
                p["image"].as_str().unwrap().into(),
            )
        })
        .collect()
}

fn pairs(v: &[(&str, &str)]) -> Vec<(String, String)> {
    v.iter().map(|&(a, b)| (a.into(), b.into())).collect()
}

fn exceptional_rays(v: &Value) -> Vec<Value> {
    v["rays"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["exceptional"] == json!(true))
        .map(|r| r["direction"].clone())
        .collect()
}

fn matches_golden(name: &str, args: &[&str]) -> Check {
    let fresh = json(args);
    ensure!(fresh == golden(name), "{name}: output differs from golden file");
    Ok(())
}

fn single_ray_blowup() -> Check {
    let args = ["blowup", "--ideal-monomial", "x^2,y^3,z^3"];
    matches_golden("ex2_6", &args)?;
    let r = &golden("ex2_6")["result"];
    ensure!(
        exceptional_rays(r) == vec![json!([3, 2, 2])],
        "rays {:?}",
        exceptional_rays(r)
    );
    let expected = pairs(&[("x", "x'*u^3"), ("y", "y'*u^2"), ("z", "z'*u^2")]);
    ensure!(pullback(r) == expected, "pullback {:?}", pullback(r));
    ensure!(r["grading"] == json!([[3], [2], [2], [-1]]), "grading {}", r["grading"]);
    ensure!(
        strings(&r["irrelevant"]) == ["x'", "y'", "z'"],
        "irrelevant {}",
        r["irrelevant"]
    );
    Ok(())
}

fn two_ray_blowup() -> Check {
    matches_golden("ex2_7", &["blowup", "--ideal-monomial", "x^2,y^2*z,z^3"])?;
    let r = &golden("ex2_7")["result"];
    ensure!(
        exceptional_rays(r) == vec![json!([3, 2, 2]), json!([1, 0, 2])],
        "rays {:?}",
        exceptional_rays(r)
    );
    let expected = pairs(&[("x", "x'*u1^3*u2"), ("y", "y'*u1^2"), ("z", "z'*u1^2*u2^2")]);
    ensure!(pullback(r) == expected, "pullback {:?}", pullback(r));
    ensure!(
        r["grading"] == json!([[3, 1], [2, 0], [2, 2], [-1, 0], [0, -1]]),
        "grading {}",
        r["grading"]
    );
    ensure!(
        strings(&r["irrelevant"]) == ["x'", "y'*z'", "z'*u2"],
        "irrelevant {}",
        r["irrelevant"]
    );
    Ok(())
}

fn two_ray_setup() -> (LogAmbient, MultiWeightedBlowup) {
    let a = LogAmbient::from_names(&["x", "y", "z"], &[]).unwrap();
    let m = parse_monomial_list("x^2,y^2*z,z^3", &a.names()).unwrap();
    let b = build_blowup(&m, &[], &a).unwrap();
    (a, b)
}

fn cox_poly(b: &MultiWeightedBlowup, src: &str) -> Polynomial {
    parse_polynomial(src, &b.cox.names()).unwrap()
}

fn min_exponent(i: &PolyIdeal, var: usize) -> u32 {
    i.generators
        .iter()
        .flat_map(|g| g.exponents().map(|e| e[var]).collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn unit_on_charts(b: &MultiWeightedBlowup, gens: &[Polynomial]) -> bool {
    let m = b.cox.len();
    b.charts.iter().all(|c| {
        let mut e = vec![0u32; m];
        for &r in &c.inverted {
            e[r] = 1;
        }
        is_unit(&saturate(gens, m, &Polynomial::monomial(m, e, rat(1))), m)
    })
}

fn total_transform_divisibility() -> Check {
    let args = [
        "transform",
        "--ideal-monomial",
        "x^2,y^2*z,z^3",
        "--ideal",
        "x^2+y^2+z^2",
        "--kind",
        "total",
    ];
    matches_golden("ex2_10", &args)?;
    let (_, b) = two_ray_setup();
    let (u1, u2) = (b.cox.index_of("u1").unwrap(), b.cox.index_of("u2").unwrap());
    let i = ideal(&["x", "y", "z"], &[], &["x^2+y^2+z^2"]);
    let total = b.total_transform(&i).unwrap();
    let expected = cox_poly(&b, "x'^2*u1^6*u2^2 + y'^2*u1^4 + z'^2*u1^4*u2^4");
    ensure!(
        total.generators == vec![expected],
        "total transform {}",
        total.display()
    );
    ensure!(min_exponent(&total, u1) == 4, "u1-order {}", min_exponent(&total, u1));
    ensure!(min_exponent(&total, u2) == 0, "u2-order {}", min_exponent(&total, u2));
    let gens: Vec<&str> = vec!["x^2", "y^2*z", "z^3"];
    let ai = ideal(&["x", "y", "z"], &[], &gens);
    let (weak, mult) = b.weak_transform(&ai).unwrap();
    ensure!(mult == vec![(u1, 6), (u2, 2)], "multiplicities {mult:?}");
    ensure!(
        unit_on_charts(&b, &weak.generators),
        "weak transform of the center is not a unit on every chart"
    );
    Ok(())
}

fn weak_and_proper_transforms() -> Check {
    let args = [
        "transform",
        "--ideal-monomial",
        "x^2,y^2*z,z^3",
        "--ideal",
        "x^2+y^2",
        "--ideal",
        "z-y^2",
        "--kind",
        "weak",
    ];
    matches_golden("ex2_14", &args)?;
    let (_, b) = two_ray_setup();
    let n = b.cox.len();
    let i = ideal(&["x", "y", "z"], &[], &["x^2+y^2", "z-y^2"]);
    let (weak, _) = b.weak_transform(&i).unwrap();
    let expected = [
        cox_poly(&b, "x'^2*u1^4*u2^2 + y'^2*u1^2"),
        cox_poly(&b, "z'*u2^2 - y'^2*u1^2"),
    ];
    ensure!(
        ideal_eq(&weak.generators, &expected, n),
        "weak transform {}",
        weak.display()
    );
    let proper = b.proper_transform(&i).unwrap();
    ensure!(
        weak.generators.iter().all(|g| member(g, &proper.generators, n)),
        "weak not inside proper"
    );
    let witness = cox_poly(&b, "x'^2*u1^4 + z'");
    ensure!(
        member(&witness, &proper.generators, n),
        "witness not in proper transform"
    );
    ensure!(
        !member(&witness, &weak.generators, n),
        "witness already in weak transform"
    );
    Ok(())
}

fn invariant_table() -> Check {
    let expected: [(&str, &str, &str); 4] = [
        ("(inf)", "(x^2, y^2*z, z^3)", "(x^2, y^2*z, z^3)"),
        ("(2, inf)", "(x^2, y^2*z, z^3)", "(x, (y^2*z, z^3)^{1/2})"),
        ("(2, 3, 3)", "(x^2, y^3, z^3)", "(x^{1/3}, y^{1/2}, z^{1/2})"),
        ("(2, inf)", "(x^2, z)", "(x, z^{1/2})"),
    ];
    for ((ord, mon), (inv, center, reduced)) in AMBIENTS.iter().zip(expected) {
        let i = ideal(ord, mon, &[F]);
        let (got, c) = invariant_at(&i, &[rat(0), rat(0), rat(0)]).map_err(|e| e.to_string())?;
        ensure!(got.to_string() == inv, "{ord:?}/{mon:?}: invariant {got}");
        let scale = c.minimal_scale();
        ensure!(scale == 1.into(), "{ord:?}/{mon:?}: scale {scale}");
        let mut gens: Vec<Vec<i64>> = c
            .contact_vars
            .iter()
            .zip(&c.exponents)
            .map(|(&v, a)| {
                let mut g = vec![0; 3];
                g[v] = a.to_integer().try_into().unwrap();
                g
            })
            .collect();
        gens.extend(c.monomial_ideal(&scale).generators);
        let want = parse_monomial_list(center.trim_matches(['(', ')']), &i.ambient.names()).unwrap();
        ensure!(
            MonomialIdeal::new(3, &gens) == want,
            "{ord:?}/{mon:?}: center {}",
            c.display()
        );
        ensure!(
            c.display_reduced().unwrap() == reduced,
            "{ord:?}/{mon:?}: reduced {}",
            c.display_reduced().unwrap()
        );
        let mut args = vec!["center", "--ideal", F];
        let (o, m) = (ord.join(","), mon.join(","));
        if !ord.is_empty() {
            args.extend(["--ordinary", &o]);
        }
        if !mon.is_empty() {
            args.extend(["--monomial", &m]);
        }
        let r = &json(&args)["result"];
        ensure!(
            r["invariant"] == inv && r["reduced_center"] == reduced,
            "cli center {}",
            r["reduced_center"]
        );
    }
    Ok(())
}

struct Leaf {
    path: String,
    ideal: Vec<String>,
    factor: String,
}

fn leaves(node: &Value, out: &mut Vec<Leaf>) {
    let children = node["children"].as_array().unwrap();
    if children.is_empty() {
        out.push(Leaf {
            path: node["path"].as_str().unwrap().into(),
            ideal: strings(&node["ideal"]),
            factor: node["factor"].as_str().unwrap().into(),
        });
    }
    for c in children {
        leaves(c, out);
    }
}

fn resolution_steps() -> Check {
    let cases: [(&str, u64, &[&str], &str); 3] = [
        (
            "ex5_1",
            1,
            &["x'", "y'z'", "z'u2"],
            "x'^2 + y'^2*z' + z'^3*u2^4|u1^6*u2^2",
        ),
        ("ex5_7", 1, &["x'", "y'", "z'"], "x'^2 + y'^2*z' + z'^3|u^6"),
        ("ex5_8", 2, &["x'", "z' / x''", "z' / y'", "z' / u'"], ""),
    ];
    for (name, n, paths, transform) in cases {
        let (args_name, args) = common::golden_cases().into_iter().find(|(g, _)| g == name).unwrap();
        let mut argv: Vec<&str> = args.iter().map(String::as_str).collect();
        argv.push("--json");
        let fresh: Value = serde_json::from_str(&common::mwb(&argv).stdout).unwrap();
        ensure!(fresh == golden(&args_name), "{name}: output differs from golden file");
        let r = &fresh["result"];
        ensure!(r["steps"] == json!(n), "{name}: {} steps", r["steps"]);
        let mut ls = Vec::new();
        leaves(&r["tree"], &mut ls);
        let got: Vec<&str> = ls.iter().map(|l| l.path.as_str()).collect();
        ensure!(got == paths, "{name}: charts {got:?}");
        if let Some((t, f)) = transform.split_once('|') {
            for l in &ls {
                ensure!(
                    l.ideal == [t] && l.factor == f,
                    "{name} chart {}: {:?} factor {}",
                    l.path,
                    l.ideal,
                    l.factor
                );
            }
        }
    }
    let r = &golden("ex5_8")["result"]["tree"];
    let mid = &r["children"][1];
    ensure!(
        mid["chart"] == "z'" && mid["invariant"] == "(2, 2, inf)",
        "intermediate {}",
        mid["invariant"]
    );
    ensure!(
        mid["step"]["center"] == "(x'^2, y^2, u^4)",
        "intermediate center {}",
        mid["step"]["center"]
    );
    let mut ls = Vec::new();
    leaves(mid, &mut ls);
    for l in &ls {
        ensure!(
            l.ideal == ["x''^2 + y'^2*z' + z'^3*u'^4"] && l.factor == "u'^2*v^6",
            "chart {}: {:?} factor {}",
            l.path,
            l.ideal,
            l.factor
        );
    }
    Ok(())
}

fn well_order() -> Check {
    let inf = Entry::Infinite;
    let e = Entry::int;
    let chain = [
        Invariant(vec![e(0)]),
        Invariant(vec![e(1), e(2), e(8)]),
        Invariant(vec![e(1), e(3), e(6)]),
        Invariant(vec![e(1), e(3)]),
        Invariant(vec![e(1), e(4), e(24)]),
        Invariant(vec![e(1), inf.clone()]),
        Invariant(vec![e(1)]),
        Invariant(vec![inf]),
        Invariant(vec![]),
    ];
    for (i, a) in chain.iter().enumerate() {
        for (j, b) in chain.iter().enumerate() {
            ensure!(compare(a, b) == i.cmp(&j), "{a} vs {b}");
        }
    }
    let mut rng = StdRng::seed_from_u64(7);
    let entry = |rng: &mut StdRng| {
        if rng.gen_ratio(1, 5) {
            Entry::Infinite
        } else {
            Entry::Finite(Rational::new(rng.gen_range(0..=5).into(), rng.gen_range(1..=3).into()))
        }
    };
    for _ in 0..1000 {
        let mut three: Vec<Invariant> = (0..3)
            .map(|_| {
                let len = rng.gen_range(0..=3);
                Invariant((0..len).map(|_| entry(&mut rng)).collect())
            })
            .collect();
        let [a, b, c] = [&three[0], &three[1], &three[2]];
        ensure!(compare(a, b) == compare(b, a).reverse(), "antisymmetry {a} {b}");
        ensure!((compare(a, b) == Ordering::Equal) == (a == b), "totality {a} {b}");
        if compare(a, b) != Ordering::Greater && compare(b, c) != Ordering::Greater {
            ensure!(compare(a, c) != Ordering::Greater, "transitivity {a} {b} {c}");
        }
        three.sort();
        ensure!(
            three.windows(2).all(|w| compare(&w[0], &w[1]) != Ordering::Greater),
            "sort"
        );
    }
    Ok(())
}

fn random_ambient(rng: &mut StdRng, n: usize) -> (Vec<&'static str>, Vec<&'static str>) {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let r = rng.gen_range(0..=n);
    (VARS[..n - r].to_vec(), VARS[n - r..n].to_vec())
}

/// `(v^i ± w^j)^2` expanded: a trinomial whose edge polynomial is singular on the torus.
fn degenerate_trinomial(rng: &mut StdRng) -> String {
    const VARS: [&str; 3] = ["x", "y", "z"];
    let v = rng.gen_range(0..2);
    let w = rng.gen_range(v + 1..3);
    let (i, j) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
    let sign = if rng.gen_bool(0.5) { "+" } else { "-" };
    format!("({}^{i} {sign} {}^{j})^2", VARS[v], VARS[w])
}

fn corpus() -> Vec<PolyIdeal> {
    let mut out: Vec<PolyIdeal> = AMBIENTS.iter().map(|(o, m)| ideal(o, m, &[F])).collect();
    out.push(ideal(&["x", "y", "z"], &[], &["x^2+y^2", "z-y^2"]));
    out.push(ideal(&["x", "y", "z"], &[], &["x^2+y^2+z^2"]));
    out.push(ideal(&["x", "y"], &[], &["x^2+y^3"]));
    out.push(ideal(&["x", "y"], &[], &["(x+y)^2"]));
    let mut rng = StdRng::seed_from_u64(8);
    let mut nondeg = 0;
    while nondeg < 8 {
        let n = rng.gen_range(2..=3);
        let src = oracle::random_trinomial(&mut rng, n);
        let (ord, mon) = random_ambient(&mut rng, n);
        let i = ideal(&ord, &mon, &[src.as_str()]);
        let f = &i.generators[0];
        if f.monomial_gcd().iter().any(|&k| k > 0) || !newton_nondegenerate(f).is_ok_and(|r| r.nondegenerate()) {
            continue;
        }
        out.push(i);
        nondeg += 1;
    }
    for _ in 0..8 {
        let src = degenerate_trinomial(&mut rng);
        let (ord, mon) = random_ambient(&mut rng, 3);
        let i = ideal(&ord, &mon, &[src.as_str()]);
        assert!(
            !newton_nondegenerate(&i.generators[0]).unwrap().nondegenerate(),
            "{src}"
        );
        out.push(i);
    }
    out
}

fn trees(i: &PolyIdeal) -> Result<Vec<ResolutionTree>, String> {
    [Mode::Resolve, Mode::Principalize]
        .into_iter()
        .map(|m| resolve::run(i, &Options::new(m)).map_err(|e| format!("{} {m:?}: {e}", i.display())))
        .collect()
}

fn invariant_drops(corpus: &[PolyIdeal]) -> Check {
    ensure!(corpus.len() >= 20, "corpus of {}", corpus.len());
    for i in corpus {
        for t in trees(i)? {
            for (p, c) in t.edges() {
                ensure!(
                    compare(&c.invariant, &p.invariant) == Ordering::Less,
                    "{}: {} -> {} at {}",
                    i.display(),
                    p.invariant,
                    c.invariant,
                    c.path()
                );
            }
        }
    }
    Ok(())
}

fn reembedding() -> Check {
    for (ord, mon) in AMBIENTS {
        let i = ideal(ord, mon, &[F]);
        let r = resolve::reembed_check(&i, None).map_err(|e| e.to_string())?;
        let mut expected = vec![Entry::int(1)];
        expected.extend(r.original.0.iter().cloned());
        ensure!(
            r.extended.0 == expected,
            "{ord:?}/{mon:?}: {} over {}",
            r.extended,
            r.original
        );
        ensure!(
            !r.charts.is_empty() && r.charts.iter().all(|c| c.1),
            "{ord:?}/{mon:?}: charts {:?}",
            r.charts
        );
        ensure!(r.ok(), "{ord:?}/{mon:?}: {:?}", r.mismatches);
    }
    Ok(())
}

fn nondegeneracy() -> Check {
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let f = parse_polynomial(F, &names).unwrap();
    ensure!(newton_nondegenerate(&f).unwrap().nondegenerate(), "{F} degenerate");
    ensure!(one_step_check(&f, &names).unwrap().passed(), "{F} fails one step");
    let g = parse_polynomial("(x+y)^2", &names[..2]).unwrap();
    ensure!(
        !newton_nondegenerate(&g).unwrap().nondegenerate(),
        "(x+y)^2 nondegenerate"
    );
    let mut rng = StdRng::seed_from_u64(9);
    let mut passed = 0;
    while passed < 50 {
        let n = rng.gen_range(2..=3);
        let src = oracle::random_trinomial(&mut rng, n);
        let f = parse_polynomial(&src, &names[..n]).unwrap();
        if !f.monomial_gcd().iter().all(|&k| k == 0) {
            continue;
        }
        if !newton_nondegenerate(&f).map_err(|e| e.to_string())?.nondegenerate() {
            continue;
        }
        let r = one_step_check(&f, &names[..n]).map_err(|e| format!("{src}: {e}"))?;
        ensure!(r.passed(), "{src}: charts {:?} orbits {:?}", r.charts, r.orbits);
        passed += 1;
    }
    Ok(())
}

/// Divisibility of levels by the root and level equalities on ordinary variables.
fn center_identities(c: &CenterIdeal, b: &MultiWeightedBlowup) -> Check {
    if c.ordinary.is_empty() || c.monomial.is_zero() {
        return Ok(());
    }
    let center_vars: Vec<usize> = c.ordinary.iter().map(|&(i, _)| i).collect();
    for &r in &b.exceptional {
        let ray = &b.fan.rays[r];
        let level = ray.level;
        ensure!(level % c.root as i64 == 0, "root {} does not divide {level}", c.root);
        for &(i, e) in &c.ordinary {
            ensure!(
                e as i64 * ray.direction[i] == level,
                "ray {:?} at variable {i}",
                ray.direction
            );
        }
        for j in b.source.ordinary_indices() {
            if !center_vars.contains(&j) {
                ensure!(ray.direction[j] == 0, "ray {:?} at free variable {j}", ray.direction);
            }
        }
    }
    Ok(())
}

fn oracle_suites(corpus: &[PolyIdeal]) -> Check {
    let mut rng = StdRng::seed_from_u64(10);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let gens = oracle::random_generators(&mut rng, n, 6);
        let p = newton_polyhedron(&gens, n).map_err(|e| e.to_string())?;
        let mut v = p.vertices.clone();
        v.sort();
        ensure!(v == oracle::vertices(&gens), "vertices of {gens:?}");
    }
    for _ in 0..100 {
        let n = rng.gen_range(2..=3);
        let gens = oracle::random_generators(&mut rng, n, 6);
        let a = LogAmbient::from_names(&["x", "y", "z"][..n], &[]).unwrap();
        let m = MonomialIdeal::new(n, &gens);
        let count = build_blowup(&m, &[], &a).unwrap().exceptional.len();
        let w: Vec<u64> = (0..count).map(|_| rng.gen_range(1..=3)).collect();
        let b = build_blowup(&m, &w, &a).unwrap();
        let p = m.newton_polyhedron().unwrap();
        let polys = gens
            .iter()
            .map(|g| Polynomial::monomial(n, lattice_to_exponent(g), rat(1)))
            .collect();
        let i = PolyIdeal::new(a, polys).unwrap();
        for (r, ray) in b.fan.rays.iter().enumerate() {
            let k = b.k_rho(r, &i).unwrap() as i64;
            ensure!(
                k == b.weights[r] as i64 * p.facet_level(&ray.direction),
                "k_rho on {gens:?}"
            );
        }
    }
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let gens = oracle::random_generators(&mut rng, n, 6);
        let closure = MonomialIdeal::new(n, &gens)
            .integral_closure()
            .map_err(|e| e.to_string())?;
        let p = newton_polyhedron(&gens, n).unwrap();
        let pt: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=7)).collect();
        let by_facets = p.facets.iter().all(|f| dot(&f.normal, &pt) >= f.level);
        ensure!(
            closure.contains(&pt) == oracle::dominated(&pt, &gens),
            "closure of {gens:?} at {pt:?}"
        );
        ensure!(closure.contains(&pt) == by_facets, "facets of {gens:?} at {pt:?}");
    }
    let mut centers = 0;
    for i in corpus {
        for t in trees(i)? {
            for s in t.steps_taken() {
                ensure!(s.identity_failure.is_none(), "{}: {:?}", s.center, s.identity_failure);
                center_identities(&s.center_ideal, &s.blowup).map_err(|e| format!("{}: {e}", s.center))?;
                centers += 1;
            }
        }
    }
    ensure!(centers > 0, "no centers produced");
    Ok(())
}

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("blow-up of (x^2, y^3, z^3)", Box::new(single_ray_blowup)),
        ("blow-up of (x^2, y^2*z, z^3)", Box::new(two_ray_blowup)),
        ("total transforms and divisibility", Box::new(total_transform_divisibility)),
        ("weak and proper transforms", Box::new(weak_and_proper_transforms)),
        ("invariant table", Box::new(invariant_table)),
        ("resolution steps and transforms", Box::new(resolution_steps)),
        ("well-order chain", Box::new(well_order)),
        ("invariant drop", Box::new(|| invariant_drops(&corpus))),
        ("re-embedding", Box::new(reembedding)),
        ("Newton non-degeneracy and one-step check", Box::new(nondegeneracy)),
        ("oracle suites", Box::new(|| oracle_suites(&corpus))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name}", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
