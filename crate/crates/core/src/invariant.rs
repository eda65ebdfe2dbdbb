//! Logarithmic order, maximal contact, coefficient ideals and the resolution invariant
//! with its associated center.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::groebner::{self, MonomialOrder};
use crate::lattice::LatticeVector;
use crate::monomial::MonomialIdeal;
use crate::poly::{rational_string, LogAmbient, PolyIdeal, Polynomial, Rational};

/// Natural number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LogOrder {
    Finite(u64),
    Infinite,
}

impl fmt::Display for LogOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogOrder::Finite(k) => write!(f, "{k}"),
            LogOrder::Infinite => write!(f, "inf"),
        }
    }
}

/// Invariant entry: a nonnegative rational or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Entry {
    Finite(Rational),
    Infinite,
}

impl Entry {
    pub fn int(k: i64) -> Entry {
        Entry::Finite(Rational::from_integer(k.into()))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Entry::Finite(a), Entry::Finite(b)) => a.cmp(b),
            (Entry::Finite(_), Entry::Infinite) => Ordering::Less,
            (Entry::Infinite, Entry::Finite(_)) => Ordering::Greater,
            (Entry::Infinite, Entry::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entry::Finite(a) => f.write_str(&rational_string(a)),
            Entry::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite sequence of entries, ordered lexicographically with proper prefixes larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariant(pub Vec<Entry>);

impl Invariant {
    pub fn from_ints(v: &[i64]) -> Invariant {
        Invariant(v.iter().map(|&k| Entry::int(k)).collect())
    }

    /// Entries all equal to one.
    pub fn is_ones(&self, len: usize) -> bool {
        self.0.len() == len && self.0.iter().all(|e| *e == Entry::int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.0 == vec![Entry::int(0)]
    }
}

/// Truncation-lexicographic comparison.
pub fn compare(u: &Invariant, v: &Invariant) -> Ordering {
    for (a, b) in u.0.iter().zip(&v.0) {
        match a.cmp(b) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    v.0.len().cmp(&u.0.len())
}

impl Ord for Invariant {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

impl PartialOrd for Invariant {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Generators of `D^{≤j}` split by level: level 0 holds the input, level `j` the derivatives
/// first needed at order `j`.
pub fn derivative_levels(gens: &[Polynomial], ambient: &LogAmbient, m: u64) -> Vec<Vec<Polynomial>> {
    let n = ambient.len();
    let mut levels: Vec<Vec<Polynomial>> = vec![gens.iter().filter(|g| !g.is_zero()).cloned().collect()];
    let mut all: Vec<Polynomial> = levels[0].clone();
    for _ in 0..m {
        let gb = groebner::groebner(&all, n, MonomialOrder::Grevlex);
        if gb.is_unit() {
            break;
        }
        let mut new: Vec<Polynomial> = Vec::new();
        for g in levels.last().expect("level 0") {
            for i in 0..n {
                let h = g.log_derivation(ambient, i);
                if h.is_zero() || new.contains(&h) {
                    continue;
                }
                if !gb.normal_form(&h).is_zero() {
                    new.push(h);
                }
            }
        }
        if new.is_empty() {
            break;
        }
        all.extend(new.iter().cloned());
        levels.push(new);
    }
    levels
}

/// `D^{≤m}(I)`.
pub fn d_leq(i: &PolyIdeal, m: u64) -> PolyIdeal {
    let gens = derivative_levels(&i.generators, &i.ambient, m).concat();
    PolyIdeal {
        ambient: i.ambient.clone(),
        generators: gens,
    }
}

/// Ideal generated by the parts of terms in the logarithmic variables.
pub fn log_monomial_part(i: &PolyIdeal) -> MonomialIdeal {
    let logs = i.ambient.log_indices();
    let gens: Vec<LatticeVector> = i
        .generators
        .iter()
        .flat_map(|g| {
            g.exponents()
                .map(|e| {
                    (0..e.len())
                        .map(|k| if logs.contains(&k) { e[k] as i64 } else { 0 })
                        .collect()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    MonomialIdeal::new(i.nvars(), &gens)
}

/// Least `m` with `D^{≤m}(I)` the unit ideal.
pub fn max_logord(i: &PolyIdeal) -> LogOrder {
    if i.is_zero() || !log_monomial_part(i).is_unit() {
        return LogOrder::Infinite;
    }
    let n = i.nvars();
    let bound = i.generators.iter().filter_map(|g| g.total_degree()).max().unwrap_or(0) as u64;
    let levels = derivative_levels(&i.generators, &i.ambient, bound);
    let mut all = Vec::new();
    for (m, level) in levels.iter().enumerate() {
        all.extend(level.iter().cloned());
        if groebner::is_unit(&all, n) {
            return LogOrder::Finite(m as u64);
        }
    }
    LogOrder::Infinite
}

/// Working data of one step of the recursion: weighted generators on a coordinate subspace.
/// A pair `(h, ν)` is `h` in weight `ν`; the order of the stage is `min ord(h)/ν`.
#[derive(Debug, Clone)]
struct Stage {
    ambient: LogAmbient,
    /// Index of each current variable in the original ambient.
    orig: Vec<usize>,
    point: Vec<Rational>,
    pairs: Vec<(Polynomial, Rational)>,
}

impl Stage {
    fn unweighted(i: &PolyIdeal, p: &[Rational]) -> Stage {
        Stage {
            ambient: i.ambient.clone(),
            orig: (0..i.nvars()).collect(),
            point: p.to_vec(),
            pairs: i
                .generators
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| (g.clone(), Rational::one()))
                .collect(),
        }
    }

    fn n(&self) -> usize {
        self.ambient.len()
    }

    /// Logarithmic variables vanishing at the point.
    fn vanishing_log(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&i| self.ambient.kind(i).is_log() && self.point[i].is_zero())
            .collect()
    }

    /// Variables in which derivatives are taken locally.
    fn effective_ordinary(&self) -> Vec<usize> {
        let z = self.vanishing_log();
        (0..self.n()).filter(|i| !z.contains(i)).collect()
    }

    /// Order at the point of `g` restricted to the vanishing logarithmic variables.
    fn order(&self, g: &Polynomial) -> Option<u64> {
        let mut h = g.clone();
        for z in self.vanishing_log() {
            h = h.specialize(z, &Rational::zero());
        }
        h.translate(&self.point).order().map(u64::from)
    }

    /// `min ord(h)/ν`; `None` when every restriction vanishes.
    fn ratio(&self) -> Option<Rational> {
        self.pairs
            .iter()
            .filter_map(|(h, w)| self.order(h).map(|k| Rational::from_integer(k.into()) / w))
            .min()
    }

    fn normalize(&mut self, r: &Rational) {
        for (_, w) in &mut self.pairs {
            *w = &*w * r;
        }
    }

    fn gens(&self) -> Vec<Polynomial> {
        self.pairs.iter().map(|(h, _)| h.clone()).collect()
    }

    /// Logarithmic parts of all terms, each scaled by `s/ν`, in original coordinates.
    fn monomial_exponents(&self, total: usize, s: &Rational) -> Vec<Vec<Rational>> {
        let z = self.vanishing_log();
        let mut out = Vec::new();
        for (h, w) in &self.pairs {
            let f = s / w;
            for e in h.exponents() {
                let mut v = vec![Rational::zero(); total];
                for &k in &z {
                    v[self.orig[k]] = Rational::from_integer(e[k].into()) * &f;
                }
                out.push(v);
            }
        }
        out
    }

    /// Stage on the contact hypersurface carrying the given restricted pairs.
    fn descend(&self, contact: &Contact, restricted: Vec<(Polynomial, Rational)>) -> Option<Stage> {
        let ambient = self.ambient.drop_var(contact.var);
        if ambient.is_empty() {
            return None;
        }
        let mut orig = self.orig.clone();
        orig.remove(contact.var);
        let mut point = self.point.clone();
        point.remove(contact.var);
        let mut pairs: Vec<(Polynomial, Rational)> = Vec::new();
        for (h, w) in restricted {
            if h.is_zero() {
                continue;
            }
            let h = h.primitive_part();
            match pairs.iter_mut().find(|(g, _)| *g == h) {
                Some(p) => p.1 = p.1.clone().max(w),
                None => pairs.push((h, w)),
            }
        }
        if pairs.is_empty() {
            return None;
        }
        Some(Stage {
            ambient,
            orig,
            point,
            pairs,
        })
    }
}

/// Derivative closure of weighted generators: `(∂h, ν - 1)` for every derivation while the
/// weight stays positive, skipping elements in the ideal of those of at least the same weight.
fn weighted_closure(stage: &Stage) -> Vec<(Polynomial, Rational)> {
    let n = stage.n();
    let mut pending: BTreeMap<Rational, Vec<Polynomial>> = BTreeMap::new();
    for (h, w) in &stage.pairs {
        if w.is_positive() && !h.is_zero() {
            pending.entry(w.clone()).or_default().push(h.clone());
        }
    }
    let mut accepted: Vec<(Polynomial, Rational)> = Vec::new();
    while let Some((w, hs)) = pending.pop_last() {
        let heavier: Vec<Polynomial> = accepted.iter().map(|(h, _)| h.clone()).collect();
        let gb = groebner::groebner(&heavier, n, MonomialOrder::Grevlex);
        if gb.is_unit() {
            break;
        }
        let mut new: Vec<Polynomial> = Vec::new();
        for h in hs {
            let h = h.primitive_part();
            if !new.contains(&h) && !gb.normal_form(&h).is_zero() {
                new.push(h);
            }
        }
        let lower = &w - Rational::one();
        if lower.is_positive() {
            for h in &new {
                for i in 0..n {
                    let d = h.log_derivation(&stage.ambient, i);
                    if !d.is_zero() {
                        pending.entry(lower.clone()).or_default().push(d);
                    }
                }
            }
        }
        accepted.extend(new.into_iter().map(|h| (h, w.clone())));
    }
    accepted
}

/// Contact element `c·x_var + rest` with `c` and `rest` free of `x_var` and `c` a unit at the point.
#[derive(Debug, Clone)]
struct Contact {
    poly: Polynomial,
    var: usize,
    coeff: Polynomial,
}

impl Contact {
    /// `x_var := -rest/c` with denominators cleared by a power of `c`, then drop `x_var`.
    fn restrict(&self, g: &Polynomial) -> Polynomial {
        let parts = self.poly.parts_in(self.var);
        g.substitute_fraction(self.var, &-&parts[0], &self.coeff)
            .drop_var(self.var)
    }

    fn is_coordinate(&self) -> bool {
        self.poly.len() <= 2
            && self
                .poly
                .terms()
                .all(|(e, _)| e.iter().enumerate().all(|(i, &k)| k == 0 || i == self.var))
    }

    /// The contact scaled to a monic or primitive form.
    fn normalized(&self) -> Polynomial {
        if self.coeff.is_constant() {
            self.poly.scale(&self.coeff.constant_term().recip())
        } else {
            self.poly.primitive_part()
        }
    }
}

fn multi_indices(vars: &[usize], size: u64) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &v) in vars.iter().enumerate() {
        for mut rest in multi_indices(&vars[k..], size - 1) {
            rest.insert(0, v);
            out.push(rest);
        }
    }
    out
}

/// `h = c·x_j + rest` with `c(p) ≠ 0`; returns `c`.
fn linear_in(stage: &Stage, h: &Polynomial, j: usize) -> Option<Polynomial> {
    if h.degree_in(j) != 1 {
        return None;
    }
    let c = h.parts_in(j).pop().expect("degree one");
    (!c.evaluate(&stage.point).is_zero()).then_some(c)
}

fn classify(stage: &Stage, h: &Polynomial) -> Option<Contact> {
    if stage.order(h) != Some(1) {
        return None;
    }
    let vars = stage.effective_ordinary();
    let n = stage.n();
    // h = (x_j - q_j)·unit: the coordinate itself is a contact element locally.
    for &j in &vars {
        if h.specialize(j, &stage.point[j]).is_zero() {
            let shift = Polynomial::constant(n, stage.point[j].clone());
            return Some(Contact {
                poly: &Polynomial::var(n, j) - &shift,
                var: j,
                coeff: Polynomial::one(n),
            });
        }
    }
    let linear: Vec<Contact> = vars
        .into_iter()
        .filter_map(|j| {
            linear_in(stage, h, j).map(|coeff| Contact {
                poly: h.clone(),
                var: j,
                coeff,
            })
        })
        .collect();
    linear
        .iter()
        .find(|c| c.coeff.is_constant())
        .or(linear.first())
        .cloned()
}

/// Prefers coordinates, then constant leading coefficients, then the lowest variable.
fn pick(cands: Vec<Contact>) -> Option<Contact> {
    cands
        .into_iter()
        .min_by_key(|c| (!c.is_coordinate(), !c.coeff.is_constant(), c.var))
}

/// Order-one elements `∂^α h` with `|α| = ν - 1`, for pairs `(h, ν)` with `ord h = ν`.
fn contact_candidates(stage: &Stage) -> Vec<Polynomial> {
    let vars = stage.effective_ordinary();
    let mut out = Vec::new();
    for (g, w) in &stage.pairs {
        let Some(k) = stage.order(g) else { continue };
        if k == 0 || Rational::from_integer(k.into()) != *w {
            continue;
        }
        for alpha in multi_indices(&vars, k - 1) {
            let mut h = g.clone();
            for &i in &alpha {
                h = h.derivative(i);
            }
            if stage.order(&h) == Some(1) && !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

/// `x_j - q_j` lying in the ideal locally at the point: some `g = (x_j - q_j)·s` of the
/// ideal has `s(q) ≠ 0`, detected as `∂_j g(q) ≠ 0`.
fn local_coordinate_contact(stage: &Stage, ideal: &[Polynomial]) -> Option<Contact> {
    let n = stage.n();
    stage.effective_ordinary().into_iter().find_map(|j| {
        let l = &Polynomial::var(n, j) - &Polynomial::constant(n, stage.point[j].clone());
        groebner::intersect(ideal, std::slice::from_ref(&l), n)
            .iter()
            .any(|g| !g.derivative(j).evaluate(&stage.point).is_zero())
            .then(|| Contact {
                poly: l,
                var: j,
                coeff: Polynomial::one(n),
            })
    })
}

fn find_contact(stage: &Stage, closure: &[(Polynomial, Rational)]) -> Option<Contact> {
    let cands = contact_candidates(stage);
    let first = pick(cands.iter().filter_map(|h| classify(stage, h)).collect());
    if first.as_ref().is_some_and(Contact::is_coordinate) {
        return first;
    }
    let heavy: Vec<Polynomial> = closure
        .iter()
        .filter(|(_, w)| *w >= Rational::one())
        .map(|(h, _)| h.clone())
        .collect();
    if let Some(c) = local_coordinate_contact(stage, &heavy) {
        return Some(c);
    }
    if first.as_ref().is_some_and(|c| c.coeff.is_constant()) {
        return first;
    }
    let gb = groebner::groebner(&heavy, stage.n(), MonomialOrder::Grevlex).polynomials();
    let mut cands: Vec<Contact> = gb
        .iter()
        .chain(heavy.iter())
        .filter_map(|h| classify(stage, h))
        .collect();
    cands.extend(first);
    pick(cands)
}

enum ContactStep {
    Contact(Contact),
    /// Order-one element dividing the whole closure, so that every restriction vanishes.
    Vanishing(Polynomial),
}

fn contact_step(stage: &Stage, closure: &[(Polynomial, Rational)]) -> Result<ContactStep> {
    if let Some(c) = find_contact(stage, closure) {
        return Ok(ContactStep::Contact(c));
    }
    let n = stage.n();
    contact_candidates(stage)
        .into_iter()
        .find(|h| {
            closure
                .iter()
                .all(|(g, _)| groebner::member(g, std::slice::from_ref(h), n))
        })
        .map(ContactStep::Vanishing)
        .ok_or(Error::NoRectifiableContact)
}

/// An element of `D^{≤a-1}(I)` of logarithmic order one at `p`, rectifiable by a triangular
/// substitution.
pub fn maximal_contact(i: &PolyIdeal, a: u64, p: &[Rational]) -> Result<Polynomial> {
    if a == 0 {
        return Err(Error::BadOrder("0".into()));
    }
    let mut stage = Stage::unweighted(i, p);
    stage.normalize(&Rational::from_integer(a.into()));
    let closure = weighted_closure(&stage);
    find_contact(&stage, &closure)
        .map(|c| c.poly)
        .ok_or(Error::NoRectifiableContact)
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, x| acc * x)
}

fn factorial_u64(k: u64) -> Result<u64> {
    (1..=k)
        .try_fold(1u64, |acc, x| acc.checked_mul(x))
        .ok_or_else(|| Error::ComputationLimit(format!("{k}! overflows")))
}

/// Minimal tuples `(c_0, ..., c_{a-1})` with `Σ (a-j) c_j ≥ a!`.
pub fn coefficient_tuples(a: u64) -> Result<Vec<Vec<u64>>> {
    let target = factorial_u64(a)?;
    let mut out = Vec::new();
    fn rec(j: u64, a: u64, target: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let sum: u64 = cur.iter().enumerate().map(|(k, &c)| (a - k as u64) * c).sum();
        if j == a {
            if sum >= target {
                let minimal = (0..cur.len()).all(|k| cur[k] == 0 || sum - (a - k as u64) < target);
                if minimal {
                    out.push(cur.clone());
                }
            }
            return;
        }
        let w = a - j;
        let max = if sum >= target { 0 } else { (target - sum).div_ceil(w) };
        for c in 0..=max {
            cur.push(c);
            rec(j + 1, a, target, cur, out);
            cur.pop();
        }
    }
    rec(0, a, target, &mut Vec::new(), &mut out);
    Ok(out)
}

fn multiset_products(gens: &[Polynomial], k: u64, nvars: usize, limit: usize) -> Result<Vec<Polynomial>> {
    let mut out = vec![Polynomial::one(nvars)];
    let mut starts = vec![0usize];
    for _ in 0..k {
        let mut next = Vec::new();
        let mut next_starts = Vec::new();
        for (p, &s) in out.iter().zip(&starts) {
            for (t, g) in gens.iter().enumerate().skip(s) {
                next.push(p * g);
                next_starts.push(t);
                if next.len() > limit {
                    return Err(Error::ComputationLimit("coefficient ideal too large".into()));
                }
            }
        }
        out = next;
        starts = next_starts;
    }
    Ok(out)
}

/// Coefficient ideal: products `∏ G_j^{c_j}` over minimal tuples, `G_j` generating `D^{≤j}(I)`.
pub fn coefficient_ideal(i: &PolyIdeal, a: u64) -> Result<PolyIdeal> {
    if a == 0 {
        return Err(Error::BadOrder("0".into()));
    }
    let n = i.nvars();
    let levels = derivative_levels(&i.generators, &i.ambient, a - 1);
    let cumulative: Vec<Vec<Polynomial>> = (0..a as usize)
        .map(|j| levels.iter().take(j + 1).flatten().cloned().collect())
        .collect();
    let mut gens = Vec::new();
    for tuple in coefficient_tuples(a)? {
        let mut prods = vec![Polynomial::one(n)];
        for (j, &c) in tuple.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let part = multiset_products(&cumulative[j], c, n, 20_000)?;
            let mut next = Vec::new();
            for p in &prods {
                for q in &part {
                    next.push(p * q);
                }
            }
            if next.len() > 20_000 {
                return Err(Error::ComputationLimit("coefficient ideal too large".into()));
            }
            prods = next;
        }
        gens.extend(prods);
    }
    PolyIdeal::new(i.ambient.clone(), gens)
}

/// Largest integer order whose factorial enters `d`.
const FACTORIAL_LIMIT: u64 = 5000;

/// Output of the recursion at a point.
#[derive(Debug, Clone)]
pub struct Center {
    pub ambient: LogAmbient,
    pub point: Vec<Rational>,
    /// Maximal contact elements in original coordinates.
    pub contacts: Vec<Polynomial>,
    /// Variable each contact is solved for.
    pub contact_vars: Vec<usize>,
    /// Entries `a_i`.
    pub exponents: Vec<Rational>,
    /// `∏ (b_i - 1)!` over the integer orders `b_i`; `None` when too large to form.
    pub d: Option<BigInt>,
    /// Minimal exponent vectors of the monomial part as a rational ideal.
    pub monomial: Vec<Vec<Rational>>,
    /// Integral monomial ideal `Q` with `Q^{1/q_root}` the monomial part.
    pub q: MonomialIdeal,
    pub q_root: BigInt,
}

/// Numerical data `ℓ = lcm(a_i d)`, `w_i = ℓ/(a_i d)` of a center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedCenter {
    /// `a_i·d`.
    pub exponents: Vec<BigInt>,
    pub ell: BigInt,
    pub weights: Vec<BigInt>,
    pub d: BigInt,
}

fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn integral_vector(v: &[Rational], s: &BigInt) -> Option<LatticeVector> {
    v.iter()
        .map(|x| (x * Rational::from_integer(s.clone())).to_integer().to_i64())
        .collect()
}

fn integral_ideal(vs: &[Vec<Rational>], s: &BigInt, total: usize) -> Option<MonomialIdeal> {
    let gens: Option<Vec<LatticeVector>> = vs.iter().map(|v| integral_vector(v, s)).collect();
    gens.map(|g| MonomialIdeal::new(total, &g))
}

/// Dominance-minimal rational exponent vectors.
fn minimal_rational(vs: &[Vec<Rational>], total: usize) -> Vec<Vec<Rational>> {
    if vs.is_empty() {
        return Vec::new();
    }
    let l = lcm_denominators(vs.iter().flatten());
    integral_ideal(vs, &l, total)
        .expect("small exponents")
        .generators
        .iter()
        .map(|g| g.iter().map(|&x| Rational::new(x.into(), l.clone())).collect())
        .collect()
}

impl Center {
    fn new(
        ambient: LogAmbient,
        point: Vec<Rational>,
        contacts: Vec<Polynomial>,
        contact_vars: Vec<usize>,
        exponents: Vec<Rational>,
        monomial: Vec<Vec<Rational>>,
    ) -> Center {
        let total = ambient.len();
        let mut d = Some(BigInt::one());
        for a in &exponents {
            d = d.and_then(|d| {
                let b = a * Rational::from_integer(d.clone());
                let b = b.is_integer().then(|| b.to_integer())?.to_u64()?;
                (1..=FACTORIAL_LIMIT).contains(&b).then(|| d * factorial(b - 1))
            });
        }
        let minimal = lcm_denominators(exponents.iter().chain(monomial.iter().flatten()));
        let root_from = |base: &BigInt| {
            let scaled: Vec<Rational> = monomial
                .iter()
                .flatten()
                .map(|x| x * Rational::from_integer(base.clone()))
                .collect();
            base * lcm_denominators(&scaled)
        };
        let (q, q_root) = d
            .as_ref()
            .map(root_from)
            .and_then(|r| integral_ideal(&monomial, &r, total).map(|q| (q, r)))
            .unwrap_or_else(|| {
                let r = root_from(&minimal);
                let q = integral_ideal(&monomial, &r, total).expect("small exponents");
                (q, r)
            });
        let q = if monomial.is_empty() {
            MonomialIdeal::zero(total)
        } else {
            q
        };
        Center {
            ambient,
            point,
            contacts,
            contact_vars,
            exponents,
            d,
            monomial,
            q,
            q_root,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.contacts.is_empty() && self.monomial.is_empty()
    }

    /// Whether every contact is `c·x_j` with the point at the origin.
    pub fn is_coordinate(&self) -> bool {
        self.point.iter().all(|x| x.is_zero())
            && self.contacts.iter().zip(&self.contact_vars).all(|(h, &j)| {
                h.len() == 1 && {
                    let (e, _) = h.terms().next().expect("one term");
                    e.iter().enumerate().all(|(i, &k)| k == u32::from(i == j))
                }
            })
    }

    /// Least `s` with every `a_i s` and the monomial part scaled by `s` integral.
    pub fn minimal_scale(&self) -> BigInt {
        lcm_denominators(self.exponents.iter().chain(self.monomial.iter().flatten()))
    }

    /// `d`, enlarged when needed so that the monomial part is integral.
    pub fn scale(&self) -> BigInt {
        match (&self.d, self.monomial.is_empty()) {
            (Some(d), true) => d.clone(),
            (None, true) => self.minimal_scale(),
            _ => self.q_root.clone(),
        }
    }

    /// Monomial part raised to the power `s`.
    pub fn monomial_ideal(&self, s: &BigInt) -> MonomialIdeal {
        if self.monomial.is_empty() {
            return MonomialIdeal::zero(self.ambient.len());
        }
        integral_ideal(&self.monomial, s, self.ambient.len()).expect("small exponents")
    }

    pub fn reduced(&self) -> Result<ReducedCenter> {
        self.reduced_at(&self.scale())
    }

    /// Reduced data computed from the scale `s`; the blow-up does not depend on `s`.
    pub fn reduced_at(&self, s: &BigInt) -> Result<ReducedCenter> {
        if self.is_empty() {
            return Err(Error::EmptyCenter);
        }
        let exponents: Vec<BigInt> = self
            .exponents
            .iter()
            .map(|a| (a * Rational::from_integer(s.clone())).to_integer())
            .collect();
        let ell = exponents.iter().fold(BigInt::one(), |acc, e| acc.lcm(e));
        let weights = exponents.iter().map(|e| &ell / e).collect();
        Ok(ReducedCenter {
            exponents,
            ell,
            weights,
            d: s.clone(),
        })
    }

    /// `(x^{a_1}, ..., Q^{1/d})` with contacts printed as polynomials.
    pub fn display(&self) -> String {
        let names = self.ambient.names();
        let mut parts: Vec<String> = self
            .contacts
            .iter()
            .zip(&self.exponents)
            .map(|(h, a)| {
                if a.is_one() {
                    wrap(&h.display(&names))
                } else {
                    format!("{}^{}", wrap(&h.display(&names)), exponent_string(a))
                }
            })
            .collect();
        if !self.q.is_zero() {
            parts.push(root_of(&self.q, &names, &self.q_root, parts.is_empty()));
        }
        format!("({})", parts.join(", "))
    }

    /// `(x_1^{1/w_1}, ..., Q^{1/ℓ})`.
    pub fn display_reduced(&self) -> Result<String> {
        let s = self.scale();
        let r = self.reduced_at(&s)?;
        let names = self.ambient.names();
        let mut parts: Vec<String> = self
            .contacts
            .iter()
            .zip(&r.weights)
            .map(|(h, w)| {
                if w.is_one() {
                    wrap(&h.display(&names))
                } else {
                    format!("{}^{{1/{w}}}", wrap(&h.display(&names)))
                }
            })
            .collect();
        if !self.monomial.is_empty() {
            parts.push(root_of(&self.monomial_ideal(&s), &names, &r.ell, parts.is_empty()));
        }
        Ok(format!("({})", parts.join(", ")))
    }

    /// `(x_1^{a_1 d}, ..., Q)`.
    pub fn display_ideal(&self) -> Result<String> {
        let s = self.scale();
        let r = self.reduced_at(&s)?;
        let names = self.ambient.names();
        let mut parts: Vec<String> = self
            .contacts
            .iter()
            .zip(&r.exponents)
            .map(|(h, e)| {
                if e.is_one() {
                    wrap(&h.display(&names))
                } else {
                    format!("{}^{e}", wrap(&h.display(&names)))
                }
            })
            .collect();
        for g in &self.monomial_ideal(&s).generators {
            let e: Vec<u32> = g.iter().map(|&x| x as u32).collect();
            parts.push(crate::poly::monomial_string(&e, &names));
        }
        Ok(format!("({})", parts.join(", ")))
    }
}

/// `Q^{1/r}` as a center entry; a lone root-free `Q` is shown by its generators.
fn root_of(q: &MonomialIdeal, names: &[String], r: &BigInt, alone: bool) -> String {
    let full = monomial_ideal_string(q, names);
    if r.is_one() {
        if q.generators.len() == 1 || alone {
            return full[1..full.len() - 1].to_string();
        }
        return full;
    }
    if q.generators.len() == 1 {
        let m = &full[1..full.len() - 1];
        if m.contains(['*', '^']) {
            return format!("({m})^{{1/{r}}}");
        }
        return format!("{m}^{{1/{r}}}");
    }
    format!("{full}^{{1/{r}}}")
}

fn wrap(s: &str) -> String {
    if s.contains(' ') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

fn exponent_string(a: &Rational) -> String {
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("{{{}}}", rational_string(a))
    }
}

/// `(x^2, y^2*z)` style rendering; `(0)` for the zero ideal.
pub fn monomial_ideal_string(m: &MonomialIdeal, names: &[String]) -> String {
    if m.is_zero() {
        return "(0)".into();
    }
    let gens: Vec<String> = m
        .generators
        .iter()
        .map(|g| {
            let e: Vec<u32> = g.iter().map(|&x| x as u32).collect();
            let s = crate::poly::monomial_string(&e, names);
            if s.is_empty() {
                "1".into()
            } else {
                s
            }
        })
        .collect();
    format!("({})", gens.join(", "))
}

/// Invariant and center of `I` at the rational point `p`.
pub fn invariant_at(i: &PolyIdeal, p: &[Rational]) -> Result<(Invariant, Center)> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let total = i.nvars();
    if p.len() != total {
        return Err(Error::AmbientMismatch(format!(
            "point of length {} in {total} variables",
            p.len()
        )));
    }
    let mut stage = Stage::unweighted(i, p);
    let mut contacts = Vec::new();
    let mut contact_vars = Vec::new();
    let mut exponents: Vec<Rational> = Vec::new();
    let mut monomial = Vec::new();
    let mut last = Rational::one();
    loop {
        let Some(r) = stage.ratio() else {
            monomial = minimal_rational(&stage.monomial_exponents(total, &last), total);
            break;
        };
        if r.is_zero() {
            if exponents.is_empty() {
                break;
            }
            return Err(Error::Precondition(
                "coefficient ideal does not vanish at the point".into(),
            ));
        }
        stage.normalize(&r);
        last = &last * &r;
        exponents.push(last.clone());
        let closure = weighted_closure(&stage);
        match contact_step(&stage, &closure)? {
            ContactStep::Vanishing(h) => {
                contacts.push(h.primitive_part().remap(&stage.orig, total));
                contact_vars.push(usize::MAX);
                break;
            }
            ContactStep::Contact(c) => {
                contacts.push(c.normalized().remap(&stage.orig, total));
                contact_vars.push(stage.orig[c.var]);
                let restricted = closure.iter().map(|(h, w)| (c.restrict(h), w.clone())).collect();
                match stage.descend(&c, restricted) {
                    Some(s) => stage = s,
                    None => break,
                }
            }
        }
    }
    let inv = if exponents.is_empty() && monomial.is_empty() {
        Invariant(vec![Entry::int(0)])
    } else {
        let mut entries: Vec<Entry> = exponents.iter().cloned().map(Entry::Finite).collect();
        if !monomial.is_empty() {
            entries.push(Entry::Infinite);
        }
        Invariant(entries)
    };
    let center = Center::new(
        i.ambient.clone(),
        p.to_vec(),
        contacts,
        contact_vars,
        exponents,
        monomial,
    );
    Ok((inv, center))
}

/// Invariant at `p` through literal coefficient ideals of integer order; exponential in the orders.
pub fn invariant_literal(i: &PolyIdeal, p: &[Rational]) -> Result<Invariant> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let mut stage = Stage::unweighted(i, p);
    let mut entries = Vec::new();
    let mut denom = BigInt::one();
    loop {
        let Some(r) = stage.ratio() else {
            entries.push(Entry::Infinite);
            return Ok(Invariant(entries));
        };
        if r.is_zero() {
            if entries.is_empty() {
                return Ok(Invariant(vec![Entry::int(0)]));
            }
            return Err(Error::Precondition(
                "coefficient ideal does not vanish at the point".into(),
            ));
        }
        let b = r
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::ComputationLimit("order too large".into()))?;
        entries.push(Entry::Finite(Rational::new(b.into(), denom.clone())));
        denom *= factorial(b - 1);
        let ideal = PolyIdeal {
            ambient: stage.ambient.clone(),
            generators: stage.gens(),
        };
        stage.normalize(&r);
        let closure = weighted_closure(&stage);
        let c = match contact_step(&stage, &closure)? {
            ContactStep::Vanishing(_) => return Ok(Invariant(entries)),
            ContactStep::Contact(c) => c,
        };
        let restricted = coefficient_ideal(&ideal, b)?
            .generators
            .iter()
            .map(|g| (c.restrict(g), Rational::one()))
            .collect();
        match stage.descend(&c, restricted) {
            Some(s) => stage = s,
            None => return Ok(Invariant(entries)),
        }
    }
}

/// Logarithmic order at `p`: order at `p` after setting vanishing logarithmic variables to zero.
pub fn logord_at(i: &PolyIdeal, p: &[Rational]) -> LogOrder {
    let stage = Stage::unweighted(i, p);
    stage
        .pairs
        .iter()
        .filter_map(|(g, _)| stage.order(g))
        .min()
        .map_or(LogOrder::Infinite, LogOrder::Finite)
}

/// Krull codimension of `V(I)`; the number of variables for the unit ideal.
pub fn height(i: &PolyIdeal) -> usize {
    let n = i.nvars();
    match groebner::groebner(&i.generators, n, MonomialOrder::Grevlex).dimension() {
        Some(d) => n - d,
        None => n,
    }
}

/// Whether the invariant at `p` is `(1, ..., 1)` of length `height` (computed when `None`).
pub fn is_smooth_toroidal(i: &PolyIdeal, p: &[Rational], height_hint: Option<usize>) -> Result<bool> {
    let (inv, _) = invariant_at(i, p)?;
    let h = height_hint.unwrap_or_else(|| height(i));
    Ok(inv.is_ones(h))
}

/// Total order helper for sorting many invariants.
pub fn max_invariant<'a>(it: impl IntoIterator<Item = &'a Invariant>) -> Option<&'a Invariant> {
    it.into_iter().max_by(|a, b| compare(a, b))
}

/// Exact integer conversion for center exponents used as lattice data.
pub fn to_i64(b: &BigInt, what: &str) -> Result<i64> {
    b.to_i64()
        .filter(|&x| x <= 1 << 40)
        .ok_or_else(|| Error::ComputationLimit(format!("{what} {b} too large")))
}
