//! Buchberger's algorithm over the rationals, with membership, saturation and dimension.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::poly::{Exponent, Polynomial};

/// Monomial order on exponent vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `x_0 > x_1 > ...`.
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex on the rest.
    Elimination(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Elimination(k) => grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..])),
        }
    }
}

type Term = (Exponent, BigRational);

/// Terms sorted in decreasing order.
#[derive(Debug, Clone)]
struct Sparse(Vec<Term>);

impl Sparse {
    fn from_poly(p: &Polynomial, order: MonomialOrder) -> Sparse {
        let mut v: Vec<Term> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        Sparse(v)
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.0.iter().cloned())
    }

    fn lead(&self) -> &Exponent {
        &self.0[0].0
    }

    fn make_monic(&mut self) {
        let inv = self.0[0].1.recip();
        for t in &mut self.0 {
            t.1 *= &inv;
        }
    }
}

/// `p[start..] - c·x^m·g`.
fn sub_mul(p: &[Term], c: &BigRational, m: &[u32], g: &Sparse, order: MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.0.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &Term| -> Term { (t.0.iter().zip(m).map(|(a, b)| a + b).collect(), -(c * &t.1)) };
    while i < p.len() || j < g.0.len() {
        if j == g.0.len() {
            out.push(p[i].clone());
            i += 1;
            continue;
        }
        let q = shifted(&g.0[j]);
        if i == p.len() {
            out.push(q);
            j += 1;
            continue;
        }
        match order.compare(&p[i].0, &q.0) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(q);
                j += 1;
            }
            Ordering::Equal => {
                let s = &p[i].1 + &q.1;
                if !s.is_zero() {
                    out.push((q.0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Full remainder of `f` modulo `basis`.
fn reduce(f: &Sparse, basis: &[Sparse], order: MonomialOrder) -> Sparse {
    let mut p = f.0.clone();
    let mut start = 0;
    let mut rem = Vec::new();
    while start < p.len() {
        let (e, c) = &p[start];
        match basis.iter().find(|g| divides(g.lead(), e)) {
            Some(g) => {
                let m: Exponent = e.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
                let coef = c / &g.0[0].1;
                p = sub_mul(&p[start..], &coef, &m, g, order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Sparse(rem)
}

fn spoly(f: &Sparse, g: &Sparse, order: MonomialOrder) -> Sparse {
    let l = lcm(f.lead(), g.lead());
    let mf: Exponent = l.iter().zip(f.lead()).map(|(a, b)| a - b).collect();
    let mg: Exponent = l.iter().zip(g.lead()).map(|(a, b)| a - b).collect();
    let lhs = sub_mul(&[], &(-f.0[0].1.recip()), &mf, f, order);
    Sparse(sub_mul(&lhs, &g.0[0].1.recip(), &mg, g, order))
}

/// Reduced Gröbner basis.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub nvars: usize,
    pub order: MonomialOrder,
    basis: Vec<Sparse>,
}

impl GroebnerBasis {
    /// Basis elements sorted by decreasing leading monomial.
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|s| s.to_poly(self.nvars)).collect()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.basis.iter().map(|s| s.lead().clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].lead().iter().all(|&x| x == 0)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(&Sparse::from_poly(f, self.order), &self.basis, self.order).to_poly(self.nvars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_all(&self, fs: &[Polynomial]) -> bool {
        fs.iter().all(|f| self.contains(f))
    }

    /// Krull dimension of the quotient ring; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let leads = self.leading_monomials();
        let n = self.nvars;
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let free = leads
                .iter()
                .all(|l| l.iter().enumerate().any(|(i, &k)| k > 0 && mask & (1 << i) == 0));
            if free {
                best = size;
            }
        }
        Some(best)
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `nvars` variables.
pub fn groebner(gens: &[Polynomial], nvars: usize, order: MonomialOrder) -> GroebnerBasis {
    let mut g: Vec<Sparse> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut unit = false;

    let add = |h: Sparse, g: &mut Vec<Sparse>, pairs: &mut Vec<(usize, usize)>| {
        let k = g.len();
        for i in 0..k {
            pairs.push((i, k));
        }
        g.push(h);
    };

    for f in gens {
        let s = reduce(&Sparse::from_poly(f, order), &g, order);
        if s.0.is_empty() {
            continue;
        }
        let mut s = s;
        s.make_monic();
        if s.lead().iter().all(|&x| x == 0) {
            unit = true;
            break;
        }
        add(s, &mut g, &mut pairs);
    }

    while !unit && !pairs.is_empty() {
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(g[a.0].lead(), g[a.1].lead());
                let lb = lcm(g[b.0].lead(), g[b.1].lead());
                order.compare(&la, &lb).then_with(|| (a.1, a.0).cmp(&(b.1, b.0)))
            })
            .expect("nonempty");
        let (i, j) = pairs.remove(pos);
        let (li, lj) = (g[i].lead(), g[j].lead());
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(li, lj);
        let pending = |a: usize, b: usize, pairs: &[(usize, usize)]| {
            let p = (a.min(b), a.max(b));
            pairs.contains(&p)
        };
        let chain = (0..g.len())
            .any(|k| k != i && k != j && divides(g[k].lead(), &l) && !pending(i, k, &pairs) && !pending(j, k, &pairs));
        if chain {
            continue;
        }
        let h = reduce(&spoly(&g[i], &g[j], order), &g, order);
        if h.0.is_empty() {
            continue;
        }
        let mut h = h;
        h.make_monic();
        if h.lead().iter().all(|&x| x == 0) {
            unit = true;
            break;
        }
        add(h, &mut g, &mut pairs);
    }

    if unit {
        return GroebnerBasis {
            nvars,
            order,
            basis: vec![Sparse(vec![(vec![0; nvars], BigRational::one())])],
        };
    }

    // keep one element per minimal leading monomial, then reduce tails
    let mut keep: Vec<Sparse> = Vec::new();
    for (idx, s) in g.iter().enumerate() {
        let redundant = g
            .iter()
            .enumerate()
            .any(|(k, t)| k != idx && divides(t.lead(), s.lead()) && (t.lead() != s.lead() || k < idx));
        if !redundant {
            keep.push(s.clone());
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let head = Sparse(vec![keep[i].0[0].clone()]);
        let tail = Sparse(keep[i].0[1..].to_vec());
        let others: Vec<Sparse> = keep
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, s)| s.clone())
            .collect();
        let r = reduce(&tail, &others, order);
        let mut v = head.0;
        v.extend(r.0);
        out.push(Sparse(v));
    }
    out.sort_by(|a, b| order.compare(b.lead(), a.lead()));
    GroebnerBasis {
        nvars,
        order,
        basis: out,
    }
}

pub fn is_unit(gens: &[Polynomial], nvars: usize) -> bool {
    if gens.iter().any(|g| !g.is_zero() && g.is_constant()) {
        return true;
    }
    groebner(gens, nvars, MonomialOrder::Grevlex).is_unit()
}

pub fn member(f: &Polynomial, gens: &[Polynomial], nvars: usize) -> bool {
    groebner(gens, nvars, MonomialOrder::Grevlex).contains(f)
}

/// Whether two generator lists span the same ideal.
pub fn ideal_eq(a: &[Polynomial], b: &[Polynomial], nvars: usize) -> bool {
    let ga = groebner(a, nvars, MonomialOrder::Grevlex);
    let gb = groebner(b, nvars, MonomialOrder::Grevlex);
    ga.polynomials() == gb.polynomials()
}

/// Generators of the ideal intersected with the ring of the last `nvars - k` variables,
/// with the first `k` variables dropped.
pub fn eliminate(gens: &[Polynomial], nvars: usize, k: usize) -> Vec<Polynomial> {
    let gb = groebner(gens, nvars, MonomialOrder::Elimination(k));
    gb.polynomials()
        .into_iter()
        .filter(|p| (0..k).all(|i| !p.involves(i)))
        .map(|p| {
            let mut q = p;
            for _ in 0..k {
                q = q.drop_var(0);
            }
            q
        })
        .collect()
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
pub fn intersect(a: &[Polynomial], b: &[Polynomial], nvars: usize) -> Vec<Polynomial> {
    let t = Polynomial::var(nvars + 1, 0);
    let s = &Polynomial::one(nvars + 1) - &t;
    let mut ext: Vec<Polynomial> = a.iter().map(|g| &t * &g.insert_var(0)).collect();
    ext.extend(b.iter().map(|g| &s * &g.insert_var(0)));
    eliminate(&ext, nvars + 1, 1)
}

/// `(I : f^∞)` via an auxiliary variable `w` and the relation `w·f - 1`.
pub fn saturate(gens: &[Polynomial], nvars: usize, f: &Polynomial) -> Vec<Polynomial> {
    assert!(!f.is_zero(), "saturation at zero");
    if f.is_constant() || gens.is_empty() {
        return groebner(gens, nvars, MonomialOrder::Grevlex).polynomials();
    }
    let mut ext: Vec<Polynomial> = gens.iter().map(|g| g.insert_var(0)).collect();
    let w = Polynomial::var(nvars + 1, 0);
    ext.push(&(&w * &f.insert_var(0)) - &Polynomial::one(nvars + 1));
    let elim = eliminate(&ext, nvars + 1, 1);
    groebner(&elim, nvars, MonomialOrder::Grevlex).polynomials()
}

/// Saturate successively at each listed variable.
pub fn saturate_vars(gens: &[Polynomial], nvars: usize, vars: &[usize]) -> Vec<Polynomial> {
    let mut cur = groebner(gens, nvars, MonomialOrder::Grevlex).polynomials();
    for &i in vars {
        if cur.iter().any(|p| !p.is_zero() && p.is_constant()) {
            break;
        }
        cur = saturate(&cur, nvars, &Polynomial::var(nvars, i));
    }
    cur
}
