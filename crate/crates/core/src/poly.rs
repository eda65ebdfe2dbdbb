//! Sparse multivariate polynomials over the rationals and ideals in a logarithmic ambient.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeVector;
use crate::monomial::MonomialIdeal;

pub type Exponent = Vec<u32>;
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Role of a coordinate in the logarithmic structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Ordinary,
    Monomial,
    /// Monomial coordinate introduced by a blow-up.
    Exceptional,
}

impl VarKind {
    /// Whether the coordinate carries the toroidal structure.
    pub fn is_log(self) -> bool {
        !matches!(self, VarKind::Ordinary)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
}

/// Affine space with a named, flagged coordinate list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LogAmbient {
    pub vars: Vec<Variable>,
}

impl LogAmbient {
    pub fn new(vars: Vec<Variable>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].iter().any(|w| w.name == v.name) {
                return Err(Error::Precondition(format!("duplicate variable `{}`", v.name)));
            }
        }
        Ok(LogAmbient { vars })
    }

    /// Ordinary names followed by monomial names.
    pub fn from_names(ordinary: &[&str], monomial: &[&str]) -> Result<Self> {
        let mut vars: Vec<Variable> = ordinary
            .iter()
            .map(|n| Variable {
                name: n.to_string(),
                kind: VarKind::Ordinary,
            })
            .collect();
        vars.extend(monomial.iter().map(|n| Variable {
            name: n.to_string(),
            kind: VarKind::Monomial,
        }));
        LogAmbient::new(vars)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.vars[i].kind
    }

    pub fn log_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kind(i).is_log()).collect()
    }

    pub fn ordinary_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.kind(i).is_log()).collect()
    }

    /// Ambient with variable `i` removed.
    pub fn drop_var(&self, i: usize) -> LogAmbient {
        let mut vars = self.vars.clone();
        vars.remove(i);
        LogAmbient { vars }
    }
}

/// Polynomial in a fixed number of variables; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exp: Exponent, c: Rational) -> Self {
        debug_assert_eq!(exp.len(), nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Least total degree of a term (order at the origin).
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    /// Coefficients of the powers of `x_i`: `self = Σ_k parts[k]·x_i^k`.
    pub fn parts_in(&self, i: usize) -> Vec<Polynomial> {
        let mut parts = vec![Polynomial::zero(self.nvars); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            let mut f = e.clone();
            f[i] = 0;
            parts[e[i] as usize].add_term(f, c.clone());
        }
        parts
    }

    /// `den^D · self(x_i := num/den)` with `D` the degree in `x_i`.
    pub fn substitute_fraction(&self, i: usize, num: &Polynomial, den: &Polynomial) -> Polynomial {
        let parts = self.parts_in(i);
        let d = parts.len() - 1;
        let mut num_pows = vec![Polynomial::one(self.nvars)];
        let mut den_pows = vec![Polynomial::one(self.nvars)];
        for k in 0..d {
            num_pows.push(&num_pows[k] * num);
            den_pows.push(&den_pows[k] * den);
        }
        let mut out = Polynomial::zero(self.nvars);
        for (k, g) in parts.iter().enumerate() {
            if !g.is_zero() {
                out = &out + &(&(g * &num_pows[k]) * &den_pows[d - k]);
            }
        }
        out
    }

    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    pub fn add_term(&mut self, e: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::AmbientMismatch(format!(
                "{} vs {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// Multiply by `c·x^e`.
    pub fn mul_term(&self, e: &[u32], c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.iter().zip(e).map(|(x, y)| x + y).collect(), b * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * rat(e[i] as i64));
            }
        }
        out
    }

    /// `x_i ∂/∂x_i`.
    pub fn euler_derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                out.add_term(e.clone(), c * rat(e[i] as i64));
            }
        }
        out
    }

    /// Logarithmic derivation along variable `i` of `ambient`.
    pub fn log_derivation(&self, ambient: &LogAmbient, i: usize) -> Polynomial {
        if ambient.kind(i).is_log() {
            self.euler_derivative(i)
        } else {
            self.derivative(i)
        }
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Replace variable `i` by `images[i]`; all images share one arity.
    pub fn substitute(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        debug_assert_eq!(images.len(), self.nvars);
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|_| vec![Polynomial::one(target_nvars)]).collect();
        let mut out = Polynomial::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().expect("seeded") * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][k as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// `p(x + point)`.
    pub fn translate(&self, point: &[Rational]) -> Polynomial {
        if point.iter().all(|x| x.is_zero()) {
            return self.clone();
        }
        let n = self.nvars;
        let images: Vec<Polynomial> = (0..n)
            .map(|i| &Polynomial::var(n, i) + &Polynomial::constant(n, point[i].clone()))
            .collect();
        self.substitute(&images, n)
    }

    /// Remove variable `i`, which must not occur.
    pub fn drop_var(&self, i: usize) -> Polynomial {
        debug_assert!(!self.involves(i));
        Polynomial {
            nvars: self.nvars - 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.remove(i);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Embed into a ring with a new variable at position `i`.
    pub fn insert_var(&self, i: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + 1,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = e.clone();
                    f.insert(i, 0);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Rename variables: variable `i` becomes `map[i]` in a ring of `nvars` variables.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                f[map[i]] += k;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Set variable `i` to the constant `value`, keeping the arity.
    pub fn specialize(&self, i: usize, value: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = e.clone();
            let k = f[i];
            f[i] = 0;
            out.add_term(f, c * num_traits::pow(value.clone(), k as usize));
        }
        out
    }

    /// Coordinatewise minimum exponent over all terms.
    pub fn monomial_gcd(&self) -> Exponent {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        let mut g = first.clone();
        for e in it {
            for (a, b) in g.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        g
    }

    /// Exact division by `x^e`; every term must be divisible.
    pub fn div_monomial(&self, e: &[u32]) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    (
                        a.iter()
                            .zip(e)
                            .map(|(x, y)| x.checked_sub(*y).expect("divisible"))
                            .collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Scale so that the coefficients are coprime integers with positive leading (max lex) coefficient.
    pub fn primitive_part(&self) -> Polynomial {
        let Some((_, lead)) = self.terms.iter().next_back() else {
            return self.clone();
        };
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = num_integer::lcm(den, c.denom().clone());
            num = num_integer::gcd(num, c.numer().clone());
        }
        let mut f = Rational::new(den, num);
        if lead.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    pub fn exponents(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    /// Render with the given variable names, terms in descending lex order.
    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = monomial_string(e, names);
            if mono.is_empty() {
                s.push_str(&rational_string(&a));
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{}*{}", rational_string(&a), mono);
            }
        }
        s
    }
}

/// `x^2*y` style rendering; empty for the constant monomial.
pub fn monomial_string(e: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], k)),
        }
    }
    parts.join("*")
}

/// `p` or `p/q`.
pub fn rational_string(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let (mut big, small) = if self.len() >= rhs.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &small.terms {
            big.add_term(e.clone(), c.clone());
        }
        big
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "arity mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (a, c) in &self.terms {
            for (b, d) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }
}

/// Ideal generated by a list of polynomials in a logarithmic ambient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyIdeal {
    pub ambient: LogAmbient,
    pub generators: Vec<Polynomial>,
}

impl PolyIdeal {
    /// Zero generators are dropped.
    pub fn new(ambient: LogAmbient, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if g.nvars() != ambient.len() {
                return Err(Error::AmbientMismatch(format!(
                    "generator in {} variables, ambient has {}",
                    g.nvars(),
                    ambient.len()
                )));
            }
        }
        Ok(PolyIdeal {
            ambient,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Ideal generated by all exponent vectors occurring in the generators.
    pub fn monomial_saturation(&self) -> MonomialIdeal {
        let gens: Vec<LatticeVector> = self
            .generators
            .iter()
            .flat_map(|g| g.exponents().map(|e| e.iter().map(|&x| x as i64).collect()))
            .collect();
        MonomialIdeal::new(self.nvars(), &gens)
    }

    /// Apply `x_i ↦ sigma[i]` generator-wise.
    pub fn substitute(&self, sigma: &[Option<Polynomial>], target: &LogAmbient) -> Result<PolyIdeal> {
        if sigma.len() != self.nvars() {
            return Err(Error::AmbientMismatch("substitution arity".into()));
        }
        let mut images = Vec::with_capacity(sigma.len());
        for (i, s) in sigma.iter().enumerate() {
            match s {
                Some(p) if p.nvars() == target.len() => images.push(p.clone()),
                Some(_) => return Err(Error::AmbientMismatch("image arity".into())),
                None => return Err(Error::IncompleteSubstitution(self.ambient.vars[i].name.clone())),
            }
        }
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(&images, target.len()))
            .collect();
        PolyIdeal::new(target.clone(), gens)
    }

    pub fn display(&self) -> String {
        let names = self.ambient.names();
        let gens: Vec<String> = self.generators.iter().map(|g| g.display(&names)).collect();
        format!("({})", gens.join(", "))
    }
}

pub fn exponent_to_lattice(e: &[u32]) -> LatticeVector {
    e.iter().map(|&x| x as i64).collect()
}

pub fn lattice_to_exponent(a: &[i64]) -> Exponent {
    a.iter()
        .map(|&x| u32::try_from(x).expect("nonnegative exponent"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ring_arithmetic() {
        let (a, b) = (x(2, 0), x(2, 1));
        let p = &(&a + &b) * &(&a - &b);
        assert_eq!(p, &a.pow(2) - &b.pow(2));
        assert_eq!(&p + &Polynomial::zero(2), p);
        assert!(Polynomial::zero(2).checked_add(&Polynomial::zero(3)).is_err());
    }

    #[test]
    fn derivations() {
        let amb = LogAmbient::from_names(&["x", "y"], &["z"]).unwrap();
        let z3 = x(3, 2).pow(3);
        assert_eq!(z3.log_derivation(&amb, 2), z3.scale(&rat(3)));
        let f = &x(3, 0).pow(2) + &(&x(3, 1).pow(2) * &x(3, 2));
        assert_eq!(f.log_derivation(&amb, 0), x(3, 0).scale(&rat(2)));
        let y2z = &x(3, 1).pow(2) * &x(3, 2);
        assert_eq!(y2z.log_derivation(&amb, 2), y2z);
    }

    #[test]
    fn display_and_evaluate() {
        let f = &(&x(3, 0).pow(2) + &(&x(3, 1).pow(2) * &x(3, 2))) + &x(3, 2).pow(3);
        assert_eq!(f.display(&names(&["x", "y", "z"])), "x^2 + y^2*z + z^3");
        assert_eq!(f.len(), 3);
        assert!(f.evaluate(&[rat(0), rat(0), rat(0)]).is_zero());
        let g = &x(1, 0) + &Polynomial::one(1);
        assert_eq!(g.evaluate(&[rat(0)]), rat(1));
        let h = &x(2, 0) - &Polynomial::constant(2, Rational::new(1.into(), 2.into()));
        assert_eq!(h.display(&names(&["x", "y"])), "x - 1/2");
    }

    #[test]
    fn substitution_into_cox_coordinates() {
        // x -> x' u1^3 u2, y -> y' u1^2, z -> z' u1^2 u2^2
        let n = 5;
        let v = |i| Polynomial::var(n, i);
        let images = vec![
            &(&v(0) * &v(3).pow(3)) * &v(4),
            &v(1) * &v(3).pow(2),
            &(&v(2) * &v(3).pow(2)) * &v(4).pow(2),
        ];
        let f = &(&x(3, 0).pow(2) + &x(3, 1).pow(2)) + &x(3, 2).pow(2);
        let g = f.substitute(&images, n);
        let nm = names(&["x'", "y'", "z'", "u1", "u2"]);
        assert_eq!(g.display(&nm), "x'^2*u1^6*u2^2 + y'^2*u1^4 + z'^2*u1^4*u2^4");
    }

    #[test]
    fn monomial_saturation_of_hypersurface() {
        let amb = LogAmbient::from_names(&[], &["x", "y", "z"]).unwrap();
        let f = &(&x(3, 0).pow(2) + &(&x(3, 1).pow(2) * &x(3, 2))) + &x(3, 2).pow(3);
        let i = PolyIdeal::new(amb.clone(), vec![f]).unwrap();
        let m = i.monomial_saturation();
        assert_eq!(m.generators, vec![vec![2, 0, 0], vec![0, 2, 1], vec![0, 0, 3]]);
        let z = PolyIdeal::new(amb, vec![Polynomial::zero(3)]).unwrap();
        assert!(z.monomial_saturation().is_zero());
    }
}
