//! Monomial ideals as antichains of exponent vectors, and their fractional powers.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::lattice::{self, divides, minimal_elements, LatticeVector, NewtonPolyhedron};

/// Ideal generated by monomials `x^a`, stored by minimal exponent vectors.
///
/// No generators encodes the zero ideal; the single zero vector encodes the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    pub dim: usize,
    pub generators: Vec<LatticeVector>,
}

/// Monomial ideal generated by the minimal elements of `gens`.
pub fn minimalize(dim: usize, gens: &[LatticeVector]) -> MonomialIdeal {
    MonomialIdeal::new(dim, gens)
}

impl MonomialIdeal {
    pub fn new(dim: usize, gens: &[LatticeVector]) -> Self {
        debug_assert!(gens.iter().all(|g| g.len() == dim));
        MonomialIdeal {
            dim,
            generators: minimal_elements(gens),
        }
    }

    pub fn zero(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn unit(dim: usize) -> Self {
        MonomialIdeal {
            dim,
            generators: vec![vec![0; dim]],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    /// Whether `x^a` lies in the ideal.
    pub fn contains(&self, a: &[i64]) -> bool {
        self.generators.iter().any(|g| divides(g, a))
    }

    /// Whether `self ⊆ other`.
    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn newton_polyhedron(&self) -> Result<NewtonPolyhedron> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        lattice::newton_polyhedron(&self.generators, self.dim)
    }

    /// Monomials whose exponents lie in the Newton polyhedron.
    pub fn integral_closure(&self) -> Result<MonomialIdeal> {
        let p = self.newton_polyhedron()?;
        let bound = p.vertex_box();
        let mut pts = Vec::new();
        let mut cur = vec![0i64; self.dim];
        loop {
            if p.contains(&cur) {
                pts.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    return Ok(MonomialIdeal::new(self.dim, &pts));
                }
                if cur[i] < bound[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// `self^l` for `l >= 1`; `l = 0` gives the unit ideal.
    pub fn power(&self, l: u32) -> MonomialIdeal {
        let mut acc = MonomialIdeal::unit(self.dim);
        for _ in 0..l {
            acc = acc.product(self);
        }
        acc
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = Vec::new();
        for a in &self.generators {
            for b in &other.generators {
                gens.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::new(self.dim, &gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        MonomialIdeal::new(self.dim, &gens)
    }

    /// `x^m · self`.
    pub fn shift(&self, m: &[i64]) -> MonomialIdeal {
        let gens: Vec<LatticeVector> = self
            .generators
            .iter()
            .map(|g| g.iter().zip(m).map(|(x, y)| x + y).collect())
            .collect();
        MonomialIdeal::new(self.dim, &gens)
    }

    /// Scale every exponent by `c`; the generators of `(x^{c a})`.
    pub fn scale(&self, c: i64) -> MonomialIdeal {
        let gens: Vec<LatticeVector> = self
            .generators
            .iter()
            .map(|g| g.iter().map(|x| x * c).collect())
            .collect();
        MonomialIdeal::new(self.dim, &gens)
    }
}

/// The fractional power `base^{1/root}`.
#[derive(Debug, Clone)]
pub struct FractionalIdeal {
    pub base: MonomialIdeal,
    pub root: u64,
}

impl FractionalIdeal {
    pub fn new(base: MonomialIdeal, root: u64) -> Result<Self> {
        if root == 0 {
            return Err(Error::Precondition("root must be positive".into()));
        }
        Ok(FractionalIdeal { base, root })
    }

    /// Facets of `P_base / root` as (normal, level numerator, level denominator) in lowest terms.
    fn scaled_facets(&self) -> Result<Vec<(LatticeVector, i64, i64)>> {
        let p = self.base.newton_polyhedron()?;
        let r = self.root as i64;
        let mut out: Vec<_> = p
            .facets
            .into_iter()
            .map(|f| {
                let g = f.level.gcd(&r);
                (f.normal, f.level / g, r / g)
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

impl PartialEq for FractionalIdeal {
    fn eq(&self, other: &Self) -> bool {
        match (self.base.is_zero(), other.base.is_zero()) {
            (true, true) => return self.base.dim == other.base.dim,
            (false, false) => {}
            _ => return false,
        }
        self.base.dim == other.base.dim && self.scaled_facets().ok() == other.scaled_facets().ok()
    }
}
