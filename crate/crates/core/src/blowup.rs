//! Multi-weighted blow-ups along monomial ideals and centers, presented by Cox
//! coordinates, a grading, chart monomials and a pullback substitution.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::groebner;
use crate::lattice::{self, dot, normal_fan, LatticeVector, NewtonPolyhedron, NormalFan, RayId};
use crate::monomial::{FractionalIdeal, MonomialIdeal};
use crate::poly::{exponent_to_lattice, LogAmbient, PolyIdeal, Polynomial, VarKind, Variable};

const EXCEPTIONAL_LETTERS: [&str; 6] = ["u", "v", "w", "s", "t", "r"];

/// Open chart where the Cox variables outside one maximal cone are inverted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    pub cone: usize,
    pub vertex: LatticeVector,
    /// Cox variable indices inverted on the chart.
    pub inverted: Vec<usize>,
}

/// Presentation data of a (generalized) multi-weighted blow-up.
///
/// Cox variable `r` corresponds to ray `r` of the fan.
#[derive(Debug, Clone)]
pub struct MultiWeightedBlowup {
    pub source: LogAmbient,
    pub polyhedron: NewtonPolyhedron,
    pub fan: NormalFan,
    /// Weight `b̃_ρ` per ray.
    pub weights: Vec<u64>,
    /// Exceptional rays.
    pub exceptional: Vec<usize>,
    /// Rays with positive facet level.
    pub exceptional_plus: Vec<usize>,
    pub cox: LogAmbient,
    /// Image of each source variable in the Cox ring.
    pub pullback: Vec<Polynomial>,
    pub charts: Vec<Chart>,
}

fn base_name(name: &str) -> &str {
    name.trim_end_matches('\'')
        .trim_end_matches(|c: char| c.is_ascii_digit())
}

/// Letter for new exceptional variables not clashing with existing names.
pub fn exceptional_letter(source: &LogAmbient) -> &'static str {
    EXCEPTIONAL_LETTERS
        .iter()
        .find(|l| !source.vars.iter().any(|v| base_name(&v.name) == **l))
        .copied()
        .unwrap_or("e")
}

impl MultiWeightedBlowup {
    fn assemble(source: &LogAmbient, polyhedron: NewtonPolyhedron, weights: Vec<u64>) -> Self {
        let n = source.len();
        let fan = normal_fan(&polyhedron);
        let (exceptional, exceptional_plus) = lattice::exceptional_ray_sets(&fan, &polyhedron);
        let m = fan.rays.len();

        let mut exps: Vec<Vec<u32>> = vec![vec![0; m]; n];
        for (i, e) in exps.iter_mut().enumerate() {
            let s = fan.standard(i);
            e[s] = weights[s] as u32;
            for &r in &exceptional {
                e[r] = (weights[r] as i64 * fan.rays[r].direction[i]) as u32;
            }
        }

        let letter = exceptional_letter(source);
        let mut vars = Vec::with_capacity(m);
        for (r, ray) in fan.rays.iter().enumerate() {
            match ray.id {
                RayId::Standard(i) => {
                    let identity = exps[i].iter().enumerate().all(|(k, &x)| x == u32::from(k == r));
                    let src = &source.vars[i];
                    let name = if identity {
                        src.name.clone()
                    } else {
                        format!("{}'", src.name)
                    };
                    vars.push(Variable { name, kind: src.kind });
                }
                RayId::Exceptional(k) => {
                    let name = if exceptional.len() == 1 {
                        letter.to_string()
                    } else {
                        format!("{letter}{}", k + 1)
                    };
                    vars.push(Variable {
                        name,
                        kind: VarKind::Exceptional,
                    });
                }
            }
        }
        let cox = LogAmbient { vars };
        let pullback = exps
            .into_iter()
            .map(|e| Polynomial::monomial(m, e, num_traits::One::one()))
            .collect();
        let charts = fan
            .maximal_cones
            .iter()
            .enumerate()
            .map(|(c, cone)| Chart {
                cone: c,
                vertex: cone.vertex.clone(),
                inverted: (0..m)
                    .filter(|&r| dot(&fan.rays[r].direction, &cone.vertex) > fan.rays[r].level)
                    .collect(),
            })
            .collect();
        MultiWeightedBlowup {
            source: source.clone(),
            polyhedron,
            fan,
            weights,
            exceptional,
            exceptional_plus,
            cox,
            pullback,
            charts,
        }
    }

    fn check_source(&self, i: &PolyIdeal) -> Result<()> {
        if i.ambient.len() != self.source.len() {
            return Err(Error::AmbientMismatch(format!(
                "ideal in {} variables, blow-up of {}",
                i.ambient.len(),
                self.source.len()
            )));
        }
        Ok(())
    }

    /// Rows `b̃_ρ·u_ρ` of the ray matrix.
    pub fn beta_rows(&self) -> Vec<LatticeVector> {
        self.fan
            .rays
            .iter()
            .zip(&self.weights)
            .map(|(r, &w)| r.direction.iter().map(|x| x * w as i64).collect())
            .collect()
    }

    /// Degree of each Cox variable in `Z^E` (free part of the grading).
    pub fn grading(&self) -> Vec<LatticeVector> {
        let k = self.exceptional.len();
        (0..self.fan.rays.len())
            .map(|r| match self.fan.rays[r].id {
                RayId::Standard(i) => self
                    .exceptional
                    .iter()
                    .map(|&e| self.weights[e] as i64 * self.fan.rays[e].direction[i])
                    .collect(),
                RayId::Exceptional(j) => {
                    let mut v = vec![0; k];
                    v[j] = -1;
                    v
                }
            })
            .collect()
    }

    /// Chart monomials generating the irrelevant ideal, as Cox exponent vectors.
    pub fn irrelevant(&self) -> Vec<Vec<u32>> {
        let m = self.fan.rays.len();
        self.charts
            .iter()
            .map(|c| {
                let mut e = vec![0; m];
                for &r in &c.inverted {
                    e[r] = 1;
                }
                e
            })
            .collect()
    }

    /// Product of the inverted Cox variable names, e.g. `z'u2`.
    pub fn chart_label(&self, c: usize) -> String {
        let s: String = self.charts[c]
            .inverted
            .iter()
            .map(|&r| self.cox.vars[r].name.as_str())
            .collect();
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    pub fn total_transform(&self, i: &PolyIdeal) -> Result<PolyIdeal> {
        self.check_source(i)?;
        let images: Vec<Option<Polynomial>> = self.pullback.iter().cloned().map(Some).collect();
        i.substitute(&images, &self.cox)
    }

    /// `ν_ρ(f)`; `None` for the zero polynomial.
    pub fn monomial_valuation(&self, ray: usize, f: &Polynomial) -> Option<u64> {
        let u = self.ray_vector(ray);
        f.exponents().map(|e| dot(&u, &exponent_to_lattice(e)) as u64).min()
    }

    fn ray_vector(&self, ray: usize) -> LatticeVector {
        let w = self.weights[ray] as i64;
        self.fan.rays[ray].direction.iter().map(|x| x * w).collect()
    }

    /// Largest power of `x'_ρ` dividing the total transform of every generator.
    pub fn k_rho(&self, ray: usize, i: &PolyIdeal) -> Result<u64> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Ok(i.generators
            .iter()
            .filter_map(|g| self.monomial_valuation(ray, g))
            .min()
            .expect("nonzero generators"))
    }

    /// Total transform divided by `∏_{ρ∈E⁺} x'_ρ^{K_ρ}`, with the multiplicities `(ρ, K_ρ)`.
    pub fn weak_transform(&self, i: &PolyIdeal) -> Result<(PolyIdeal, Vec<(usize, u64)>)> {
        if i.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let total = self.total_transform(i)?;
        let mut mult = Vec::new();
        let mut div = vec![0u32; self.cox.len()];
        for &r in &self.exceptional_plus {
            let k = self.k_rho(r, i)?;
            mult.push((r, k));
            div[r] = k as u32;
        }
        let gens = total.generators.iter().map(|g| g.div_monomial(&div)).collect();
        Ok((PolyIdeal::new(self.cox.clone(), gens)?, mult))
    }

    /// Saturation of the total transform at the `E⁺` Cox variables.
    pub fn proper_transform(&self, i: &PolyIdeal) -> Result<PolyIdeal> {
        let (weak, _) = self.weak_transform(i)?;
        if weak.generators.len() == 1 {
            return Ok(weak);
        }
        let gens = groebner::saturate_vars(&weak.generators, self.cox.len(), &self.exceptional_plus);
        PolyIdeal::new(self.cox.clone(), gens)
    }

    /// Maps `x_i ↦ ...` and `t^{-1} ↦ ∏ x'_ρ^{N_ρ/gcd(ℓ,N_ρ)}` for root `ell`.
    pub fn t_inverse(&self, ell: u64) -> Vec<(usize, u64)> {
        self.exceptional_plus
            .iter()
            .map(|&r| {
                let n = self.fan.rays[r].level as u64;
                (r, n / gcd0(ell, n))
            })
            .collect()
    }
}

/// `gcd(l, 0) = l`.
fn gcd0(l: u64, n: u64) -> u64 {
    l.gcd(&n)
}

fn rees_weights(fan: &NormalFan, ell: u64) -> Vec<u64> {
    fan.rays.iter().map(|r| ell / gcd0(ell, r.level as u64)).collect()
}

/// Blow-up along a monomial ideal with weights `b` on the exceptional rays (in fan order).
pub fn build_blowup(a: &MonomialIdeal, b: &[u64], ambient: &LogAmbient) -> Result<MultiWeightedBlowup> {
    if a.dim != ambient.len() {
        return Err(Error::AmbientMismatch("monomial ideal arity".into()));
    }
    let p = a.newton_polyhedron()?;
    let fan = normal_fan(&p);
    let exc = fan.exceptional();
    if !b.is_empty() && b.len() != exc.len() {
        return Err(Error::Precondition(format!(
            "{} weights for {} exceptional rays",
            b.len(),
            exc.len()
        )));
    }
    if b.contains(&0) {
        return Err(Error::Precondition("weights must be positive".into()));
    }
    let mut weights = vec![1; fan.rays.len()];
    for (k, &r) in exc.iter().enumerate() {
        weights[r] = b.get(k).copied().unwrap_or(1);
    }
    Ok(MultiWeightedBlowup::assemble(ambient, p, weights))
}

/// Blow-up along `base^{1/root}`, with weights `ℓ/gcd(ℓ, N_ρ)` on every ray.
pub fn build_blowup_rees(fa: &FractionalIdeal, ambient: &LogAmbient) -> Result<MultiWeightedBlowup> {
    if fa.base.dim != ambient.len() {
        return Err(Error::AmbientMismatch("monomial ideal arity".into()));
    }
    let p = fa.base.newton_polyhedron()?;
    let weights = rees_weights(&normal_fan(&p), fa.root);
    Ok(MultiWeightedBlowup::assemble(ambient, p, weights))
}

/// Center `(x_1^{e_1}, ..., x_k^{e_k}, 𝔞)` with root `ℓ`; `e_i = a_i·d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterIdeal {
    /// `(variable index, a_i·d)`.
    pub ordinary: Vec<(usize, u64)>,
    /// Monomial part in full ambient coordinates.
    pub monomial: MonomialIdeal,
    pub root: u64,
}

impl CenterIdeal {
    /// Generators of `𝔧` as exponent vectors.
    pub fn generators(&self) -> Vec<LatticeVector> {
        let n = self.monomial.dim;
        let mut gens: Vec<LatticeVector> = self
            .ordinary
            .iter()
            .map(|&(i, e)| {
                let mut v = vec![0; n];
                v[i] = e as i64;
                v
            })
            .collect();
        gens.extend(self.monomial.generators.iter().cloned());
        gens
    }

    pub fn ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.monomial.dim, &self.generators())
    }

    pub fn to_fractional(&self) -> FractionalIdeal {
        FractionalIdeal {
            base: self.ideal(),
            root: self.root,
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| {
                let e: Vec<u32> = g.iter().map(|&x| x as u32).collect();
                crate::poly::monomial_string(&e, names)
            })
            .collect();
        format!("({})", gens.join(", "))
    }
}

/// Blow-up along a center, weights `ℓ/gcd(ℓ, N_ρ(𝔧))`.
pub fn center_to_blowup(c: &CenterIdeal, ambient: &LogAmbient) -> Result<MultiWeightedBlowup> {
    if c.ordinary.is_empty() && c.monomial.is_zero() {
        return Err(Error::EmptyCenter);
    }
    if c.monomial.dim != ambient.len() {
        return Err(Error::AmbientMismatch("center arity".into()));
    }
    let p = lattice::newton_polyhedron(&c.generators(), ambient.len())?;
    let weights = rees_weights(&normal_fan(&p), c.root);
    Ok(MultiWeightedBlowup::assemble(ambient, p, weights))
}

/// Map formulas of the factored morphism for `base^{1/root}`.
#[derive(Debug, Clone)]
pub struct FactoredMorphism {
    pub blowup: MultiWeightedBlowup,
    /// `(ray, N_ρ/gcd(ℓ,N_ρ))` over rays with positive level.
    pub t_inverse: Vec<(usize, u64)>,
}

pub fn factored_morphism(fa: &FractionalIdeal, ambient: &LogAmbient) -> Result<FactoredMorphism> {
    let blowup = build_blowup_rees(fa, ambient)?;
    let t_inverse = blowup.t_inverse(fa.root);
    Ok(FactoredMorphism { blowup, t_inverse })
}

/// First lattice points `(e_i, 0)` and `((ℓ/g)·u_ρ, N_ρ/g)` for rays of positive level.
pub fn canonical_stack_rays(c: &CenterIdeal) -> Result<Vec<LatticeVector>> {
    let p = lattice::newton_polyhedron(&c.generators(), c.monomial.dim)?;
    let fan = normal_fan(&p);
    let n = p.dim;
    let ell = c.root as i64;
    let mut out: Vec<LatticeVector> = (0..n)
        .map(|i| {
            let mut v = lattice::unit(n + 1, i);
            v[n] = 0;
            v
        })
        .collect();
    for r in &fan.rays {
        if r.level > 0 {
            let g = ell.gcd(&r.level);
            let mut v: LatticeVector = r.direction.iter().map(|x| x * (ell / g)).collect();
            v.push(r.level / g);
            out.push(v);
        }
    }
    Ok(out)
}

/// Blow-up of `V(x_1)` along the restriction of the center, `x_1` being its first ordinary variable.
pub fn restrict_blowup(
    c: &CenterIdeal,
    ambient: &LogAmbient,
) -> Result<(CenterIdeal, LogAmbient, MultiWeightedBlowup)> {
    let Some(&(x1, e1)) = c.ordinary.first() else {
        return Err(Error::HypothesisViolated("center has no ordinary part".into()));
    };
    let rest = c.ordinary[1..].iter().fold(1u64, |acc, &(_, e)| acc.lcm(&e));
    if rest % e1 != 0 {
        return Err(Error::HypothesisViolated(format!(
            "first exponent {e1} does not divide {rest}"
        )));
    }
    if c.monomial.generators.iter().any(|g| g[x1] != 0) {
        return Err(Error::HypothesisViolated(
            "monomial part involves the first variable".into(),
        ));
    }
    let drop = |g: &LatticeVector| {
        let mut h = g.clone();
        h.remove(x1);
        h
    };
    let monomial = MonomialIdeal::new(
        c.monomial.dim - 1,
        &c.monomial.generators.iter().map(drop).collect::<Vec<_>>(),
    );
    let restricted = CenterIdeal {
        ordinary: c.ordinary[1..]
            .iter()
            .map(|&(i, e)| (if i > x1 { i - 1 } else { i }, e))
            .collect(),
        monomial,
        root: c.root,
    };
    let amb = ambient.drop_var(x1);
    let b = center_to_blowup(&restricted, &amb)?;
    Ok((restricted, amb, b))
}

/// Check the numerical identities for a center with `k >= 1` and nonzero monomial part:
/// `ℓ | N_ρ`, `a_i d · u_{ρ,i} = N_ρ` on center variables, `u_{ρ,j} = 0` on other ordinary variables.
pub fn check_center_identities(c: &CenterIdeal, b: &MultiWeightedBlowup) -> std::result::Result<(), String> {
    if c.ordinary.is_empty() || c.monomial.is_zero() {
        return Ok(());
    }
    for &r in &b.exceptional {
        let ray = &b.fan.rays[r];
        let n = ray.level;
        if n % c.root as i64 != 0 {
            return Err(format!(
                "root {} does not divide level {n} of ray {:?}",
                c.root, ray.direction
            ));
        }
        for &(i, e) in &c.ordinary {
            if e as i64 * ray.direction[i] != n {
                return Err(format!("ray {:?}: {e}·u_{i} != {n}", ray.direction));
            }
        }
        for j in b.source.ordinary_indices() {
            if !c.ordinary.iter().any(|&(i, _)| i == j) && ray.direction[j] != 0 {
                return Err(format!("ray {:?} involves ordinary variable {j}", ray.direction));
            }
        }
    }
    Ok(())
}
