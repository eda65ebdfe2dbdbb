//! Newton non-degeneracy of a hypersurface and verification of its one-step resolution.

use num_traits::Zero;

use crate::blowup::{build_blowup, MultiWeightedBlowup};
use crate::error::{Error, Result};
use crate::groebner;
use crate::invariant::{max_logord, LogOrder};
use crate::lattice::{dot, Face, LatticeVector};
use crate::monomial::MonomialIdeal;
use crate::poly::{exponent_to_lattice, LogAmbient, PolyIdeal, Polynomial, Rational};
use crate::resolve::slice;

/// Check of one face polynomial on the torus.
#[derive(Debug, Clone)]
pub struct FaceCertificate {
    pub face: Face,
    pub polynomial: Polynomial,
    /// `(f_τ, ∂f_τ)` saturated at all variables is the unit ideal.
    pub smooth_on_torus: bool,
}

#[derive(Debug, Clone)]
pub struct NondegeneracyReport {
    pub faces: Vec<FaceCertificate>,
}

impl NondegeneracyReport {
    pub fn nondegenerate(&self) -> bool {
        self.faces.iter().all(|c| c.smooth_on_torus)
    }
}

fn check_hypotheses(f: &Polynomial) -> Result<()> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::HypothesisViolated("polynomial is constant".into()));
    }
    if !f.constant_term().is_zero() {
        return Err(Error::HypothesisViolated(
            "polynomial does not vanish at the origin".into(),
        ));
    }
    if let Some(i) = f.monomial_gcd().iter().position(|&k| k > 0) {
        return Err(Error::HypothesisViolated(format!(
            "variable {i} divides the polynomial"
        )));
    }
    Ok(())
}

fn newton_ideal(f: &Polynomial) -> MonomialIdeal {
    let gens: Vec<LatticeVector> = f.exponents().map(|e| exponent_to_lattice(e)).collect();
    MonomialIdeal::new(f.nvars(), &gens)
}

/// Terms of `f` on a face.
pub fn face_polynomial(f: &Polynomial, p: &crate::lattice::NewtonPolyhedron, face: &Face) -> Polynomial {
    Polynomial::from_terms(
        f.nvars(),
        f.terms()
            .filter(|(e, _)| face.contains(p, &exponent_to_lattice(e)))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
}

/// Whether every face polynomial of the Newton polyhedron defines a smooth hypersurface of the torus.
pub fn newton_nondegenerate(f: &Polynomial) -> Result<NondegeneracyReport> {
    check_hypotheses(f)?;
    let n = f.nvars();
    let p = newton_ideal(f).newton_polyhedron()?;
    let vars: Vec<usize> = (0..n).collect();
    let faces = p
        .faces()
        .into_iter()
        .map(|face| {
            let ft = face_polynomial(f, &p, &face);
            let mut gens = vec![ft.clone()];
            gens.extend((0..n).map(|i| ft.derivative(i)).filter(|g| !g.is_zero()));
            let sat = groebner::saturate_vars(&gens, n, &vars);
            let smooth = groebner::is_unit(&sat, n);
            FaceCertificate {
                face,
                polynomial: ft,
                smooth_on_torus: smooth,
            }
        })
        .collect();
    Ok(NondegeneracyReport { faces })
}

#[derive(Debug, Clone)]
pub struct OneStepReport {
    pub blowup: MultiWeightedBlowup,
    pub transform: Polynomial,
    /// `(chart label, D^{≤1} of the transform is the unit ideal on the chart)`.
    pub charts: Vec<(String, bool)>,
    /// `(face index, restriction to the orbit agrees with the face polynomial)`.
    pub orbits: Vec<(usize, bool)>,
}

impl OneStepReport {
    pub fn passed(&self) -> bool {
        self.charts.iter().all(|c| c.1) && self.orbits.iter().all(|o| o.1)
    }
}

/// Blows up the fully monomial ambient along the monomial saturation of `(f)` and checks that the
/// proper transform has unit first derivative ideal on every chart and restricts to each orbit as
/// the corresponding face polynomial.
pub fn one_step_check(f: &Polynomial, names: &[String]) -> Result<OneStepReport> {
    check_hypotheses(f)?;
    let n = f.nvars();
    if names.len() != n {
        return Err(Error::AmbientMismatch(format!(
            "{} names for {n} variables",
            names.len()
        )));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ambient = LogAmbient::from_names(&[], &refs)?;
    let ideal = PolyIdeal::new(ambient.clone(), vec![f.clone()])?;
    let b = build_blowup(&newton_ideal(f), &[], &ambient)?;
    let (weak, mult) = b.weak_transform(&ideal)?;
    let transform = weak.generators[0].clone();
    let m = b.cox.len();

    let charts = b
        .charts
        .iter()
        .enumerate()
        .map(|(c, chart)| {
            let (s, _) = slice(&weak, &chart.inverted);
            let ok = groebner::is_unit(&s.generators, s.nvars()) || max_logord(&s) <= LogOrder::Finite(1);
            (b.chart_label(c), ok)
        })
        .collect();

    let mut div = vec![0u32; m];
    for &(r, k) in &mult {
        div[r] = k as u32;
    }
    let p = &b.polyhedron;
    let mut orbits = Vec::new();
    for (k, face) in p.faces().iter().enumerate() {
        let on_face: Vec<usize> = (0..b.fan.rays.len())
            .filter(|&r| {
                let ray = &b.fan.rays[r];
                face.vertices.iter().all(|v| dot(&ray.direction, v) == ray.level)
                    && face.recession.iter().all(|&i| ray.direction[i] == 0)
            })
            .collect();
        if on_face.is_empty() {
            continue;
        }
        let zero = |g: &Polynomial| {
            on_face
                .iter()
                .fold(g.clone(), |acc, &r| acc.specialize(r, &Rational::zero()))
        };
        let ft = face_polynomial(f, p, face);
        let ft_up = ft.substitute(&b.pullback, m).div_monomial(&div);
        orbits.push((k, zero(&transform) == zero(&ft_up)));
    }
    Ok(OneStepReport {
        blowup: b,
        transform,
        charts,
        orbits,
    })
}
