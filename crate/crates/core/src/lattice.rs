//! Newton polyhedra of monomial generator sets, their facets, normal fans and faces.
//!
//! Every polyhedron here has recession cone equal to the nonnegative orthant, so
//! facets are described by nonnegative primitive normals `u` and levels `N` with
//! `u·a >= N` on the polyhedron.

use std::cmp::Reverse;
use std::collections::{BTreeSet, HashSet};

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg;

/// Integer lattice point.
pub type LatticeVector = Vec<i64>;

/// Dot product of two lattice vectors of equal length.
pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Unit coordinate vector `e_i` in dimension `n`.
pub fn unit(n: usize, i: usize) -> LatticeVector {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// First lattice point on the ray through `v`.
pub fn primitive(v: &[i64]) -> Result<LatticeVector> {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// Whether `a <= b` coordinatewise.
pub fn divides(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Drop duplicates and every vector dominated by another; result sorted descending lex.
pub fn minimal_elements(points: &[LatticeVector]) -> Vec<LatticeVector> {
    let uniq: BTreeSet<LatticeVector> = points.iter().cloned().collect();
    let uniq: Vec<LatticeVector> = uniq.into_iter().collect();
    let mut out: Vec<LatticeVector> = uniq
        .iter()
        .filter(|a| !uniq.iter().any(|b| b != *a && divides(b, a)))
        .cloned()
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Inequality `normal·a >= level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Facet {
    pub normal: LatticeVector,
    pub level: i64,
}

/// Convex hull of `a + R^n_{>=0}` over a generator set.
///
/// Facets are ordered like the rays of the normal fan: coordinate facets in index
/// order, then the remaining ones in descending lexicographic order of normals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    pub dim: usize,
    pub vertices: Vec<LatticeVector>,
    pub facets: Vec<Facet>,
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

fn is_coordinate(u: &[i64]) -> Option<usize> {
    let nz: Vec<usize> = (0..u.len()).filter(|&i| u[i] != 0).collect();
    (nz.len() == 1 && u[nz[0]] == 1).then(|| nz[0])
}

/// Newton polyhedron of the generators in dimension `n`.
pub fn newton_polyhedron(generators: &[LatticeVector], n: usize) -> Result<NewtonPolyhedron> {
    if generators.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    for g in generators {
        if g.len() != n {
            return Err(Error::AmbientMismatch(format!(
                "exponent vector of length {} in dimension {n}",
                g.len()
            )));
        }
        if g.iter().any(|&x| x < 0) {
            return Err(Error::Precondition("negative exponent".into()));
        }
    }
    let gens = minimal_elements(generators);

    let mut normals: HashSet<LatticeVector> = (0..n).map(|i| unit(n, i)).collect();
    if n >= 2 {
        for k in 1..=gens.len().min(n) {
            let coord_sets = subsets(n, n - k);
            for s in subsets(gens.len(), k) {
                let base = &gens[s[0]];
                let diffs: Vec<LatticeVector> = s[1..]
                    .iter()
                    .map(|&j| gens[j].iter().zip(base).map(|(a, b)| a - b).collect())
                    .collect();
                for t in &coord_sets {
                    let mut rows = diffs.clone();
                    rows.extend(t.iter().map(|&i| unit(n, i)));
                    let mut u = linalg::cofactor_normal(&rows, n);
                    if u.iter().all(|&x| x == 0) {
                        continue;
                    }
                    if u.iter().all(|&x| x <= 0) {
                        u.iter_mut().for_each(|x| *x = -*x);
                    }
                    if u.iter().any(|&x| x < 0) {
                        continue;
                    }
                    normals.insert(u);
                }
            }
        }
    }

    let mut facets = Vec::new();
    for u in normals {
        let level = gens.iter().map(|g| dot(&u, g)).min().expect("nonempty");
        let on: Vec<&LatticeVector> = gens.iter().filter(|g| dot(&u, g) == level).collect();
        let mut rows: Vec<LatticeVector> = on[1..]
            .iter()
            .map(|g| g.iter().zip(on[0]).map(|(a, b)| a - b).collect())
            .collect();
        rows.extend((0..n).filter(|&i| u[i] == 0).map(|i| unit(n, i)));
        if linalg::rank(&rows) == n - 1 {
            facets.push(Facet { normal: u, level });
        }
    }
    facets.sort_by_key(|f| match is_coordinate(&f.normal) {
        Some(i) => (0, i, Reverse(Vec::new())),
        None => (1, 0, Reverse(f.normal.clone())),
    });

    let vertices = gens
        .iter()
        .filter(|g| {
            let active: Vec<LatticeVector> = facets
                .iter()
                .filter(|f| dot(&f.normal, g) == f.level)
                .map(|f| f.normal.clone())
                .collect();
            linalg::rank(&active) == n
        })
        .cloned()
        .collect();

    Ok(NewtonPolyhedron {
        dim: n,
        vertices,
        facets,
    })
}

impl NewtonPolyhedron {
    /// Whether every facet inequality holds at `a`.
    pub fn contains(&self, a: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(&f.normal, a) >= f.level)
    }

    /// Minimum of `u·v` over vertices.
    pub fn facet_level(&self, u: &[i64]) -> i64 {
        self.vertices
            .iter()
            .map(|v| dot(u, v))
            .min()
            .expect("polyhedron has a vertex")
    }

    /// Coordinatewise maximum over vertices.
    pub fn vertex_box(&self) -> LatticeVector {
        (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap_or(0))
            .collect()
    }

    /// All nonempty faces, including the polyhedron itself.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.dim;
        let whole = self.face_from(&[]);
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(whole.facets.clone());
        let mut out = vec![whole];
        let mut i = 0;
        while i < out.len() {
            let cur = out[i].clone();
            i += 1;
            for fi in 0..self.facets.len() {
                if cur.facets.contains(&fi) {
                    continue;
                }
                let mut defining = cur.facets.clone();
                defining.push(fi);
                let face = self.face_from(&defining);
                if face.vertices.is_empty() {
                    continue;
                }
                if seen.insert(face.facets.clone()) {
                    out.push(face);
                }
            }
        }
        out.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.facets.cmp(&b.facets)));
        debug_assert!(out.iter().all(|f| f.dim <= n));
        out
    }

    fn face_from(&self, defining: &[usize]) -> Face {
        let n = self.dim;
        let on = |v: &LatticeVector| {
            defining
                .iter()
                .all(|&j| dot(&self.facets[j].normal, v) == self.facets[j].level)
        };
        let vertices: Vec<LatticeVector> = self.vertices.iter().filter(|v| on(v)).cloned().collect();
        let recession: Vec<usize> = (0..n)
            .filter(|&i| defining.iter().all(|&j| self.facets[j].normal[i] == 0))
            .collect();
        if vertices.is_empty() {
            return Face {
                vertices,
                recession,
                facets: defining.to_vec(),
                dim: 0,
            };
        }
        let facets: Vec<usize> = (0..self.facets.len())
            .filter(|&j| {
                let f = &self.facets[j];
                vertices.iter().all(|v| dot(&f.normal, v) == f.level) && recession.iter().all(|&i| f.normal[i] == 0)
            })
            .collect();
        let mut rows: Vec<LatticeVector> = vertices[1..]
            .iter()
            .map(|v| v.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect())
            .collect();
        rows.extend(recession.iter().map(|&i| unit(n, i)));
        let dim = linalg::rank(&rows);
        Face {
            vertices,
            recession,
            facets,
            dim,
        }
    }
}

/// A face of a Newton polyhedron: convex hull of `vertices` plus the cone on `recession`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<LatticeVector>,
    /// Coordinate directions along which the face is unbounded.
    pub recession: Vec<usize>,
    /// Indices of all facets containing the face.
    pub facets: Vec<usize>,
    pub dim: usize,
}

impl Face {
    /// Whether a point of the polyhedron lies on this face.
    pub fn contains(&self, p: &NewtonPolyhedron, a: &[i64]) -> bool {
        p.contains(a)
            && self
                .facets
                .iter()
                .all(|&j| dot(&p.facets[j].normal, a) == p.facets[j].level)
    }
}

/// Ray label: a coordinate axis or an exceptional ray.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RayId {
    Standard(usize),
    Exceptional(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    pub id: RayId,
    pub direction: LatticeVector,
    /// Facet level `N_ρ` of the polyhedron the fan came from.
    pub level: i64,
}

/// Maximal cone: the rays `ρ` with `u_ρ·v = N_ρ` for its vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub rays: Vec<usize>,
    pub vertex: LatticeVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFan {
    pub dim: usize,
    pub rays: Vec<Ray>,
    pub maximal_cones: Vec<Cone>,
}

/// Normal fan; ray `i` is the normal of facet `i` of `p`.
pub fn normal_fan(p: &NewtonPolyhedron) -> NormalFan {
    let mut next = 0;
    let rays: Vec<Ray> = p
        .facets
        .iter()
        .map(|f| {
            let id = match is_coordinate(&f.normal) {
                Some(i) => RayId::Standard(i),
                None => {
                    next += 1;
                    RayId::Exceptional(next - 1)
                }
            };
            Ray {
                id,
                direction: f.normal.clone(),
                level: f.level,
            }
        })
        .collect();
    let maximal_cones = p
        .vertices
        .iter()
        .map(|v| Cone {
            rays: (0..rays.len())
                .filter(|&r| dot(&rays[r].direction, v) == rays[r].level)
                .collect(),
            vertex: v.clone(),
        })
        .collect();
    NormalFan {
        dim: p.dim,
        rays,
        maximal_cones,
    }
}

impl NormalFan {
    /// Index of the standard ray along axis `i`.
    pub fn standard(&self, i: usize) -> usize {
        self.rays
            .iter()
            .position(|r| r.id == RayId::Standard(i))
            .expect("every axis is a ray")
    }

    /// Indices of exceptional rays, in fan order.
    pub fn exceptional(&self) -> Vec<usize> {
        (0..self.rays.len())
            .filter(|&r| matches!(self.rays[r].id, RayId::Exceptional(_)))
            .collect()
    }

    /// Index of a maximal cone containing the nonnegative vector `w` (any minimizer of `w·v`).
    pub fn locate(&self, w: &[i64]) -> usize {
        (0..self.maximal_cones.len())
            .min_by_key(|&c| dot(w, &self.maximal_cones[c].vertex))
            .expect("fan has a cone")
    }
}

/// Exceptional rays and rays with positive facet level, as ray indices.
pub fn exceptional_ray_sets(f: &NormalFan, p: &NewtonPolyhedron) -> (Vec<usize>, Vec<usize>) {
    let e = f.exceptional();
    let e_plus = (0..f.rays.len())
        .filter(|&r| p.facet_level(&f.rays[r].direction) > 0)
        .collect();
    (e, e_plus)
}
