use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use super::cone::Cone;
use crate::arith::{dot_z, Q, Z};
use crate::error::{Error, Result};
use crate::linalg::{integer_kernel, lattice_basis, mat_vec_z, unimodular_completion};

/// An inclusion of `child` as a face of `parent`; `rays[i]` is the index of
/// the parent ray equal to the `i`-th ray of the child.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceMap {
    pub child: usize,
    pub parent: usize,
    pub rays: Vec<usize>,
}

/// How the cones of a complex meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Any two cones meet in a single common face.
    SingleFace,
    /// Some pair meets in a union of several common faces.
    UnionOfFaces,
    /// Some pair meets outside their common faces.
    NotAComplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdivisionKind {
    Proper,
    Partial,
    No,
}

/// A finite collection of cones in one ambient `ℚ^n`, closed under taking
/// faces and kept in canonical order: by dimension, then by ray list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConeComplex {
    ambient_dim: usize,
    cones: Vec<Cone>,
    ray_names: BTreeMap<String, Vec<Z>>,
}

impl ConeComplex {
    pub fn empty(ambient_dim: usize) -> ConeComplex {
        ConeComplex {
            ambient_dim,
            cones: Vec::new(),
            ray_names: BTreeMap::new(),
        }
    }

    /// Closes `cones` under faces and sorts them.
    pub fn from_cones(ambient_dim: usize, cones: Vec<Cone>) -> Result<ConeComplex> {
        let mut all: BTreeSet<Cone> = BTreeSet::new();
        for c in cones {
            if c.ambient_dim() != ambient_dim {
                return Err(Error::AmbientMismatch(ambient_dim, c.ambient_dim()));
            }
            if all.contains(&c) {
                continue;
            }
            for f in c.faces() {
                all.insert(f);
            }
        }
        Ok(ConeComplex {
            ambient_dim,
            cones: all.into_iter().collect(),
            ray_names: BTreeMap::new(),
        })
    }

    /// Builds a complex from generator lists of (typically maximal) cones.
    pub fn from_rays(ambient_dim: usize, cones: &[Vec<Vec<i64>>]) -> Result<ConeComplex> {
        let cs = cones
            .iter()
            .map(|gens| {
                let g: Vec<Vec<Z>> = gens.iter().map(|v| crate::arith::zvec(v)).collect();
                Cone::from_integer_generators(ambient_dim, &g)
            })
            .collect::<Result<Vec<_>>>()?;
        ConeComplex::from_cones(ambient_dim, cs)
    }

    pub fn with_ray_names(mut self, names: BTreeMap<String, Vec<Z>>) -> Result<ConeComplex> {
        for (name, r) in &names {
            if self.ray_index(r).is_none() {
                return Err(Error::InvalidInput(format!(
                    "named ray {name} is not a ray of the complex"
                )));
            }
        }
        self.ray_names = names;
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn ray_names(&self) -> &BTreeMap<String, Vec<Z>> {
        &self.ray_names
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.cones.iter().map(Cone::dim).max().unwrap_or(0)
    }

    pub fn index_of(&self, c: &Cone) -> Option<usize> {
        self.cones.binary_search(c).ok()
    }

    /// The rays of the complex, in canonical order.
    pub fn rays(&self) -> Vec<Vec<Z>> {
        self.cones
            .iter()
            .filter(|c| c.dim() == 1)
            .map(|c| c.rays()[0].clone())
            .collect()
    }

    pub fn ray_index(&self, r: &[Z]) -> Option<usize> {
        self.rays().iter().position(|x| x == r)
    }

    /// Cones that are not a proper face of another cone.
    pub fn maximal_cones(&self) -> Vec<&Cone> {
        self.cones
            .iter()
            .filter(|c| {
                !self
                    .cones
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.contains_cone(c) && c.is_face_of(d))
            })
            .collect()
    }

    pub fn face_maps(&self) -> Vec<FaceMap> {
        let mut out = Vec::new();
        for (p, parent) in self.cones.iter().enumerate() {
            for set in parent.face_ray_sets() {
                let face = parent.face(&set);
                let child = self.index_of(&face).expect("closed under faces");
                let rays = face
                    .rays()
                    .iter()
                    .map(|r| parent.rays().iter().position(|x| x == r).unwrap())
                    .collect();
                out.push(FaceMap {
                    child,
                    parent: p,
                    rays,
                });
            }
        }
        out.sort();
        out
    }

    /// Index of the smallest cone containing `x`, which for a fan is the
    /// cone having `x` in its relative interior.
    pub fn minimal_cone_containing(&self, x: &[Q]) -> Option<usize> {
        self.cones.iter().position(|c| c.contains(x))
    }

    pub fn support_contains(&self, x: &[Q]) -> bool {
        self.minimal_cone_containing(x).is_some()
    }

    /// For embedded cones a convex union of common faces is a single face,
    /// so only `SingleFace` and `NotAComplex` occur here.
    pub fn regime(&self) -> Regime {
        let max = self.maximal_cones();
        for (i, a) in max.iter().enumerate() {
            for b in &max[i + 1..] {
                match a.intersect(b) {
                    Ok(m) if m.is_face_of(a) && m.is_face_of(b) => {}
                    _ => return Regime::NotAComplex,
                }
            }
        }
        Regime::SingleFace
    }

    pub fn is_fan(&self) -> bool {
        self.regime() == Regime::SingleFace
    }

    /// Whether the support is all of `ℚ^n`, for a fan.
    pub fn is_complete(&self) -> bool {
        let n = self.ambient_dim;
        if n == 0 {
            return !self.cones.is_empty();
        }
        let max = self.maximal_cones();
        if max.is_empty() || max.iter().any(|c| c.dim() != n) {
            return false;
        }
        self.cones
            .iter()
            .filter(|c| c.dim() + 1 == n)
            .all(|w| max.iter().filter(|m| w.is_face_of(m)).count() == 2)
    }

    /// Applies an integral linear map to every cone.
    pub fn image(&self, m: &[Vec<Z>]) -> Result<ConeComplex> {
        let cs = self
            .maximal_cones()
            .into_iter()
            .map(|c| c.image(m))
            .collect::<Result<Vec<_>>>()?;
        ConeComplex::from_cones(m.len(), cs)
    }

    /// Stellar subdivision at a primitive vector of the support.
    pub fn stellar_subdivision(&self, v: &[Z]) -> Result<ConeComplex> {
        let vq = crate::arith::to_qvec(v);
        let mut out = Vec::new();
        for c in self.maximal_cones() {
            if !c.contains(&vq) {
                out.push(c.clone());
                continue;
            }
            for set in c.face_ray_sets() {
                let f = c.face(&set);
                if f.contains(&vq) {
                    continue;
                }
                let mut gens: Vec<Vec<Z>> = f.rays().to_vec();
                gens.push(v.to_vec());
                out.push(Cone::from_integer_generators(self.ambient_dim, &gens)?);
            }
        }
        ConeComplex::from_cones(self.ambient_dim, out)
    }

    /// Drops every explicit lattice.
    pub fn without_lattices(&self) -> ConeComplex {
        let cones: BTreeSet<Cone> = self
            .cones
            .iter()
            .cloned()
            .map(Cone::without_lattice)
            .collect();
        ConeComplex {
            ambient_dim: self.ambient_dim,
            cones: cones.into_iter().collect(),
            ray_names: self.ray_names.clone(),
        }
    }
}

/// Lattice of `c`'s span inside the lattice of `parent`.
fn induced_lattice(parent: &Cone, c: &Cone) -> Vec<Vec<Z>> {
    let basis = parent.lattice();
    let m: Vec<Vec<Z>> = c
        .equations()
        .iter()
        .map(|e| basis.iter().map(|b| dot_z(e, b)).collect())
        .collect();
    let ker = integer_kernel(&m, basis.len());
    let vecs: Vec<Vec<Z>> = ker
        .iter()
        .map(|k| combine(&basis, k, parent.ambient_dim()))
        .collect();
    lattice_basis(&vecs, parent.ambient_dim())
}

fn combine(basis: &[Vec<Z>], coeffs: &[Z], n: usize) -> Vec<Z> {
    (0..n)
        .map(|i| {
            basis
                .iter()
                .zip(coeffs)
                .fold(Z::zero(), |acc, (b, c)| acc + &b[i] * c)
        })
        .collect()
}

fn intersect_lattices(a: &[Vec<Z>], b: &[Vec<Z>], n: usize) -> Vec<Vec<Z>> {
    // x = Σ u_i a_i = Σ v_j b_j
    let m: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            a.iter()
                .map(|r| r[i].clone())
                .chain(b.iter().map(|r| -r[i].clone()))
                .collect()
        })
        .collect();
    let ker = integer_kernel(&m, a.len() + b.len());
    let vecs: Vec<Vec<Z>> = ker.iter().map(|k| combine(a, &k[..a.len()], n)).collect();
    lattice_basis(&vecs, n)
}

/// All pairwise intersections of cones of `a` and `b`, with their faces.
pub fn common_refinement(a: &ConeComplex, b: &ConeComplex) -> Result<ConeComplex> {
    if a.ambient_dim != b.ambient_dim {
        return Err(Error::AmbientMismatch(a.ambient_dim, b.ambient_dim));
    }
    let n = a.ambient_dim;
    let mut out = Vec::new();
    for x in a.maximal_cones() {
        for y in b.maximal_cones() {
            let c = x.intersect(y)?;
            if x.explicit_lattice().is_none() && y.explicit_lattice().is_none() {
                out.push(c);
                continue;
            }
            let l = intersect_lattices(&induced_lattice(x, &c), &induced_lattice(y, &c), n);
            out.push(c.with_lattice(l)?);
        }
    }
    let mut r = ConeComplex::from_cones(n, out)?;
    let mut names = a.ray_names.clone();
    names.extend(b.ray_names.iter().map(|(k, v)| (k.clone(), v.clone())));
    names.retain(|_, v| r.ray_index(v).is_some());
    r.ray_names = names;
    Ok(r)
}

/// The quotient by `span(ρ)` of all cones containing the `rho`-th ray.
pub fn star_of_ray(s: &ConeComplex, rho: usize) -> Result<ConeComplex> {
    let rays = s.rays();
    let r = rays.get(rho).ok_or(Error::RayNotInComplex(rho))?;
    let u = unimodular_completion(r);
    let proj: Vec<Vec<Z>> = u[1..].to_vec();
    let n = s.ambient_dim - 1;
    let mut out = Vec::new();
    for c in &s.cones {
        if !c.rays().contains(r) {
            continue;
        }
        let img = c.image(&proj)?;
        if c.explicit_lattice().is_some() {
            let l: Vec<Vec<Z>> = c.lattice().iter().map(|b| mat_vec_z(&proj, b)).collect();
            out.push(img.with_lattice(lattice_basis(&l, n))?);
        } else {
            out.push(img);
        }
    }
    ConeComplex::from_cones(n, out)
}

/// Whether `d` subdivides `s`: `d` is a fan, each of its cones lies in a
/// cone of `s` with the induced integral structure, and the supports agree
/// (proper) or `|d|` is strictly smaller (partial).
pub fn is_subdivision(d: &ConeComplex, s: &ConeComplex) -> SubdivisionKind {
    if d.ambient_dim != s.ambient_dim || !d.is_fan() {
        return SubdivisionKind::No;
    }
    for c in &d.cones {
        let Some(host) = s.cones.iter().find(|x| x.contains_cone(c)) else {
            return SubdivisionKind::No;
        };
        if c.lattice() != induced_lattice(host, c) {
            return SubdivisionKind::No;
        }
    }
    let dmax = d.maximal_cones();
    for sc in s.maximal_cones() {
        if !covers(sc, &dmax) {
            return SubdivisionKind::Partial;
        }
    }
    SubdivisionKind::Proper
}

/// Whether the cones of a fan cover the cone `s`.
fn covers(s: &Cone, fan: &[&Cone]) -> bool {
    let k = s.dim();
    let pieces: Vec<Cone> = fan
        .iter()
        .filter_map(|c| c.intersect(s).ok())
        .filter(|p| p.dim() == k)
        .collect();
    if k == 0 {
        return fan
            .iter()
            .any(|c| c.contains(&vec![Q::zero(); s.ambient_dim()]));
    }
    if pieces.is_empty() {
        return false;
    }
    let on_boundary = |w: &Cone| {
        s.inequalities()
            .iter()
            .any(|a| w.rays().iter().all(|r| dot_z(a, r).is_zero()))
    };
    let mut walls: BTreeMap<Cone, usize> = BTreeMap::new();
    for p in &pieces {
        for w in p.facets() {
            *walls.entry(w).or_default() += 1;
        }
    }
    walls.iter().all(|(w, &count)| count >= 2 || on_boundary(w))
}

/// Whether `f` is the union of the cones of `k` that it contains.
pub fn is_union_of_cones(f: &Cone, k: &ConeComplex) -> bool {
    let inside: Vec<&Cone> = k
        .cones
        .iter()
        .filter(|c| f.contains_cone(c) && c.dim() == f.dim())
        .collect();
    covers(f, &inside)
}

/// Canonical equality that ignores ray names.
pub fn same_cones(a: &ConeComplex, b: &ConeComplex) -> bool {
    a.ambient_dim == b.ambient_dim && a.cones == b.cones
}

/// `e_i` rows, used as the identity action.
pub fn identity_matrix(n: usize) -> Vec<Vec<Z>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Z::one() } else { Z::zero() })
                .collect()
        })
        .collect()
}
