use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::dd::{pointed_rays, rays_from_halfspaces};
use crate::arith::{dot_z, dot_zq, primitive, primitive_z, to_qvec, Q, Z};
use crate::error::{Error, Result};
use crate::linalg::{lattice_basis, nullspace_z, rank_z, rref};

/// A strongly convex rational polyhedral cone in `ℚ^n`, stored with both
/// its primitive extreme rays and a facet description.
///
/// The integral structure is the one induced from `ℤ^n` unless `lattice`
/// holds an explicit basis of a sublattice of full rank in the span.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    ambient_dim: usize,
    rays: Vec<Vec<Z>>,
    inequalities: Vec<Vec<Z>>,
    equations: Vec<Vec<Z>>,
    dim: usize,
    lattice: Option<Vec<Vec<Z>>>,
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.dim, &self.rays, &self.lattice).cmp(&(other.dim, &other.rays, &other.lattice))
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Cone {
    pub fn zero(ambient_dim: usize) -> Cone {
        let equations = (0..ambient_dim)
            .map(|i| {
                (0..ambient_dim)
                    .map(|j| if i == j { Z::one() } else { Z::zero() })
                    .collect()
            })
            .collect();
        Cone {
            ambient_dim,
            rays: Vec::new(),
            inequalities: Vec::new(),
            equations,
            dim: 0,
            lattice: None,
        }
    }

    /// Builds the cone generated by rational vectors.
    pub fn from_generators(ambient_dim: usize, generators: &[Vec<Q>]) -> Result<Cone> {
        for g in generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.len(),
                });
            }
        }
        let ints: Vec<Vec<Z>> = generators.iter().map(|g| primitive(g)).collect();
        Cone::from_integer_generators(ambient_dim, &ints)
    }

    pub fn from_integer_generators(ambient_dim: usize, generators: &[Vec<Z>]) -> Result<Cone> {
        let mut gens: Vec<Vec<Z>> = Vec::new();
        for g in generators {
            if g.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    expected: ambient_dim,
                    found: g.len(),
                });
            }
            let p = primitive_z(g);
            if p.iter().any(|x| !x.is_zero()) {
                gens.push(p);
            }
        }
        gens.sort();
        gens.dedup();
        if gens.is_empty() {
            return Ok(Cone::zero(ambient_dim));
        }
        let qg: Vec<Vec<Q>> = gens.iter().map(|g| to_qvec(g)).collect();
        let (basis, pivots) = rref(&qg, ambient_dim);
        let k = pivots.len();
        // coordinates of each generator in the echelon basis of the span
        let coords: Vec<Vec<Z>> = gens
            .iter()
            .map(|g| pivots.iter().map(|&p| g[p].clone()).collect())
            .collect();
        let dual = pointed_rays(&coords, k).expect("generators span the coordinate space");
        if rank_z(&dual, k) < k {
            return Err(Error::NotStronglyConvex);
        }
        let mut inequalities: Vec<Vec<Z>> = dual
            .iter()
            .map(|a| {
                let mut full = vec![Z::zero(); ambient_dim];
                for (c, &p) in a.iter().zip(&pivots) {
                    full[p] = c.clone();
                }
                primitive_z(&full)
            })
            .collect();
        inequalities.sort();
        inequalities.dedup();
        let basis_z: Vec<Vec<Z>> = basis.iter().map(|b| primitive(b)).collect();
        let equations = nullspace_z(&basis_z, ambient_dim);
        let rays: Vec<Vec<Z>> = gens
            .iter()
            .zip(&coords)
            .filter(|(_, c)| {
                let tight: Vec<Vec<Z>> = dual
                    .iter()
                    .filter(|a| dot_z(a, c).is_zero())
                    .cloned()
                    .collect();
                rank_z(&tight, k) + 1 == k
            })
            .map(|(g, _)| g.clone())
            .collect();
        Ok(Cone {
            ambient_dim,
            rays,
            inequalities,
            equations,
            dim: k,
            lattice: None,
        })
    }

    /// The cone `{x : eqs·x = 0, ineqs·x ≥ 0}`.
    pub fn from_halfspaces(ambient_dim: usize, ineqs: &[Vec<Z>], eqs: &[Vec<Z>]) -> Result<Cone> {
        let rays = rays_from_halfspaces(ambient_dim, ineqs, eqs)?;
        Cone::from_integer_generators(ambient_dim, &rays)
    }

    pub fn with_lattice(mut self, basis: Vec<Vec<Z>>) -> Result<Cone> {
        let basis = lattice_basis(&basis, self.ambient_dim);
        if basis.len() != self.dim {
            return Err(Error::InvalidInput(
                "lattice rank differs from cone dimension".into(),
            ));
        }
        for b in &basis {
            if self.equations.iter().any(|e| !dot_z(e, b).is_zero()) {
                return Err(Error::InvalidInput(
                    "lattice vector outside the span of the cone".into(),
                ));
            }
        }
        let saturated = self.saturated_lattice();
        if basis == saturated {
            self.lattice = None;
        } else {
            self.lattice = Some(basis);
        }
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rays(&self) -> &[Vec<Z>] {
        &self.rays
    }

    pub fn inequalities(&self) -> &[Vec<Z>] {
        &self.inequalities
    }

    pub fn equations(&self) -> &[Vec<Z>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn explicit_lattice(&self) -> Option<&[Vec<Z>]> {
        self.lattice.as_deref()
    }

    /// Basis of `ℤ^n ∩ span(self)`.
    pub fn saturated_lattice(&self) -> Vec<Vec<Z>> {
        let k = crate::linalg::integer_kernel(&self.equations, self.ambient_dim);
        lattice_basis(&k, self.ambient_dim)
    }

    /// Basis of the lattice of integral points of the cone.
    pub fn lattice(&self) -> Vec<Vec<Z>> {
        self.lattice
            .clone()
            .unwrap_or_else(|| self.saturated_lattice())
    }

    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// Coordinates, in the lattice basis, of the primitive lattice vector on `r`.
    pub fn lattice_coordinates(&self, r: &[Z]) -> Vec<Z> {
        let basis = self.lattice();
        let cols: Vec<Vec<Q>> = (0..self.ambient_dim)
            .map(|i| basis.iter().map(|b| crate::arith::zq(&b[i])).collect())
            .collect();
        let c = crate::linalg::solve(&cols, &to_qvec(r), basis.len()).expect("vector in the span");
        primitive(&c)
    }

    /// Index of the sublattice spanned by the primitive lattice vectors on
    /// the rays; `None` for non-simplicial cones.
    pub fn smoothness_index(&self) -> Option<Z> {
        if !self.is_simplicial() {
            return None;
        }
        if self.dim == 0 {
            return Some(Z::one());
        }
        let m: Vec<Vec<Z>> = self
            .rays
            .iter()
            .map(|r| self.lattice_coordinates(r))
            .collect();
        Some(crate::linalg::det_z(&m).abs())
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness_index().is_some_and(|i| i.is_one())
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| dot_zq(e, x).is_zero())
            && self
                .inequalities
                .iter()
                .all(|a| !dot_zq(a, x).is_negative())
    }

    pub fn contains_z(&self, x: &[Z]) -> bool {
        self.contains(&to_qvec(x))
    }

    /// Membership in the relative interior.
    pub fn contains_relint(&self, x: &[Q]) -> bool {
        self.equations.iter().all(|e| dot_zq(e, x).is_zero())
            && self.inequalities.iter().all(|a| dot_zq(a, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains_z(r))
    }

    /// A canonical point of the relative interior: the sum of the rays.
    pub fn interior_point(&self) -> Vec<Q> {
        let mut s = vec![Z::zero(); self.ambient_dim];
        for r in &self.rays {
            for (a, b) in s.iter_mut().zip(r) {
                *a += b;
            }
        }
        to_qvec(&s)
    }

    /// Faces as subsets of ray indices, including the zero face and the cone itself.
    pub fn face_ray_sets(&self) -> Vec<Vec<usize>> {
        let facets: Vec<BTreeSet<usize>> = self
            .inequalities
            .iter()
            .map(|a| {
                (0..self.rays.len())
                    .filter(|&i| dot_z(a, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let full: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        seen.insert(full.clone());
        let mut queue = vec![full];
        while let Some(f) = queue.pop() {
            for facet in &facets {
                let g: BTreeSet<usize> = f.intersection(facet).copied().collect();
                if seen.insert(g.clone()) {
                    queue.push(g);
                }
            }
        }
        seen.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    pub fn face(&self, ray_indices: &[usize]) -> Cone {
        let gens: Vec<Vec<Z>> = ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        let mut f =
            Cone::from_integer_generators(self.ambient_dim, &gens).expect("faces are pointed");
        if let Some(l) = &self.lattice {
            f.lattice = restrict_lattice(l, &f);
        }
        f
    }

    pub fn faces(&self) -> Vec<Cone> {
        let mut out: Vec<Cone> = self.face_ray_sets().iter().map(|s| self.face(s)).collect();
        out.sort();
        out
    }

    /// Codimension-one faces.
    pub fn facets(&self) -> Vec<Cone> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim + 1 == self.dim)
            .collect()
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        // the smallest face of `other` containing an interior point of `self`
        let p = self.interior_point();
        let tight: Vec<usize> = (0..other.rays.len())
            .filter(|&i| {
                other
                    .inequalities
                    .iter()
                    .filter(|a| dot_zq(a, &p).is_zero())
                    .all(|a| dot_z(a, &other.rays[i]).is_zero())
            })
            .collect();
        let face = other.face(&tight);
        face.rays == self.rays
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch(self.ambient_dim, other.ambient_dim));
        }
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Cone::from_halfspaces(self.ambient_dim, &ineqs, &eqs)
    }

    /// Applies an integral linear map (rows of `m`) to the cone.
    pub fn image(&self, m: &[Vec<Z>]) -> Result<Cone> {
        let gens: Vec<Vec<Z>> = self
            .rays
            .iter()
            .map(|r| crate::linalg::mat_vec_z(m, r))
            .collect();
        Cone::from_integer_generators(m.len(), &gens)
    }

    /// Drops any explicit lattice.
    pub fn without_lattice(mut self) -> Cone {
        self.lattice = None;
        self
    }
}

fn restrict_lattice(basis: &[Vec<Z>], face: &Cone) -> Option<Vec<Vec<Z>>> {
    // points Σ c_i b_i with face.equations vanishing
    let m: Vec<Vec<Z>> = face
        .equations
        .iter()
        .map(|e| basis.iter().map(|b| dot_z(e, b)).collect())
        .collect();
    let ker = crate::linalg::integer_kernel(&m, basis.len());
    let vecs: Vec<Vec<Z>> = ker
        .iter()
        .map(|c| {
            (0..face.ambient_dim)
                .map(|i| {
                    basis
                        .iter()
                        .zip(c)
                        .fold(Z::zero(), |acc, (b, ci)| acc + &b[i] * ci)
                })
                .collect()
        })
        .collect();
    let l = lattice_basis(&vecs, face.ambient_dim);
    if l == face.saturated_lattice() {
        None
    } else {
        Some(l)
    }
}
