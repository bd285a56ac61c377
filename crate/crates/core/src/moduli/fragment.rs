//! Gluing subdivided realization cones of a closed family of types into a
//! cone-space fragment.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::arith::{Q, Z};
use crate::cones::{
    common_refinement, is_subdivision, is_union_of_cones, Cone, ConeComplex, ConeSpace, Morphism,
    SubdivisionKind,
};
use crate::error::{Error, Result};
use crate::graphs::{minimal_structure, CombinatorialOneComplex, EmbeddedOneComplex};

use super::types::{automorphisms, canonical_type, isomorphisms};
use super::xg::{build_xg, image_surjection, pullback_matrix, XGCone};
use super::{enumerate_surjections, DEFAULT_BUDGET};

/// A cone of the fragment: a cone of the subdivision of `𝕏_G` whose
/// interior realizes `G` itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentCone {
    pub graph: usize,
    pub cone: Cone,
    /// Vertices of `G` that are erased by the minimal structure of the
    /// fibre over an interior point.
    pub tube_vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConeSpaceFragment {
    pub sigma: ConeComplex,
    pub family: Vec<CombinatorialOneComplex>,
    pub subdivisions: Vec<ConeComplex>,
    pub cones: Vec<FragmentCone>,
    pub morphisms: Vec<Morphism>,
    /// Vertex permutations forming `Aut(G)` for each graph.
    pub automorphisms: Vec<Vec<Vec<usize>>>,
    xgs: Vec<XGCone>,
}

/// The action of a vertex permutation on concatenated positions.
pub fn permutation_action(perm: &[usize], n: usize) -> Vec<Vec<Z>> {
    let total = perm.len() * n;
    let mut m = vec![vec![Z::zero(); total]; total];
    for (v, &w) in perm.iter().enumerate() {
        for k in 0..n {
            m[w * n + k][v * n + k] = Z::one();
        }
    }
    m
}

fn describe(g: &CombinatorialOneComplex) -> String {
    format!(
        "{} vertices, {} edges, {} rays",
        g.vertices.len(),
        g.edges.len(),
        g.rays.len()
    )
}

impl ConeSpaceFragment {
    pub fn xg(&self, graph: usize) -> &XGCone {
        &self.xgs[graph]
    }

    /// The fibre of the universal family over a point of a fragment cone.
    pub fn fiber(&self, cone: usize, point: &[Q]) -> Result<EmbeddedOneComplex> {
        let c = self
            .cones
            .get(cone)
            .ok_or_else(|| Error::BadIndex(format!("cone {cone}")))?;
        if !c.cone.contains(point) {
            return Err(Error::InvalidInput("point outside the cone".into()));
        }
        Ok(self.xgs[c.graph].realize(point))
    }

    /// The abstract cone space, with automorphisms of each cone given by
    /// the graph automorphisms that preserve it.
    pub fn space(&self) -> Result<ConeSpace> {
        let n = self.sigma.ambient_dim();
        let autos = self
            .cones
            .iter()
            .map(|c| {
                self.automorphisms[c.graph]
                    .iter()
                    .map(|p| permutation_action(p, n))
                    .filter(|m| c.cone.image(m).is_ok_and(|img| img.rays() == c.cone.rays()))
                    .collect()
            })
            .collect();
        ConeSpace::new(
            self.cones.iter().map(|c| c.cone.clone()).collect(),
            self.morphisms.clone(),
            autos,
        )
    }

    /// Every fragment cone over which the universal family is flat: each
    /// vertex, edge and ray of `G` persists with positive length.
    pub fn is_flat(&self) -> Result<bool> {
        for c in &self.cones {
            let xg = &self.xgs[c.graph];
            let it = image_surjection(xg, &c.cone.interior_point(), &self.sigma)?;
            if !it.is_identity(&xg.graph) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn tube_vertices(xg: &XGCone, point: &[Q], sigma: &ConeComplex) -> Result<Vec<usize>> {
    let e = xg.realize(point);
    let kept = minimal_structure(&e, sigma)?.positions;
    Ok((0..e.positions.len())
        .filter(|&v| !kept.contains(&e.positions[v]))
        .collect())
}

fn find_member(
    family: &[CombinatorialOneComplex],
    canon: &[CombinatorialOneComplex],
    h: &CombinatorialOneComplex,
) -> Option<usize> {
    let ch = canonical_type(h).0;
    family
        .iter()
        .zip(canon)
        .position(|(g, c)| g.vertices.len() == h.vertices.len() && *c == ch)
}

/// Glues the subdivisions `subdivisions[i]` of `𝕏_{family[i]}` along image
/// surjections. The family must be closed under image types, each
/// subdivision invariant under `Aut(G)`, and each image-type subcone a
/// union of its cones.
pub fn assemble_fragment(
    sigma: &ConeComplex,
    family: &[CombinatorialOneComplex],
    subdivisions: &[ConeComplex],
) -> Result<ConeSpaceFragment> {
    if family.len() != subdivisions.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} graphs but {} subdivisions",
            family.len(),
            subdivisions.len()
        )));
    }
    let n = sigma.ambient_dim();
    let canon: Vec<CombinatorialOneComplex> = family.iter().map(|g| canonical_type(g).0).collect();
    let distinct: BTreeSet<&CombinatorialOneComplex> = canon.iter().collect();
    if distinct.len() != canon.len() {
        return Err(Error::InvalidInput(
            "the family lists isomorphic graphs twice".into(),
        ));
    }
    let mut xgs = Vec::new();
    let mut autos = Vec::new();
    for (g, y) in family.iter().zip(subdivisions) {
        let xg = build_xg(g, sigma)?;
        let base = ConeComplex::from_cones(xg.ambient_dim(), vec![xg.cone.clone()])?;
        if is_subdivision(y, &base) != SubdivisionKind::Proper {
            return Err(Error::NotARefinement(format!(
                "subdivision of the cone of {} has the wrong support",
                describe(g)
            )));
        }
        let aut = automorphisms(g);
        for p in &aut {
            if y.image(&permutation_action(p, n))?.cones() != y.cones() {
                return Err(Error::NotEquivariant(format!(
                    "an automorphism of {} moves the subdivision",
                    describe(g)
                )));
            }
        }
        let en = enumerate_surjections(g, sigma, DEFAULT_BUDGET)?.certified()?;
        for t in &en.types {
            if find_member(family, &canon, t.graph()).is_none() {
                return Err(Error::NotClosed(format!(
                    "image type with {} is missing from the family",
                    describe(t.graph())
                )));
            }
            if !is_union_of_cones(&t.sub_cone, y) {
                return Err(Error::FaceMismatch(format!(
                    "an image-type subcone of {} is not a union of cones",
                    describe(g)
                )));
            }
        }
        xgs.push(xg);
        autos.push(aut);
    }

    let mut cones = Vec::new();
    for (gi, y) in subdivisions.iter().enumerate() {
        for c in y.cones() {
            let p = c.interior_point();
            if image_surjection(&xgs[gi], &p, sigma)?.is_identity(&family[gi]) {
                let tubes = tube_vertices(&xgs[gi], &p, sigma)?;
                cones.push(FragmentCone {
                    graph: gi,
                    cone: c.clone().without_lattice(),
                    tube_vertices: tubes,
                });
            }
        }
    }

    let mut morphisms = Vec::new();
    for (pi, parent) in cones.iter().enumerate() {
        let xg = &xgs[parent.graph];
        for face in parent.cone.faces() {
            let it = image_surjection(xg, &face.interior_point(), sigma)?;
            let k = find_member(family, &canon, it.graph())
                .ok_or_else(|| Error::NotClosed(describe(it.graph())))?;
            let phi = isomorphisms(it.graph(), &family[k])
                .into_iter()
                .next()
                .expect("isomorphic by canonical form");
            let psi: Vec<usize> = it.surjection.vertex_map.iter().map(|&v| phi[v]).collect();
            let m = pullback_matrix(&psi, n, family[k].vertices.len());
            let child = cones
                .iter()
                .enumerate()
                .filter(|(_, c)| c.graph == k)
                .find(|(_, c)| c.cone.image(&m).is_ok_and(|img| img.rays() == face.rays()))
                .map(|(i, _)| i)
                .ok_or_else(|| {
                    Error::FaceMismatch(format!(
                        "a face of cone {pi} matches no cone of the family"
                    ))
                })?;
            morphisms.push(Morphism {
                child,
                parent: pi,
                map: m,
            });
        }
    }

    Ok(ConeSpaceFragment {
        sigma: sigma.clone(),
        family: family.to_vec(),
        subdivisions: subdivisions.to_vec(),
        cones,
        morphisms,
        automorphisms: autos,
        xgs,
    })
}

/// The common refinement of two fragments over the same family.
pub fn refine_fragments(a: &ConeSpaceFragment, b: &ConeSpaceFragment) -> Result<ConeSpaceFragment> {
    if a.family != b.family || a.sigma.cones() != b.sigma.cones() {
        return Err(Error::SupportMismatch(
            "the fragments are built over different families".into(),
        ));
    }
    let refined = a
        .subdivisions
        .iter()
        .zip(&b.subdivisions)
        .map(|(x, y)| {
            if x.ambient_dim() != y.ambient_dim() {
                return Err(Error::SupportMismatch(
                    "subdivisions live in different spaces".into(),
                ));
            }
            common_refinement(x, y)
        })
        .collect::<Result<Vec<_>>>()?;
    assemble_fragment(&a.sigma, &a.family, &refined)
}

/// Maps every fragment cone to `ℚ^n` by the position of one chosen vertex
/// of its graph.
pub fn realize_by_vertex(
    f: &ConeSpaceFragment,
    pick: impl Fn(&CombinatorialOneComplex) -> usize,
) -> Result<ConeComplex> {
    let n = f.sigma.ambient_dim();
    let mut images = Vec::new();
    for c in &f.cones {
        let g = &f.family[c.graph];
        let v = pick(g);
        if v >= g.vertices.len() {
            return Err(Error::BadIndex(format!("vertex {v}")));
        }
        let mut m = vec![vec![Z::zero(); g.vertices.len() * n]; n];
        for (k, row) in m.iter_mut().enumerate() {
            row[v * n + k] = Z::one();
        }
        images.push(c.cone.image(&m)?);
    }
    ConeComplex::from_cones(n, images)
}

/// The first vertex of largest valence.
pub fn highest_valence_vertex(g: &CombinatorialOneComplex) -> usize {
    (0..g.vertices.len())
        .max_by_key(|&v| (g.valence(v), std::cmp::Reverse(v)))
        .unwrap_or(0)
}
