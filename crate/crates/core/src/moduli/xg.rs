//! Cones of realizations of a fixed combinatorial type and the image
//! surjection at a point.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::arith::{add, primitive, qf, scale, sub, to_qvec, Q, Z};
use crate::cones::{Cone, ConeComplex};
use crate::error::{Error, Result};
use crate::graphs::{
    meet, point_on, validate_combinatorial, CombinatorialOneComplex, Edge, EmbeddedOneComplex,
    Meet, Piece, Ray,
};
use crate::linalg::nullspace_z;

/// The cone of realizations of `graph`: the concatenated vertex positions,
/// one block of `n` coordinates per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XGCone {
    pub graph: CombinatorialOneComplex,
    pub n: usize,
    pub cone: Cone,
}

impl XGCone {
    pub fn ambient_dim(&self) -> usize {
        self.n * self.graph.vertices.len()
    }

    pub fn positions(&self, f: &[Q]) -> Vec<Vec<Q>> {
        f.chunks(self.n.max(1))
            .take(self.graph.vertices.len())
            .map(<[Q]>::to_vec)
            .collect()
    }

    pub fn realize(&self, f: &[Q]) -> EmbeddedOneComplex {
        EmbeddedOneComplex {
            graph: self.graph.clone(),
            positions: self.positions(f),
        }
    }
}

fn lift_vertex(a: &[Z], v: usize, n: usize, total: usize) -> Vec<Z> {
    let mut out = vec![Z::zero(); total];
    out[v * n..(v + 1) * n].clone_from_slice(a);
    out
}

fn lift_difference(a: &[Z], from: usize, to: usize, n: usize, total: usize) -> Vec<Z> {
    let mut out = vec![Z::zero(); total];
    for k in 0..n {
        out[to * n + k] += &a[k];
        out[from * n + k] -= &a[k];
    }
    out
}

/// The closed cone of positions compatible with the labels and directions
/// of `g`, without checking that its interior realizes `g`.
pub fn realization_cone(g: &CombinatorialOneComplex, sigma: &ConeComplex) -> Result<XGCone> {
    let bad = validate_combinatorial(g, sigma);
    if !bad.is_empty() {
        return Err(Error::InvalidInput(
            bad.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ));
    }
    let n = sigma.ambient_dim();
    let total = n * g.vertices.len();
    let cones = sigma.cones();
    let mut ineqs = Vec::new();
    let mut eqs = Vec::new();
    for (v, &c) in g.vertices.iter().enumerate() {
        ineqs.extend(
            cones[c]
                .inequalities()
                .iter()
                .map(|a| lift_vertex(a, v, n, total)),
        );
        eqs.extend(
            cones[c]
                .equations()
                .iter()
                .map(|a| lift_vertex(a, v, n, total)),
        );
    }
    for e in &g.edges {
        for c in nullspace_z(std::slice::from_ref(&e.dir), n) {
            eqs.push(lift_difference(&c, e.ends.0, e.ends.1, n, total));
        }
        ineqs.push(lift_difference(&e.dir, e.ends.0, e.ends.1, n, total));
    }
    let cone = Cone::from_halfspaces(total, &ineqs, &eqs)?;
    Ok(XGCone {
        graph: g.clone(),
        n,
        cone,
    })
}

/// The cone `𝕏_G`. Fails with `EmptyInterior` when no point of its relative
/// interior realizes `g` itself.
pub fn build_xg(g: &CombinatorialOneComplex, sigma: &ConeComplex) -> Result<XGCone> {
    let xg = realization_cone(g, sigma)?;
    if realizes_generically(&xg, sigma)? {
        Ok(xg)
    } else {
        Err(Error::EmptyInterior)
    }
}

fn realizes_generically(xg: &XGCone, sigma: &ConeComplex) -> Result<bool> {
    let rays = xg.cone.rays();
    let total = xg.ambient_dim();
    for t in 1..=3i64 {
        let mut p = vec![Q::zero(); total];
        let mut w = Q::one();
        for r in rays {
            p = add(&p, &scale(&to_qvec(r), &w));
            w *= Q::from_integer(Z::from(t));
        }
        if image_surjection(xg, &p, sigma)?.is_identity(&xg.graph) {
            return Ok(true);
        }
    }
    // Types are constant on cells and the realizing locus is open, so some
    // top-dimensional cell realizes `g` if any point does.
    let planes = super::arrangement::degeneracy_hyperplanes(xg, sigma);
    let (cells, complete) =
        super::arrangement::maximal_cells(&xg.cone, &planes, super::DEFAULT_BUDGET);
    if !complete {
        return Err(Error::BudgetExceeded(super::DEFAULT_BUDGET));
    }
    for c in cells {
        if image_surjection(xg, &c.interior_point(), sigma)?.is_identity(&xg.graph) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One step of the image path of an edge or ray: an edge of the image
/// traversed forwards (from its smaller end) or backwards.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surjection {
    pub vertex_map: Vec<usize>,
    pub edge_paths: Vec<Vec<Step>>,
    /// Bounded steps of each ray, then the image ray it ends in.
    pub ray_paths: Vec<(Vec<Step>, usize)>,
}

/// The image of a realization, its combinatorial type, and the surjection
/// from the source type. Image vertices are ordered by their preimages:
/// first images of source vertices, then crossings keyed by the pieces
/// through them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageType {
    pub image: EmbeddedOneComplex,
    pub surjection: Surjection,
}

impl ImageType {
    pub fn graph(&self) -> &CombinatorialOneComplex {
        &self.image.graph
    }

    /// Whether the surjection is an isomorphism preserving all labels.
    pub fn is_identity(&self, g: &CombinatorialOneComplex) -> bool {
        let h = &self.image.graph;
        let s = &self.surjection;
        if h.vertices.len() != g.vertices.len()
            || h.edges.len() != g.edges.len()
            || h.rays.len() != g.rays.len()
        {
            return false;
        }
        let mut seen = vec![false; h.vertices.len()];
        for (v, &w) in s.vertex_map.iter().enumerate() {
            if seen[w] || h.vertices[w] != g.vertices[v] {
                return false;
            }
            seen[w] = true;
        }
        let edges_ok = s
            .edge_paths
            .iter()
            .zip(&g.edges)
            .all(|(p, e)| p.len() == 1 && h.edges[p[0].edge].cone == e.cone);
        let rays_ok = s
            .ray_paths
            .iter()
            .zip(&g.rays)
            .all(|((p, r), ray)| p.is_empty() && h.rays[*r].cone == ray.cone);
        edges_ok && rays_ok
    }
}

fn g_pieces(xg: &XGCone, pos: &[Vec<Q>]) -> Vec<Piece> {
    let g = &xg.graph;
    let mut out = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        out.push(Piece {
            start: pos[e.ends.0].clone(),
            delta: sub(&pos[e.ends.1], &pos[e.ends.0]),
            bounded: true,
            ends: vec![e.ends.0, e.ends.1],
            name: format!("edge {i}"),
        });
    }
    for (i, r) in g.rays.iter().enumerate() {
        out.push(Piece {
            start: pos[r.base].clone(),
            delta: to_qvec(&r.dir),
            bounded: false,
            ends: vec![r.base],
            name: format!("ray {i}"),
        });
    }
    out
}

/// Computes the image type of the realization `f ∈ 𝕏_G`.
pub fn image_surjection(xg: &XGCone, f: &[Q], sigma: &ConeComplex) -> Result<ImageType> {
    if f.len() != xg.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: xg.ambient_dim(),
            found: f.len(),
        });
    }
    if !xg.cone.contains(f) {
        return Err(Error::InvalidInput(
            "point is not in the realization cone".into(),
        ));
    }
    let g = &xg.graph;
    let pos = xg.positions(f);
    let pieces = g_pieces(xg, &pos);
    let live: Vec<usize> = (0..pieces.len())
        .filter(|&i| pieces[i].delta.iter().any(|x| !x.is_zero()))
        .collect();

    let mut points: Vec<Vec<Q>> = Vec::new();
    for p in &pos {
        if !points.contains(p) {
            points.push(p.clone());
        }
    }
    for (a, &i) in live.iter().enumerate() {
        for &j in &live[a + 1..] {
            if let Meet::Point(s, _) = meet(&pieces[i], &pieces[j]) {
                let p = add(&pieces[i].start, &scale(&pieces[i].delta, &s));
                if !points.contains(&p) {
                    points.push(p);
                }
            }
        }
    }

    // Anchored keys: (0, least preimage) or (1, pieces through the point).
    let keys: Vec<(usize, Vec<usize>)> = points
        .iter()
        .map(|p| match pos.iter().position(|x| x == p) {
            Some(v) => (0, vec![v]),
            None => (
                1,
                live.iter()
                    .copied()
                    .filter(|&i| point_on(p, &pieces[i]).is_some())
                    .collect(),
            ),
        })
        .collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut rank = vec![0; points.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let positions: Vec<Vec<Q>> = order.iter().map(|&i| points[i].clone()).collect();
    let index_of = |p: &[Q]| {
        positions
            .iter()
            .position(|x| x == p)
            .expect("point recorded")
    };
    let label = |x: &[Q]| {
        sigma
            .minimal_cone_containing(x)
            .ok_or_else(|| Error::InvalidInput("point outside the support".into()))
    };

    let mut edge_keys: BTreeMap<(usize, usize), ()> = BTreeMap::new();
    let mut ray_keys: BTreeMap<(usize, Vec<Z>), ()> = BTreeMap::new();
    // Raw paths as sequences of image vertices.
    let mut raw: Vec<Vec<usize>> = Vec::new();
    for (i, piece) in pieces.iter().enumerate() {
        if !live.contains(&i) {
            raw.push(vec![index_of(&piece.start)]);
            continue;
        }
        let mut on: Vec<(Q, usize)> = positions
            .iter()
            .enumerate()
            .filter_map(|(k, p)| point_on(p, piece).map(|s| (s, k)))
            .collect();
        on.sort();
        let seq: Vec<usize> = on.into_iter().map(|(_, k)| k).collect();
        for w in seq.windows(2) {
            edge_keys.insert((w[0].min(w[1]), w[0].max(w[1])), ());
        }
        if !piece.bounded {
            ray_keys.insert(
                (*seq.last().unwrap(), g.rays[i - g.edges.len()].dir.clone()),
                (),
            );
        }
        raw.push(seq);
    }
    let edge_list: Vec<(usize, usize)> = edge_keys.into_keys().collect();
    let ray_list: Vec<(usize, Vec<Z>)> = ray_keys.into_keys().collect();
    let mut edges = Vec::new();
    for &(a, b) in &edge_list {
        let mid = scale(&add(&positions[a], &positions[b]), &qf(1, 2));
        edges.push(Edge {
            ends: (a, b),
            cone: label(&mid)?,
            dir: primitive(&sub(&positions[b], &positions[a])),
        });
    }
    let mut rays = Vec::new();
    for (b, d) in &ray_list {
        rays.push(Ray {
            base: *b,
            cone: label(&add(&positions[*b], &to_qvec(d)))?,
            dir: d.clone(),
        });
    }
    let vertices = positions
        .iter()
        .map(|p| label(p))
        .collect::<Result<Vec<_>>>()?;

    let steps = |seq: &[usize]| -> Vec<Step> {
        seq.windows(2)
            .map(|w| {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                Step {
                    edge: edge_list.binary_search(&key).unwrap(),
                    forward: w[0] < w[1],
                }
            })
            .collect()
    };
    let edge_paths = raw[..g.edges.len()].iter().map(|s| steps(s)).collect();
    let ray_paths = raw[g.edges.len()..]
        .iter()
        .zip(&g.rays)
        .map(|(s, r)| {
            let last = (*s.last().unwrap(), r.dir.clone());
            (steps(s), ray_list.binary_search(&last).unwrap())
        })
        .collect();
    let vertex_map = pos
        .iter()
        .map(|p| rank[points.iter().position(|x| x == p).unwrap()])
        .collect();
    Ok(ImageType {
        image: EmbeddedOneComplex {
            graph: CombinatorialOneComplex {
                vertices,
                edges,
                rays,
            },
            positions,
        },
        surjection: Surjection {
            vertex_map,
            edge_paths,
            ray_paths,
        },
    })
}

/// Checks the defining conditions of a surjection of types: directions and
/// endpoints of paths, face relations of labels, and coverage.
pub fn check_surjection(
    g: &CombinatorialOneComplex,
    h: &CombinatorialOneComplex,
    s: &Surjection,
    sigma: &ConeComplex,
) -> bool {
    let cones = sigma.cones();
    if s.vertex_map.len() != g.vertices.len()
        || s.edge_paths.len() != g.edges.len()
        || s.ray_paths.len() != g.rays.len()
    {
        return false;
    }
    let faces_ok = g
        .vertices
        .iter()
        .zip(&s.vertex_map)
        .all(|(&c, &w)| cones[h.vertices[w]].is_face_of(&cones[c]));
    if !faces_ok {
        return false;
    }
    let walk = |start: usize, path: &[Step], dir: &[Z]| -> Option<usize> {
        let mut at = start;
        for st in path {
            let e = h.edges.get(st.edge)?;
            let (from, to, d) = if st.forward {
                (e.ends.0, e.ends.1, e.dir.clone())
            } else {
                (e.ends.1, e.ends.0, e.dir.iter().map(|x| -x).collect())
            };
            if from != at || d != dir {
                return None;
            }
            at = to;
        }
        Some(at)
    };
    let mut covered_edges = vec![false; h.edges.len()];
    let mut covered_rays = vec![false; h.rays.len()];
    for (e, path) in g.edges.iter().zip(&s.edge_paths) {
        if walk(s.vertex_map[e.ends.0], path, &e.dir) != Some(s.vertex_map[e.ends.1]) {
            return false;
        }
        path.iter().for_each(|st| covered_edges[st.edge] = true);
    }
    for (r, (path, last)) in g.rays.iter().zip(&s.ray_paths) {
        let Some(end) = walk(s.vertex_map[r.base], path, &r.dir) else {
            return false;
        };
        match h.rays.get(*last) {
            Some(hr) if hr.base == end && hr.dir == r.dir => covered_rays[*last] = true,
            _ => return false,
        }
        path.iter().for_each(|st| covered_edges[st.edge] = true);
    }
    covered_edges.into_iter().all(|x| x) && covered_rays.into_iter().all(|x| x)
}

/// The linear map `𝕏_H → 𝕏_G` induced by a vertex map `G → H`, as an
/// integer matrix with one row per coordinate of `𝕏_G`.
pub fn pullback_matrix(vertex_map: &[usize], n: usize, h_vertices: usize) -> Vec<Vec<Z>> {
    let mut m = vec![vec![Z::zero(); n * h_vertices]; n * vertex_map.len()];
    for (v, &w) in vertex_map.iter().enumerate() {
        for k in 0..n {
            m[v * n + k][w * n + k] = Z::one();
        }
    }
    m
}
