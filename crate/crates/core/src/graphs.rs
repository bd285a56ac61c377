//! Combinatorial and embedded 1-complexes inside a cone complex.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::arith::{add, dot_zq, is_primitive, lcm, multiple_of, scale, sub, to_qvec, QVec, Q, Z};
use crate::cones::{Cone, ConeComplex};
use crate::error::{Error, Result};
use crate::linalg::{rank, solve};

/// A bounded edge between `ends.0` and `ends.1`; `dir` points from the
/// first end to the second.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub ends: (usize, usize),
    pub cone: usize,
    pub dir: Vec<Z>,
}

/// An unbounded edge leaving `base` in direction `dir`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    pub base: usize,
    pub cone: usize,
    pub dir: Vec<Z>,
}

/// A graph whose vertices, edges and rays carry cone labels, and whose
/// edges and rays carry primitive directions.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CombinatorialOneComplex {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    pub rays: Vec<Ray>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct EmbeddedOneComplex {
    pub graph: CombinatorialOneComplex,
    pub positions: Vec<Vec<Q>>,
}

impl CombinatorialOneComplex {
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.ends.0 == v || e.ends.1 == v)
            .count()
            + self.rays.iter().filter(|r| r.base == v).count()
    }

    /// Outgoing primitive directions at `v`.
    pub fn outgoing(&self, v: usize) -> Vec<Vec<Z>> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.ends.0 == v {
                out.push(e.dir.clone());
            }
            if e.ends.1 == v {
                out.push(e.dir.iter().map(|x| -x).collect());
            }
        }
        out.extend(
            self.rays
                .iter()
                .filter(|r| r.base == v)
                .map(|r| r.dir.clone()),
        );
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    BadLabel(String),
    NotAFace(String),
    BadDirection(String),
    Position { vertex: usize },
    Segment { edge: usize },
    RayOutsideCone { ray: usize },
    Loop { edge: usize },
    ParallelEdges { first: usize, second: usize },
    NotInjective(String),
    Dimension(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadLabel(s) => write!(f, "bad cone label: {s}"),
            Violation::NotAFace(s) => write!(f, "vertex cone is not a face of the edge cone: {s}"),
            Violation::BadDirection(s) => write!(f, "bad direction: {s}"),
            Violation::Position { vertex } => write!(f, "vertex {vertex} lies outside its cone"),
            Violation::Segment { edge } => {
                write!(f, "edge {edge} is not a positive multiple of its direction")
            }
            Violation::RayOutsideCone { ray } => write!(f, "ray {ray} leaves its cone"),
            Violation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Violation::ParallelEdges { first, second } => {
                write!(f, "edges {first} and {second} are parallel")
            }
            Violation::NotInjective(s) => write!(f, "realization is not injective: {s}"),
            Violation::Dimension(s) => write!(f, "dimension mismatch: {s}"),
        }
    }
}

/// One embedded feature, parametrized as `start + s·delta` with `s` in
/// `[0, 1]` for edges and `[0, ∞)` for rays.
pub(crate) struct Piece {
    pub(crate) start: Vec<Q>,
    pub(crate) delta: Vec<Q>,
    pub(crate) bounded: bool,
    pub(crate) ends: Vec<usize>,
    pub(crate) name: String,
}

pub(crate) enum Meet {
    Empty,
    Point(Q, Q),
    Overlap,
}

fn in_range(s: &Q, bounded: bool) -> bool {
    !s.is_negative() && (!bounded || *s <= Q::one())
}

pub(crate) fn point_on(p: &[Q], b: &Piece) -> Option<Q> {
    let diff = sub(p, &b.start);
    if crate::arith::is_zero_vec(&b.delta) {
        return crate::arith::is_zero_vec(&diff).then(Q::zero);
    }
    multiple_of(&diff, &b.delta).filter(|t| in_range(t, b.bounded))
}

pub(crate) fn meet(a: &Piece, b: &Piece) -> Meet {
    let n = a.start.len();
    if crate::arith::is_zero_vec(&a.delta) {
        return point_on(&a.start, b).map_or(Meet::Empty, |t| Meet::Point(Q::zero(), t));
    }
    if crate::arith::is_zero_vec(&b.delta) {
        return point_on(&b.start, a).map_or(Meet::Empty, |s| Meet::Point(s, Q::zero()));
    }
    let diff = sub(&b.start, &a.start);
    // a.start + s a.delta = b.start + t b.delta
    let m: Vec<Vec<Q>> = (0..n)
        .map(|i| vec![a.delta[i].clone(), -b.delta[i].clone()])
        .collect();
    if rank(&m, 2) == 2 {
        return match solve(&m, &diff, 2) {
            Some(x) if in_range(&x[0], a.bounded) && in_range(&x[1], b.bounded) => {
                Meet::Point(x[0].clone(), x[1].clone())
            }
            _ => Meet::Empty,
        };
    }
    // parallel: compare along a.delta
    if rank(&[a.delta.clone(), diff.clone()], n) > 1 {
        return Meet::Empty;
    }
    let dd = crate::arith::dot(&a.delta, &a.delta);
    let proj = |p: &[Q]| crate::arith::dot(p, &a.delta) / &dd;
    let b0 = proj(&diff);
    let b1 = &b0 + proj(&b.delta);
    let (lo_b, hi_b) = if b.bounded {
        if b0 <= b1 {
            (Some(b0.clone()), Some(b1))
        } else {
            (Some(b1), Some(b0.clone()))
        }
    } else if b1 > b0 {
        (Some(b0.clone()), None)
    } else {
        (None, Some(b0.clone()))
    };
    let lo = match lo_b {
        Some(x) if x > Q::zero() => x,
        _ => Q::zero(),
    };
    let hi = match (a.bounded, hi_b) {
        (true, Some(x)) => {
            if x < Q::one() {
                x
            } else {
                Q::one()
            }
        }
        (true, None) => Q::one(),
        (false, Some(x)) => x,
        (false, None) => return Meet::Overlap,
    };
    if lo > hi {
        Meet::Empty
    } else if lo == hi {
        let p = add(&a.start, &scale(&a.delta, &lo));
        let t = if b.bounded {
            proj(&sub(&p, &b.start)) / proj(&b.delta)
        } else {
            multiple_of(&sub(&p, &b.start), &b.delta).unwrap_or_else(Q::zero)
        };
        Meet::Point(lo, t)
    } else {
        Meet::Overlap
    }
}

impl EmbeddedOneComplex {
    pub fn empty() -> EmbeddedOneComplex {
        EmbeddedOneComplex::default()
    }

    pub fn ambient_dim(&self) -> Option<usize> {
        self.positions.first().map(Vec::len)
    }

    /// Length of each edge in units of its primitive direction.
    pub fn edge_lengths(&self) -> Vec<Option<Q>> {
        self.graph
            .edges
            .iter()
            .map(|e| {
                let d = sub(&self.positions[e.ends.1], &self.positions[e.ends.0]);
                multiple_of(&d, &to_qvec(&e.dir))
            })
            .collect()
    }

    pub fn dilate(&self, k: &Z) -> EmbeddedOneComplex {
        let kq = Q::from_integer(k.clone());
        EmbeddedOneComplex {
            graph: self.graph.clone(),
            positions: self.positions.iter().map(|p| scale(p, &kq)).collect(),
        }
    }

    /// Inserts collinear vertices on edge `edge` at the given fractions of its
    /// length, which must lie strictly between 0 and 1.
    pub fn subdivide_edge(&self, edge: usize, fractions: &[Q]) -> EmbeddedOneComplex {
        let mut out = self.clone();
        let e = out.graph.edges.remove(edge);
        let mut fr = fractions.to_vec();
        fr.sort();
        fr.dedup();
        let a = &self.positions[e.ends.0];
        let delta = sub(&self.positions[e.ends.1], a);
        let mut prev = e.ends.0;
        for t in &fr {
            out.positions.push(add(a, &scale(&delta, t)));
            out.graph.vertices.push(e.cone);
            let v = out.positions.len() - 1;
            out.graph.edges.push(Edge {
                ends: (prev, v),
                cone: e.cone,
                dir: e.dir.clone(),
            });
            prev = v;
        }
        out.graph.edges.push(Edge {
            ends: (prev, e.ends.1),
            cone: e.cone,
            dir: e.dir.clone(),
        });
        out
    }

    /// Inserts vertices on ray `ray` at the given distances (multiples of its
    /// direction) from its base.
    pub fn subdivide_ray(&self, ray: usize, distances: &[Q]) -> EmbeddedOneComplex {
        let mut out = self.clone();
        let r = out.graph.rays.remove(ray);
        let mut ds = distances.to_vec();
        ds.sort();
        ds.dedup();
        let base = self.positions[r.base].clone();
        let dq = to_qvec(&r.dir);
        let mut prev = r.base;
        for t in &ds {
            out.positions.push(add(&base, &scale(&dq, t)));
            out.graph.vertices.push(r.cone);
            let v = out.positions.len() - 1;
            out.graph.edges.push(Edge {
                ends: (prev, v),
                cone: r.cone,
                dir: r.dir.clone(),
            });
            prev = v;
        }
        out.graph.rays.push(Ray {
            base: prev,
            cone: r.cone,
            dir: r.dir,
        });
        out
    }

    fn pieces(&self) -> Vec<Piece> {
        let mut out = Vec::new();
        for (i, p) in self.positions.iter().enumerate() {
            out.push(Piece {
                start: p.clone(),
                delta: vec![Q::zero(); p.len()],
                bounded: true,
                ends: vec![i],
                name: format!("vertex {i}"),
            });
        }
        for (i, e) in self.graph.edges.iter().enumerate() {
            let a = &self.positions[e.ends.0];
            out.push(Piece {
                start: a.clone(),
                delta: sub(&self.positions[e.ends.1], a),
                bounded: true,
                ends: vec![e.ends.0, e.ends.1],
                name: format!("edge {i}"),
            });
        }
        for (i, r) in self.graph.rays.iter().enumerate() {
            out.push(Piece {
                start: self.positions[r.base].clone(),
                delta: to_qvec(&r.dir),
                bounded: false,
                ends: vec![r.base],
                name: format!("ray {i}"),
            });
        }
        out
    }

    /// Canonical form: labels replaced by minimal cones, vertices sorted by
    /// position, edges oriented from the smaller vertex index, everything sorted.
    pub fn canonical(&self, sigma: &ConeComplex) -> EmbeddedOneComplex {
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by(|&a, &b| self.positions[a].cmp(&self.positions[b]));
        let mut new_index = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let positions: Vec<Vec<Q>> = order.iter().map(|&i| self.positions[i].clone()).collect();
        let label = |x: &[Q]| sigma.minimal_cone_containing(x).unwrap_or(usize::MAX);
        let vertices = positions.iter().map(|p| label(p)).collect();
        let mut edges: Vec<Edge> = self
            .graph
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (new_index[e.ends.0], new_index[e.ends.1]);
                let mid = scale(&add(&positions[a], &positions[b]), &crate::arith::qf(1, 2));
                if a < b {
                    Edge {
                        ends: (a, b),
                        cone: label(&mid),
                        dir: e.dir.clone(),
                    }
                } else {
                    Edge {
                        ends: (b, a),
                        cone: label(&mid),
                        dir: e.dir.iter().map(|x| -x).collect(),
                    }
                }
            })
            .collect();
        edges.sort();
        let mut rays: Vec<Ray> = self
            .graph
            .rays
            .iter()
            .map(|r| {
                let base = new_index[r.base];
                let p = add(&positions[base], &to_qvec(&r.dir));
                Ray {
                    base,
                    cone: label(&p),
                    dir: r.dir.clone(),
                }
            })
            .collect();
        rays.sort();
        EmbeddedOneComplex {
            graph: CombinatorialOneComplex {
                vertices,
                edges,
                rays,
            },
            positions,
        }
    }
}

/// Checks the labels, directions and face conditions of a type.
pub fn validate_combinatorial(g: &CombinatorialOneComplex, sigma: &ConeComplex) -> Vec<Violation> {
    let mut out = Vec::new();
    let cones = sigma.cones();
    let n = sigma.ambient_dim();
    for (i, &c) in g.vertices.iter().enumerate() {
        if c >= cones.len() {
            out.push(Violation::BadLabel(format!(
                "vertex {i} refers to cone {c}"
            )));
        }
    }
    let check_dir = |what: String, cone: usize, dir: &[Z], ray: bool, out: &mut Vec<Violation>| {
        if dir.len() != n {
            out.push(Violation::Dimension(what));
            return;
        }
        if !is_primitive(dir) {
            out.push(Violation::BadDirection(format!(
                "{what} has a non-primitive direction"
            )));
            return;
        }
        let c = &cones[cone];
        let inside = if ray {
            c.contains_z(dir)
        } else {
            c.equations()
                .iter()
                .all(|e| crate::arith::dot_z(e, dir).is_zero())
        };
        if !inside {
            out.push(Violation::BadDirection(format!(
                "{what} points outside its cone"
            )));
        }
    };
    for (i, e) in g.edges.iter().enumerate() {
        if e.cone >= cones.len() || e.ends.0 >= g.vertices.len() || e.ends.1 >= g.vertices.len() {
            out.push(Violation::BadLabel(format!("edge {i}")));
            continue;
        }
        if e.ends.0 == e.ends.1 {
            out.push(Violation::Loop { edge: i });
        }
        for v in [e.ends.0, e.ends.1] {
            if g.vertices[v] < cones.len() && !cones[g.vertices[v]].is_face_of(&cones[e.cone]) {
                out.push(Violation::NotAFace(format!("vertex {v}, edge {i}")));
            }
        }
        check_dir(format!("edge {i}"), e.cone, &e.dir, false, &mut out);
    }
    for (i, e) in g.edges.iter().enumerate() {
        for (j, f) in g.edges.iter().enumerate().skip(i + 1) {
            let a: BTreeSet<usize> = [e.ends.0, e.ends.1].into();
            let b: BTreeSet<usize> = [f.ends.0, f.ends.1].into();
            if a == b {
                out.push(Violation::ParallelEdges {
                    first: i,
                    second: j,
                });
            }
        }
    }
    for (i, r) in g.rays.iter().enumerate() {
        if r.cone >= cones.len() || r.base >= g.vertices.len() {
            out.push(Violation::BadLabel(format!("ray {i}")));
            continue;
        }
        if g.vertices[r.base] < cones.len() && !cones[g.vertices[r.base]].is_face_of(&cones[r.cone])
        {
            out.push(Violation::NotAFace(format!("vertex {}, ray {i}", r.base)));
        }
        check_dir(format!("ray {i}"), r.cone, &r.dir, true, &mut out);
    }
    out
}

/// Lists every violated condition of an embedded 1-complex; an empty list
/// means the complex is valid.
pub fn validate_embedded(e: &EmbeddedOneComplex, sigma: &ConeComplex) -> Vec<Violation> {
    let mut out = validate_combinatorial(&e.graph, sigma);
    if e.positions.len() != e.graph.vertices.len() {
        out.push(Violation::Dimension(
            "one position per vertex is required".into(),
        ));
        return out;
    }
    if !out.is_empty() {
        return out;
    }
    let n = sigma.ambient_dim();
    let cones = sigma.cones();
    for (i, p) in e.positions.iter().enumerate() {
        if p.len() != n {
            out.push(Violation::Dimension(format!("vertex {i}")));
            return out;
        }
        if !cones[e.graph.vertices[i]].contains(p) {
            out.push(Violation::Position { vertex: i });
        }
    }
    for (i, len) in e.edge_lengths().iter().enumerate() {
        if !len.as_ref().is_some_and(Signed::is_positive) {
            out.push(Violation::Segment { edge: i });
        }
    }
    for (i, r) in e.graph.rays.iter().enumerate() {
        if !cones[r.cone].contains(&e.positions[r.base]) {
            out.push(Violation::RayOutsideCone { ray: i });
        }
    }
    if !out.is_empty() {
        return out;
    }
    let pieces = e.pieces();
    for (i, a) in pieces.iter().enumerate() {
        for b in &pieces[i + 1..] {
            let shared: Vec<usize> = a
                .ends
                .iter()
                .filter(|v| b.ends.contains(v))
                .copied()
                .collect();
            let ok = match meet(a, b) {
                Meet::Empty => true,
                Meet::Overlap => false,
                Meet::Point(s, t) => {
                    let p = add(&a.start, &scale(&a.delta, &s));
                    debug_assert_eq!(p, add(&b.start, &scale(&b.delta, &t)));
                    shared.iter().any(|&v| e.positions[v] == p)
                }
            };
            if !ok {
                out.push(Violation::NotInjective(format!(
                    "{} meets {}",
                    a.name, b.name
                )));
            }
        }
    }
    out
}

fn ensure_valid(e: &EmbeddedOneComplex, sigma: &ConeComplex) -> Result<()> {
    let v = validate_embedded(e, sigma);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        ))
    }
}

fn negate(v: &[Z]) -> Vec<Z> {
    v.iter().map(|x| -x).collect()
}

/// Whether the 2-valent vertex `v` can be erased: a neighbourhood of it lies
/// in the relative interior of one cone and its two directions are opposite.
fn inessential(e: &EmbeddedOneComplex, sigma: &ConeComplex, v: usize) -> bool {
    let g = &e.graph;
    if g.valence(v) != 2 {
        return false;
    }
    let dirs = g.outgoing(v);
    if dirs[0] != negate(&dirs[1]) {
        return false;
    }
    if g.rays.iter().filter(|r| r.base == v).count() == 2 {
        return false;
    }
    let Some(c) = sigma.minimal_cone_containing(&e.positions[v]) else {
        return false;
    };
    sigma.cones()[c]
        .equations()
        .iter()
        .all(|eq| dot_zq(eq, &to_qvec(&dirs[0])).is_zero())
}

/// The unique coarsest polyhedral structure on the same embedded set,
/// returned in canonical form.
pub fn minimal_structure(
    e: &EmbeddedOneComplex,
    sigma: &ConeComplex,
) -> Result<EmbeddedOneComplex> {
    ensure_valid(e, sigma)?;
    let mut cur = e.clone();
    while let Some(v) = (0..cur.positions.len()).find(|&v| inessential(&cur, sigma, v)) {
        cur = erase_vertex(&cur, v);
    }
    Ok(cur.canonical(sigma))
}

pub(crate) fn erase_vertex(e: &EmbeddedOneComplex, v: usize) -> EmbeddedOneComplex {
    let g = &e.graph;
    let inc: Vec<usize> = (0..g.edges.len())
        .filter(|&i| g.edges[i].ends.0 == v || g.edges[i].ends.1 == v)
        .collect();
    let mut edges: Vec<Edge> = Vec::new();
    let mut rays: Vec<Ray> = g.rays.iter().filter(|r| r.base != v).cloned().collect();
    for (i, ed) in g.edges.iter().enumerate() {
        if !inc.contains(&i) {
            edges.push(ed.clone());
        }
    }
    let other = |ed: &Edge| if ed.ends.0 == v { ed.ends.1 } else { ed.ends.0 };
    // outgoing direction from the far end towards v
    let towards_v = |ed: &Edge| {
        if ed.ends.1 == v {
            ed.dir.clone()
        } else {
            negate(&ed.dir)
        }
    };
    if inc.len() == 2 {
        let (a, b) = (&g.edges[inc[0]], &g.edges[inc[1]]);
        edges.push(Edge {
            ends: (other(a), other(b)),
            cone: a.cone.max(b.cone),
            dir: towards_v(a),
        });
    } else {
        let a = &g.edges[inc[0]];
        let r = g.rays.iter().find(|r| r.base == v).unwrap();
        rays.push(Ray {
            base: other(a),
            cone: r.cone,
            dir: r.dir.clone(),
        });
    }
    let remap = |x: usize| if x > v { x - 1 } else { x };
    let mut vertices = g.vertices.clone();
    vertices.remove(v);
    let mut positions = e.positions.clone();
    positions.remove(v);
    for ed in &mut edges {
        ed.ends = (remap(ed.ends.0), remap(ed.ends.1));
    }
    for r in &mut rays {
        r.base = remap(r.base);
    }
    EmbeddedOneComplex {
        graph: CombinatorialOneComplex {
            vertices,
            edges,
            rays,
        },
        positions,
    }
}

fn lift(p: &[Q]) -> Vec<Z> {
    let mut v = p.to_vec();
    v.push(Q::one());
    crate::arith::primitive(&v)
}

fn flat(d: &[Z]) -> Vec<Z> {
    let mut v = d.to_vec();
    v.push(Z::zero());
    v
}

/// The cone over `e` placed at height one in `ℚ^n × ℚ≥0`.
pub fn cone_over(e: &EmbeddedOneComplex, ambient_dim: usize) -> Result<ConeComplex> {
    let n = ambient_dim + 1;
    let mut cones = vec![Cone::zero(n)];
    for p in &e.positions {
        if p.len() != ambient_dim {
            return Err(Error::InvalidInput(
                "position of the wrong dimension".into(),
            ));
        }
        cones.push(Cone::from_integer_generators(n, &[lift(p)])?);
    }
    for ed in &e.graph.edges {
        cones.push(Cone::from_integer_generators(
            n,
            &[lift(&e.positions[ed.ends.0]), lift(&e.positions[ed.ends.1])],
        )?);
    }
    for r in &e.graph.rays {
        cones.push(Cone::from_integer_generators(
            n,
            &[lift(&e.positions[r.base]), flat(&r.dir)],
        )?);
    }
    ConeComplex::from_cones(n, cones)
}

/// Recovers the embedded 1-complex from a cone over it, with minimal labels.
pub fn height_one_slice(c: &ConeComplex, sigma: &ConeComplex) -> Result<EmbeddedOneComplex> {
    let n = c.ambient_dim();
    if n != sigma.ambient_dim() + 1 {
        return Err(Error::AmbientMismatch(n, sigma.ambient_dim() + 1));
    }
    let h = n - 1;
    let mut positions: Vec<Vec<Q>> = Vec::new();
    let mut edges = Vec::new();
    let mut rays = Vec::new();
    let point = |r: &[Z]| -> Vec<Q> {
        let t = Q::from_integer(r[h].clone());
        r[..h]
            .iter()
            .map(|x| Q::from_integer(x.clone()) / &t)
            .collect()
    };
    for cone in c.cones() {
        if cone.rays().iter().any(|r| r[h].is_negative()) {
            return Err(Error::NotConeOverGraph("cone below height zero".into()));
        }
        let high: Vec<&Vec<Z>> = cone.rays().iter().filter(|r| r[h].is_positive()).collect();
        match (cone.dim(), high.len()) {
            (0, _) | (1, 0) => {}
            (1, 1) => positions.push(point(high[0])),
            (2, 2) | (2, 1) => {}
            _ => {
                return Err(Error::NotConeOverGraph(format!(
                    "cone of dimension {}",
                    cone.dim()
                )))
            }
        }
    }
    positions.sort();
    let index = |p: &[Q]| positions.iter().position(|x| x == p).unwrap();
    for cone in c.cones().iter().filter(|c| c.dim() == 2) {
        let high: Vec<&Vec<Z>> = cone.rays().iter().filter(|r| r[h].is_positive()).collect();
        if high.len() == 2 {
            let (a, b) = (index(&point(high[0])), index(&point(high[1])));
            let d = crate::arith::primitive(&sub(&positions[b], &positions[a]));
            edges.push(Edge {
                ends: (a, b),
                cone: 0,
                dir: d,
            });
        } else {
            let low = cone.rays().iter().find(|r| r[h].is_zero()).unwrap();
            rays.push(Ray {
                base: index(&point(high[0])),
                cone: 0,
                dir: low[..h].to_vec(),
            });
        }
    }
    let vertices = vec![0; positions.len()];
    let raw = EmbeddedOneComplex {
        graph: CombinatorialOneComplex {
            vertices,
            edges,
            rays,
        },
        positions,
    };
    Ok(raw.canonical(sigma))
}

/// Least `b ≥ 1` with every vertex of the `b`-fold dilation integral.
pub fn minimal_dilation(e: &EmbeddedOneComplex) -> Z {
    e.positions
        .iter()
        .flatten()
        .fold(Z::one(), |acc, x| lcm(&acc, x.denom()))
}

/// Human-readable position list, used in reports.
pub fn describe_positions(e: &EmbeddedOneComplex) -> Vec<String> {
    e.positions.iter().map(|p| QVec(p).to_string()).collect()
}
