//! Dual complexes of expansions, tube components and DT stability.

use std::collections::BTreeSet;

use crate::arith::{Q, Z};
use crate::cones::ConeComplex;
use crate::error::{Error, Result};
use crate::graphs::{erase_vertex, height_one_slice, EmbeddedOneComplex};

/// A component of the expansion: a torus bundle of rank `rank` over the
/// stratum of the cone `cone`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub vertex: usize,
    pub cone: usize,
    pub rank: usize,
    pub position: Vec<Q>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExpansionDualComplex {
    pub components: Vec<Component>,
    /// Pairs of components meeting along a double divisor.
    pub double_divisors: Vec<(usize, usize)>,
    /// Components meeting the boundary, with the direction of the ray.
    pub relative_divisors: Vec<(usize, Vec<Z>)>,
    pub tube_flags: BTreeSet<usize>,
}

impl ExpansionDualComplex {
    pub fn valence(&self, c: usize) -> usize {
        self.double_divisors
            .iter()
            .filter(|(a, b)| *a == c || *b == c)
            .count()
            + self
                .relative_divisors
                .iter()
                .filter(|(a, _)| *a == c)
                .count()
    }

    /// Marks tube components; each must be 2-valent with collinear divisors.
    pub fn with_tube_flags(
        mut self,
        flags: BTreeSet<usize>,
        graph: &EmbeddedOneComplex,
    ) -> Result<Self> {
        for &c in &flags {
            if c >= self.components.len() {
                return Err(Error::BadIndex(format!("component {c}")));
            }
            let dirs = graph.graph.outgoing(self.components[c].vertex);
            let opposite = dirs.len() == 2 && dirs[0].iter().zip(&dirs[1]).all(|(x, y)| *x == -y);
            if !opposite {
                return Err(Error::InvalidInput(format!(
                    "component {c} cannot be a tube"
                )));
            }
        }
        self.tube_flags = flags;
        Ok(self)
    }
}

/// Reads the expansion off a cone over an embedded 1-complex.
pub fn dual_complex(c: &ConeComplex, sigma: &ConeComplex) -> Result<ExpansionDualComplex> {
    let g = height_one_slice(c, sigma)?;
    Ok(dual_of_graph(&g, sigma))
}

/// The dictionary applied directly to an embedded 1-complex.
pub fn dual_of_graph(g: &EmbeddedOneComplex, sigma: &ConeComplex) -> ExpansionDualComplex {
    let components = g
        .positions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let cone = sigma.minimal_cone_containing(p).unwrap_or(usize::MAX);
            let rank = sigma.cones().get(cone).map_or(0, |c| c.dim());
            Component {
                vertex: i,
                cone,
                rank,
                position: p.clone(),
            }
        })
        .collect();
    ExpansionDualComplex {
        components,
        double_divisors: g.graph.edges.iter().map(|e| e.ends).collect(),
        relative_divisors: g
            .graph
            .rays
            .iter()
            .map(|r| (r.base, r.dir.clone()))
            .collect(),
        tube_flags: BTreeSet::new(),
    }
}

/// The vertices of `upsilon` (by index) that were inserted into `g` as
/// 2-valent collinear points.
pub fn tube_vertices(
    upsilon: &EmbeddedOneComplex,
    g: &EmbeddedOneComplex,
    sigma: &ConeComplex,
) -> Result<BTreeSet<usize>> {
    for p in &g.positions {
        if !upsilon.positions.contains(p) {
            return Err(Error::NotARefinement(format!(
                "vertex {} of the coarse complex is missing",
                crate::arith::QVec(p)
            )));
        }
    }
    if upsilon
        .edge_lengths()
        .iter()
        .any(|l| !l.as_ref().is_some_and(|x| *x > Q::from_integer(Z::from(0))))
    {
        return Err(Error::NotARefinement(
            "an edge is not straight along its direction".into(),
        ));
    }
    let extra: BTreeSet<usize> = (0..upsilon.positions.len())
        .filter(|&i| !g.positions.contains(&upsilon.positions[i]))
        .collect();
    let mut cur = upsilon.clone();
    for &v in extra.iter().rev() {
        let dirs = cur.graph.outgoing(v);
        let collinear = dirs.len() == 2 && dirs[0].iter().zip(&dirs[1]).all(|(x, y)| *x == -y);
        let two_rays = cur.graph.rays.iter().filter(|r| r.base == v).count() == 2;
        if !collinear || two_rays {
            return Err(Error::NotARefinement(format!(
                "vertex {v} is not a collinear 2-valent vertex"
            )));
        }
        cur = erase_vertex(&cur, v);
    }
    if cur.canonical(sigma) != g.canonical(sigma) {
        return Err(Error::NotARefinement("supports differ".into()));
    }
    Ok(extra)
}

/// Per-component flags and per-double-divisor contact lengths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubschemeShadow {
    pub is_tube: Vec<bool>,
    pub contact_lengths: Vec<Z>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability {
    pub stable: bool,
    /// Components where tube flag and tube subscheme disagree.
    pub witness: Vec<usize>,
}

/// DT stability: tube subschemes sit exactly on the tube components.
pub fn dt_stability(e: &ExpansionDualComplex, s: &SubschemeShadow) -> Result<Stability> {
    if s.is_tube.len() != e.components.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} components but {} subscheme flags",
            e.components.len(),
            s.is_tube.len()
        )));
    }
    if !s.contact_lengths.is_empty() && s.contact_lengths.len() != e.double_divisors.len() {
        return Err(Error::ShapeMismatch(
            "one contact length per double divisor is required".into(),
        ));
    }
    let tubes: BTreeSet<usize> = (0..s.is_tube.len()).filter(|&i| s.is_tube[i]).collect();
    let witness: Vec<usize> = tubes.symmetric_difference(&e.tube_flags).copied().collect();
    Ok(Stability {
        stable: witness.is_empty(),
        witness,
    })
}
