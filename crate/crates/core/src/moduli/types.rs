//! Isomorphism of combinatorial 1-complexes by exhaustive search within
//! colour classes.

use std::collections::BTreeMap;

use crate::arith::Z;
use crate::graphs::{CombinatorialOneComplex, Edge, Ray};

fn negate(v: &[Z]) -> Vec<Z> {
    v.iter().map(|x| -x).collect()
}

/// Relabels vertices by `perm` (`perm[old] = new`) and sorts everything.
pub fn relabel(g: &CombinatorialOneComplex, perm: &[usize]) -> CombinatorialOneComplex {
    let mut vertices = vec![0; g.vertices.len()];
    for (old, &new) in perm.iter().enumerate() {
        vertices[new] = g.vertices[old];
    }
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (perm[e.ends.0], perm[e.ends.1]);
            if a < b {
                Edge {
                    ends: (a, b),
                    cone: e.cone,
                    dir: e.dir.clone(),
                }
            } else {
                Edge {
                    ends: (b, a),
                    cone: e.cone,
                    dir: negate(&e.dir),
                }
            }
        })
        .collect();
    edges.sort();
    let mut rays: Vec<Ray> = g
        .rays
        .iter()
        .map(|r| Ray {
            base: perm[r.base],
            cone: r.cone,
            dir: r.dir.clone(),
        })
        .collect();
    rays.sort();
    CombinatorialOneComplex {
        vertices,
        edges,
        rays,
    }
}

/// Isomorphism-invariant colour of a vertex.
fn colour(g: &CombinatorialOneComplex, v: usize) -> (usize, Vec<(Vec<Z>, usize, bool)>) {
    let mut inc: Vec<(Vec<Z>, usize, bool)> = Vec::new();
    for e in &g.edges {
        if e.ends.0 == v {
            inc.push((e.dir.clone(), e.cone, false));
        }
        if e.ends.1 == v {
            inc.push((negate(&e.dir), e.cone, false));
        }
    }
    for r in g.rays.iter().filter(|r| r.base == v) {
        inc.push((r.dir.clone(), r.cone, true));
    }
    inc.sort();
    (g.vertices[v], inc)
}

/// Every vertex ordering compatible with the sorted colour classes.
fn candidate_perms(g: &CombinatorialOneComplex) -> Vec<Vec<usize>> {
    let n = g.vertices.len();
    let mut classes: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(colour(g, v)).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = classes.into_values().collect();
    let mut out = vec![vec![usize::MAX; n]];
    let mut offset = 0;
    for grp in &groups {
        let perms = permutations(grp.len());
        let mut next = Vec::new();
        for base in &out {
            for p in &perms {
                let mut b = base.clone();
                for (i, &v) in grp.iter().enumerate() {
                    b[v] = offset + p[i];
                }
                next.push(b);
            }
        }
        out = next;
        offset += grp.len();
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// The lexicographically least relabelling, with the permutation producing it.
pub fn canonical_type(g: &CombinatorialOneComplex) -> (CombinatorialOneComplex, Vec<usize>) {
    candidate_perms(g)
        .into_iter()
        .map(|p| (relabel(g, &p), p))
        .min()
        .expect("at least the empty permutation")
}

/// All isomorphisms `g → h` as vertex maps.
pub fn isomorphisms(g: &CombinatorialOneComplex, h: &CombinatorialOneComplex) -> Vec<Vec<usize>> {
    if g.vertices.len() != h.vertices.len()
        || g.edges.len() != h.edges.len()
        || g.rays.len() != h.rays.len()
    {
        return Vec::new();
    }
    let (ch, ph) = canonical_type(h);
    let mut inv_h = vec![0; ph.len()];
    for (old, &new) in ph.iter().enumerate() {
        inv_h[new] = old;
    }
    let mut out: Vec<Vec<usize>> = candidate_perms(g)
        .into_iter()
        .filter(|p| relabel(g, p) == ch)
        .map(|p| p.iter().map(|&x| inv_h[x]).collect())
        .collect();
    out.sort();
    out
}

pub fn is_isomorphic(g: &CombinatorialOneComplex, h: &CombinatorialOneComplex) -> bool {
    g.vertices.len() == h.vertices.len() && canonical_type(g).0 == canonical_type(h).0
}

/// The automorphism group as vertex permutations.
pub fn automorphisms(g: &CombinatorialOneComplex) -> Vec<Vec<usize>> {
    isomorphisms(g, g)
}
