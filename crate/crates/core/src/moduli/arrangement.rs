//! Hyperplanes along which the image type of a realization can change, and
//! the cells they cut out of a cone.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::{add, dot_z, primitive, scale, sub, to_qvec, Q, Z};
use crate::cones::{Cone, ConeComplex};
use crate::linalg::{det_z, nullspace_z};

use super::xg::XGCone;

/// Affine-free linear functionals on `𝕏_G`, built from position blocks.
struct Lin {
    n: usize,
    total: usize,
}

impl Lin {
    fn zero(&self) -> Vec<Q> {
        vec![Q::zero(); self.total]
    }

    /// `a · f(v)`.
    fn at(&self, a: &[Z], v: usize) -> Vec<Q> {
        let mut out = self.zero();
        for k in 0..self.n {
            out[v * self.n + k] = Q::from_integer(a[k].clone());
        }
        out
    }

    /// `a · (f(w) − f(v))`.
    fn diff(&self, a: &[Z], v: usize, w: usize) -> Vec<Q> {
        sub(&self.at(a, w), &self.at(a, v))
    }
}

/// A piece of the source graph: base vertex, direction, and far end for
/// edges. Points on it are `f(base) + s·dir`.
struct Line {
    base: usize,
    end: Option<usize>,
    dir: Vec<Z>,
    cone: usize,
}

fn normalize(h: &[Q]) -> Option<Vec<Z>> {
    let p = primitive(h);
    let first = p.iter().find(|x| !x.is_zero())?;
    Some(if first.is_negative() {
        p.iter().map(|x| -x).collect()
    } else {
        p
    })
}

/// Linear conditions whose signs determine the image type on `𝕏_G`.
pub fn degeneracy_hyperplanes(xg: &XGCone, sigma: &ConeComplex) -> Vec<Vec<Z>> {
    let g = &xg.graph;
    let n = xg.n;
    let lin = Lin {
        n,
        total: xg.ambient_dim(),
    };
    let cones = sigma.cones();
    let mut planes: Vec<Vec<Q>> = Vec::new();

    for (v, &c) in g.vertices.iter().enumerate() {
        planes.extend(cones[c].inequalities().iter().map(|a| lin.at(a, v)));
    }
    for v in 0..g.vertices.len() {
        for w in v + 1..g.vertices.len() {
            for k in 0..n {
                let mut e = vec![Z::zero(); n];
                e[k] = Z::from(1);
                planes.push(lin.diff(&e, v, w));
            }
        }
    }
    let mut lines: Vec<Line> = g
        .edges
        .iter()
        .map(|e| Line {
            base: e.ends.0,
            end: Some(e.ends.1),
            dir: e.dir.clone(),
            cone: e.cone,
        })
        .collect();
    lines.extend(g.rays.iter().map(|r| Line {
        base: r.base,
        end: None,
        dir: r.dir.clone(),
        cone: r.cone,
    }));

    for l in &lines {
        for a in cones[l.cone].inequalities() {
            match l.end {
                Some(w) => planes.push(add(&lin.at(a, l.base), &lin.at(a, w))),
                None if dot_z(a, &l.dir).is_zero() => planes.push(lin.at(a, l.base)),
                None => {}
            }
        }
    }

    // Parameters along each line, as functionals scaled by |dir|².
    let mut params: Vec<Vec<Vec<Q>>> = vec![Vec::new(); lines.len()];
    for (i, l) in lines.iter().enumerate() {
        let perp = nullspace_z(std::slice::from_ref(&l.dir), n);
        params[i].push(lin.zero());
        if let Some(w) = l.end {
            params[i].push(lin.diff(&l.dir, l.base, w));
        }
        for u in 0..g.vertices.len() {
            if u == l.base || Some(u) == l.end {
                continue;
            }
            planes.extend(perp.iter().map(|c| lin.diff(c, l.base, u)));
            params[i].push(lin.diff(&l.dir, l.base, u));
        }
    }
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let both = [a.dir.clone(), b.dir.clone()];
            let perp = nullspace_z(&both, n);
            if perp.len() + 2 != n {
                continue;
            }
            planes.extend(perp.iter().map(|c| lin.diff(c, a.base, b.base)));
            // f(a) + s·da = f(b) + t·db on a 2×2 minor with non-zero determinant
            let minor = (0..n)
                .flat_map(|r| (r + 1..n).map(move |q| (r, q)))
                .find(|&(r, q)| {
                    !det_z(&[
                        vec![a.dir[r].clone(), b.dir[r].clone()],
                        vec![a.dir[q].clone(), b.dir[q].clone()],
                    ])
                    .is_zero()
                })
                .expect("independent directions have a non-zero minor");
            let (r, q) = minor;
            let det = Q::from_integer(&a.dir[r] * &b.dir[q] - &b.dir[r] * &a.dir[q]);
            let mut er = vec![Z::zero(); n];
            er[r] = Z::from(1);
            let mut eq = vec![Z::zero(); n];
            eq[q] = Z::from(1);
            let dr = lin.diff(&er, a.base, b.base);
            let dq = lin.diff(&eq, a.base, b.base);
            // s = (Δr·db_q − Δq·db_r)/det, t = (Δr·da_q − Δq·da_r)/det
            let s = scale(
                &sub(
                    &scale(&dr, &to_qvec(&b.dir)[q]),
                    &scale(&dq, &to_qvec(&b.dir)[r]),
                ),
                &(Q::from_integer(Z::from(1)) / &det),
            );
            let t = scale(
                &sub(
                    &scale(&dr, &to_qvec(&a.dir)[q]),
                    &scale(&dq, &to_qvec(&a.dir)[r]),
                ),
                &(Q::from_integer(Z::from(1)) / &det),
            );
            let na = Q::from_integer(dot_z(&a.dir, &a.dir));
            let nb = Q::from_integer(dot_z(&b.dir, &b.dir));
            let sa = scale(&s, &na);
            let tb = scale(&t, &nb);
            for p in &params[i] {
                planes.push(sub(&sa, p));
            }
            for p in &params[j] {
                planes.push(sub(&tb, p));
            }
            for c in [a.cone, b.cone] {
                for ineq in cones[c].inequalities() {
                    let x = add(
                        &lin.at(ineq, a.base),
                        &scale(&s, &Q::from_integer(dot_z(ineq, &a.dir))),
                    );
                    planes.push(x);
                }
            }
            params[i].push(sa);
            params[j].push(tb);
        }
    }
    for ps in &params {
        for x in 0..ps.len() {
            for y in x + 1..ps.len() {
                planes.push(sub(&ps[x], &ps[y]));
            }
        }
    }
    let set: BTreeSet<Vec<Z>> = planes.iter().filter_map(|h| normalize(h)).collect();
    set.into_iter().collect()
}

/// Splits `cone` by every hyperplane that meets its relative interior.
/// Returns the maximal cells and whether the budget sufficed.
pub fn maximal_cells(cone: &Cone, planes: &[Vec<Z>], budget: usize) -> (Vec<Cone>, bool) {
    let mut cells = vec![cone.clone()];
    for h in planes {
        let mut next = Vec::with_capacity(cells.len());
        for c in cells {
            let vals: Vec<Z> = c.rays().iter().map(|r| dot_z(h, r)).collect();
            if vals.iter().any(Signed::is_positive) && vals.iter().any(Signed::is_negative) {
                let neg: Vec<Z> = h.iter().map(|x| -x).collect();
                for side in [h.clone(), neg] {
                    let mut ineqs = c.inequalities().to_vec();
                    ineqs.push(side);
                    next.push(
                        Cone::from_halfspaces(c.ambient_dim(), &ineqs, c.equations())
                            .expect("subcone of a pointed cone"),
                    );
                }
            } else {
                next.push(c);
            }
        }
        cells = next;
        if cells.len() > budget {
            return (cells, false);
        }
    }
    cells.sort();
    (cells, true)
}

/// Every cell of the arrangement restricted to `cone`, in canonical order.
pub fn all_cells(cone: &Cone, planes: &[Vec<Z>], budget: usize) -> (Vec<Cone>, bool) {
    let (top, complete) = maximal_cells(cone, planes, budget);
    let mut out: BTreeSet<Cone> = BTreeSet::new();
    for c in &top {
        out.extend(c.faces());
        if out.len() > budget {
            return (out.into_iter().collect(), false);
        }
    }
    (out.into_iter().collect(), complete)
}
