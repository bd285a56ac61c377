//! Tropical plane curves, balancing, asymptotic degrees, and flat limits of
//! one-parameter families given by their tropicalization.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::arith::{add, dot, dot_zq, primitive, scale, sub, to_qvec, QVec, Q, Z};
use crate::cones::ConeComplex;
use crate::error::{Error, Result};
use crate::expansion::{dual_complex, ExpansionDualComplex};
use crate::graphs::{
    cone_over, minimal_dilation, minimal_structure, CombinatorialOneComplex, Edge,
    EmbeddedOneComplex, Ray,
};
use crate::hull::{lower_chain, lower_faces, polygon_edges, spans_plane};

/// `min_i (val_i + ⟨exp_i, x⟩)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalPolynomial {
    pub ambient_dim: usize,
    pub terms: Vec<(Vec<Z>, Q)>,
}

impl TropicalPolynomial {
    pub fn evaluate(&self, x: &[Q]) -> Q {
        self.terms
            .iter()
            .map(|(e, v)| v + dot_zq(e, x))
            .min()
            .expect("at least one term")
    }

    /// Whether the minimum at `x` is attained by at least two terms.
    pub fn breaks_at(&self, x: &[Q]) -> bool {
        let m = self.evaluate(x);
        self.terms
            .iter()
            .filter(|(e, v)| v + dot_zq(e, x) == m)
            .count()
            >= 2
    }
}

/// An embedded 1-complex with positive integer weights, aligned with the
/// edge and ray lists of `base`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOneComplex {
    pub base: EmbeddedOneComplex,
    pub edge_weights: Vec<Z>,
    pub ray_weights: Vec<Z>,
}

impl WeightedOneComplex {
    /// Whether `x` lies on the support.
    pub fn support_contains(&self, x: &[Q]) -> bool {
        let b = &self.base;
        if b.positions.iter().any(|p| p.as_slice() == x) {
            return true;
        }
        let on_edge = b.graph.edges.iter().any(|e| {
            let p = &b.positions[e.ends.0];
            let d = sub(&b.positions[e.ends.1], p);
            crate::arith::multiple_of(&sub(x, p), &d)
                .is_some_and(|t| !t.is_negative() && t <= Q::one())
        });
        on_edge
            || b.graph.rays.iter().any(|r| {
                crate::arith::multiple_of(&sub(x, &b.positions[r.base]), &to_qvec(&r.dir))
                    .is_some_and(|t| !t.is_negative())
            })
    }
}

struct RawCurve {
    positions: Vec<Vec<Q>>,
    edges: Vec<(usize, usize, Z)>,
    rays: Vec<(usize, Vec<Z>, Z)>,
}

impl RawCurve {
    fn vertex(&mut self, p: Vec<Q>) -> usize {
        if let Some(i) = self.positions.iter().position(|x| *x == p) {
            return i;
        }
        self.positions.push(p);
        self.positions.len() - 1
    }
}

fn lattice_length(v: &[Z]) -> Z {
    crate::arith::gcd_all(v)
}

fn plane_curve(p: &TropicalPolynomial) -> RawCurve {
    let pts: Vec<Vec<Z>> = p.terms.iter().map(|t| t.0.clone()).collect();
    let h: Vec<Q> = p.terms.iter().map(|t| t.1.clone()).collect();
    let mut raw = RawCurve {
        positions: Vec::new(),
        edges: Vec::new(),
        rays: Vec::new(),
    };
    if spans_plane(&pts) {
        let faces = lower_faces(&pts, &h);
        let verts: Vec<usize> = faces
            .iter()
            .map(|f| raw.vertex(f.slope.iter().map(|x| -x.clone()).collect()))
            .collect();
        // edge of the Newton subdivision -> (face, endpoint, endpoint)
        type Walls = BTreeMap<(usize, usize), Vec<(usize, usize, usize)>>;
        let mut walls: Walls = BTreeMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for (a, b) in polygon_edges(&pts, &f.points) {
                walls
                    .entry((a.min(b), a.max(b)))
                    .or_default()
                    .push((fi, a, b));
            }
        }
        for ((a, b), cells) in &walls {
            let w = lattice_length(&sub_z(&pts[*b], &pts[*a]));
            match cells.as_slice() {
                [(f, _, _), (g, _, _)] => raw.edges.push((verts[*f], verts[*g], w)),
                [(f, s, t)] => {
                    let u = sub_z(&pts[*t], &pts[*s]);
                    let normal = crate::arith::primitive_z(&[-u[1].clone(), u[0].clone()]);
                    raw.rays.push((verts[*f], normal, w));
                }
                _ => unreachable!("a wall bounds one or two cells"),
            }
        }
    } else {
        let base = &pts[0];
        let far = pts
            .iter()
            .find(|x| *x != base)
            .expect("two distinct exponents");
        let w = crate::arith::primitive_z(&sub_z(far, base));
        let wq = to_qvec(&w);
        let params: Vec<Q> = pts
            .iter()
            .map(|x| dot(&to_qvec(&sub_z(x, base)), &wq))
            .collect();
        let chain = lower_chain(&params, &h);
        let perp = vec![-w[1].clone(), w[0].clone()];
        for pair in chain.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let seg = sub_z(&pts[b], &pts[a]);
            let sq = to_qvec(&seg);
            let t = (&h[a] - &h[b]) / dot(&sq, &sq);
            let v = raw.vertex(scale(&sq, &t));
            let m = lattice_length(&seg);
            raw.rays.push((v, perp.clone(), m.clone()));
            raw.rays.push((v, perp.iter().map(|x| -x).collect(), m));
        }
    }
    raw
}

fn sub_z(a: &[Z], b: &[Z]) -> Vec<Z> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Splits every edge and ray where it crosses a hyperplane of `sigma` and
/// drops the parts outside `|sigma|`.
fn restrict_to_fan(raw: RawCurve, sigma: &ConeComplex) -> RawCurve {
    let mut planes: Vec<Vec<Z>> = Vec::new();
    for c in sigma.cones() {
        for a in c.inequalities().iter().chain(c.equations()) {
            let neg: Vec<Z> = a.iter().map(|x| -x).collect();
            if !planes.contains(a) && !planes.contains(&neg) {
                planes.push(a.clone());
            }
        }
    }
    let mut out = RawCurve {
        positions: Vec::new(),
        edges: Vec::new(),
        rays: Vec::new(),
    };
    for p in &raw.positions {
        if sigma.support_contains(p) {
            out.vertex(p.clone());
        }
    }
    let cuts = |start: &[Q], delta: &[Q], bounded: bool| -> Vec<Q> {
        let mut s: Vec<Q> = planes
            .iter()
            .filter_map(|a| {
                let ad = dot_zq(a, delta);
                if ad.is_zero() {
                    return None;
                }
                let t = -dot_zq(a, start) / ad;
                (t > Q::zero() && (!bounded || t < Q::one())).then_some(t)
            })
            .collect();
        s.sort();
        s.dedup();
        // keep only points where the minimal cone changes
        let at = |t: &Q| sigma.minimal_cone_containing(&add(start, &scale(delta, t)));
        let end = if bounded {
            Q::one()
        } else {
            s.last().map_or(Q::one(), |x| x + Q::one())
        };
        (0..s.len())
            .filter(|&i| {
                let before = if i == 0 { Q::zero() } else { s[i - 1].clone() };
                let after = s.get(i + 1).cloned().unwrap_or_else(|| end.clone());
                let here = at(&s[i]);
                here != at(&((&before + &s[i]) * crate::arith::qf(1, 2)))
                    || here != at(&((&s[i] + &after) * crate::arith::qf(1, 2)))
            })
            .map(|i| s[i].clone())
            .collect()
    };
    let half = crate::arith::qf(1, 2);
    for (a, b, w) in &raw.edges {
        let start = raw.positions[*a].clone();
        let delta = sub(&raw.positions[*b], &start);
        let mut ts = vec![Q::zero()];
        ts.extend(cuts(&start, &delta, true));
        ts.push(Q::one());
        for pair in ts.windows(2) {
            let mid = add(&start, &scale(&delta, &((&pair[0] + &pair[1]) * &half)));
            if sigma.support_contains(&mid) {
                let x = out.vertex(add(&start, &scale(&delta, &pair[0])));
                let y = out.vertex(add(&start, &scale(&delta, &pair[1])));
                out.edges.push((x, y, w.clone()));
            }
        }
    }
    for (a, d, w) in &raw.rays {
        let start = raw.positions[*a].clone();
        let delta = to_qvec(d);
        let mut ts = vec![Q::zero()];
        ts.extend(cuts(&start, &delta, false));
        for (i, t0) in ts.iter().enumerate() {
            let probe = match ts.get(i + 1) {
                Some(t1) => (t0 + t1) * &half,
                None => t0 + Q::one(),
            };
            if !sigma.support_contains(&add(&start, &scale(&delta, &probe))) {
                continue;
            }
            let x = out.vertex(add(&start, &scale(&delta, t0)));
            match ts.get(i + 1) {
                Some(t1) => {
                    let y = out.vertex(add(&start, &scale(&delta, t1)));
                    out.edges.push((x, y, w.clone()));
                }
                None => out.rays.push((x, d.clone(), w.clone())),
            }
        }
    }
    out
}

/// Canonical weighted complex from raw pieces.
fn assemble(raw: RawCurve, sigma: &ConeComplex) -> WeightedOneComplex {
    let edges: Vec<Edge> = raw
        .edges
        .iter()
        .map(|(a, b, _)| Edge {
            ends: (*a, *b),
            cone: 0,
            dir: primitive(&sub(&raw.positions[*b], &raw.positions[*a])),
        })
        .collect();
    let rays: Vec<Ray> = raw
        .rays
        .iter()
        .map(|(a, d, _)| Ray {
            base: *a,
            cone: 0,
            dir: d.clone(),
        })
        .collect();
    let e = EmbeddedOneComplex {
        graph: CombinatorialOneComplex {
            vertices: vec![0; raw.positions.len()],
            edges,
            rays,
        },
        positions: raw.positions.clone(),
    };
    let canon = e.canonical(sigma);
    let edge_weights = canon
        .graph
        .edges
        .iter()
        .map(|e| {
            let (p, q) = (&canon.positions[e.ends.0], &canon.positions[e.ends.1]);
            raw.edges
                .iter()
                .find(|(a, b, _)| {
                    let (x, y) = (&raw.positions[*a], &raw.positions[*b]);
                    (x == p && y == q) || (x == q && y == p)
                })
                .map(|t| t.2.clone())
                .expect("edge survives canonicalization")
        })
        .collect();
    let ray_weights = canon
        .graph
        .rays
        .iter()
        .map(|r| {
            raw.rays
                .iter()
                .find(|(a, d, _)| raw.positions[*a] == canon.positions[r.base] && *d == r.dir)
                .map(|t| t.2.clone())
                .expect("ray survives canonicalization")
        })
        .collect();
    WeightedOneComplex {
        base: canon,
        edge_weights,
        ray_weights,
    }
}

/// The break locus of a tropical polynomial in two variables, weighted by
/// lattice lengths of the dual Newton subdivision and refined along the
/// walls of `sigma`.
pub fn tropicalize_hypersurface(
    p: &TropicalPolynomial,
    sigma: &ConeComplex,
) -> Result<WeightedOneComplex> {
    if p.ambient_dim != 2 {
        return Err(Error::UnsupportedDimension(p.ambient_dim));
    }
    if sigma.ambient_dim() != 2 {
        return Err(Error::AmbientMismatch(2, sigma.ambient_dim()));
    }
    if p.terms.len() < 2 {
        return Err(Error::DegenerateInput(
            "a tropical hypersurface needs at least two terms".into(),
        ));
    }
    for (i, (e, _)) in p.terms.iter().enumerate() {
        if e.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: e.len(),
            });
        }
        if p.terms[..i].iter().any(|(f, _)| f == e) {
            return Err(Error::InvalidInput(format!("repeated exponent {e:?}")));
        }
    }
    let raw = restrict_to_fan(plane_curve(p), sigma);
    Ok(assemble(raw, sigma))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancingReport {
    /// Weighted sum of outgoing directions at each vertex.
    pub sums: Vec<Vec<Z>>,
}

impl BalancingReport {
    pub fn defects(&self) -> Vec<(usize, Vec<Z>)> {
        self.sums
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|x| !x.is_zero()))
            .map(|(i, s)| (i, s.clone()))
            .collect()
    }

    pub fn is_balanced(&self) -> bool {
        self.defects().is_empty()
    }
}

pub fn check_balancing(w: &WeightedOneComplex) -> BalancingReport {
    let n = w.base.ambient_dim().unwrap_or(0);
    let mut sums = vec![vec![Z::zero(); n]; w.base.positions.len()];
    let mut bump = |v: usize, dir: &[Z], weight: &Z, sign: i64| {
        for (s, d) in sums[v].iter_mut().zip(dir) {
            *s += d * weight * Z::from(sign);
        }
    };
    for (e, wt) in w.base.graph.edges.iter().zip(&w.edge_weights) {
        bump(e.ends.0, &e.dir, wt, 1);
        bump(e.ends.1, &e.dir, wt, -1);
    }
    for (r, wt) in w.base.graph.rays.iter().zip(&w.ray_weights) {
        bump(r.base, &r.dir, wt, 1);
    }
    BalancingReport { sums }
}

/// Weights of the unbounded rays grouped by the ray of `sigma` they run
/// parallel to; every ray of `sigma` is a key.
pub fn asymptotic_profile(
    w: &WeightedOneComplex,
    sigma: &ConeComplex,
) -> Result<BTreeMap<Vec<Z>, Vec<Z>>> {
    let mut out: BTreeMap<Vec<Z>, Vec<Z>> =
        sigma.rays().into_iter().map(|r| (r, Vec::new())).collect();
    for (r, wt) in w.base.graph.rays.iter().zip(&w.ray_weights) {
        match out.get_mut(&r.dir) {
            Some(list) => list.push(wt.clone()),
            None => return Err(Error::NonparallelRay(QVec(&to_qvec(&r.dir)).to_string())),
        }
    }
    for list in out.values_mut() {
        list.sort();
    }
    Ok(out)
}

/// Total weight per ray of `sigma`.
pub fn profile_totals(profile: &BTreeMap<Vec<Z>, Vec<Z>>) -> BTreeMap<Vec<Z>, Z> {
    profile
        .iter()
        .map(|(k, v)| (k.clone(), v.iter().sum()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub minimal_complex: EmbeddedOneComplex,
    pub base_change_order: Z,
    pub dilated: EmbeddedOneComplex,
    pub cone: ConeComplex,
    pub expansion: ExpansionDualComplex,
}

/// Minimal structure, base change order, the cone over the dilated complex,
/// and the dual complex of the resulting expansion.
pub fn limit_expansion(e: &EmbeddedOneComplex, sigma: &ConeComplex) -> Result<LimitResult> {
    let minimal = minimal_structure(e, sigma)?;
    let b = minimal_dilation(&minimal);
    let dilated = minimal.dilate(&b).canonical(sigma);
    let cone = cone_over(&dilated, sigma.ambient_dim())?;
    let expansion = dual_complex(&cone, sigma)?;
    Ok(LimitResult {
        minimal_complex: minimal,
        base_change_order: b,
        dilated,
        cone,
        expansion,
    })
}

/// Independent reference for the break locus: evaluates all terms at `x`.
pub fn sample_break_locus(p: &TropicalPolynomial, probes: &[Vec<Q>]) -> Vec<bool> {
    probes.iter().map(|x| p.breaks_at(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qf, qvec, zvec};

    pub(crate) fn p2() -> ConeComplex {
        ConeComplex::from_rays(
            2,
            &[
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, -1]],
                vec![vec![-1, -1], vec![1, 0]],
            ],
        )
        .unwrap()
    }

    fn poly(terms: &[([i64; 2], Q)]) -> TropicalPolynomial {
        TropicalPolynomial {
            ambient_dim: 2,
            terms: terms.iter().map(|(e, v)| (zvec(e), v.clone())).collect(),
        }
    }

    fn ray_dirs(w: &WeightedOneComplex) -> Vec<Vec<Z>> {
        let mut d: Vec<Vec<Z>> = w.base.graph.rays.iter().map(|r| r.dir.clone()).collect();
        d.sort();
        d
    }

    #[test]
    fn line_at_origin() {
        let w = tropicalize_hypersurface(
            &poly(&[([0, 0], q(0)), ([1, 0], q(0)), ([0, 1], q(0))]),
            &p2(),
        )
        .unwrap();
        assert_eq!(w.base.positions, vec![qvec(&[0, 0])]);
        assert_eq!(
            ray_dirs(&w),
            vec![zvec(&[-1, -1]), zvec(&[0, 1]), zvec(&[1, 0])]
        );
        assert!(w.ray_weights.iter().all(|x| x.is_one()));
        assert!(check_balancing(&w).is_balanced());
    }

    #[test]
    fn shifted_line_gains_a_wall_vertex() {
        let w = tropicalize_hypersurface(
            &poly(&[([0, 0], q(1)), ([1, 0], q(0)), ([0, 1], q(0))]),
            &p2(),
        )
        .unwrap();
        assert_eq!(w.base.positions, vec![qvec(&[0, 0]), qvec(&[1, 1])]);
        assert_eq!(w.base.graph.edges.len(), 1);
        assert_eq!(
            ray_dirs(&w),
            vec![zvec(&[-1, -1]), zvec(&[0, 1]), zvec(&[1, 0])]
        );
        assert!(check_balancing(&w).is_balanced());
        let totals = profile_totals(&asymptotic_profile(&w, &p2()).unwrap());
        assert!(totals.values().all(|t| t.is_one()));
    }

    #[test]
    fn doubled_wall() {
        let w = tropicalize_hypersurface(&poly(&[([0, 0], q(0)), ([2, 0], q(0))]), &p2()).unwrap();
        assert_eq!(w.base.positions, vec![qvec(&[0, 0])]);
        assert_eq!(ray_dirs(&w), vec![zvec(&[0, -1]), zvec(&[0, 1])]);
        assert_eq!(w.ray_weights, vec![Z::from(2), Z::from(2)]);
        let plane = ConeComplex::from_rays(
            2,
            &[
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, 0]],
                vec![vec![-1, 0], vec![0, -1]],
                vec![vec![0, -1], vec![1, 0]],
            ],
        )
        .unwrap();
        let w2 =
            tropicalize_hypersurface(&poly(&[([0, 0], q(0)), ([2, 0], q(0))]), &plane).unwrap();
        assert!(check_balancing(&w2).is_balanced());
    }

    #[test]
    fn errors() {
        let cubic = TropicalPolynomial {
            ambient_dim: 3,
            terms: vec![],
        };
        assert_eq!(
            tropicalize_hypersurface(&cubic, &p2()),
            Err(Error::UnsupportedDimension(3))
        );
        assert!(matches!(
            tropicalize_hypersurface(&poly(&[([0, 0], q(0))]), &p2()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn weight_two_defect() {
        let mut w = tropicalize_hypersurface(
            &poly(&[([0, 0], q(0)), ([1, 0], q(0)), ([0, 1], q(0))]),
            &p2(),
        )
        .unwrap();
        let i = w
            .base
            .graph
            .rays
            .iter()
            .position(|r| r.dir == zvec(&[1, 0]))
            .unwrap();
        w.ray_weights[i] = Z::from(2);
        assert_eq!(check_balancing(&w).defects(), vec![(0, zvec(&[1, 0]))]);
    }

    #[test]
    fn nonparallel_ray() {
        let mut w = tropicalize_hypersurface(
            &poly(&[([0, 0], q(0)), ([1, 0], q(0)), ([0, 1], q(0))]),
            &p2(),
        )
        .unwrap();
        w.base.graph.rays[0].dir = zvec(&[1, 1]);
        assert!(matches!(
            asymptotic_profile(&w, &p2()),
            Err(Error::NonparallelRay(_))
        ));
    }

    #[test]
    fn half_integral_line() {
        let w = tropicalize_hypersurface(
            &poly(&[([0, 0], qf(1, 2)), ([1, 0], q(0)), ([0, 1], q(0))]),
            &p2(),
        )
        .unwrap();
        let r = limit_expansion(&w.base, &p2()).unwrap();
        assert_eq!(r.base_change_order, Z::from(2));
        assert!(r.dilated.positions.contains(&qvec(&[1, 1])));
        assert_eq!(minimal_dilation(&r.dilated), Z::one());
    }
}
