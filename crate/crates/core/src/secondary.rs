//! Regular subdivisions of the dilated simplex `dΔ₂`, their secondary cones
//! and dual tropical curves.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};

use crate::arith::{primitive, q, qf, to_qvec, zq, Q, Z};
use crate::cones::{is_subdivision, Cone, ConeComplex, SubdivisionKind};
use crate::error::{Error, Result};
use crate::hull::{convex_polygon, lower_faces, polygon_edges, spans_plane};
use crate::linalg::{det_z, solve};
use crate::troplim::{tropicalize_hypersurface, TropicalPolynomial, WeightedOneComplex};

/// The fan of the projective plane, with rays `e₁`, `e₂`, `−e₁−e₂`.
pub fn projective_plane_fan() -> ConeComplex {
    ConeComplex::from_rays(
        2,
        &[
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 1], vec![-1, -1]],
            vec![vec![-1, -1], vec![1, 0]],
        ],
    )
    .expect("the fan of the projective plane")
}

/// Lattice points of `dΔ₂` in lexicographic order.
pub fn lattice_points(d: usize) -> Vec<Vec<Z>> {
    let d = d as i64;
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push(vec![Z::from(i), Z::from(j)]);
        }
    }
    out
}

/// Strictly convex heights `i² + ij + j²`.
pub fn honeycomb_heights(d: usize) -> Vec<Q> {
    lattice_points(d)
        .iter()
        .map(|p| {
            let (i, j) = (zq(&p[0]), zq(&p[1]));
            &i * &i + &i * &j + &j * &j
        })
        .collect()
}

fn check_degree(d: usize, max: usize) -> Result<()> {
    if d == 0 || d > max {
        return Err(Error::UnsupportedDimension(d));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub d: usize,
    pub points: Vec<Vec<Z>>,
    /// Each cell lists every point of the configuration lying on it.
    pub cells: Vec<Vec<usize>>,
    pub witness_heights: Vec<Q>,
}

impl RegularSubdivision {
    pub fn is_triangulation(&self) -> bool {
        self.cells
            .iter()
            .all(|c| convex_polygon(&self.points, c).len() == 3 && c.len() == 3)
    }

    /// Every cell is a triangle of normalized area one.
    pub fn is_unimodular(&self) -> bool {
        self.is_triangulation()
            && self.cells.iter().all(|c| {
                let (a, b, e) = (&self.points[c[0]], &self.points[c[1]], &self.points[c[2]]);
                let m = vec![
                    vec![&b[0] - &a[0], &b[1] - &a[1]],
                    vec![&e[0] - &a[0], &e[1] - &a[1]],
                ];
                det_z(&m).abs() == Z::from(1)
            })
    }

    /// Twice the total area, which is `d²` for a covering of `dΔ₂`.
    pub fn doubled_area(&self) -> Z {
        self.cells
            .iter()
            .map(|c| {
                let poly = convex_polygon(&self.points, c);
                let p = &self.points;
                (0..poly.len()).fold(Z::zero(), |acc, k| {
                    let (a, b) = (&p[poly[k]], &p[poly[(k + 1) % poly.len()]]);
                    acc + &a[0] * &b[1] - &a[1] * &b[0]
                })
            })
            .sum()
    }
}

/// The lower-hull subdivision induced by heights `h`, indexed like
/// `lattice_points(d)`.
pub fn subdivision_from_heights(d: usize, h: &[Q]) -> Result<RegularSubdivision> {
    check_degree(d, 3)?;
    let points = lattice_points(d);
    if h.len() != points.len() {
        return Err(Error::BadIndex(format!(
            "{} heights for {} lattice points",
            h.len(),
            points.len()
        )));
    }
    let cells = lower_faces(&points, h)
        .into_iter()
        .map(|f| f.points)
        .collect();
    Ok(RegularSubdivision {
        d,
        points,
        cells,
        witness_heights: h.to_vec(),
    })
}

fn base_indices(points: &[Vec<Z>]) -> [usize; 3] {
    let find = |x: i64, y: i64| {
        points
            .iter()
            .position(|p| p[0] == Z::from(x) && p[1] == Z::from(y))
            .expect("unit triangle")
    };
    [find(0, 0), find(1, 0), find(0, 1)]
}

/// Heights modulo affine functions: subtract the affine function agreeing
/// with `h` at `(0,0)`, `(1,0)`, `(0,1)` and drop those three coordinates.
pub fn quotient(d: usize, h: &[Q]) -> Vec<Q> {
    let points = lattice_points(d);
    let [o, x, y] = base_indices(&points);
    let (h0, hx, hy) = (h[o].clone(), &h[x] - &h[o], &h[y] - &h[o]);
    (0..points.len())
        .filter(|i| ![o, x, y].contains(i))
        .map(|i| &h[i] - &h0 - &hx * zq(&points[i][0]) - &hy * zq(&points[i][1]))
        .collect()
}

/// The representative of a quotient class vanishing at the base triangle.
pub fn lift(d: usize, x: &[Q]) -> Vec<Q> {
    let points = lattice_points(d);
    let base = base_indices(&points);
    let mut it = x.iter();
    (0..points.len())
        .map(|i| {
            if base.contains(&i) {
                Q::zero()
            } else {
                it.next().expect("quotient coordinate").clone()
            }
        })
        .collect()
}

/// `e_x − (affine interpolation of the cell's base triangle at x)`, as a
/// functional on heights.
fn defect_functional(points: &[Vec<Z>], tri: [usize; 3], x: usize) -> Vec<Q> {
    let rows: Vec<Vec<Q>> = (0..3)
        .map(|r| {
            tri.iter()
                .map(|&t| if r < 2 { zq(&points[t][r]) } else { q(1) })
                .collect()
        })
        .collect();
    let rhs = vec![zq(&points[x][0]), zq(&points[x][1]), q(1)];
    let lambda = solve(&rows, &rhs, 3).expect("non-degenerate triangle");
    let mut f = vec![Q::zero(); points.len()];
    f[x] += q(1);
    for (k, &t) in tri.iter().enumerate() {
        f[t] -= &lambda[k];
    }
    f
}

fn affine_triangle(points: &[Vec<Z>], cell: &[usize]) -> Option<[usize; 3]> {
    let poly = convex_polygon(points, cell);
    (poly.len() >= 3).then(|| [poly[0], poly[1], poly[2]])
}

fn to_quotient_functional(d: usize, f: &[Q]) -> Vec<Z> {
    let base = base_indices(&lattice_points(d));
    let kept: Vec<Q> = (0..f.len())
        .filter(|i| !base.contains(i))
        .map(|i| f[i].clone())
        .collect();
    primitive(&kept)
}

/// The cone `K` of heights for which every lattice point lies on the lower
/// hull; for `d ≤ 2` it is cut out by convexity along the boundary edges.
pub fn fine_cone(d: usize) -> Result<Cone> {
    check_degree(d, 2)?;
    let points = lattice_points(d);
    let dd = Z::from(d as i64);
    let corners: Vec<usize> = points
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            (p[0].is_zero() || p[0] == dd) && (p[1].is_zero() || p[1] == dd)
                || (p[0].is_zero() && p[1] == dd)
        })
        .map(|(i, _)| i)
        .collect();
    let mut ineqs = Vec::new();
    for (m, p) in points.iter().enumerate() {
        if corners.contains(&m) {
            continue;
        }
        // boundary point between two corners: h(m) ≤ interpolation
        for a in &corners {
            for b in &corners {
                if a >= b {
                    continue;
                }
                let (pa, pb) = (&points[*a], &points[*b]);
                let cross =
                    (&pb[0] - &pa[0]) * (&p[1] - &pa[1]) - (&pb[1] - &pa[1]) * (&p[0] - &pa[0]);
                if cross.is_zero() {
                    let tri = [
                        *a,
                        *b,
                        *corners.iter().find(|c| *c != a && *c != b).unwrap(),
                    ];
                    let f: Vec<Q> = defect_functional(&points, tri, m)
                        .iter()
                        .map(|x| -x)
                        .collect();
                    ineqs.push(to_quotient_functional(d, &f));
                }
            }
        }
    }
    Cone::from_halfspaces(points.len() - 3, &ineqs, &[])
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SecondaryCone {
    pub subdivision: RegularSubdivision,
    /// In quotient coordinates, see [`quotient`].
    pub cone: Cone,
}

/// The closed cone of heights whose subdivision is coarsened by or equal to
/// `s`: affine on each cell, folding upwards across interior walls, and
/// unused points on or above the hull.
pub fn secondary_cone(s: &RegularSubdivision) -> Result<SecondaryCone> {
    check_degree(s.d, 3)?;
    let pts = &s.points;
    let m = pts.len();
    let mut eqs = Vec::new();
    let mut ineqs = Vec::new();
    let mut tris = Vec::new();
    for c in &s.cells {
        if c.iter().any(|&i| i >= m) {
            return Err(Error::BadIndex("cell refers to a missing point".into()));
        }
        let cell_pts: Vec<Vec<Z>> = c.iter().map(|&i| pts[i].clone()).collect();
        if !spans_plane(&cell_pts) {
            return Err(Error::NotRegular);
        }
        let tri = affine_triangle(pts, c).expect("planar cell");
        for &x in c {
            if !tri.contains(&x) {
                eqs.push(to_quotient_functional(s.d, &defect_functional(pts, tri, x)));
            }
        }
        tris.push(tri);
    }
    for (i, a) in s.cells.iter().enumerate() {
        for (j, b) in s.cells.iter().enumerate() {
            if i == j {
                continue;
            }
            let ea: BTreeSet<(usize, usize)> = polygon_edges(pts, a)
                .into_iter()
                .map(|(x, y)| (x.min(y), x.max(y)))
                .collect();
            let shares = polygon_edges(pts, b)
                .into_iter()
                .any(|(x, y)| ea.contains(&(x.min(y), x.max(y))));
            if shares {
                for &y in b.iter().filter(|y| !a.contains(y)) {
                    ineqs.push(to_quotient_functional(
                        s.d,
                        &defect_functional(pts, tris[i], y),
                    ));
                }
            }
        }
    }
    let used: BTreeSet<usize> = s.cells.iter().flatten().copied().collect();
    for x in (0..m).filter(|x| !used.contains(x)) {
        let host = s
            .cells
            .iter()
            .position(|c| in_polygon(pts, c, &pts[x]))
            .ok_or(Error::NotRegular)?;
        ineqs.push(to_quotient_functional(
            s.d,
            &defect_functional(pts, tris[host], x),
        ));
    }
    // a valid subdivision admits no non-affine height that is both convex and concave on it
    let cone = Cone::from_halfspaces(m - 3, &ineqs, &eqs).map_err(|e| match e {
        Error::NotStronglyConvex => Error::NotRegular,
        e => e,
    })?;
    let probe = lift(s.d, &cone.interior_point());
    let induced = subdivision_from_heights(s.d, &probe)?;
    let norm = |cs: &[Vec<usize>]| -> BTreeSet<Vec<usize>> { cs.iter().cloned().collect() };
    if norm(&induced.cells) != norm(&s.cells) {
        return Err(Error::NotRegular);
    }
    Ok(SecondaryCone {
        subdivision: s.clone(),
        cone,
    })
}

fn in_polygon(pts: &[Vec<Z>], cell: &[usize], x: &[Z]) -> bool {
    let poly = convex_polygon(pts, cell);
    (0..poly.len()).all(|k| {
        let (a, b) = (&pts[poly[k]], &pts[poly[(k + 1) % poly.len()]]);
        !((&b[0] - &a[0]) * (&x[1] - &a[1]) - (&b[1] - &a[1]) * (&x[0] - &a[0])).is_negative()
    })
}

/// The min-plus polynomial `min_p (h_p + p·x)` over the lattice points.
pub fn polynomial(d: usize, h: &[Q]) -> TropicalPolynomial {
    TropicalPolynomial {
        ambient_dim: 2,
        terms: lattice_points(d)
            .into_iter()
            .zip(h.iter().cloned())
            .collect(),
    }
}

/// The balanced tropical curve dual to `s`, refined along the walls of the
/// fan of the projective plane. `h` must be interior to the secondary cone.
pub fn dual_curve(s: &RegularSubdivision, h: &[Q]) -> Result<WeightedOneComplex> {
    let sc = secondary_cone(s)?;
    if h.len() != s.points.len() {
        return Err(Error::BadIndex(format!(
            "{} heights for {} lattice points",
            h.len(),
            s.points.len()
        )));
    }
    if !sc.cone.contains_relint(&quotient(s.d, h)) {
        return Err(Error::NotInterior);
    }
    tropicalize_hypersurface(&polynomial(s.d, h), &projective_plane_fan())
}

/// Vertex positions of the dual curve: minus the slope of each cell.
pub fn dual_vertices(s: &RegularSubdivision, h: &[Q]) -> Vec<Vec<Q>> {
    lower_faces(&s.points, h)
        .into_iter()
        .map(|f| f.slope.iter().map(|x| -x).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct SecondaryFanReport {
    pub d: usize,
    pub support: Cone,
    pub cones: Vec<SecondaryCone>,
    /// The maximal cones subdivide the support.
    pub covers: bool,
    /// Pairwise intersections are common faces.
    pub is_fan: bool,
    pub all_triangulations: bool,
    pub all_unimodular: bool,
}

impl SecondaryFanReport {
    pub fn ok(&self) -> bool {
        self.covers && self.is_fan && self.all_triangulations && self.all_unimodular
    }
}

/// Maximal cones of the secondary fan on the fine cone `K`, found by
/// crossing walls from the honeycomb triangulation.
pub fn enumerate_secondary_fan(d: usize, budget: usize) -> Result<SecondaryFanReport> {
    check_degree(d, 2)?;
    let support = fine_cone(d)?;
    let start = secondary_cone(&subdivision_from_heights(d, &honeycomb_heights(d))?)?;
    let mut found: Vec<SecondaryCone> = vec![start];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(i) = queue.pop_front() {
        let c = found[i].cone.clone();
        for (facet, normal) in facets_with_normals(&c) {
            if support.inequalities().iter().any(|a| {
                facet
                    .rays()
                    .iter()
                    .all(|r| crate::arith::dot_z(a, r).is_zero())
            }) {
                continue;
            }
            let next = cross_wall(d, &facet, &normal)?;
            if !found.iter().any(|s| s.cone == next.cone) {
                if found.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                found.push(next);
                queue.push_back(found.len() - 1);
            }
        }
    }
    found.sort_by(|a, b| a.cone.cmp(&b.cone));
    let n = support.ambient_dim();
    let fan = ConeComplex::from_cones(n, found.iter().map(|s| s.cone.clone()).collect())?;
    let k = ConeComplex::from_cones(n, vec![support.clone()])?;
    let is_fan = fan.is_fan();
    let covers = is_subdivision(&fan, &k) == SubdivisionKind::Proper;
    let all_triangulations = found.iter().all(|s| s.subdivision.is_triangulation());
    let all_unimodular = found.iter().all(|s| s.subdivision.is_unimodular());
    Ok(SecondaryFanReport {
        d,
        support,
        cones: found,
        covers,
        is_fan,
        all_triangulations,
        all_unimodular,
    })
}

fn facets_with_normals(c: &Cone) -> Vec<(Cone, Vec<Z>)> {
    c.inequalities()
        .iter()
        .map(|a| {
            let on: Vec<Vec<Z>> = c
                .rays()
                .iter()
                .filter(|r| crate::arith::dot_z(a, r).is_zero())
                .cloned()
                .collect();
            (
                Cone::from_integer_generators(c.ambient_dim(), &on)
                    .expect("face of a pointed cone"),
                a.clone(),
            )
        })
        .collect()
}

/// The maximal cone on the far side of `facet`, whose inner normal is `normal`.
fn cross_wall(d: usize, facet: &Cone, normal: &[Z]) -> Result<SecondaryCone> {
    let p = facet.interior_point();
    let out = to_qvec(normal);
    let mut t = qf(1, 2);
    for _ in 0..64 {
        let x: Vec<Q> = p.iter().zip(&out).map(|(a, b)| a - &t * b).collect();
        let s = subdivision_from_heights(d, &lift(d, &x))?;
        if s.is_triangulation() {
            if let Ok(sc) = secondary_cone(&s) {
                if sc.cone.dim() == sc.cone.ambient_dim() && sc.cone.contains_cone(facet) {
                    return Ok(sc);
                }
            }
        }
        t /= q(2);
    }
    Err(Error::DegenerateInput(
        "no triangulation found across a wall".into(),
    ))
}
