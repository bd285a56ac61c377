//! Lower hulls of lifted planar point configurations.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::{q, zq, Q, Z};
use crate::linalg::solve;

/// A two-dimensional lower face: the points on it and the affine function
/// `h(e) = slope·e + offset` that it lies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerFace {
    pub points: Vec<usize>,
    pub slope: Vec<Q>,
    pub offset: Q,
}

fn cross(o: &[Z], a: &[Z], b: &[Z]) -> Z {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Whether the planar points are not all on one line.
pub fn spans_plane(pts: &[Vec<Z>]) -> bool {
    pts.iter().enumerate().any(|(i, a)| {
        pts.iter()
            .enumerate()
            .skip(i + 1)
            .any(|(j, b)| pts.iter().skip(j + 1).any(|c| !cross(a, b, c).is_zero()))
    })
}

/// Vertices of the convex hull of `pts[idx]`, counter-clockwise, starting
/// from the lexicographically smallest.
pub fn convex_polygon(pts: &[Vec<Z>], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
    order.dedup_by(|a, b| pts[*a] == pts[*b]);
    if order.len() < 3 {
        return order;
    }
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2
            && !cross(
                &pts[lower[lower.len() - 2]],
                &pts[lower[lower.len() - 1]],
                &pts[i],
            )
            .is_positive()
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2
            && !cross(
                &pts[upper[upper.len() - 2]],
                &pts[upper[upper.len() - 1]],
                &pts[i],
            )
            .is_positive()
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Boundary edges of the polygon spanned by `pts[idx]`, as ordered pairs of
/// consecutive hull vertices.
pub fn polygon_edges(pts: &[Vec<Z>], idx: &[usize]) -> Vec<(usize, usize)> {
    let poly = convex_polygon(pts, idx);
    (0..poly.len())
        .map(|i| (poly[i], poly[(i + 1) % poly.len()]))
        .collect()
}

/// The two-dimensional lower faces of the lifted configuration
/// `{(pts[i], h[i])}`, which must span the plane.
pub fn lower_faces(pts: &[Vec<Z>], h: &[Q]) -> Vec<LowerFace> {
    let n = pts.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if cross(&pts[i], &pts[j], &pts[k]).is_zero() {
                    continue;
                }
                let rows: Vec<Vec<Q>> = [i, j, k]
                    .iter()
                    .map(|&t| vec![zq(&pts[t][0]), zq(&pts[t][1]), q(1)])
                    .collect();
                let rhs: Vec<Q> = [i, j, k].iter().map(|&t| h[t].clone()).collect();
                let sol = solve(&rows, &rhs, 3).expect("non-collinear triple");
                let value =
                    |t: usize| &sol[0] * zq(&pts[t][0]) + &sol[1] * zq(&pts[t][1]) + &sol[2];
                if (0..n).any(|t| h[t] < value(t)) {
                    continue;
                }
                let on: Vec<usize> = (0..n).filter(|&t| h[t] == value(t)).collect();
                if seen.insert(on.clone()) {
                    out.push(LowerFace {
                        points: on,
                        slope: vec![sol[0].clone(), sol[1].clone()],
                        offset: sol[2].clone(),
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out
}

/// Lower breakpoints of points on a line: `params` are positions along the
/// line and `h` the heights. Returns the indices of the lower hull vertices
/// in increasing parameter order.
pub fn lower_chain(params: &[Q], h: &[Q]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..params.len()).collect();
    order.sort_by(|&a, &b| params[a].cmp(&params[b]).then(h[a].cmp(&h[b])));
    order.dedup_by(|a, b| params[*a] == params[*b]);
    let mut chain: Vec<usize> = Vec::new();
    for &i in &order {
        while chain.len() >= 2 {
            let (a, b) = (chain[chain.len() - 2], chain[chain.len() - 1]);
            // drop b if it is on or above the segment a–i
            let lhs = (&h[b] - &h[a]) * (&params[i] - &params[a]);
            let rhs = (&h[i] - &h[a]) * (&params[b] - &params[a]);
            if lhs >= rhs {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(i);
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    #[test]
    fn square_hull() {
        let pts = vec![
            zvec(&[0, 0]),
            zvec(&[1, 0]),
            zvec(&[1, 1]),
            zvec(&[0, 1]),
            zvec(&[1, 0]),
        ];
        assert_eq!(convex_polygon(&pts, &[0, 1, 2, 3]), vec![0, 1, 2, 3]);
        assert!(spans_plane(&pts));
        assert!(!spans_plane(&[zvec(&[0, 0]), zvec(&[1, 1]), zvec(&[2, 2])]));
    }

    #[test]
    fn flat_lift_has_one_face() {
        let pts = vec![zvec(&[0, 0]), zvec(&[1, 0]), zvec(&[0, 1]), zvec(&[1, 1])];
        let f = lower_faces(&pts, &[q(0), q(0), q(0), q(0)]);
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].points, vec![0, 1, 2, 3]);
        let g = lower_faces(&pts, &[q(0), q(0), q(0), q(1)]);
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn chain() {
        let p = vec![q(0), q(1), q(2)];
        assert_eq!(lower_chain(&p, &[q(0), q(0), q(0)]), vec![0, 2]);
        assert_eq!(lower_chain(&p, &[q(0), q(-1), q(0)]), vec![0, 1, 2]);
    }
}
