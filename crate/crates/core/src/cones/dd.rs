//! Double description conversion for pointed polyhedral cones.
//!
//! The incremental algorithm starts from a simplicial cone cut out by a
//! maximal independent set of inequalities and adds the remaining
//! inequalities one at a time, combining adjacent pairs of rays on opposite
//! sides of each new hyperplane.

use num_traits::{Signed, Zero};

use crate::arith::{dot_z, primitive, primitive_z, Z};
use crate::error::{Error, Result};
use crate::linalg::{nullspace_z, rref, solve};

#[derive(Clone)]
struct Ray {
    v: Vec<Z>,
    zeros: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Extreme rays of `{y ∈ ℚ^m : rows · y ≥ 0}`, or `None` when that cone has
/// a non-trivial lineality space.
pub(crate) fn pointed_rays(rows: &[Vec<Z>], m: usize) -> Option<Vec<Vec<Z>>> {
    if m == 0 {
        return Some(Vec::new());
    }
    let qrows: Vec<Vec<_>> = rows.iter().map(|r| crate::arith::to_qvec(r)).collect();
    // greedy choice of m independent rows
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis: Vec<Vec<_>> = Vec::new();
    for (i, r) in qrows.iter().enumerate() {
        let mut trial = basis.clone();
        trial.push(r.clone());
        if rref(&trial, m).1.len() == trial.len() {
            basis = trial;
            chosen.push(i);
            if chosen.len() == m {
                break;
            }
        }
    }
    if chosen.len() < m {
        return None;
    }
    let words = rows.len().div_ceil(64).max(1);
    let mut rays: Vec<Ray> = Vec::new();
    for i in 0..m {
        let e: Vec<_> = (0..m)
            .map(|j| {
                if i == j {
                    crate::arith::q(1)
                } else {
                    crate::arith::q(0)
                }
            })
            .collect();
        let x = solve(&basis, &e, m).expect("invertible");
        let mut zeros = vec![0u64; words];
        for (j, &row) in chosen.iter().enumerate() {
            if j != i {
                bit_set(&mut zeros, row);
            }
        }
        rays.push(Ray {
            v: primitive(&x),
            zeros,
        });
    }
    for (ri, row) in rows.iter().enumerate() {
        if chosen.contains(&ri) {
            continue;
        }
        let vals: Vec<Z> = rays.iter().map(|r| dot_z(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for p in &pos {
            for n in &neg {
                let common = and(&rays[*p].zeros, &rays[*n].zeros);
                if popcount(&common) + 2 < m {
                    continue;
                }
                let blocked =
                    (0..rays.len()).any(|r| r != *p && r != *n && subset(&common, &rays[r].zeros));
                if blocked {
                    continue;
                }
                let v: Vec<Z> = rays[*n]
                    .v
                    .iter()
                    .zip(&rays[*p].v)
                    .map(|(nv, pv)| &vals[*p] * nv - &vals[*n] * pv)
                    .collect();
                let mut zeros = common;
                bit_set(&mut zeros, ri);
                next.push(Ray {
                    v: primitive_z(&v),
                    zeros,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::new();
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_zero() {
                bit_set(&mut r.zeros, ri);
                kept.push(r);
            } else if vals[i].is_positive() {
                kept.push(r);
            }
        }
        kept.extend(next);
        rays = kept;
    }
    let mut out: Vec<Vec<Z>> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Some(out)
}

/// Generating rays of the pointed cone `{x : eqs · x = 0, ineqs · x ≥ 0}`.
pub fn rays_from_halfspaces(
    ambient_dim: usize,
    ineqs: &[Vec<Z>],
    eqs: &[Vec<Z>],
) -> Result<Vec<Vec<Z>>> {
    let basis = nullspace_z(eqs, ambient_dim);
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let m = basis.len();
    let rows: Vec<Vec<Z>> = ineqs
        .iter()
        .map(|a| basis.iter().map(|b| dot_z(a, b)).collect())
        .collect();
    let ys = pointed_rays(&rows, m).ok_or(Error::NotStronglyConvex)?;
    let mut out: Vec<Vec<Z>> = ys
        .iter()
        .map(|y| {
            let x: Vec<Z> = (0..ambient_dim)
                .map(|i| {
                    basis
                        .iter()
                        .zip(y)
                        .fold(Z::zero(), |acc, (b, c)| acc + &b[i] * c)
                })
                .collect();
            primitive_z(&x)
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    #[test]
    fn square_pyramid() {
        // x ± y ≤ z, x ± ... : the cone over a square has four rays
        let ineqs = vec![
            zvec(&[1, 0, 1]),
            zvec(&[-1, 0, 1]),
            zvec(&[0, 1, 1]),
            zvec(&[0, -1, 1]),
        ];
        let rays = rays_from_halfspaces(3, &ineqs, &[]).unwrap();
        assert_eq!(
            rays,
            vec![
                zvec(&[-1, -1, 1]),
                zvec(&[-1, 1, 1]),
                zvec(&[1, -1, 1]),
                zvec(&[1, 1, 1])
            ]
        );
    }

    #[test]
    fn half_plane_is_not_pointed() {
        assert_eq!(
            rays_from_halfspaces(2, &[zvec(&[1, 0])], &[]),
            Err(Error::NotStronglyConvex)
        );
    }

    #[test]
    fn equations_restrict() {
        let rays = rays_from_halfspaces(
            3,
            &[zvec(&[1, 0, 0]), zvec(&[0, 1, 0])],
            &[zvec(&[0, 0, 1])],
        )
        .unwrap();
        assert_eq!(rays, vec![zvec(&[0, 1, 0]), zvec(&[1, 0, 0])]);
    }
}
