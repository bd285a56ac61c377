//! Dense exact linear algebra over the rationals and the integers.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{primitive, zq, Q, Z};

/// Reduced row echelon form. Returns the non-zero rows and their pivot columns.
pub fn rref(rows: &[Vec<Q>], ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Q>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_z(rows: &[Vec<Z>], ncols: usize) -> usize {
    let qs: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(zq).collect()).collect();
    rank(&qs, ncols)
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Integer (primitive) basis of the rational nullspace.
pub fn nullspace_z(rows: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let qs: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(zq).collect()).collect();
    nullspace(&qs, ncols).iter().map(|v| primitive(v)).collect()
}

/// Some solution of `a · x = b`, if one exists.
pub fn solve(a: &[Vec<Q>], b: &[Q], ncols: usize) -> Option<Vec<Q>> {
    let aug: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![Q::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            if !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

pub fn det_z(m: &[Vec<Z>]) -> Z {
    let qs: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(zq).collect()).collect();
    det(&qs).to_integer()
}

/// Row-style Hermite reduction: a basis of the integer lattice spanned by `rows`.
pub fn lattice_basis(rows: &[Vec<Z>], ncols: usize) -> Vec<Vec<Z>> {
    let mut m: Vec<Vec<Z>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut out = Vec::new();
    for c in 0..ncols {
        loop {
            let nz: Vec<usize> = (0..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
            let pivot = m[p].clone();
            for &i in &nz {
                if i != p {
                    let f = m[i][c].div_floor(&pivot[c]);
                    for (x, y) in m[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(p) = (0..m.len()).find(|&i| !m[i][c].is_zero()) {
            let mut row = m.remove(p);
            if row[c].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            out.push(row);
        }
        m.retain(|r| r.iter().any(|x| !x.is_zero()));
    }
    // reduce entries above pivots for a canonical form
    for i in 0..out.len() {
        let c = out[i].iter().position(|x| !x.is_zero()).unwrap();
        for j in 0..i {
            let f = out[j][c].div_floor(&out[i][c]);
            if !f.is_zero() {
                let pr = out[i].clone();
                for (x, y) in out[j].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// gcd of the maximal minors of a full-row-rank integer matrix: the index of
/// the lattice spanned by the rows inside its saturation.
pub fn saturation_index(basis: &[Vec<Z>], ncols: usize) -> Z {
    let k = basis.len();
    if k == 0 {
        return Z::one();
    }
    let mut g = Z::zero();
    for cols in combinations(ncols, k) {
        let minor: Vec<Vec<Z>> = basis
            .iter()
            .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        g = g.gcd(&det_z(&minor));
        if g.is_one() {
            break;
        }
    }
    g
}

/// Integer basis of `{c ∈ ℤ^k : m · c = 0}` for an integer matrix `m` with `k` columns.
pub fn integer_kernel(m: &[Vec<Z>], k: usize) -> Vec<Vec<Z>> {
    // column operations on m, tracked in u (k x k), so that m·u is column echelon.
    let mut a: Vec<Vec<Z>> = m.to_vec();
    let mut u: Vec<Vec<Z>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { Z::one() } else { Z::zero() })
                .collect()
        })
        .collect();
    let col_op = |a: &mut Vec<Vec<Z>>, u: &mut Vec<Vec<Z>>, dst: usize, src: usize, f: &Z| {
        for row in a.iter_mut() {
            let v = &row[src] * f;
            row[dst] -= v;
        }
        for row in u.iter_mut() {
            let v = &row[src] * f;
            row[dst] -= v;
        }
    };
    let swap = |a: &mut Vec<Vec<Z>>, u: &mut Vec<Vec<Z>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in u.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut next = 0;
    for r in 0..a.len() {
        if next >= k {
            break;
        }
        loop {
            let nz: Vec<usize> = (next..k).filter(|&j| !a[r][j].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap(&mut a, &mut u, next, j);
                    next += 1;
                }
                break;
            }
            let p = *nz.iter().min_by_key(|&&j| a[r][j].abs()).unwrap();
            for &j in &nz {
                if j != p {
                    let f = a[r][j].div_floor(&a[r][p]);
                    col_op(&mut a, &mut u, j, p, &f);
                }
            }
        }
    }
    (next..k)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// A unimodular integer matrix `u` with `u · v = e_0` for a primitive vector `v`.
pub fn unimodular_completion(v: &[Z]) -> Vec<Vec<Z>> {
    let n = v.len();
    let mut w = v.to_vec();
    let mut u: Vec<Vec<Z>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Z::one() } else { Z::zero() })
                .collect()
        })
        .collect();
    loop {
        let nz: Vec<usize> = (0..n).filter(|&i| !w[i].is_zero()).collect();
        if nz.len() <= 1 {
            break;
        }
        let p = *nz.iter().min_by_key(|&&i| w[i].abs()).unwrap();
        for &i in &nz {
            if i != p {
                let f = w[i].div_floor(&w[p]);
                w[i] = &w[i] - &f * &w[p];
                let pr = u[p].clone();
                for (x, y) in u[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    let p = w
        .iter()
        .position(|x| !x.is_zero())
        .expect("non-zero vector");
    assert!(w[p].abs().is_one(), "vector must be primitive");
    u.swap(0, p);
    if w[p].is_negative() {
        for x in u[0].iter_mut() {
            *x = -x.clone();
        }
    }
    u
}

pub fn mat_vec_z(m: &[Vec<Z>], v: &[Z]) -> Vec<Z> {
    m.iter().map(|r| crate::arith::dot_z(r, v)).collect()
}
