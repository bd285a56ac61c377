#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tropex::arith::{primitive_z, qf, Q, Z};
use tropex::cones::{Cone, ConeComplex};
use tropex::graphs::{validate_embedded, CombinatorialOneComplex, Edge, EmbeddedOneComplex, Ray};
use tropex::troplim::{tropicalize_hypersurface, TropicalPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn p2() -> ConeComplex {
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

pub fn orthant(n: usize) -> ConeComplex {
    let rays: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    ConeComplex::from_rays(n, &[rays]).unwrap()
}

pub fn zv(v: &[i64]) -> Vec<Z> {
    v.iter().map(|&x| Z::from(x)).collect()
}

pub fn rational(r: &mut ChaCha8Rng, range: i64, max_den: i64) -> Q {
    qf(
        r.gen_range(-range * max_den..=range * max_den),
        r.gen_range(1..=max_den),
    )
}

/// A polynomial with Newton polygon `dΔ₂`: the three corners always appear.
pub fn random_polynomial(r: &mut ChaCha8Rng, d: i64) -> TropicalPolynomial {
    let mut terms = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            let corner = (i, j) == (0, 0) || (i, j) == (d, 0) || (i, j) == (0, d);
            if corner || r.gen_bool(0.5) {
                terms.push((zv(&[i, j]), rational(r, 4, 3)));
            }
        }
    }
    TropicalPolynomial {
        ambient_dim: 2,
        terms,
    }
}

/// A valid embedded complex in the plane fan: a tropicalized random curve.
pub fn random_curve(r: &mut ChaCha8Rng, max_degree: i64) -> EmbeddedOneComplex {
    let d = r.gen_range(1..=max_degree);
    tropicalize_hypersurface(&random_polynomial(r, d), &p2())
        .unwrap()
        .base
}

/// Inserts collinear vertices on a random edge or ray.
pub fn random_collinear_subdivision(
    r: &mut ChaCha8Rng,
    e: &EmbeddedOneComplex,
) -> EmbeddedOneComplex {
    let (ne, nr) = (e.graph.edges.len(), e.graph.rays.len());
    let k = r.gen_range(0..ne + nr);
    let count = r.gen_range(1..=2);
    if k < ne {
        let fr: Vec<Q> = (0..count).map(|_| qf(r.gen_range(1..8), 8)).collect();
        e.subdivide_edge(k, &fr)
    } else {
        let ds: Vec<Q> = (0..count)
            .map(|_| qf(r.gen_range(1..20), r.gen_range(1..5)))
            .collect();
        e.subdivide_ray(k - ne, &ds)
    }
}

/// Random vertices with rational positions, labelled by their minimal cones.
/// Denominators stay at most 10, so the least common multiple is at most 2520.
pub fn random_points(r: &mut ChaCha8Rng, sigma: &ConeComplex) -> EmbeddedOneComplex {
    let n = sigma.ambient_dim();
    let k = r.gen_range(1..=4);
    let mut e = EmbeddedOneComplex::empty();
    for _ in 0..k {
        let p: Vec<Q> = (0..n)
            .map(|_| qf(r.gen_range(-200..=200), r.gen_range(1..=10)))
            .collect();
        e.graph
            .vertices
            .push(sigma.minimal_cone_containing(&p).unwrap());
        e.positions.push(p);
    }
    e
}

fn label(sigma: &ConeComplex, p: &[Q]) -> usize {
    sigma.minimal_cone_containing(p).unwrap()
}

/// A small random tree in the positive orthant of `ℝ³` or the plane fan:
/// one to three vertices joined by edges, plus rays; `None` when the draw is
/// not a valid embedding.
pub fn random_small_graph(
    r: &mut ChaCha8Rng,
    sigma: &ConeComplex,
) -> Option<CombinatorialOneComplex> {
    let n = sigma.ambient_dim();
    let nv = r.gen_range(1..=3);
    let lo = if sigma.is_complete() { -3 } else { 0 };
    let pts: Vec<Vec<Q>> = (0..nv)
        .map(|_| (0..n).map(|_| qf(r.gen_range(lo..=3), 1)).collect())
        .collect();
    let mut e = EmbeddedOneComplex::empty();
    for p in &pts {
        e.graph.vertices.push(label(sigma, p));
        e.positions.push(p.clone());
    }
    for v in 1..nv {
        let w = r.gen_range(0..v);
        let delta: Vec<Z> = pts[v]
            .iter()
            .zip(&pts[w])
            .map(|(a, b)| (a - b).to_integer())
            .collect();
        if delta.iter().all(|x| *x == Z::from(0)) {
            return None;
        }
        let mid: Vec<Q> = pts[v]
            .iter()
            .zip(&pts[w])
            .map(|(a, b)| (a + b) / qf(2, 1))
            .collect();
        e.graph.edges.push(Edge {
            ends: (w, v),
            cone: label(sigma, &mid),
            dir: primitive_z(&delta),
        });
    }
    let rays: Vec<Vec<Z>> = sigma.rays();
    for _ in 0..r.gen_range(0..=2) {
        let base = r.gen_range(0..nv);
        let dir = rays[r.gen_range(0..rays.len())].clone();
        let far: Vec<Q> = pts[base]
            .iter()
            .zip(&dir)
            .map(|(a, d)| a + Q::from_integer(d * Z::from(1000)))
            .collect();
        e.graph.rays.push(Ray {
            base,
            cone: label(sigma, &far),
            dir,
        });
    }
    validate_embedded(&e, sigma).is_empty().then_some(e.graph)
}

/// A random complete fan: the plane fan stellarly subdivided.
pub fn random_plane_fan(r: &mut ChaCha8Rng) -> ConeComplex {
    let mut k = p2();
    for _ in 0..r.gen_range(1..=3) {
        let v = zv(&[r.gen_range(-4..=4), r.gen_range(-4..=4)]);
        if v.iter().all(|x| *x == Z::from(0)) {
            continue;
        }
        let v = primitive_z(&v);
        if k.ray_index(&v).is_none() {
            k = k.stellar_subdivision(&v).unwrap();
        }
    }
    k
}

/// A random refinement of the positive orthant of `ℝ³`.
pub fn random_orthant_fan(r: &mut ChaCha8Rng) -> ConeComplex {
    let mut k = orthant(3);
    for _ in 0..r.gen_range(1..=3) {
        let v = primitive_z(&zv(&[
            r.gen_range(1..=4),
            r.gen_range(0..=4),
            r.gen_range(0..=4),
        ]));
        if k.ray_index(&v).is_none() {
            k = k.stellar_subdivision(&v).unwrap();
        }
    }
    k
}

pub fn random_subcone(r: &mut ChaCha8Rng, n: usize) -> Cone {
    let k = r.gen_range(1..=2);
    let gens: Vec<Vec<Z>> = (0..k)
        .map(|_| (0..n).map(|_| Z::from(r.gen_range(0..=3))).collect())
        .filter(|g: &Vec<Z>| g.iter().any(|x| *x != Z::from(0)))
        .collect();
    if gens.is_empty() {
        return Cone::from_integer_generators(n, &[zv(&vec![1; n])]).unwrap();
    }
    Cone::from_integer_generators(n, &gens).unwrap()
}
