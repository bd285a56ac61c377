//! Subdivisions of a cone that are invariant under a finite linear group and
//! contain a stable family of subcones as unions of cones.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::arith::{primitive_z, Z};
use crate::cones::{identity_matrix, Cone, ConeComplex};
use crate::error::{Error, Result};

use super::arrangement::maximal_cells;

const MAX_GROUP_ORDER: usize = 1024;

fn mat_mul(a: &[Vec<Z>], b: &[Vec<Z>]) -> Vec<Vec<Z>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(Z::from(0), |acc, (x, r)| acc + x * &r[j])
                })
                .collect()
        })
        .collect()
}

/// The group generated by `gens`, listed with the identity first.
pub fn generate_group(n: usize, gens: &[Vec<Vec<Z>>]) -> Result<Vec<Vec<Vec<Z>>>> {
    for g in gens {
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch(format!(
                "group elements must be {n}×{n}"
            )));
        }
    }
    let id = identity_matrix(n);
    let mut seen: BTreeSet<Vec<Vec<Z>>> = BTreeSet::from([id.clone()]);
    let mut order = vec![id];
    let mut i = 0;
    while i < order.len() {
        for g in gens {
            let h = mat_mul(g, &order[i]);
            if seen.insert(h.clone()) {
                if seen.len() > MAX_GROUP_ORDER {
                    return Err(Error::InvalidInput(
                        "the generated group is not finite or too large".into(),
                    ));
                }
                order.push(h);
            }
        }
        i += 1;
    }
    Ok(order)
}

fn transpose_apply(h: &[Z], m: &[Vec<Z>]) -> Vec<Z> {
    (0..h.len())
        .map(|j| {
            h.iter()
                .zip(m)
                .fold(Z::from(0), |acc, (x, row)| acc + x * &row[j])
        })
        .collect()
}

/// Primitive, with the first non-zero entry positive.
fn normalize(h: &[Z]) -> Vec<Z> {
    let p = primitive_z(h);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => p.iter().map(|y| -y).collect(),
        _ => p,
    }
}

/// A `group`-invariant subdivision of `c` in which every cone of `family` is
/// a union of cones: `c` is cut by the orbit under `group` of every
/// hyperplane bounding or containing a member of the family. The orbit is
/// stable, so the cells are permuted by the group.
pub fn equivariant_subdivision(
    c: &Cone,
    family: &[Cone],
    group: &[Vec<Vec<Z>>],
) -> Result<ConeComplex> {
    let n = c.ambient_dim();
    let group = generate_group(n, group)?;
    for g in &group {
        if c.image(g)?.rays() != c.rays() {
            return Err(Error::InvalidInput(
                "the group does not preserve the cone".into(),
            ));
        }
    }
    let fam: BTreeSet<Cone> = family.iter().cloned().map(Cone::without_lattice).collect();
    for f in &fam {
        if f.ambient_dim() != n {
            return Err(Error::AmbientMismatch(n, f.ambient_dim()));
        }
        if !c.contains_cone(f) {
            return Err(Error::InvalidInput(
                "a subcone is not contained in the cone".into(),
            ));
        }
        for g in &group {
            if !fam.contains(&f.image(g)?) {
                return Err(Error::NotStable);
            }
        }
    }
    let mut planes: BTreeSet<Vec<Z>> = BTreeSet::new();
    for f in &fam {
        for h in f.equations().iter().chain(f.inequalities()) {
            // h vanishes on g·x exactly when h·g vanishes on x
            planes.extend(group.iter().map(|g| normalize(&transpose_apply(h, g))));
        }
    }
    let planes: Vec<Vec<Z>> = planes.into_iter().collect();
    let (cells, _) = maximal_cells(&c.clone().without_lattice(), &planes, usize::MAX);
    ConeComplex::from_cones(n, cells)
}

/// Whether `k` is carried to itself by every element of `group`.
pub fn is_invariant(k: &ConeComplex, group: &[Vec<Vec<Z>>]) -> Result<bool> {
    for g in group {
        if k.image(g)?.cones() != k.cones() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;
    use crate::cones::{is_subdivision, is_union_of_cones, SubdivisionKind};

    fn orthant2() -> Cone {
        Cone::from_integer_generators(2, &[zvec(&[1, 0]), zvec(&[0, 1])]).unwrap()
    }

    fn swap() -> Vec<Vec<Z>> {
        vec![zvec(&[0, 1]), zvec(&[1, 0])]
    }

    fn ray(v: &[i64]) -> Cone {
        Cone::from_integer_generators(v.len(), &[zvec(v)]).unwrap()
    }

    #[test]
    fn trivial_group_gives_stellar() {
        let c = orthant2();
        let k = equivariant_subdivision(&c, &[ray(&[1, 2])], &[]).unwrap();
        let expected = ConeComplex::from_cones(2, vec![c.clone()])
            .unwrap()
            .stellar_subdivision(&zvec(&[1, 2]))
            .unwrap();
        assert_eq!(k.cones(), expected.cones());
    }

    #[test]
    fn swap_needs_stable_family() {
        let c = orthant2();
        assert!(matches!(
            equivariant_subdivision(&c, &[ray(&[1, 2])], &[swap()]),
            Err(Error::NotStable)
        ));
        let k = equivariant_subdivision(&c, &[ray(&[1, 2]), ray(&[2, 1])], &[swap()]).unwrap();
        assert!(k.ray_index(&zvec(&[1, 2])).is_some() && k.ray_index(&zvec(&[2, 1])).is_some());
        assert!(is_invariant(&k, &generate_group(2, &[swap()]).unwrap()).unwrap());
        let base = ConeComplex::from_cones(2, vec![c]).unwrap();
        assert_eq!(is_subdivision(&k, &base), SubdivisionKind::Proper);
    }

    #[test]
    fn two_dimensional_subcone_is_a_union() {
        let c = Cone::from_integer_generators(
            3,
            &[zvec(&[1, 0, 0]), zvec(&[0, 1, 0]), zvec(&[0, 0, 1])],
        )
        .unwrap();
        let f = Cone::from_integer_generators(3, &[zvec(&[1, 1, 0]), zvec(&[0, 1, 1])]).unwrap();
        let k = equivariant_subdivision(&c, std::slice::from_ref(&f), &[]).unwrap();
        assert!(is_union_of_cones(&f, &k));
        assert_eq!(
            is_subdivision(&k, &ConeComplex::from_cones(3, vec![c]).unwrap()),
            SubdivisionKind::Proper
        );
    }

    #[test]
    fn cyclic_group_order() {
        let rot = vec![zvec(&[0, 0, 1]), zvec(&[1, 0, 0]), zvec(&[0, 1, 0])];
        assert_eq!(generate_group(3, &[rot]).unwrap().len(), 3);
        let bad = vec![zvec(&[2, 0]), zvec(&[0, 1])];
        assert!(generate_group(2, &[bad]).is_err());
    }
}
