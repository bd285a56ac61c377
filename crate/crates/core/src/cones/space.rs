use std::collections::{BTreeMap, BTreeSet};

use super::complex::{identity_matrix, ConeComplex, Regime};
use super::cone::Cone;
use crate::arith::{primitive_z, Z};
use crate::error::{Error, Result};
use crate::linalg::mat_vec_z;

/// A face morphism: the integral linear map `map` (parent ambient × child
/// ambient) carries the child cone isomorphically onto a face of the parent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Morphism {
    pub child: usize,
    pub parent: usize,
    pub map: Vec<Vec<Z>>,
}

/// Cones glued along face morphisms, where several morphisms between the
/// same pair of cones are allowed, together with automorphism data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeSpace {
    cones: Vec<Cone>,
    morphisms: Vec<Morphism>,
    automorphisms: Vec<Vec<Vec<Vec<Z>>>>,
}

impl ConeSpace {
    pub fn new(
        cones: Vec<Cone>,
        mut morphisms: Vec<Morphism>,
        automorphisms: Vec<Vec<Vec<Vec<Z>>>>,
    ) -> Result<ConeSpace> {
        if automorphisms.len() != cones.len() {
            return Err(Error::InvalidInput(
                "one automorphism list per cone is required".into(),
            ));
        }
        morphisms.sort();
        morphisms.dedup();
        let s = ConeSpace {
            cones,
            morphisms,
            automorphisms,
        };
        s.validate()?;
        Ok(s)
    }

    /// The cone space of an embedded complex: one inclusion per face.
    pub fn from_complex(c: &ConeComplex) -> ConeSpace {
        let id = identity_matrix(c.ambient_dim());
        let morphisms = c
            .face_maps()
            .into_iter()
            .map(|f| Morphism {
                child: f.child,
                parent: f.parent,
                map: id.clone(),
            })
            .collect();
        let automorphisms = c.cones().iter().map(|_| vec![id.clone()]).collect();
        ConeSpace {
            cones: c.cones().to_vec(),
            morphisms,
            automorphisms,
        }
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn automorphisms(&self, i: usize) -> &[Vec<Vec<Z>>] {
        &self.automorphisms[i]
    }

    /// Where each child ray goes, or `None` if `m` does not send rays to rays.
    pub fn ray_map(&self, m: &Morphism) -> Option<Vec<usize>> {
        let parent = &self.cones[m.parent];
        self.cones[m.child]
            .rays()
            .iter()
            .map(|r| {
                let img = primitive_z(&mat_vec_z(&m.map, r));
                parent.rays().iter().position(|x| *x == img)
            })
            .collect()
    }

    fn image_face(&self, m: &Morphism) -> Option<BTreeSet<usize>> {
        let rm = self.ray_map(m)?;
        let set: BTreeSet<usize> = rm.iter().copied().collect();
        if set.len() != rm.len() {
            return None;
        }
        let faces = self.cones[m.parent].face_ray_sets();
        let v: Vec<usize> = set.iter().copied().collect();
        faces.contains(&v).then_some(set)
    }

    fn compose(&self, f: &Morphism, g: &Morphism) -> Morphism {
        // g ∘ f where f: a → b and g: b → c
        let cols = f.map.first().map_or(0, Vec::len);
        let map = g
            .map
            .iter()
            .map(|row| {
                (0..cols)
                    .map(|j| {
                        row.iter()
                            .zip(&f.map)
                            .fold(Z::from(0), |acc, (x, fr)| acc + x * &fr[j])
                    })
                    .collect()
            })
            .collect();
        Morphism {
            child: f.child,
            parent: g.parent,
            map,
        }
    }

    /// Equality up to precomposition with an automorphism of the child.
    fn same_morphism(&self, a: &Morphism, b: &Morphism) -> bool {
        if a.child != b.child || a.parent != b.parent {
            return false;
        }
        let target = self.ray_map(b);
        if self.ray_map(a) == target {
            return true;
        }
        self.automorphisms[a.child].iter().any(|alpha| {
            let twisted = Morphism {
                child: a.child,
                parent: a.child,
                map: alpha.clone(),
            };
            self.ray_map(&self.compose(&twisted, a)) == target
        })
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.cones.len();
        let mut by_face: BTreeMap<(usize, Vec<usize>), Vec<&Morphism>> = BTreeMap::new();
        for m in &self.morphisms {
            if m.child >= n || m.parent >= n {
                return Err(Error::InvalidInput(
                    "morphism refers to a missing cone".into(),
                ));
            }
            let face = self.image_face(m).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "morphism {}→{} is not a face inclusion",
                    m.child, m.parent
                ))
            })?;
            if face.len() != self.cones[m.child].rays().len()
                || self.cones[m.child].dim()
                    != self.cones[m.parent]
                        .face(&face.iter().copied().collect::<Vec<_>>())
                        .dim()
            {
                return Err(Error::InvalidInput(format!(
                    "morphism {}→{} is not injective",
                    m.child, m.parent
                )));
            }
            by_face
                .entry((m.parent, face.into_iter().collect()))
                .or_default()
                .push(m);
        }
        for (i, c) in self.cones.iter().enumerate() {
            for f in c.face_ray_sets() {
                let hits = by_face.get(&(i, f.clone())).map_or(0, |v| {
                    let mut distinct: Vec<&Morphism> = Vec::new();
                    for m in v {
                        if !distinct.iter().any(|d| self.same_morphism(d, m)) {
                            distinct.push(m);
                        }
                    }
                    distinct.len()
                });
                if hits != 1 {
                    return Err(Error::InvalidInput(format!(
                        "face {f:?} of cone {i} is the image of {hits} face morphisms"
                    )));
                }
            }
        }
        for f in &self.morphisms {
            for g in self.morphisms.iter().filter(|g| g.child == f.parent) {
                let h = self.compose(f, g);
                if !self.morphisms.iter().any(|m| self.same_morphism(m, &h)) {
                    return Err(Error::InvalidInput(
                        "face morphisms are not closed under composition".into(),
                    ));
                }
            }
        }
        for (i, autos) in self.automorphisms.iter().enumerate() {
            for a in autos {
                let img = self.cones[i].image(a)?;
                if img.rays() != self.cones[i].rays() {
                    return Err(Error::InvalidInput(format!(
                        "automorphism of cone {i} moves the cone"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `SingleFace` when at most one morphism joins any two cones, which
    /// makes the space a cone complex.
    pub fn regime(&self) -> Regime {
        let mut pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for m in &self.morphisms {
            *pairs.entry((m.child, m.parent)).or_default() += 1;
        }
        if pairs.values().all(|&k| k <= 1) {
            Regime::SingleFace
        } else {
            Regime::UnionOfFaces
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::zvec;

    #[test]
    fn complex_is_a_cone_space() {
        let c = ConeComplex::from_rays(2, &[vec![vec![1, 0], vec![0, 1]]]).unwrap();
        let s = ConeSpace::from_complex(&c);
        s.validate().unwrap();
        assert_eq!(s.regime(), Regime::SingleFace);
    }

    #[test]
    fn folded_orthant() {
        // both rays of the orthant glued to one half-line
        let ray = Cone::from_integer_generators(1, &[zvec(&[1])]).unwrap();
        let quad = Cone::from_integer_generators(2, &[zvec(&[1, 0]), zvec(&[0, 1])]).unwrap();
        let z0 = Cone::zero(0);
        let cones = vec![z0, ray, quad];
        let m = |child, parent, map: Vec<Vec<i64>>| Morphism {
            child,
            parent,
            map: map.iter().map(|r| zvec(r)).collect(),
        };
        let morphisms = vec![
            m(0, 0, vec![]),
            m(0, 1, vec![vec![]]),
            m(0, 2, vec![vec![], vec![]]),
            m(1, 1, vec![vec![1]]),
            m(1, 2, vec![vec![1], vec![0]]),
            m(1, 2, vec![vec![0], vec![1]]),
            m(2, 2, vec![vec![1, 0], vec![0, 1]]),
        ];
        let autos = vec![
            vec![vec![]],
            vec![vec![zvec(&[1])]],
            vec![
                vec![zvec(&[1, 0]), zvec(&[0, 1])],
                vec![zvec(&[0, 1]), zvec(&[1, 0])],
            ],
        ];
        let s = ConeSpace::new(cones, morphisms, autos).unwrap();
        assert_eq!(s.regime(), Regime::UnionOfFaces);
    }

    #[test]
    fn missing_face_rejected() {
        let ray = Cone::from_integer_generators(1, &[zvec(&[1])]).unwrap();
        let morphisms = vec![Morphism {
            child: 0,
            parent: 0,
            map: vec![zvec(&[1])],
        }];
        assert!(ConeSpace::new(vec![ray], morphisms, vec![vec![]]).is_err());
    }
}
