//! Moduli of embedded 1-complexes: realization cones, image surjections,
//! equivariant subdivisions and cone-space fragments.

pub mod arrangement;
mod family;
mod fragment;
mod subdivision;
mod types;
mod xg;

use std::collections::BTreeMap;

use crate::cones::{Cone, ConeComplex};
use crate::error::{Error, Result};
use crate::graphs::CombinatorialOneComplex;

pub use family::{close_family, tropical_line, tropical_line_family};
pub use fragment::{
    assemble_fragment, highest_valence_vertex, permutation_action, realize_by_vertex,
    refine_fragments, ConeSpaceFragment, FragmentCone,
};
pub use subdivision::{equivariant_subdivision, generate_group, is_invariant};
pub use types::{automorphisms, canonical_type, is_isomorphic, isomorphisms, relabel};
pub use xg::{
    build_xg, check_surjection, image_surjection, pullback_matrix, realization_cone, ImageType,
    Step, Surjection, XGCone,
};

/// Cell budget for arrangement enumerations.
pub const DEFAULT_BUDGET: usize = 10_000;

/// One image type occurring on `𝕏_G`, with the closed subcone of
/// realizations factoring through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectionType {
    pub sample: ImageType,
    pub sub_cone: Cone,
    /// Whether the type occurs in the relative interior of `𝕏_G`.
    pub interior: bool,
}

impl SurjectionType {
    pub fn graph(&self) -> &CombinatorialOneComplex {
        self.sample.graph()
    }

    pub fn surjection(&self) -> &Surjection {
        &self.sample.surjection
    }
}

#[derive(Clone, Debug)]
pub struct SurjectionEnumeration {
    pub xg: XGCone,
    pub types: Vec<SurjectionType>,
    pub cells: usize,
    pub complete: bool,
}

impl SurjectionEnumeration {
    /// Fails with `BudgetExceeded` unless every cell was examined.
    pub fn certified(self) -> Result<SurjectionEnumeration> {
        if self.complete {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded(self.cells))
        }
    }

    pub fn interior_types(&self) -> impl Iterator<Item = &SurjectionType> {
        self.types.iter().filter(|t| t.interior)
    }
}

/// Every image type of realizations in `𝕏_G`, found by sampling each cell
/// of the degeneracy arrangement. Stops early, marking the result
/// incomplete, once more than `budget` cells arise.
pub fn enumerate_surjections(
    g: &CombinatorialOneComplex,
    sigma: &ConeComplex,
    budget: usize,
) -> Result<SurjectionEnumeration> {
    let xg = build_xg(g, sigma)?;
    let planes = arrangement::degeneracy_hyperplanes(&xg, sigma);
    let (cells, complete) = arrangement::all_cells(&xg.cone, &planes, budget);
    let mut found: BTreeMap<(CombinatorialOneComplex, Surjection), SurjectionType> =
        BTreeMap::new();
    for cell in &cells {
        let p = cell.interior_point();
        let it = image_surjection(&xg, &p, sigma)?;
        let interior = xg.cone.contains_relint(&p);
        let key = (it.image.graph.clone(), it.surjection.clone());
        if let Some(t) = found.get_mut(&key) {
            t.interior |= interior;
            continue;
        }
        let xh = realization_cone(&it.image.graph, sigma)?;
        let m = pullback_matrix(
            &it.surjection.vertex_map,
            xg.n,
            it.image.graph.vertices.len(),
        );
        let sub_cone = xh.cone.image(&m)?;
        found.insert(
            key,
            SurjectionType {
                sample: it,
                sub_cone,
                interior,
            },
        );
    }
    Ok(SurjectionEnumeration {
        xg,
        types: found.into_values().collect(),
        cells: cells.len(),
        complete,
    })
}

/// For each graph, the coarsest subdivision this crate builds that is
/// invariant under `Aut(G)` and has every image-type subcone as a union of
/// cones.
pub fn default_subdivisions(
    sigma: &ConeComplex,
    family: &[CombinatorialOneComplex],
) -> Result<Vec<ConeComplex>> {
    let n = sigma.ambient_dim();
    family
        .iter()
        .map(|g| {
            let en = enumerate_surjections(g, sigma, DEFAULT_BUDGET)?.certified()?;
            let subcones: Vec<Cone> = en.types.iter().map(|t| t.sub_cone.clone()).collect();
            let group: Vec<Vec<Vec<crate::arith::Z>>> = automorphisms(g)
                .iter()
                .map(|p| permutation_action(p, n))
                .collect();
            equivariant_subdivision(&en.xg.cone, &subcones, &group)
        })
        .collect()
}
