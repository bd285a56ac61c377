//! Closed families of combinatorial types.

use std::collections::BTreeSet;

use crate::arith::{q, Q, Z};
use crate::cones::ConeComplex;
use crate::error::Result;
use crate::graphs::CombinatorialOneComplex;
use crate::troplim::{tropicalize_hypersurface, TropicalPolynomial};

use super::types::canonical_type;
use super::{enumerate_surjections, DEFAULT_BUDGET};

/// The smallest family containing `seeds` and closed under image types,
/// one representative per isomorphism class, in canonical order.
pub fn close_family(
    seeds: &[CombinatorialOneComplex],
    sigma: &ConeComplex,
) -> Result<Vec<CombinatorialOneComplex>> {
    let mut seen: BTreeSet<CombinatorialOneComplex> = BTreeSet::new();
    let mut queue: Vec<CombinatorialOneComplex> = Vec::new();
    for s in seeds {
        let c = canonical_type(s).0;
        if seen.insert(c.clone()) {
            queue.push(c);
        }
    }
    while let Some(g) = queue.pop() {
        for t in enumerate_surjections(&g, sigma, DEFAULT_BUDGET)?
            .certified()?
            .types
        {
            let c = canonical_type(t.graph()).0;
            if seen.insert(c.clone()) {
                queue.push(c);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// `min(0, x − a, y − b)`: the tropical line with vertex `(a, b)`.
pub fn tropical_line(a: Q, b: Q) -> TropicalPolynomial {
    let e = |x: i64, y: i64| vec![Z::from(x), Z::from(y)];
    TropicalPolynomial {
        ambient_dim: 2,
        terms: vec![(e(0, 0), q(0)), (e(1, 0), -a), (e(0, 1), -b)],
    }
}

/// Types of tropical lines in a planar fan, seeded by vertices on the
/// integer grid `[-r, r]²` and closed under image types.
pub fn tropical_line_family(sigma: &ConeComplex, r: i64) -> Result<Vec<CombinatorialOneComplex>> {
    let mut seeds = Vec::new();
    for a in -r..=r {
        for b in -r..=r {
            seeds.push(
                tropicalize_hypersurface(&tropical_line(q(a), q(b)), sigma)?
                    .base
                    .graph,
            );
        }
    }
    close_family(&seeds, sigma)
}
