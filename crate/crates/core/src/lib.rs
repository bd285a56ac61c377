//! Exact polyhedral and tropical computations: cone complexes, embedded
//! 1-complexes, tropical flat limits, expansions, moduli cones of graph
//! embeddings, and secondary fans of dilated triangles.

pub mod arith;
pub mod cones;
pub mod error;
pub mod expansion;
pub mod graphs;
pub mod hull;
pub mod io;
pub mod linalg;
pub mod moduli;
pub mod secondary;
pub mod troplim;

pub use error::{Error, Result};
