//! Symmetric matrices with a prescribed off-diagonal zero pattern and
//! controlled eigenvalue multiplicities.
//!
//! The crate builds matrices in `S(G)` (real symmetric, `a_ij != 0` exactly on
//! the edges of `G`) whose spectra have large minimal multiplicity, verifies
//! them numerically, bounds `Mm(G)` from above, and searches small graphs
//! numerically as an independent check.

// `!(x > 0.0)` style checks are deliberate: NaN has to fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod constructors;
pub mod eiglab;
pub mod error;
pub mod graph;
pub mod searcher;
pub mod seed;

pub use eiglab::{Certificate, SpectrumSpec, SymMatrix};
pub use error::{MmError, Result};
pub use graph::{FamilyDescriptor, Graph};
