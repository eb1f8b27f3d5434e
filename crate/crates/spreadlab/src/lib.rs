//! spreadlab: (p,q)-spreading dynamics on graphs.
//!
//! The crate provides the spreading closure engine (subsuming zero forcing,
//! k-forcing and r-neighbor bootstrap percolation), exact minimum
//! spreading-set solvers, the triangle-diamond decomposition of claw-free
//! cubic graphs, proof-derived polynomial set constructions, and a
//! prediction table that is cross-validated against the exact solver.

pub mod constructions;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod graph;
pub mod iso;
pub mod solver;
pub mod spreading;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use spreading::{Limit, SpreadParams};
