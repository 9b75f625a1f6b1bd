//! Geometric volume bounds and spanning tree entropy for biperiodic planar
//! lattice graphs.

pub mod catalog;
pub mod checker;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod hyperbolic;
pub mod invariants;
pub mod lattice_file;
pub mod map;
pub mod planar;
pub mod report;

pub use error::{Error, Result};
