//! Workbench for Ramsey–Turán style constructions: geometric graphs on
//! spheres, layered weighted graphs, symmetrization, and coloring censuses.

pub mod bitset;
pub mod census;
pub mod error;
pub mod formulas;
pub mod constructions;
pub mod graph;
pub mod io;
pub mod sphere;
pub mod symmetrize;
pub mod weighted;

pub use error::{Error, Result};
