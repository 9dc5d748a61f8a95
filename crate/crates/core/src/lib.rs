//! Graphical designs: weighted vertex subsets that integrate the leading
//! eigenvectors of the random-walk Laplacian `L = AD^-1 - I` exactly.
//!
//! The crate covers graph construction and a catalog of named graphs,
//! the spectrum and its frequency classes, design strength, exhaustive and
//! heuristic search, neighbourhood-growth lower bounds, and weighted designs
//! built from nonsingular minors of the eigenvector matrix.

pub mod bounds;
pub mod catalog;
pub mod design;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod search;
pub mod spectral;
pub mod weighted;

pub use error::{Error, Result};
