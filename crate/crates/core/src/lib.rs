//! Exact rational polyhedral computation.
//!
//! Fourier-Motzkin projection with provenance, Farkas certificates,
//! Weyl/Minkowski cone conversion, and the decomposition of a polyhedron
//! into a polytope plus a finitely generated cone. All arithmetic is exact.

pub mod cli_io;
pub mod conversion;
pub mod error;
pub mod exactlin;
pub mod farkas;
pub mod fourier_motzkin;
pub mod geometry;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Rational, Vector};
pub use farkas::FarkasOutcome;
pub use geometry::{HPolyhedron, HalfSpace, Polytope, Relation, VCone, VPolyhedron};
