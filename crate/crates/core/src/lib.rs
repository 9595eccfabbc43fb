//! Stanley–Reisner face rings of simplicial complexes: Betti tables by
//! Hochster's formula, Cohen–Macaulay and q-CM tests, CM-connectivity, and
//! exact checks of the multiplicity bounds `Π m_i / c! <= e <= Π M_i / c!`.

pub mod classify;
pub mod cm;
pub mod complex;
pub mod error;
pub mod exact;
pub mod field;
pub mod generators;
pub mod homology;
pub mod io;
mod linalg;
pub mod resolution;
pub mod verify;

pub use complex::{FVector, HVector, Label, SimplicialComplex, VertexSet};
pub use error::{Error, Result};
pub use exact::Exact;
pub use field::FieldSpec;
pub use homology::{BettiVector, InducedHomology};
pub use linalg::FieldMatrix;
pub use resolution::{BettiTable, ShiftSequences};
