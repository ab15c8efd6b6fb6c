//! Finitely presented groups, their representations over `K(t)`, and the
//! induced action on the building.

mod abelian;
mod building;
mod presentation;
mod representation;
mod word;

pub use abelian::{abelianize, smith_invariants, AbelianGroup};
pub use building::{
    building_ball, fixed_vertex, link_of_standard, link_of_vertex, nontriviality_certificate, orbit_ball, subspaces,
    walk_words, FixedVertex, Nontriviality, OrbitEdge, OrbitGraph, OrbitNode, PoleCertificate,
};
pub use presentation::{GroupPresentation, WordDisplay};
pub use representation::{
    pullback, DeterminantCheck, GroupHom, RelatorCheck, Representation, VerificationReport,
};
pub use word::{reduced_words, Letter, Word};

use thiserror::Error;

use crate::field::FieldError;
use crate::lattice::LatticeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("generator index {index} out of range ({count} generators)")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("duplicate generator name '{0}'")]
    DuplicateGenerator(String),
    #[error("word parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("expected {expected} generator images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("image of '{generator}' has the wrong shape")]
    DimensionMismatch { generator: String },
    #[error("image of '{0}' is not invertible")]
    NotInvertible(String),
    #[error("determinant of '{0}' is not 1")]
    NotUnimodular(String),
    #[error("relator {relator} does not evaluate to the identity")]
    RelatorFailure { relator: String },
    #[error("presentation has no generators")]
    EmptyPresentation,
    #[error("representation and homomorphism refer to different presentations")]
    PresentationMismatch,
    #[error("link enumeration supports dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
