//! Scwols (small categories without loops), complexes of groups over them,
//! fundamental groups as presentations, group actions, quotients and
//! developments.

mod complex;
mod development;
mod finite_group;
mod isomorphism;
pub mod json;
mod scwol;

use thiserror::Error;
use tribranch_core::group::GroupError;

pub use complex::{CogReport, CogViolation, ComplexOfGroups, Element, LocalGroup};
pub use development::{
    check_developability, development, quotient_cog, ActionViolation, DevelopabilityReport, Development,
    GroupMorphism, MorphismViolation, ScwolAction,
};
pub use finite_group::{FiniteGroupTable, GroupTableError};
pub use isomorphism::{cog_isomorphic, ISOMORPHISM_VERTEX_CAP};
pub use scwol::{CellComplex, Composition, Edge, GraphView, Scwol, ScwolViolation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScwolError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("inconsistent incidence: {0}")]
    InconsistentIncidence(String),
    #[error("vertex {0} does not exist")]
    VertexOutOfRange(usize),
    #[error("scwol is not connected")]
    Disconnected,
    #[error("operation needs finite local groups")]
    NotFinite,
    #[error("not developable via the given morphism ({} violations)", .0.violations.len())]
    NotDevelopable(DevelopabilityReport),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("{vertices} vertices exceed the cap of {cap}")]
    SizeOverflow { vertices: usize, cap: usize },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Table(#[from] GroupTableError),
}
