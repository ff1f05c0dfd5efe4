use thiserror::Error;

use crate::plan::{ConfigurationError, PebbleId, PlanError};
use crate::tree::{TreeError, Vertex};

/// Errors raised by the solvers.
///
/// `InternalStuck`, `DegenerateGeometry` and `ValidationFailed` never occur
/// on inputs that satisfy the hole-count assumption; they flag bugs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("not enough holes: {holes} available, {required} required")]
    InfeasibleAssumption { holes: usize, required: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("unknown pebble {0}")]
    UnknownPebble(PebbleId),
    #[error("vertex {0} is not part of the tree being solved")]
    VertexOutsideTree(Vertex),
    #[error("target vertex {0} is a trans-shipment vertex")]
    TargetIsTransShipment(Vertex),
    #[error("subtree vertices do not induce a connected subtree")]
    NotConnectedSubtree,
    #[error("gathering needs {needed} holes but only {available} are available")]
    NotEnoughHoles { needed: usize, available: usize },
    #[error("procedure A needs {needed} holes beyond the pebble, found {found}")]
    PreconditionHoleDeficit { needed: usize, found: usize },
    #[error("caterpillar construction failed: {0}")]
    DegenerateGeometry(String),
    #[error("solver got stuck: {0}")]
    InternalStuck(String),
    #[error("solver produced an invalid plan: {0}")]
    ValidationFailed(String),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Configuration(#[from] ConfigurationError),
}
