//! Finite-dimensional ZX- and ZW-calculus.
//!
//! Diagrams of both calculi share one open-graph representation
//! ([`diagram::Diagram`]), are evaluated to dense tensors by
//! [`semantics::interpret`], rewritten with the axiom catalogs in [`rules`],
//! and translated into each other by [`translate`]. The [`verify`] module
//! turns all of this into seeded batch checks.

pub mod diagram;
pub mod phase;
pub mod rules;
pub mod semantics;
pub mod translate;
pub mod verify;

pub use diagram::{Calculus, Diagram, DiagramBuilder, DiagramError, NodeId, NodeKind};
pub use phase::PhaseVector;
pub use semantics::{interpret, tensor_equal, EqualityMode, EquivalenceVerdict, Tensor};

/// Default relative tolerance for semantic comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
