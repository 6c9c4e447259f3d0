//! Graphs, fibered presentations and their fiber powers.

pub mod faces;
pub mod fiber_power;
mod graph;
pub mod presentation;
pub mod sign_basis;

pub use faces::{face_column_contravariant, face_row_covariant};
pub use fiber_power::{fiber_power_graph, Array, FiberPowerGraph, Shape};
pub use graph::Graph;
pub use presentation::{
    validate_presentation, ClassLists, FiberedPresentation, Partition, Violation, ViolationKind,
    ViolationReport,
};
pub use sign_basis::{sign_basis, SignBasis};
