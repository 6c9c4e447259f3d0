//! Exact stable homology of Smale spaces presented by fibered graphs.
//!
//! Arithmetic is exact over the integers. Limits are stationary systems of
//! finitely generated abelian groups, and every derived quantity is checked
//! against an identity before it is reported.

pub mod analysis;
pub mod complex;
pub mod document;
pub mod error;
pub mod fgab;
pub mod linalg;
pub mod sample;
pub mod stationary;
pub mod symbolic;

pub use analysis::{
    k_rank_report, kunneth, product_presentation, toral_homology, Collapse, SpectralRankReport,
};
pub use complex::{homology, DegreeHomology, HomologyReport, Provenance};
pub use document::{InputDocument, Mode, SCHEMA_VERSION};
pub use error::{
    AnalysisError, ComplexError, GroupError, GuardrailFailure, LinalgError, StationaryError,
    SymbolicError,
};
pub use fgab::{FgAbGroup, GroupMorphism, NormalForm};
pub use linalg::{kernel_basis, rank, smith_normal_form, IntMatrix, SmithForm};
pub use stationary::{krieger_dimension_group, StationaryInvariants, StationarySystem};
pub use symbolic::{FiberedPresentation, Graph, ViolationReport};
