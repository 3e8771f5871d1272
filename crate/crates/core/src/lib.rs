//! Rainbow numbers of the Schur equation `x1 + x2 = x3` on integer grids
//! `[m] x [n]` (component-wise addition) and on intervals `[n]`.
//!
//! The crate provides grid geometry, colorings, closed-form constructions,
//! an exact search engine with re-checkable certificates, and a structural
//! analyzer for rainbow-free colorings.

pub mod analysis;
pub mod certificate;
pub mod coloring;
pub mod constructions;
pub mod grid;
pub mod search;
pub mod space;
pub mod store;

pub use certificate::{Certificate, CertificateError, CertificateKind, ENGINE_VERSION};
pub use coloring::{is_rainbow, is_rainbow_free, Color, Coloring, ColoringError, SSequence};
pub use grid::{DiagonalIndex, GridDims, GridError, GridPoint, SolutionTriple};
pub use search::{CellOrder, RbOutcome, RbResult, RbStrategy, SearchBudget, SearchError};
pub use space::{SolutionIndex, Space};
pub use store::CertificateStore;
