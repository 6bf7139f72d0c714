//! Graph constructions and continuous-time quantum walks.
//!
//! The crate is organized around one pipeline: build a graph (circulants,
//! joins, products), decompose its adjacency matrix, and interrogate the
//! walk `exp(-itA)` for perfect state transfer. Closed-form shortcuts for
//! the join-like constructions live in [`reductions`] and are always
//! checked against the brute-force engine in the test suites; PST search,
//! cone conditions, and periodicity certificates live in [`pst`].

pub mod circulant;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod pst;
pub mod reductions;
pub mod verify;
pub mod walk;

pub use circulant::{CirculantSpec, DivisorSet};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use operators::JoinLayout;
pub use pst::{PeriodicityCertificate, PstVerdict};
pub use reductions::JoinSpectralData;
pub use walk::{Amplitude, Spectrum};
