//! Topological analysis of argument texts.
//!
//! Words are replaced by GloVe vectors, the vector sequence is projected onto
//! a seeded random direction, the resulting series is delay-embedded, and the
//! Vietoris–Rips persistence of the point cloud is computed. Diagrams can be
//! compared with the bottleneck distance, serialized and plotted.

pub mod corpus;
pub mod diagram;
pub mod embeddings;
pub mod error;
pub mod persistence;
pub mod pipeline;
pub mod series;
pub mod takens;

pub use error::{Error, Result};
