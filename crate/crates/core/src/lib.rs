//! Exact computations with isotropic Schur roots of acyclic quivers: generic hom/ext,
//! exceptional sequences, σ-stability cones, the δ̄ pipeline and the braid action on
//! sequences of isotropic type.

pub mod analysis;
pub mod braid;
pub mod cone;
pub mod corpus;
pub mod error;
pub mod exceptional;
pub mod generic;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod position;
pub mod quiver;
pub mod stability;

pub use error::{Error, Result};
pub use quiver::{AffineTag, AffineType, DimVector, KClass, Quiver, RootCandidate};
