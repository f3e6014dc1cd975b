//! Simplex faces of the 2x4 separable-state convex set and the PPT entangled
//! edge states obtained by extending segments past them.
//!
//! - [`linalg`]: small dense complex linear algebra.
//! - [`bipartite`]: product vectors, partial transpose, face membership.
//! - [`construction`]: the ten-solution subspace pair `(D, E)` and its checks.
//! - [`solver`]: numeric solver for `|x⊗y> ∈ D`, `|x̄⊗y> ∈ E`.
//! - [`path`]: the segment `rho_t` and its PPT boundary.

pub mod bipartite;
pub mod construction;
pub mod error;
pub mod linalg;
pub mod path;
pub mod solver;

pub use bipartite::{BipartiteState, Dims, ProductVector, StateType};
pub use construction::ConstructionParams;
pub use error::{Error, Result};
pub use linalg::{CVector, ComplexMatrix, Subspace, Tolerance};
pub use num_complex::Complex64;
