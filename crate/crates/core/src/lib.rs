//! Exact lattice computations for K3 surfaces with Jacobian elliptic
//! fibrations: Gram matrices, discriminant forms, overlattices, rational
//! quadratic form invariants, fibration numerics and embeddings into the K3
//! lattice. A registry of named checks ties them together.
//!
//! See `examples/` for one runnable walkthrough per capability.

pub mod claims;
pub mod ellsurf;
pub mod error;
pub mod exact;
pub mod glue;
pub mod k3embed;
pub mod lattice;
pub mod quadform;

pub use error::{Error, Result};
pub use exact::{IntMatrix, RatMatrix};
pub use lattice::{FiniteQuadraticForm, Lattice, RootKind};
