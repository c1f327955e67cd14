//! Exact-arithmetic workbench for free alternative algebras A(D) on D generators,
//! the Lie algebras ABG(A(D)) built from them, Chevalley-Eilenberg homology of the
//! positive part, sl3 character-ring machinery, and affine-A2 Weyl group tables.
//!
//! Everything is computed over the rationals with no floating point anywhere.

pub mod abg;
pub mod alt;
pub mod cache;
pub mod charring;
pub mod deriv;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod magma;
pub mod sl3;
pub mod weyl;

pub use abg::{AbgAlgebra, AbgElement, AbgKey, Slot};
pub use alt::{AlgElement, Algebra, AlgebraConfig, Component};
pub use charring::{CharSeries, SolveResult, SymLaurent};
pub use deriv::{BElement, BSpace};
pub use error::AbgError;
pub use homology::{HomologyComputer, HomologyReport};
pub use magma::Monomial;
pub use sl3::Mat3;
pub use weyl::{AffineWeight, GlRow, OrbitElement};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, AbgError>;
