//! Bipartite `d ⊗ d` operators that are invariant under local diagonal
//! unitary (LDUI), conjugate local diagonal unitary (CLDUI) or local diagonal
//! orthogonal (LDOI) conjugation.
//!
//! Every such operator is described by a [`MatrixTriple`] `(A, B, C)` of
//! `d × d` complex matrices sharing a common diagonal:
//!
//! ```text
//! X = Σ_{i,j} A_ij |ij⟩⟨ij| + Σ_{i≠j} B_ij |ii⟩⟨jj| + Σ_{i≠j} C_ij |ij⟩⟨ji|
//! ```
//!
//! The crate works in triple coordinates wherever possible and keeps a dense
//! `d² × d²` path ([`embed`]) around as an independent oracle.
//!
//! Module map:
//!
//! - [`triples`]: the data model, validity rules, the matrix product `·`,
//!   the DOC composition `∘` and the four symmetry involutions.
//! - [`embed`]: conversion to and from dense operators, block decomposition,
//!   dense realignment and partial transposition.
//! - [`unitary`]: unitarity characterization and Haar sampling of each class.
//! - [`special`]: dual / PT / perfect unitarity and the dual constructor families.
//! - [`schmidt`]: operator Schmidt rank and coefficients, and constructors
//!   realizing every rank `1..=d²` with real orthogonal triples.
//! - [`entangle`]: operator entanglement, entangling power, gate typicality.
//! - [`hadamardness`]: the Hadamardness functional on sign matrices and the
//!   exhaustive dephased search.
//! - [`discriminate`]: spectral arcs, copy counts and local numerical range sampling.

pub mod discriminate;
pub mod embed;
pub mod entangle;
mod error;
pub mod hadamardness;
pub mod io;
pub mod linalg;
pub mod par;
pub mod schmidt;
pub mod special;
pub mod triples;
pub mod unitary;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

pub use embed::{BlockDecomposition, DenseOperator};
pub use triples::{InvarianceClass, MatrixTriple, Symmetry};
pub use unitary::Field;

/// Dense complex matrix used for the `d × d` factors and for dense operators.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Absolute per-entry tolerance for diagonal-equality and pattern checks.
pub const EPS_EQ: f64 = 1e-10;

/// Absolute Frobenius tolerance for unitarity defects.
pub const EPS_U: f64 = 1e-9;
