//! Exact computations with irreducible representations of GL_n.
//!
//! Three independent constructions of V(λ) are provided and checked against
//! tableau combinatorics:
//!
//! * explicit gl_n modules, with V(λ) cut out of a tensor product of
//!   exterior powers as the cyclic module of its highest-weight tensor
//!   ([`glmodules`]);
//! * skew Howe duality on Λ^N(ℂⁿ ⊗ ℂᵐ), where the gl_m highest-weight
//!   vectors of weight λ carry V(λ^∨) ([`skewhowe`]);
//! * 𝔽_q point counts of n-step Springer fibres, whose leading coefficient
//!   counts top-dimensional components ([`springercount`]).
//!
//! [`lattice`] models the positive part of the affine Grassmannian as
//! X-stable subspaces of ℂ[z] ⊗ ℂⁿ. MV-cycle counts there are taken from
//! the character, never computed geometrically.

pub mod characters;
pub mod crossval;
pub mod error;
pub mod finite_field;
pub mod glmodules;
pub mod lattice;
pub mod limits;
pub mod linalg;
pub mod registry;
pub mod skewhowe;
pub mod springercount;
pub mod wedge;
pub mod weights;

pub use error::{Error, Result};
