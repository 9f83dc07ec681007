//! Exact computations for a torsion-free lattice acting on a product of two
//! Bruhat-Tits trees over F2((z)), and for the resulting fake quadric.
//!
//! Layers, bottom up: [`base_fields`] (F2[x], F2(x), places, expansions),
//! [`quaternion`] (the algebra `[z, 1+z^3)`), [`embeddings`] (the two splitting
//! maps), [`bruhat_tits`] (trees and the product action), [`square_complex`]
//! (V4-structures and their square complexes), [`local_perm`] (local
//! permutation groups), [`presentations`] (words, Reidemeister-Schreier, Smith
//! normal form), [`verification`] (the finite certificates) and
//! [`invariants`] (Chern numbers and Albanese torsion).

pub mod base_fields;
pub mod bruhat_tits;
pub mod embeddings;
pub mod error;
pub mod invariants;
pub mod lattice;
pub mod local_perm;
pub mod presentations;
pub mod quaternion;
pub mod square_complex;
pub mod suite;
pub mod verification;

pub use error::Error;
