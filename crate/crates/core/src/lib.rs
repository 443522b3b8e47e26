//! Membership oracles for the Bieri–Neumann–Strebel invariant Σ¹ of
//! right-angled Artin groups, pure braid groups and pure loop braid groups,
//! together with the certificates they feed: virtual non-splitting of
//! RAAGs over ℤ^k, commensurability invariants from separating cliques, and
//! the F₂ witness pairs behind the (loop) braid group obstructions.
//!
//! Everything is exact: characters are rational vectors, lattices are kept
//! in Hermite normal form over arbitrary-precision integers.

pub mod braid;
pub mod character;
pub mod cli;
mod error;
pub mod graph;
pub mod linalg;
pub mod loop_braid;
pub mod projection;
pub mod raag;
pub mod text;
pub mod words;

pub use character::{Basis, Character, SaturatedLattice, VectorCharacter};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use linalg::{Rational, Subspace};
pub use words::{F2ZElement, Letter, Word};
