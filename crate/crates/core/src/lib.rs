//! Enumeration and identification of triple-crossing knot and link diagrams.
//!
//! The pipeline generates connected 4-valent spherical shadows, contracts
//! perfect matchings of their edges into 6-valent triple-crossing
//! projections, reduces those up to spherical isotopy, mirror images and
//! loop moves, labels the strands of every projection in all possible ways,
//! and identifies the resulting links through the two-variable Kauffman
//! polynomial of their classical expansions.

pub mod codes;
pub mod generate;
pub mod maps;
pub mod par;
pub mod perm;

pub use codes::{PdCode, SPdCode, StrandDecomposition};
pub use maps::{CanonicalForm, CombMap};

/// Stamped into catalog headers; bump to invalidate cached catalogs.
pub const GENERATOR_VERSION: &str = env!("CARGO_PKG_VERSION");
