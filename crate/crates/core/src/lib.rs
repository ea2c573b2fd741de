//! Fusion rings, twists and auto-equivalence groups of the modular categories C(g,k)
//! for g of type A, B, C and G2.

pub mod autos;
pub mod error;
pub mod fusion;
pub mod group_structure;
pub mod groups;
pub mod lie;
pub mod modular;
pub mod phase;
pub mod poly;
pub mod scalar;
pub mod simple_current;
pub mod skein;
pub mod special;
pub mod theorem;

pub use error::{Result, WzwError};
pub use lie::{alcove, AlgebraSpec, Family, LieData, Weight};
pub use phase::{phase_combine, RationalPhase};
