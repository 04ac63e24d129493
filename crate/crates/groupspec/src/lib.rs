//! Spectra of prime normal subgroups and prime Lie ideals, computed
//! exhaustively at desk scale.
//!
//! A group `H` equipped with an injective morphism from a base group `G`
//! carries a notion of prime normal subgroup; the set of primes is a
//! finite space with a Zariski-style topology whose closed sets are the
//! vanishing sets `V(I)`. This crate computes those spectra, the two
//! structure sheaves that are effectively decidable on the finite space
//! (quotient-valued and group-ring-valued sections), the analogous
//! spectra for Lie algebras over prime fields, and solution sets of word
//! equations over finite groups. A `verify` driver replays every
//! identity the constructions are expected to satisfy.
//!
//! Start with the runnable examples (`cargo run --example spectrum`) or
//! the `catalog` module for named constructors.

pub mod bitset;
pub mod caps;
pub mod error;
pub mod ggroup;
pub mod group;
pub mod group_ring;
pub mod lie;
pub mod morphism;
pub mod perm;
pub mod catalog;
pub mod equations;
pub mod io;
pub mod report;
pub mod sheaf;
pub mod spectrum;
pub mod subgroup;
pub mod topology;
pub mod verify;

pub use bitset::BitSet;
pub use caps::Caps;
pub use error::{Error, Result};
pub use ggroup::GGroup;
pub use group::FiniteGroup;
pub use morphism::Morphism;
pub use perm::Perm;
pub use spectrum::{PrimeIdeal, Spectrum};
pub use subgroup::Subgroup;
