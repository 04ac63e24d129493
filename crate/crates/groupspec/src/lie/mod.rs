//! The Lie-algebra half: structure-constant algebras over a ground
//! field, echelon-form subspaces and ideal lattices, S-structures with
//! their zero divisors and prime ideals, spectra, induced maps, and the
//! comma-category sum and product constructions.

pub mod algebra;
pub mod field;
pub mod slie;
pub mod subspace;

pub use algebra::{LieAlgebra, LinearMap};
pub use field::{Field, PrimeField, Rationals};
pub use slie::{
    induced_map_lie, is_prime_lie, lie_product, lie_sum, quotient_structure_lie, spec_lie, v_lie,
    LieInducedMap, LieSpectrum, SLie,
};
pub use subspace::{enumerate_subspaces, Subspace};
