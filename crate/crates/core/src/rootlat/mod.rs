//! Root systems, Weyl combinatorics and lattices.

pub mod lattice;
pub mod prime;
pub mod system;
pub mod weyl;

pub use lattice::{hnf, quotient, smith_diagonal, special_lattices, FiniteQuotient, Lattice, LatticeError, SpecialLattices};
pub use prime::{IsoClass, PrimeError, PrimeSystem};
pub use system::{RootSystem, RootSystemError, DEFAULT_RANK_CAP};
pub use weyl::{beta_sequence, dominant_of, longest_word, rho_vectors, weight_orbit, weyl_elements, ReducedWord, WordError};
