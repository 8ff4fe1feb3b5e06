//! Algebras of `m × m × m` cubic matrices whose product is parameterized by
//! an associative binary operation on `{1, .., m}`.
//!
//! * [`semigroup`]: operations, the `S_m` relabeling action, orbits,
//!   invariant subsets and squaring sequences.
//! * [`enumerate`]: census of all associative operations and its orbits.
//! * [`cubic`], [`linalg`], [`field`]: exact arithmetic on cubic and square
//!   matrices.
//! * [`structure`]: isomorphisms, characters, the accompanying algebra,
//!   zero divisors, subalgebras and ideals.
//! * [`suite`]: per-operation verification of the structural identities.
//! * [`format`]: text and JSON file formats.
//!
//! The Rust API is 0-based; every file format and `Display` impl is 1-based.

pub mod cubic;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod format;
pub mod linalg;
pub mod semigroup;
pub mod structure;
pub mod suite;

pub use cubic::{CubicMatrix, Triple};
pub use enumerate::{count_operations, enumerate_operations, orbit_census, CensusResult, Enumerator};
pub use error::{CubalError, Result};
pub use field::{Field, Fp, Rational};
pub use linalg::{Matrix, SquareMatrix};
pub use semigroup::{Operation, Permutation, SequenceClass, Subset, Symmetry};
