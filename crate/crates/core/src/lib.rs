//! Fermion-to-qubit stabilizer codes on the square lattice.
//!
//! Pauli operators on the edges of the square lattice, modulo translations,
//! form a module over the Laurent ring `F2[x, y, x^-1, y^-1]`. Pushing the
//! original bosonization (hopping operators `U1`, `U2`, flux `W`, vertex
//! stabilizer `G`) through a symplectic automorphism gives a new code with
//! the same logical algebra and, for well-chosen maps, a larger distance.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and multi-threaded drivers live in the companion `fermicode` crate.

#![no_std]

extern crate alloc;

pub mod codes;
pub mod distance;
pub mod error;
pub mod expr;
pub mod gf2;
pub mod laurent;
pub mod pauli;
pub mod search;
pub mod symplectic;
pub mod syndrome;
pub mod torus;

pub use codes::{CodeFamily, NnTerm, WeightStats};
pub use distance::{code_distance, DistanceResult, DistanceSearch, SearchLimits};
pub use error::Error;
pub use laurent::{LaurentPoly, Monomial};
pub use pauli::{base_code, BaseCode, EdgeKind, Pauli, PauliVec, Site};
pub use symplectic::SymplecticMap;
pub use syndrome::{in_stabilizer_group, is_logical, syndrome, Syndrome};
