//! Finite Clifford semigroups and the pentagon solutions `s(a, b) = (ab, θ_a(b))`
//! on them: validation, classification, kernels and congruences,
//! constructions from representative maps and component families, and
//! exhaustive enumeration.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod clifford;
pub mod congruence;
pub mod constructions;
pub mod enumeration;
pub mod error;
pub mod fixtures;
pub mod identities;
pub mod io;
pub mod iso;
pub mod pentagon;
pub mod semigroup;

pub use clifford::{CliffordStructure, SemilatticeSpec};
pub use error::{Error, Result};
pub use pentagon::{check_axioms, classify, ClassificationFlags, Flag, Solution};
pub use semigroup::{FiniteSemigroup, Subset};
