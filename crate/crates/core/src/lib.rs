//! Bifix codes in Sturmian and episturmian factor sets.
//!
//! The crate covers factor sets of infinite words, invariant measures, the
//! calculus of parses, degree, kernel and derivation of bifix codes, their
//! automata, Stallings foldings of the generated subgroups, transition
//! monoids and periodicity checks.

pub mod automata;
pub mod codes;
pub mod error;
pub mod factors;
pub mod freegroup;
pub mod genspec;
mod graph;
pub mod io;
pub mod measures;
pub mod par;
pub mod periodicity;
pub mod scalar;
pub mod syntactic;
pub mod verify;
pub mod words;

pub use codes::CodeSet;
pub use error::{Error, Result};
pub use factors::FactorSet;
pub use words::{Alphabet, Generator, Substitution, Word};
