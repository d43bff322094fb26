//! Finite semigroups, inclusion identities over Cayley tables, and machinery
//! for checking the lattice of inclusion classes below
//! `I = [xyz <= {xywz, xqyz} ; xy = xyxy]` on enumerated universes.

pub mod catalog;
pub mod classes;
pub mod lattice;
pub mod satisfaction;
pub mod semigroup;
pub mod term;

pub use satisfaction::{find_violation, satisfies, satisfies_all, CompiledSystem, Violation};
pub use semigroup::{CanonicalMode, ChainTag, FiniteSemigroup, InflationSpec, SemigroupError};
pub use term::{parse_system, Inclusion, InclusionSystem, Substitution, TermError, Variable, Word};
