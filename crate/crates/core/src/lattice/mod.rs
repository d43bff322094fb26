//! Checks of the class equalities, the implications behind the lattice
//! argument, the lattice below `I` itself, and the non-variety witness.

mod explore;
mod hasse;
mod matrix;
mod probe;
mod prop32;
mod propositions;

pub use explore::{explore_cover_of_i, Candidate, ExploreReport};
pub use hasse::{
    derive_lattice, HasseDiagram, HasseNode, MergedGroup, DIAGRAM_NODES, SYMBOLIC_CONTAINMENTS,
};
pub use matrix::{build_matrix, MembershipMatrix};
pub use probe::{
    probe_metatheorems, probe_on_universe, probe_system, random_system, Counterexample,
    GeneratorParams, ImplicationCounter, ProbeReport, DEFAULT_SEED,
};
pub use prop32::{prop32_suite, words_up_to, Prop32Report, WITNESS_SYSTEM};
pub use propositions::{
    render_text, statements_for, verify_on_universe, verify_proposition, Discrepancy,
    PropositionReport, Statement, StatementReport, STATEMENTS,
};
