//! Proof objects, checkers and proof measures.

pub mod io;
mod metrics;
mod pc;
mod random;
mod resolution;

pub use metrics::{
    base_vars, quadratic_degree, quadratic_set, quadratic_terms, special_degree, touched, QuadraticSet, TouchReport,
};
pub use pc::{check_pc, materialize, twin_axiom, PcProof, Report, Step};
pub use random::{random_axioms, random_derivation, random_derivation_with, DerivationShape};
pub use resolution::{check_resolution, resolution_clauses, ResReport, ResStep, ResolutionProof};
