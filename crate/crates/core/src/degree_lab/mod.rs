//! Residues, the operator `R` and exhaustive checks of the lemmas behind
//! the special-degree lower bound, at desk scale.

mod heavy;
mod lemmas;
mod oracle;
mod span;

pub use heavy::{
    demo_pipeline, heavy_term_selection, heavy_terms, selection_vertices, DemoConfig, DemoRound, HeavySelection,
};
pub use lemmas::{
    random_polynomial, terms_up_to, verify_rdrop, verify_rdrop2, verify_property_suite, verify_residue_properties, verify_rop_axioms,
    verify_rop_condition2, verify_rtech, LemmaReport,
};
pub use oracle::ResidueOracle;
pub use span::{residue, ClosureSpan, SpanBasis, CLOSURE_MAX_VARS, SPAN_MAX_VARS};
