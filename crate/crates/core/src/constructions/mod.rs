//! Explicit refutations: resolution for the ordering principles and their
//! lifts, the simulated PCR upper bound, and a Fourier refutation of the
//! Tseitin cycle.

mod lift;
mod lop;
mod tseitin;

pub use lift::{lift_refutation, lifted_refutation, pcr_upper_bound};
pub use lop::{bop_resolution_refutation, bop_to_lop_derivation, lop_resolution_refutation, prefix_clause};
pub use tseitin::tseitin_fourier_refutation;
