//! Formula families, clause translations and a brute-force oracle.
//!
//! Edge variables `x(i,j,l)` read "vertex `i` precedes vertex `j`" (gadget
//! copy `l`), pointer bits `y(j,a)` encode a predecessor of `j` in binary with
//! code `v` naming vertex `v + 1`.

mod cnf;
mod families;
pub mod io;
mod oracle;
mod translate;

pub use cnf::{AxiomSystem, Clause, Cnf, Group, Literal};
pub use families::{
    code_vertex, cycle_var, gen_bop, gen_bop_lifted, gen_bop_lifted_diagonal, gen_cycle_tseitin, gen_lop, or_lift,
    or_lift_diagonal, pointer_differs, pointer_width, vertex_code,
};
pub use oracle::{common_zero, sat_axioms, sat_cnf, semantic_implies, SatResult, ORACLE_MAX_VARS};
pub use translate::{clause_to_poly, cnf_to_axioms};
