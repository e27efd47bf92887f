//! Proof-to-proof transformations.

mod builder;
mod cluster;
mod qdeg;
mod restrict;
mod simulate;
mod split;

pub use builder::prune_to;
pub use cluster::{
    cluster_axioms, cluster_poly, cluster_proof, cluster_term, exact_retention, random_pairing, random_pairing_seeded,
    random_perfect_pairing, retains_all_pairs, retention_monte_carlo, ClusterMap, RetentionEstimate,
};
pub use qdeg::{axiom_multiplication_chain, qdeg_to_deg};
pub use restrict::{
    build_jcta, heavy_vertex_restriction, restrict_axioms, restrict_cnf, restrict_proof, RestrictedProof,
    Restriction,
};
pub use simulate::{empty_clause_poly, res_to_pcr};
pub use split::{quadratic_containment_check, split, split_line};
