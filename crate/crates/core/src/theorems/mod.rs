//! Classifiers, rank formulas and discrimination tests, each reporting a
//! [`Verdict`] with machine-readable evidence.

mod classify;
mod lemmas;
mod rank;
mod residue;
mod verdict;

pub use classify::{
    classify_terminating, classify_trivial_residue, k8_times_e, order_pq_scan, order_pq_violations, K8Split,
};
pub use lemmas::{nontrivial_units, verify_lemma21, verify_lemma32, verify_lemma42};
pub use rank::{
    abelian_rank, cyclic_rank, is_abelian_cut, pq_rank_formula, prime_rank_formula, rank_gap_table, rank_verdict,
    RankReport,
};
pub use residue::{
    k_discriminated, kp_residue, kp_residue_with_bounds, lemma42_witness, p_height_subgroup, p_height_with_bounds,
};
pub use verdict::{Check, Verdict};
