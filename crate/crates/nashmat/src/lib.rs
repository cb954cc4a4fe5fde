//! Exact-arithmetic engine for numerical Nash conditions on intersection
//! matrices of resolution graphs.
//!
//! The central question: given a symmetric, negative-definite intersection
//! matrix `A` with negative diagonal and non-negative off-diagonal entries
//! (connected dual graph), and an ordered pair of indices `(i, j)`, does the
//! system
//!
//! ```text
//! x = (n_1, …, n_n),  n_k ≥ 1 integers,  n_i < n_j,  A·x ≤ C
//! ```
//!
//! admit a solution, where `C` is the canonical vector determined by the
//! genus data? All arithmetic is exact (arbitrary-precision rationals); there
//! is no floating point anywhere in this crate.
//!
//! Module map:
//!
//! - [`core_linalg`]: exact rationals, symmetric matrices, permutations,
//!   principal submatrices, determinants.
//! - [`intersection_model`]: the validated domain object (matrix + genus),
//!   canonical vector, dual graph, and the on-disk input format.
//! - [`gauss_contraction`]: Schur-complement contraction, negative
//!   definiteness via pivots, row-sum criteria.
//! - [`nash_engine`]: the pair decision procedure and the full verdict
//!   matrix.
//! - [`witness_oracle`]: independent integer witness search used to
//!   cross-validate engine verdicts.
//! - [`graph_structure`]: dual-graph classification and structural
//!   criteria (trees, cycles, stars, block decompositions) that must agree
//!   with the engine whenever they are conclusive.
//! - [`random`]: deterministic random instance generators for testing.

#![forbid(unsafe_code)]

pub mod core_linalg;
pub mod gauss_contraction;
pub mod graph_structure;
pub mod intersection_model;
pub mod nash_engine;
pub mod random;
pub mod witness_oracle;

pub use core_linalg::{
    exact_determinant, permute_principal, principal_submatrix, rational, rational_int,
    ExactRational, IndexPermutation, LinAlgError, SymMatrix,
};
pub use gauss_contraction::{
    contract_last, full_rowsum_criterion, gauss_sequence, is_negative_definite, row_sums,
    schur_onto, schur_onto_with_order, star_condition, star_condition_with_limit,
    ContractionError, GaussState, STAR_CONDITION_DEFAULT_LIMIT,
};
pub use graph_structure::{
    branch_continued_fraction, check_consistency, classify, cor_generalized_cycle,
    cor_polygon_minus2, nash_by_strict_components, quick_criteria, structural_verdicts,
    thm_cycle, thm_leaf_necessary, thm_like_star, thm_mixed, thm_polygon, thm_tree,
    ConsistencyError, CycleSubgraph, GraphClassification, StarShape, StructuralVerdict,
    StructureError, TheoremVerdict,
};
pub use intersection_model::{
    canonical_vector, dual_graph, parse_matrix_file, CanonicalVector, DualGraph, GenusVector,
    IntersectionMatrix, ModelError,
};
pub use nash_engine::{
    decide_pair, is_nash_matrix, nn_matrix, EngineError, NashVerdictMatrix, PairVerdict,
};
pub use random::{generate_boundary, generate_random};
pub use witness_oracle::{
    cross_validate, search_witness, verify_witness, CrossValidateReport, OracleError,
    PairOutcome, WitnessVector,
};
