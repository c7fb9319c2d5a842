//! Greedy generalized column subset selection.
//!
//! Given a source matrix `A` (m×n) and a target matrix `B` (m×r), the
//! selection engine picks `l` columns of `A` whose span best approximates
//! the columns of `B` in squared Frobenius norm. The hot path never forms
//! residual or Gram matrices; it maintains the per-column selection
//! criterion through rank-one updates in O(m(n+r)) work per iteration.
//!
//! The crate is split along the same seams as the problem:
//!
//! - [`matrix`] — dense column-major storage and the few kernels everything
//!   else is built from (column Gram products, Frobenius norms, top-k SVD).
//! - [`greedy`] — the fast selection engine and its evolving state.
//! - [`oracle`] — slow, direct implementations (explicit projections,
//!   naive greedy, exhaustive search) used as ground truth in tests and for
//!   the optional periodic refresh of the fast state.
//! - [`target`] — builders for the target matrix `B`: the source itself,
//!   a seeded random sketch, a random feature partition, a truncated SVD,
//!   or externally supplied signals.
//! - [`rng`] — the documented seeded generator behind every randomized
//!   target, so identical seeds reproduce identical matrices.

pub mod greedy;
pub mod matrix;
pub mod oracle;
pub mod rng;
pub mod target;

pub use greedy::{
    greedy_select, init_state, select_next, update_state, GreedyError, GreedyReport,
    IterationRecord, NextColumn, SelectionState, StopReason, ToleranceConfig,
};
pub use matrix::{
    cross_gram_column, frobenius_sq, gram_column, mat_transpose_mat, top_k_svd, DenseMatrix,
    MatrixError, SvdPair,
};
pub use oracle::{
    check_projection_decomposition, criterion, exhaustive_best, naive_greedy, projection_apply,
    solve_coefficients, OracleError,
};
pub use target::{build_target, TargetError, TargetSpec};
