//! Schur-complement contraction of symmetric matrices and the derived
//! criteria: negative definiteness via pivots, row-sum tests, and the
//! subset ("star") condition ladder.
//!
//! Contracting away index `v` with pivot `a_vv ≠ 0` replaces the matrix by
//! the Schur complement on the remaining indices:
//!
//! ```text
//! a'_ij = a_ij − a_vi · a_vj / a_vv
//! ```
//!
//! The result does not depend on the order in which indices are eliminated,
//! which is checked by property tests and exposed directly through
//! [`schur_onto_with_order`].

use crate::core_linalg::{
    principal_submatrix, validate_selection, ExactRational, LinAlgError, SymMatrix,
};
use itertools::Itertools;
use num::{Signed, Zero};
use thiserror::Error;

/// Largest dimension [`star_condition`] will enumerate subsets for by
/// default; the enumeration is exponential in the dimension.
pub const STAR_CONDITION_DEFAULT_LIMIT: usize = 24;

/// Errors from contraction and the criteria built on it.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContractionError {
    /// Contraction needs at least a 2×2 matrix.
    #[error("cannot contract a 1×1 matrix")]
    TooSmall,
    /// The eliminated index has a zero diagonal entry.
    #[error("zero pivot at index {} during contraction", .index + 1)]
    ZeroPivot { index: usize },
    /// The subset level is outside `1..=n-1`.
    #[error("level {l} outside the valid range 1..={max}")]
    BadLevel { l: usize, max: usize },
    /// The dimension exceeds the configured subset-enumeration limit.
    #[error("dimension {n} exceeds the subset-enumeration limit {max}")]
    DimensionLimit { n: usize, max: usize },
    /// The elimination order is not a permutation of the complement of the
    /// kept set.
    #[error("elimination order must list exactly the indices outside the kept set, once each")]
    BadEliminationOrder,
    /// An invalid index selection.
    #[error(transparent)]
    Selection(#[from] LinAlgError),
}

/// Contracts away index `v` (0-based) of the current matrix.
fn contract_index(a: &SymMatrix, v: usize) -> Result<SymMatrix, ContractionError> {
    let n = a.n();
    debug_assert!(v < n && n >= 2);
    let pivot = a.at(v, v);
    if pivot.is_zero() {
        return Err(ContractionError::ZeroPivot { index: v });
    }
    let keep: Vec<usize> = (0..n).filter(|&k| k != v).collect();
    let rows: Vec<Vec<ExactRational>> = keep
        .iter()
        .map(|&i| {
            keep.iter()
                .map(|&j| a.at(i, j) - &(&(a.at(v, i) * a.at(v, j)) / pivot))
                .collect()
        })
        .collect();
    Ok(SymMatrix::from_rows(rows).expect("contraction preserves symmetry"))
}

/// Contracts away the last index; the result keeps indices `0..n-1` in order.
pub fn contract_last(a: &SymMatrix) -> Result<SymMatrix, ContractionError> {
    if a.n() < 2 {
        return Err(ContractionError::TooSmall);
    }
    contract_index(a, a.n() - 1)
}

/// Schur complement onto `keep`: eliminates every index outside `keep` and
/// returns the contracted matrix with rows/columns in the order of `keep`.
pub fn schur_onto(a: &SymMatrix, keep: &[usize]) -> Result<SymMatrix, ContractionError> {
    let elim: Vec<usize> = (0..a.n()).filter(|k| !keep.contains(k)).collect();
    schur_onto_with_order(a, keep, &elim)
}

/// Like [`schur_onto`], but eliminates in the order given. `elimination_order`
/// must list exactly the indices outside `keep`, once each. The result is
/// independent of the order; exposing it lets tests verify that directly.
pub fn schur_onto_with_order(
    a: &SymMatrix,
    keep: &[usize],
    elimination_order: &[usize],
) -> Result<SymMatrix, ContractionError> {
    let n = a.n();
    validate_selection(keep, n)?;
    let mut in_keep = vec![false; n];
    for &k in keep {
        in_keep[k] = true;
    }
    if elimination_order.len() != n - keep.len() {
        return Err(ContractionError::BadEliminationOrder);
    }
    let mut seen = vec![false; n];
    for &e in elimination_order {
        if e >= n || in_keep[e] || seen[e] {
            return Err(ContractionError::BadEliminationOrder);
        }
        seen[e] = true;
    }

    let mut cur = a.clone();
    // orig[k] = original index of the current matrix's index k.
    let mut orig: Vec<usize> = (0..n).collect();
    for &e in elimination_order {
        let pos = orig
            .iter()
            .position(|&o| o == e)
            .expect("eliminated index still present");
        cur = contract_index(&cur, pos).map_err(|err| match err {
            ContractionError::ZeroPivot { index } => ContractionError::ZeroPivot {
                index: orig[index],
            },
            other => other,
        })?;
        orig.remove(pos);
    }
    let positions: Vec<usize> = keep
        .iter()
        .map(|&k| {
            orig.iter()
                .position(|&o| o == k)
                .expect("kept index still present")
        })
        .collect();
    Ok(principal_submatrix(&cur, &positions).expect("positions form a valid selection"))
}

/// Runs the last-index pivot chain. On success returns the pivots in
/// elimination order (indices `n-1` down to `0`); on failure returns the
/// 0-based index whose pivot was `≥ 0`.
///
/// A symmetric matrix is negative definite iff every pivot is negative, so
/// this is both the definiteness test and the diagnostic for its failure.
pub fn negative_definite_pivots(a: &SymMatrix) -> Result<Vec<ExactRational>, usize> {
    let mut cur = a.clone();
    let mut pivots = Vec::with_capacity(a.n());
    loop {
        let k = cur.n() - 1;
        let pivot = cur.at(k, k).clone();
        if !pivot.is_negative() {
            // Eliminating the last index keeps the remaining indices aligned
            // with the original ones, so `k` is an original index.
            return Err(k);
        }
        pivots.push(pivot);
        if k == 0 {
            return Ok(pivots);
        }
        cur = contract_index(&cur, k).expect("negative pivot is nonzero");
    }
}

/// Whether `a` is negative definite (all contraction pivots negative).
pub fn is_negative_definite(a: &SymMatrix) -> bool {
    negative_definite_pivots(a).is_ok()
}

/// All row sums of `a`.
pub fn row_sums(a: &SymMatrix) -> Vec<ExactRational> {
    (0..a.n()).map(|i| a.row_sum(i)).collect()
}

/// Whether every row sum of `a` is strictly negative.
pub fn full_rowsum_criterion(a: &SymMatrix) -> bool {
    (0..a.n()).all(|i| a.row_sum(i).is_negative())
}

/// The level-`l` subset condition with the default dimension limit
/// ([`STAR_CONDITION_DEFAULT_LIMIT`]): for every subset `S` of `l + 1`
/// indices, every row sum of the Schur complement onto `S` is strictly
/// negative.
///
/// The conditions form a ladder: level `l` implies level `l − 1`, and the
/// level-1 condition is equivalent to every ordered pair condition holding
/// at once.
pub fn star_condition(a: &SymMatrix, l: usize) -> Result<bool, ContractionError> {
    star_condition_with_limit(a, l, STAR_CONDITION_DEFAULT_LIMIT)
}

/// [`star_condition`] with an explicit dimension limit.
pub fn star_condition_with_limit(
    a: &SymMatrix,
    l: usize,
    max_n: usize,
) -> Result<bool, ContractionError> {
    let n = a.n();
    if n > max_n {
        return Err(ContractionError::DimensionLimit { n, max: max_n });
    }
    if l < 1 || l >= n {
        return Err(ContractionError::BadLevel {
            l,
            max: n.saturating_sub(1),
        });
    }
    for subset in (0..n).combinations(l + 1) {
        let b = schur_onto(a, &subset)?;
        if (0..b.n()).any(|i| !b.row_sum(i).is_negative()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step of the contraction sequence: the matrix at a given level
/// together with its row sums.
#[derive(Debug, Clone)]
pub struct GaussState {
    /// Dimension of `matrix`.
    pub level: usize,
    /// The contracted matrix at this level.
    pub matrix: SymMatrix,
    /// Row sums of `matrix`.
    pub rowsums: Vec<ExactRational>,
}

/// The full last-index contraction sequence, from the input matrix (level
/// `n`) down to level 2 (or the input itself if `n < 2`).
pub fn gauss_sequence(a: &SymMatrix) -> Result<Vec<GaussState>, ContractionError> {
    let mut out = Vec::new();
    let mut cur = a.clone();
    loop {
        out.push(GaussState {
            level: cur.n(),
            matrix: cur.clone(),
            rowsums: row_sums(&cur),
        });
        if cur.n() <= 2 {
            return Ok(out);
        }
        cur = contract_last(&cur)?;
    }
}
