//! The pair decision procedure and the full verdict matrix.
//!
//! For an ordered pair `(i, j)`, contract the matrix onto `{i, j}` and look
//! at the row of `i` in the resulting 2×2 Schur complement `B`: the pair
//! condition holds iff `B[0][0] + B[0][1] < 0` (strictly). Equality means
//! the condition fails.
//!
//! The criterion reads only the intersection matrix. For genus data with
//! positive entries the canonical vector stays entrywise non-positive, which
//! is exactly what the reduction needs, so the verdict is unchanged; callers
//! that want independent confirmation on such inputs can cross-check with
//! [`crate::witness_oracle`].

use crate::gauss_contraction::{schur_onto, ContractionError};
use crate::intersection_model::IntersectionMatrix;
use num::Signed;
use std::fmt;
use thiserror::Error;

/// Errors from the pair decision procedure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    /// The two pair indices coincide.
    #[error("pair indices must differ, got ({}, {})", .index + 1, .index + 1)]
    SamePair { index: usize },
    /// An index is out of range.
    #[error("index {} out of range 1..={n}", .index + 1)]
    OutOfRange { index: usize, n: usize },
    /// Contraction failed (cannot happen for validated matrices).
    #[error(transparent)]
    Contraction(#[from] ContractionError),
}

/// Verdict for one cell of the pair matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairVerdict {
    /// The pair condition holds.
    True,
    /// The pair condition fails.
    False,
    /// Diagonal cell (the condition is only defined for `i ≠ j`).
    Diag,
}

impl fmt::Display for PairVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairVerdict::True => "1",
            PairVerdict::False => "0",
            PairVerdict::Diag => ".",
        })
    }
}

/// The full n×n matrix of pair verdicts.
///
/// Off-diagonal cells are [`PairVerdict::True`] or [`PairVerdict::False`];
/// diagonal cells are [`PairVerdict::Diag`]. For every `i ≠ j` at least one
/// of the cells `(i, j)`, `(j, i)` is true (the two 2×2 contractions share a
/// negative total sum), which is asserted in debug builds and by tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NashVerdictMatrix {
    n: usize,
    cells: Vec<PairVerdict>,
}

impl NashVerdictMatrix {
    /// Assembles a verdict matrix from row-major cells, checking the shape
    /// and the diagonal convention.
    pub fn from_cells(n: usize, cells: Vec<PairVerdict>) -> Result<Self, EngineError> {
        assert_eq!(cells.len(), n * n, "verdict matrix must be n×n");
        for i in 0..n {
            for j in 0..n {
                let is_diag = cells[i * n + j] == PairVerdict::Diag;
                assert_eq!(is_diag, i == j, "diagonal convention violated at ({i}, {j})");
            }
        }
        Ok(Self { n, cells })
    }

    /// Dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The verdict at `(i, j)`, 0-based.
    pub fn verdict(&self, i: usize, j: usize) -> PairVerdict {
        self.cells[i * self.n + j]
    }

    /// Whether every off-diagonal cell is true.
    pub fn is_all_true(&self) -> bool {
        self.cells.iter().all(|&c| c != PairVerdict::False)
    }

    /// All cells that are false, as 0-based `(i, j)` pairs in row-major order.
    pub fn false_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.verdict(i, j) == PairVerdict::False {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for NashVerdictMatrix {
    /// Renders one row per line: cells `1`, `0`, or `.` separated by single
    /// spaces, each row terminated by a newline.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.verdict(i, j))?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

fn check_index(index: usize, n: usize) -> Result<(), EngineError> {
    if index >= n {
        return Err(EngineError::OutOfRange { index, n });
    }
    Ok(())
}

/// Decides the ordered pair condition for `(i, j)`, 0-based: contract onto
/// `{i, j}` and test whether the row of `i` in the 2×2 complement sums to a
/// strictly negative value.
pub fn decide_pair(m: &IntersectionMatrix, i: usize, j: usize) -> Result<bool, EngineError> {
    let n = m.n();
    check_index(i, n)?;
    check_index(j, n)?;
    if i == j {
        return Err(EngineError::SamePair { index: i });
    }
    let b = schur_onto(m.matrix(), &[i, j])?;
    Ok((b.at(0, 0) + b.at(0, 1)).is_negative())
}

/// Computes the full verdict matrix.
pub fn nn_matrix(m: &IntersectionMatrix) -> Result<NashVerdictMatrix, EngineError> {
    let n = m.n();
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(if i == j {
                PairVerdict::Diag
            } else if decide_pair(m, i, j)? {
                PairVerdict::True
            } else {
                PairVerdict::False
            });
        }
    }
    let out = NashVerdictMatrix { n, cells };
    debug_assert!(
        (0..n).all(|i| {
            (0..n).all(|j| {
                i == j
                    || out.verdict(i, j) == PairVerdict::True
                    || out.verdict(j, i) == PairVerdict::True
            })
        }),
        "separation violated: both orders of a pair are false"
    );
    Ok(out)
}

/// Whether every ordered pair condition holds (vacuously true for `n = 1`).
pub fn is_nash_matrix(m: &IntersectionMatrix) -> Result<bool, EngineError> {
    Ok(nn_matrix(m)?.is_all_true())
}
