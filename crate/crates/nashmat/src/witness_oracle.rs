//! Independent integer witness search used to cross-validate engine verdicts.
//!
//! A witness for the ordered pair `(i, j)` is an integer vector `x` with
//! every entry `≥ 1`, `x_i < x_j`, and `A·x ≤ C` componentwise. Witnesses are
//! *sound*: one exists only if the pair condition holds, so finding one
//! confirms a true verdict. The converse search is bounded (entries are only
//! tried up to a bound `B`), so "no witness up to B" never disproves
//! anything; it is merely consistent with a false verdict.
//!
//! The search enumerates candidate vectors in lexicographic order with exact
//! integer arithmetic. Rational inputs are handled by scaling each row of
//! `A·x ≤ C` by the least common multiple of its denominators, which keeps
//! the system over integers.

use crate::intersection_model::{CanonicalVector, IntersectionMatrix};
use crate::nash_engine::{decide_pair, EngineError};
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};
use thiserror::Error;

/// Errors from witness verification and search.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    /// An index is out of range.
    #[error("index {} out of range 1..={n}", .index + 1)]
    OutOfRange { index: usize, n: usize },
    /// The two pair indices coincide.
    #[error("pair indices must differ, got ({}, {})", .index + 1, .index + 1)]
    SamePair { index: usize },
    /// The search bound is not positive.
    #[error("search bound must be ≥ 1, got {bound}")]
    BadBound { bound: i64 },
    /// Vector lengths disagree with the matrix dimension.
    #[error("dimension mismatch: got {got} entries, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    /// Scaled coefficients exceed the fixed-width integer range used by the
    /// search.
    #[error("scaled coefficients in row {} are too large for the integer search", .row + 1)]
    Overflow { row: usize },
    /// Engine failure while cross-validating (cannot happen for validated
    /// matrices).
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A candidate witness: the vector `x` and the ordered pair it is for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessVector {
    /// Entries of `x`, 0-based, expected to be `≥ 1`.
    pub x: Vec<i64>,
    /// The ordered pair `(i, j)` (0-based) the witness certifies.
    pub pair: (usize, usize),
}

fn check_pair(i: usize, j: usize, n: usize) -> Result<(), OracleError> {
    if i >= n {
        return Err(OracleError::OutOfRange { index: i, n });
    }
    if j >= n {
        return Err(OracleError::OutOfRange { index: j, n });
    }
    if i == j {
        return Err(OracleError::SamePair { index: i });
    }
    Ok(())
}

/// Checks a witness exactly: all entries `≥ 1`, `x_i < x_j`, and `A·x ≤ C`
/// componentwise. Returns `Ok(false)` when any condition fails; errors only
/// signal malformed arguments (dimension or index problems).
pub fn verify_witness(
    m: &IntersectionMatrix,
    c: &CanonicalVector,
    w: &WitnessVector,
) -> Result<bool, OracleError> {
    let n = m.n();
    if w.x.len() != n {
        return Err(OracleError::DimensionMismatch {
            got: w.x.len(),
            expected: n,
        });
    }
    if c.len() != n {
        return Err(OracleError::DimensionMismatch {
            got: c.len(),
            expected: n,
        });
    }
    let (i, j) = w.pair;
    check_pair(i, j, n)?;
    if w.x.iter().any(|&v| v < 1) || w.x[i] >= w.x[j] {
        return Ok(false);
    }
    for row in 0..n {
        let mut lhs = crate::core_linalg::ExactRational::zero();
        for (col, &xv) in w.x.iter().enumerate() {
            lhs += m.at(row, col) * crate::core_linalg::rational_int(xv);
        }
        if lhs > *c.get(row) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Integer form of one row of `A·x ≤ C`: `coeffs·x ≤ rhs` after clearing
/// denominators.
struct ScaledRow {
    coeffs: Vec<i128>,
    rhs: i128,
}

fn to_i128(v: &BigInt, row: usize) -> Result<i128, OracleError> {
    i128::try_from(v.clone()).map_err(|_| OracleError::Overflow { row })
}

/// Clears denominators row by row and proves, in exact arithmetic, that no
/// partial sum the search can form will overflow `i128`: the worst-case
/// magnitude `Σ |coef|·bound + |rhs|` of each row must stay below
/// `i128::MAX / 2`.
fn scale_rows(
    m: &IntersectionMatrix,
    c: &CanonicalVector,
    bound: i64,
) -> Result<Vec<ScaledRow>, OracleError> {
    let n = m.n();
    let big_bound = BigInt::from(bound);
    let limit = BigInt::from(i128::MAX >> 1);
    let mut rows = Vec::with_capacity(n);
    for row in 0..n {
        let mut lcm = BigInt::one();
        for col in 0..n {
            lcm = lcm.lcm(m.at(row, col).denom());
        }
        lcm = lcm.lcm(c.get(row).denom());
        let mut coeffs = Vec::with_capacity(n);
        let mut worst = BigInt::zero();
        for col in 0..n {
            let entry = m.at(row, col);
            let scaled = entry.numer() * (&lcm / entry.denom());
            worst += scaled.abs() * &big_bound;
            coeffs.push(to_i128(&scaled, row)?);
        }
        let rhs = c.get(row).numer() * (&lcm / c.get(row).denom());
        worst += rhs.abs();
        if worst > limit {
            return Err(OracleError::Overflow { row });
        }
        rows.push(ScaledRow {
            coeffs,
            rhs: to_i128(&rhs, row)?,
        });
    }
    Ok(rows)
}

/// `ceil(a / b)` for `b > 0`.
fn ceil_div(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b) + i128::from(a.rem_euclid(b) != 0)
}

struct Search<'a> {
    rows: &'a [ScaledRow],
    n: usize,
    bound: i128,
    i: usize,
    j: usize,
    x: Vec<i128>,
}

impl Search<'_> {
    /// Whether the partial assignment `x[..depth]` can still extend to a
    /// feasible vector, using the optimistic completion: unassigned
    /// variables contribute their most favorable value (1 off the diagonal,
    /// `bound` on it, since diagonal coefficients are negative).
    fn feasible(&self, depth: usize) -> bool {
        if self.i < depth && depth <= self.j && self.x[self.i] >= self.bound {
            // x_j must still exceed x_i but cannot.
            return false;
        }
        for (k, row) in self.rows.iter().enumerate() {
            let mut acc: i128 = 0;
            for (col, &coef) in row.coeffs.iter().enumerate() {
                let value = if col < depth {
                    self.x[col]
                } else if col == k {
                    self.bound
                } else {
                    1
                };
                acc += coef * value;
            }
            if acc > row.rhs {
                return false;
            }
        }
        true
    }

    /// Depth-first enumeration in lexicographic order. Returns whether a
    /// complete feasible vector was found (left in `self.x`).
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.n {
            return true;
        }
        let mut lo: i128 = 1;
        if depth == self.j && self.i < depth {
            lo = lo.max(self.x[self.i] + 1);
        }
        let mut hi = self.bound;
        if depth == self.i && self.j < depth {
            hi = hi.min(self.x[self.j] - 1);
        }
        // Own-row lower bound: with unassigned off-diagonal variables at
        // their minimum (1), the row of `depth` forces
        // x_depth ≥ (Σ others − rhs) / (−diag).
        let row = &self.rows[depth];
        let diag = row.coeffs[depth];
        if diag < 0 {
            let mut others: i128 = 0;
            for (col, &coef) in row.coeffs.iter().enumerate() {
                if col == depth {
                    continue;
                }
                others += coef * if col < depth { self.x[col] } else { 1 };
            }
            lo = lo.max(ceil_div(others - row.rhs, -diag));
        }
        for v in lo..=hi {
            self.x[depth] = v;
            if self.feasible(depth + 1) && self.run(depth + 1) {
                return true;
            }
        }
        self.x[depth] = 0;
        false
    }
}

/// Searches for the lexicographically smallest witness for `(i, j)` with all
/// entries in `1..=bound`. `Ok(None)` means no witness exists *within the
/// bound*; it is not a disproof of the pair condition.
pub fn search_witness(
    m: &IntersectionMatrix,
    c: &CanonicalVector,
    i: usize,
    j: usize,
    bound: i64,
) -> Result<Option<WitnessVector>, OracleError> {
    let n = m.n();
    check_pair(i, j, n)?;
    if c.len() != n {
        return Err(OracleError::DimensionMismatch {
            got: c.len(),
            expected: n,
        });
    }
    if bound < 1 {
        return Err(OracleError::BadBound { bound });
    }
    if bound < 2 {
        // x_i < x_j is impossible with a single admissible value.
        return Ok(None);
    }
    let rows = scale_rows(m, c, bound)?;
    let mut search = Search {
        rows: &rows,
        n,
        bound: i128::from(bound),
        i,
        j,
        x: vec![0; n],
    };
    if !search.feasible(0) || !search.run(0) {
        return Ok(None);
    }
    let x: Vec<i64> = search
        .x
        .iter()
        .map(|&v| i64::try_from(v).expect("witness entries fit the requested bound"))
        .collect();
    let witness = WitnessVector { x, pair: (i, j) };
    debug_assert_eq!(verify_witness(m, c, &witness), Ok(true));
    Ok(Some(witness))
}

/// Outcome of cross-validating a single ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairOutcome {
    /// Engine says true and a witness confirms it.
    ConfirmedTrue(WitnessVector),
    /// Engine says false and no witness exists up to the bound.
    ConsistentFalse,
    /// Engine and oracle disagree: a true verdict with no witness up to the
    /// bound, or (which would be a soundness bug) a false verdict with a
    /// witness.
    Mismatch {
        verdict: bool,
        witness: Option<WitnessVector>,
    },
}

/// Cross-validation results for every ordered pair of a matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossValidateReport {
    /// The search bound used.
    pub bound: i64,
    /// One entry per ordered pair `(i, j)`, row-major.
    pub entries: Vec<(usize, usize, PairOutcome)>,
}

impl CrossValidateReport {
    /// Number of pairs confirmed true by a witness.
    pub fn confirmed(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, _, o)| matches!(o, PairOutcome::ConfirmedTrue(_)))
            .count()
    }

    /// Number of false verdicts with no witness up to the bound.
    pub fn consistent_false(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, _, o)| matches!(o, PairOutcome::ConsistentFalse))
            .count()
    }

    /// Number of disagreements.
    pub fn mismatches(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, _, o)| matches!(o, PairOutcome::Mismatch { .. }))
            .count()
    }

    /// The disagreeing pairs (0-based).
    pub fn mismatch_pairs(&self) -> Vec<(usize, usize)> {
        self.entries
            .iter()
            .filter(|(_, _, o)| matches!(o, PairOutcome::Mismatch { .. }))
            .map(|&(i, j, _)| (i, j))
            .collect()
    }
}

/// Runs the engine and the witness search on every ordered pair and
/// classifies each cell. For `n = 1` the report is empty.
pub fn cross_validate(
    m: &IntersectionMatrix,
    c: &CanonicalVector,
    bound: i64,
) -> Result<CrossValidateReport, OracleError> {
    if bound < 1 {
        return Err(OracleError::BadBound { bound });
    }
    let n = m.n();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let verdict = decide_pair(m, i, j)?;
            let witness = search_witness(m, c, i, j, bound)?;
            let outcome = match (verdict, witness) {
                (true, Some(w)) => PairOutcome::ConfirmedTrue(w),
                (false, None) => PairOutcome::ConsistentFalse,
                (verdict, witness) => PairOutcome::Mismatch { verdict, witness },
            };
            entries.push((i, j, outcome));
        }
    }
    Ok(CrossValidateReport { bound, entries })
}
