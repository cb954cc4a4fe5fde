//! Exact rational scalars, dense symmetric matrices, index permutations,
//! principal submatrices, and exact determinants.
//!
//! Everything downstream works over [`ExactRational`]: arbitrary-precision
//! rationals, always kept in lowest terms with positive denominator. Matrices
//! are dense and symmetric; symmetry is enforced at construction and every
//! operation in this crate preserves it.
//!
//! Indices are 0-based throughout the library. Error messages and rendered
//! output use 1-based indices, matching the on-disk format and the CLI.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision exact rational number.
///
/// Backed by `num`'s big-integer ratio type: always reduced, denominator
/// always positive.
pub type ExactRational = BigRational;

/// An integer as an [`ExactRational`].
pub fn rational_int(value: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(value))
}

/// The fraction `p/q` as an [`ExactRational`] (reduced, sign normalized).
///
/// # Panics
///
/// Panics if `q == 0`.
pub fn rational(p: i64, q: i64) -> ExactRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Errors from constructing or slicing matrices and permutations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    /// The matrix has no rows.
    #[error("matrix must be non-empty")]
    Empty,
    /// A row's length differs from the number of rows.
    #[error("row {} has {len} entries, expected {n}", .row + 1)]
    NotSquare { row: usize, len: usize, n: usize },
    /// Entries `(i, j)` and `(j, i)` differ.
    #[error("matrix is not symmetric: entries ({}, {}) and ({}, {}) differ", .i + 1, .j + 1, .j + 1, .i + 1)]
    NotSymmetric { i: usize, j: usize },
    /// An index selection is empty.
    #[error("index selection must not be empty")]
    EmptySelection,
    /// An index is outside `1..=n`.
    #[error("index {} out of range 1..={n}", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },
    /// An index occurs twice in a selection.
    #[error("duplicate index {} in selection", .index + 1)]
    DuplicateIndex { index: usize },
    /// A mapping is not a bijection on `0..n`.
    #[error("mapping of length {n} is not a permutation of its index range")]
    NotAPermutation { n: usize },
    /// A permutation's size differs from the matrix size.
    #[error("permutation acts on {sigma} indices but the matrix has {n}")]
    SizeMismatch { sigma: usize, n: usize },
}

/// Dense symmetric matrix over [`ExactRational`].
///
/// Symmetry is checked at construction; all operations preserve it, so a
/// value of this type is always symmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<ExactRational>,
}

impl SymMatrix {
    /// Builds a matrix from rows, verifying squareness and symmetry.
    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self, LinAlgError> {
        let n = rows.len();
        if n == 0 {
            return Err(LinAlgError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(LinAlgError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        let data: Vec<ExactRational> = rows.into_iter().flatten().collect();
        let m = SymMatrix { n, data };
        for i in 0..n {
            for j in (i + 1)..n {
                if m.at(i, j) != m.at(j, i) {
                    return Err(LinAlgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from integer rows (convenient for fixtures and tests).
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, LinAlgError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| rational_int(v)).collect())
                .collect(),
        )
    }

    /// Number of rows (= columns).
    pub fn n(&self) -> usize {
        self.n
    }

    /// The entry at `(i, j)`, 0-based.
    ///
    /// # Panics
    ///
    /// Panics if an index is out of range.
    pub fn at(&self, i: usize, j: usize) -> &ExactRational {
        assert!(i < self.n && j < self.n, "matrix index out of range");
        &self.data[i * self.n + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[ExactRational] {
        assert!(i < self.n, "matrix row out of range");
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Iterator over all rows.
    pub fn rows(&self) -> impl Iterator<Item = &[ExactRational]> + '_ {
        (0..self.n).map(move |i| self.row(i))
    }

    /// Sum of the entries of row `i`.
    pub fn row_sum(&self, i: usize) -> ExactRational {
        self.row(i)
            .iter()
            .fold(ExactRational::zero(), |acc, v| acc + v)
    }
}

/// A bijection on `0..n`, stored as the forward map `i ↦ σ(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexPermutation {
    map: Vec<usize>,
}

impl IndexPermutation {
    /// Builds a permutation from its forward map; rejects non-bijections.
    pub fn new(map: Vec<usize>) -> Result<Self, LinAlgError> {
        let n = map.len();
        if n == 0 {
            return Err(LinAlgError::Empty);
        }
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || seen[t] {
                return Err(LinAlgError::NotAPermutation { n });
            }
            seen[t] = true;
        }
        Ok(Self { map })
    }

    /// The identity on `0..n`.
    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    /// Number of indices acted on.
    pub fn n(&self) -> usize {
        self.map.len()
    }

    /// `σ(i)`.
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        Self { map: inv }
    }
}

/// Conjugates `a` by `sigma`: the result satisfies
/// `result[σ(i)][σ(j)] = a[i][j]`, i.e. `result[i][j] = a[σ⁻¹(i)][σ⁻¹(j)]`.
pub fn permute_principal(
    a: &SymMatrix,
    sigma: &IndexPermutation,
) -> Result<SymMatrix, LinAlgError> {
    if sigma.n() != a.n() {
        return Err(LinAlgError::SizeMismatch {
            sigma: sigma.n(),
            n: a.n(),
        });
    }
    let n = a.n();
    let mut rows = vec![vec![ExactRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[sigma.apply(i)][sigma.apply(j)] = a.at(i, j).clone();
        }
    }
    SymMatrix::from_rows(rows)
}

/// Validates that `keep` is a non-empty, duplicate-free subset of `0..n`.
pub(crate) fn validate_selection(keep: &[usize], n: usize) -> Result<(), LinAlgError> {
    if keep.is_empty() {
        return Err(LinAlgError::EmptySelection);
    }
    let mut seen = vec![false; n];
    for &k in keep {
        if k >= n {
            return Err(LinAlgError::IndexOutOfRange { index: k, n });
        }
        if seen[k] {
            return Err(LinAlgError::DuplicateIndex { index: k });
        }
        seen[k] = true;
    }
    Ok(())
}

/// The principal submatrix on the rows/columns in `keep`, in the order given.
pub fn principal_submatrix(a: &SymMatrix, keep: &[usize]) -> Result<SymMatrix, LinAlgError> {
    validate_selection(keep, a.n())?;
    let rows = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| a.at(i, j).clone()).collect())
        .collect();
    SymMatrix::from_rows(rows)
}

/// Exact determinant by fraction-free-style rational Gaussian elimination
/// with partial pivoting (row swaps flip the sign).
pub fn exact_determinant(a: &SymMatrix) -> ExactRational {
    let n = a.n();
    let mut m: Vec<Vec<ExactRational>> = a.rows().map(|r| r.to_vec()).collect();
    let mut det = ExactRational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return ExactRational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot_row = m[col].clone();
        let pivot = &pivot_row[col];
        det *= pivot;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / pivot;
            for c in col..n {
                let sub = &factor * &pivot_row[c];
                m[r][c] = &m[r][c] - sub;
            }
        }
    }
    det
}

/// Builds a [`SymMatrix`] from integer row literals:
/// `sym_matrix![[-2, 1], [1, -2]]`. Panics on malformed input, so it is
/// meant for fixtures and tests.
#[macro_export]
macro_rules! sym_matrix {
    ($([$($x:expr),* $(,)?]),* $(,)?) => {{
        let rows: &[&[i64]] = &[$(&[$($x),*][..]),*];
        $crate::core_linalg::SymMatrix::from_int_rows(rows)
            .expect("well-formed symmetric matrix literal")
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> SymMatrix {
        sym_matrix![
            [-2, 1, 1, 1],
            [1, -2, 0, 0],
            [1, 0, -2, 0],
            [1, 0, 0, -2]
        ]
    }

    /// Independent determinant oracle: cofactor expansion along the first row.
    fn cofactor_det(rows: &[Vec<ExactRational>]) -> ExactRational {
        let n = rows.len();
        if n == 1 {
            return rows[0][0].clone();
        }
        let mut acc = ExactRational::zero();
        for (j, entry) in rows[0].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let minor: Vec<Vec<ExactRational>> = rows[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = entry * cofactor_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn rational_constructors_reduce() {
        assert_eq!(rational(2, 4), rational(1, 2));
        assert_eq!(rational(-2, 4), rational(1, -2));
        assert_eq!(rational_int(-3), rational(-6, 2));
    }

    #[test]
    fn from_rows_rejects_non_square() {
        let err = SymMatrix::from_rows(vec![vec![rational_int(-2)], vec![]]).unwrap_err();
        assert_eq!(
            err,
            LinAlgError::NotSquare {
                row: 0,
                len: 1,
                n: 2
            }
        );
        assert_eq!(SymMatrix::from_rows(vec![]).unwrap_err(), LinAlgError::Empty);
    }

    #[test]
    fn from_rows_rejects_asymmetry() {
        let rows = vec![
            vec![rational_int(-2), rational_int(1)],
            vec![rational_int(0), rational_int(-2)],
        ];
        assert_eq!(
            SymMatrix::from_rows(rows).unwrap_err(),
            LinAlgError::NotSymmetric { i: 0, j: 1 }
        );
    }

    #[test]
    fn row_sums_of_star() {
        let m = d4();
        assert_eq!(m.row_sum(0), rational_int(1));
        assert_eq!(m.row_sum(1), rational_int(-1));
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(IndexPermutation::new(vec![0, 0]).is_err());
        assert!(IndexPermutation::new(vec![0, 2]).is_err());
        assert!(IndexPermutation::new(vec![]).is_err());
        assert!(IndexPermutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn permutation_inverse_round_trip() {
        let sigma = IndexPermutation::new(vec![2, 0, 3, 1]).unwrap();
        let inv = sigma.inverse();
        for i in 0..4 {
            assert_eq!(inv.apply(sigma.apply(i)), i);
            assert_eq!(sigma.apply(inv.apply(i)), i);
        }
    }

    #[test]
    fn permute_swap_example() {
        let a = sym_matrix![[-2, 1], [1, -3]];
        let swap = IndexPermutation::new(vec![1, 0]).unwrap();
        let b = permute_principal(&a, &swap).unwrap();
        assert_eq!(b, sym_matrix![[-3, 1], [1, -2]]);
    }

    #[test]
    fn permute_moves_star_center() {
        // Cycle the first three indices: the star center (index 0, three
        // neighbors) moves to index 1, so row 1 of the image sums to +1 and
        // every other row sums to -1.
        let sigma = IndexPermutation::new(vec![1, 2, 0, 3]).unwrap();
        let b = permute_principal(&d4(), &sigma).unwrap();
        assert_eq!(b.row_sum(1), rational_int(1));
        for i in [0, 2, 3] {
            assert_eq!(b.row_sum(i), rational_int(-1));
        }
    }

    #[test]
    fn permute_round_trip_restores_matrix() {
        let sigma = IndexPermutation::new(vec![3, 1, 0, 2]).unwrap();
        let a = d4();
        let b = permute_principal(&a, &sigma).unwrap();
        let back = permute_principal(&b, &sigma.inverse()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn permute_size_mismatch() {
        let sigma = IndexPermutation::new(vec![1, 0]).unwrap();
        assert_eq!(
            permute_principal(&d4(), &sigma).unwrap_err(),
            LinAlgError::SizeMismatch { sigma: 2, n: 4 }
        );
    }

    #[test]
    fn submatrix_of_star_legs_is_diagonal() {
        let b = principal_submatrix(&d4(), &[1, 2]).unwrap();
        assert_eq!(b, sym_matrix![[-2, 0], [0, -2]]);
    }

    #[test]
    fn submatrix_respects_requested_order() {
        let a = sym_matrix![[-2, 1, 0], [1, -3, 2], [0, 2, -5]];
        let b = principal_submatrix(&a, &[2, 0]).unwrap();
        assert_eq!(b, sym_matrix![[-5, 0], [0, -2]]);
        let c = principal_submatrix(&a, &[2, 1]).unwrap();
        assert_eq!(c, sym_matrix![[-5, 2], [2, -3]]);
    }

    #[test]
    fn submatrix_selection_errors() {
        let a = d4();
        assert_eq!(
            principal_submatrix(&a, &[]).unwrap_err(),
            LinAlgError::EmptySelection
        );
        assert_eq!(
            principal_submatrix(&a, &[4]).unwrap_err(),
            LinAlgError::IndexOutOfRange { index: 4, n: 4 }
        );
        assert_eq!(
            principal_submatrix(&a, &[1, 1]).unwrap_err(),
            LinAlgError::DuplicateIndex { index: 1 }
        );
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(exact_determinant(&sym_matrix![[-2]]), rational_int(-2));
        assert_eq!(
            exact_determinant(&sym_matrix![[-2, 1], [1, -2]]),
            rational_int(3)
        );
        assert_eq!(exact_determinant(&d4()), rational_int(4));
        // Chain of length 3 (determinant alternates sign with dimension).
        assert_eq!(
            exact_determinant(&sym_matrix![[-2, 1, 0], [1, -2, 1], [0, 1, -2]]),
            rational_int(-4)
        );
    }

    #[test]
    fn determinant_of_singular_matrix_is_zero() {
        let m = sym_matrix![[1, 1], [1, 1]];
        assert_eq!(exact_determinant(&m), rational_int(0));
        // Needs a row swap to find a pivot.
        let z = sym_matrix![[0, 1], [1, 0]];
        assert_eq!(exact_determinant(&z), rational_int(-1));
    }

    #[test]
    fn determinant_matches_cofactor_oracle() {
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..60 {
            let n = (next() % 5 + 1) as usize;
            let mut rows = vec![vec![ExactRational::zero(); n]; n];
            for i in 0..n {
                for j in i..n {
                    let v = rational_int((next() % 7) as i64 - 3);
                    rows[i][j] = v.clone();
                    rows[j][i] = v;
                }
            }
            let m = SymMatrix::from_rows(rows.clone()).unwrap();
            assert_eq!(exact_determinant(&m), cofactor_det(&rows));
        }
    }

    #[test]
    fn determinant_invariant_under_permutation() {
        let a = d4();
        for map in [vec![1, 2, 0, 3], vec![3, 2, 1, 0], vec![0, 3, 1, 2]] {
            let sigma = IndexPermutation::new(map).unwrap();
            let b = permute_principal(&a, &sigma).unwrap();
            assert_eq!(exact_determinant(&b), exact_determinant(&a));
        }
    }

    #[test]
    fn submatrix_commutes_with_permutation() {
        // Taking the submatrix on {σ(k) : k ∈ keep} of the permuted matrix,
        // read back in the order σ(keep), equals the submatrix on keep.
        let a = sym_matrix![[-3, 1, 2, 0], [1, -4, 1, 1], [2, 1, -5, 0], [0, 1, 0, -2]];
        let sigma = IndexPermutation::new(vec![2, 0, 3, 1]).unwrap();
        let b = permute_principal(&a, &sigma).unwrap();
        let keep = [1usize, 3];
        let mapped: Vec<usize> = keep.iter().map(|&k| sigma.apply(k)).collect();
        assert_eq!(
            principal_submatrix(&b, &mapped).unwrap(),
            principal_submatrix(&a, &keep).unwrap()
        );
    }
}
