//! The validated domain object, an intersection matrix with genus data,
//! plus its canonical vector, its dual graph, and the on-disk input format.
//!
//! A valid intersection matrix is symmetric with strictly negative diagonal
//! entries, non-negative off-diagonal entries, a connected dual graph, and is
//! negative definite. The genus vector assigns a non-negative integer to each
//! vertex and must satisfy the minimality inequality `a_ii ≤ 2·p_i − 2`,
//! which is exactly what makes every canonical entry
//! `c_i = 2·a_ii + 4 − 4·p_i` non-positive.
//!
//! # Input format
//!
//! UTF-8 text. Blank lines and lines whose first non-blank character is `#`
//! are ignored everywhere. The first significant line is the dimension `n`;
//! the next `n` significant lines each hold `n` whitespace-separated entries,
//! every entry an optionally signed integer or a fraction `p/q` with `q > 0`.
//! An optional final significant line `genus:` followed by `n` non-negative
//! integers supplies the genus vector (default: all zeros).
//!
//! ```text
//! # star with three legs
//! 4
//! -2 1 1 1
//! 1 -2 0 0
//! 1 0 -2 0
//! 1 0 0 -2
//! ```

use crate::core_linalg::{ExactRational, LinAlgError, SymMatrix};
use crate::gauss_contraction::negative_definite_pivots;
use num::bigint::BigInt;
use num::{Signed, Zero};
use std::collections::VecDeque;
use std::str::FromStr;
use thiserror::Error;

/// Errors from validating or parsing intersection data.
#[derive(Debug, Error)]
pub enum ModelError {
    /// Malformed input text.
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    /// A diagonal entry is not negative.
    #[error("diagonal entry {} is {value}; diagonal entries must be negative", .index + 1)]
    DiagonalSign { index: usize, value: String },
    /// An off-diagonal entry is negative.
    #[error(
        "off-diagonal entry ({}, {}) is {value}; off-diagonal entries must be non-negative",
        .i + 1, .j + 1
    )]
    OffDiagonalSign { i: usize, j: usize, value: String },
    /// The dual graph is not connected.
    #[error("dual graph is disconnected: vertex {} is not reachable from vertex 1", .vertex + 1)]
    Disconnected { vertex: usize },
    /// The matrix is not negative definite.
    #[error("not negative definite: pivot {} is ≥ 0", .pivot + 1)]
    NotNegativeDefinite { pivot: usize },
    /// The genus vector's length differs from the matrix dimension.
    #[error("genus vector has {got} entries, expected {expected}")]
    GenusLength { got: usize, expected: usize },
    /// The minimality inequality fails at a vertex.
    #[error(
        "minimality violated at vertex {}: diagonal {diag} exceeds 2·genus − 2 = {bound} for genus {genus}",
        .index + 1
    )]
    Minimality {
        index: usize,
        diag: String,
        genus: u32,
        bound: i64,
    },
    /// Structural matrix errors (shape, symmetry).
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

/// A validated intersection matrix: symmetric, negative diagonal,
/// non-negative off-diagonal, connected dual graph, negative definite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    matrix: SymMatrix,
}

impl IntersectionMatrix {
    /// Validates `matrix` and wraps it. Checks run in a fixed order so each
    /// failure mode yields its own diagnostic: diagonal signs, off-diagonal
    /// signs, connectivity, negative definiteness.
    pub fn new(matrix: SymMatrix) -> Result<Self, ModelError> {
        let n = matrix.n();
        for i in 0..n {
            if !matrix.at(i, i).is_negative() {
                return Err(ModelError::DiagonalSign {
                    index: i,
                    value: matrix.at(i, i).to_string(),
                });
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if matrix.at(i, j).is_negative() {
                    return Err(ModelError::OffDiagonalSign {
                        i,
                        j,
                        value: matrix.at(i, j).to_string(),
                    });
                }
            }
        }
        if let Some(vertex) = first_unreachable(&matrix) {
            return Err(ModelError::Disconnected { vertex });
        }
        negative_definite_pivots(&matrix)
            .map_err(|pivot| ModelError::NotNegativeDefinite { pivot })?;
        Ok(Self { matrix })
    }

    /// Dimension.
    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    /// The underlying symmetric matrix.
    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    /// Entry `(i, j)`, 0-based.
    pub fn at(&self, i: usize, j: usize) -> &ExactRational {
        self.matrix.at(i, j)
    }
}

/// Breadth-first search from vertex 0 over nonzero off-diagonal entries;
/// returns the smallest unreachable vertex, if any.
fn first_unreachable(matrix: &SymMatrix) -> Option<usize> {
    let n = matrix.n();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if v != u && !seen[v] && !matrix.at(u, v).is_zero() {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen.iter().position(|&s| !s)
}

/// Non-negative genus data, one entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusVector {
    p: Vec<u32>,
}

impl GenusVector {
    /// Wraps the entries (non-negativity is guaranteed by the type).
    pub fn new(p: Vec<u32>) -> Self {
        Self { p }
    }

    /// The all-zero genus vector of length `n`.
    pub fn zero(n: usize) -> Self {
        Self { p: vec![0; n] }
    }

    /// Number of entries.
    pub fn len(&self) -> usize {
        self.p.len()
    }

    /// Whether there are no entries.
    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Entry `i`, 0-based.
    pub fn get(&self, i: usize) -> u32 {
        self.p[i]
    }

    /// Whether every entry is zero.
    pub fn is_all_zero(&self) -> bool {
        self.p.iter().all(|&g| g == 0)
    }

    /// Iterator over the entries.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.p.iter().copied()
    }

    /// Checks length and the minimality inequality `a_ii ≤ 2·p_i − 2`
    /// against `m`.
    pub fn validate_against(&self, m: &IntersectionMatrix) -> Result<(), ModelError> {
        if self.p.len() != m.n() {
            return Err(ModelError::GenusLength {
                got: self.p.len(),
                expected: m.n(),
            });
        }
        for (i, g) in self.p.iter().enumerate() {
            let bound = 2 * i64::from(*g) - 2;
            if *m.at(i, i) > crate::core_linalg::rational_int(bound) {
                return Err(ModelError::Minimality {
                    index: i,
                    diag: m.at(i, i).to_string(),
                    genus: *g,
                    bound,
                });
            }
        }
        Ok(())
    }
}

/// The canonical vector `c` with `c_i = 2·a_ii + 4 − 4·p_i`; every entry is
/// non-positive for minimal data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalVector {
    c: Vec<ExactRational>,
}

impl CanonicalVector {
    /// Number of entries.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    /// Whether there are no entries.
    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// Entry `i`, 0-based.
    pub fn get(&self, i: usize) -> &ExactRational {
        &self.c[i]
    }

    /// All entries.
    pub fn entries(&self) -> &[ExactRational] {
        &self.c
    }
}

/// Computes the canonical vector of `(m, g)`, enforcing minimality so the
/// result is entrywise `≤ 0`.
pub fn canonical_vector(
    m: &IntersectionMatrix,
    g: &GenusVector,
) -> Result<CanonicalVector, ModelError> {
    g.validate_against(m)?;
    let two = crate::core_linalg::rational_int(2);
    let c: Vec<ExactRational> = (0..m.n())
        .map(|i| {
            &two * m.at(i, i) + crate::core_linalg::rational_int(4 - 4 * i64::from(g.get(i)))
        })
        .collect();
    debug_assert!(c.iter().all(|ci| !ci.is_positive()));
    Ok(CanonicalVector { c })
}

/// The dual graph of an intersection matrix: vertices `0..n`, an edge
/// `{i, j}` whenever `a_ij ≠ 0` for `i ≠ j`. Simple (no self-loops); each
/// adjacency list is sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl DualGraph {
    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Degree of `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges as ordered pairs `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, nbrs) in self.adj.iter().enumerate() {
            for &j in nbrs {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Builds the dual graph of `m`.
pub fn dual_graph(m: &IntersectionMatrix) -> DualGraph {
    let n = m.n();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if !m.at(i, j).is_zero() {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    DualGraph { n, adj }
}

/// A token with its 1-based source position.
struct Token<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

/// Splits input into significant lines of tokens, dropping blank lines and
/// `#` comment lines.
fn significant_lines(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let mut col = 0;
        let bytes = raw.as_bytes();
        while col < bytes.len() {
            if bytes[col].is_ascii_whitespace() {
                col += 1;
                continue;
            }
            let start = col;
            while col < bytes.len() && !bytes[col].is_ascii_whitespace() {
                col += 1;
            }
            tokens.push(Token {
                text: &raw[start..col],
                line: lineno + 1,
                col: start + 1,
            });
        }
        lines.push(tokens);
    }
    lines
}

fn syntax(tok: &Token<'_>, msg: impl Into<String>) -> ModelError {
    ModelError::Syntax {
        line: tok.line,
        col: tok.col,
        msg: msg.into(),
    }
}

/// Parses an optionally signed integer or a fraction `p/q` with `q > 0`.
fn parse_entry(tok: &Token<'_>) -> Result<ExactRational, ModelError> {
    let text = tok.text;
    let make = |p: BigInt, q: BigInt| ExactRational::new(p, q);
    match text.split_once('/') {
        None => {
            let p = BigInt::from_str(text)
                .map_err(|_| syntax(tok, format!("expected an integer or p/q fraction, got '{text}'")))?;
            Ok(ExactRational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p = BigInt::from_str(ps).map_err(|_| {
                syntax(tok, format!("invalid fraction numerator '{ps}' in '{text}'"))
            })?;
            if qs.is_empty() || !qs.bytes().all(|b| b.is_ascii_digit()) {
                return Err(syntax(
                    tok,
                    format!("fraction denominator must be a positive integer, got '{qs}' in '{text}'"),
                ));
            }
            let q = BigInt::from_str(qs)
                .map_err(|_| syntax(tok, format!("invalid fraction denominator '{qs}' in '{text}'")))?;
            if q.is_zero() {
                return Err(syntax(tok, format!("fraction denominator is zero in '{text}'")));
            }
            Ok(make(p, q))
        }
    }
}

/// Parses the on-disk format (see the module docs) and validates the result.
///
/// Returns the validated matrix and the genus vector (all zeros when no
/// `genus:` line is present). Every failure mode has a distinct diagnostic;
/// syntax errors carry 1-based line and column numbers.
pub fn parse_matrix_file(text: &str) -> Result<(IntersectionMatrix, GenusVector), ModelError> {
    let lines = significant_lines(text);
    let mut it = lines.iter();

    let header = it.next().ok_or(ModelError::Syntax {
        line: 1,
        col: 1,
        msg: "empty input: expected the dimension n".into(),
    })?;
    if header.len() != 1 {
        return Err(syntax(
            &header[1],
            "expected a single integer (the dimension) on the first significant line",
        ));
    }
    let n: usize = header[0]
        .text
        .parse()
        .map_err(|_| syntax(&header[0], format!("invalid dimension '{}'", header[0].text)))?;
    if n == 0 {
        return Err(syntax(&header[0], "dimension must be at least 1"));
    }

    let mut rows: Vec<Vec<ExactRational>> = Vec::with_capacity(n);
    for k in 0..n {
        let row = it.next().ok_or(ModelError::Syntax {
            line: header[0].line,
            col: 1,
            msg: format!("expected {n} matrix rows, found {k}"),
        })?;
        if row.len() != n {
            return Err(syntax(
                &row[0],
                format!("matrix row {} has {} entries, expected {n}", k + 1, row.len()),
            ));
        }
        rows.push(row.iter().map(parse_entry).collect::<Result<_, _>>()?);
    }

    let mut genus = GenusVector::zero(n);
    if let Some(extra) = it.next() {
        let head = &extra[0];
        if head.text != "genus:" {
            return Err(syntax(
                head,
                format!("expected 'genus:' or end of input, got '{}'", head.text),
            ));
        }
        let entries = &extra[1..];
        if entries.len() != n {
            return Err(syntax(
                head,
                format!("genus line has {} entries, expected {n}", entries.len()),
            ));
        }
        let p = entries
            .iter()
            .map(|tok| {
                tok.text.parse::<u32>().map_err(|_| {
                    syntax(tok, format!("invalid genus entry '{}' (expected a non-negative integer)", tok.text))
                })
            })
            .collect::<Result<Vec<u32>, _>>()?;
        genus = GenusVector::new(p);
    }
    if let Some(trailing) = it.next() {
        return Err(syntax(&trailing[0], "unexpected content after the matrix"));
    }

    let matrix = IntersectionMatrix::new(SymMatrix::from_rows(rows)?)?;
    genus.validate_against(&matrix)?;
    Ok((matrix, genus))
}
