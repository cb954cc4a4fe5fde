//! Seeded random instance generators.
//!
//! Both generators are deterministic in their arguments and always produce
//! matrices that pass [`IntersectionMatrix::new`]: diagonals are chosen
//! after the couplings so that every row is diagonally dominant (weakly, with
//! at least one strict row, for the boundary generator), which together with
//! connectivity forces negative definiteness.

use crate::core_linalg::SymMatrix;
use crate::intersection_model::IntersectionMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn finish(mut off: Vec<Vec<i64>>, diag: Vec<i64>) -> IntersectionMatrix {
    for (i, row) in off.iter_mut().enumerate() {
        row[i] = diag[i];
    }
    let rows: Vec<&[i64]> = off.iter().map(Vec::as_slice).collect();
    let matrix = SymMatrix::from_int_rows(&rows).expect("generated matrix is square/symmetric");
    IntersectionMatrix::new(matrix).expect("generated matrix is valid by construction")
}

/// Generates a pseudo-random valid intersection matrix with `n` vertices.
///
/// Couplings: each unordered pair independently receives a weight drawn from
/// `0..=d` with probability `1/2` (zero otherwise); a random spanning tree
/// with weights in `1..=max(1, d)` is added on top so the graph is always
/// connected. Diagonals are `−(row coupling sum) − s` with `s ∈ 2..=4`, so
/// every row sum is strictly negative.
///
/// Deterministic in `(n, d, seed)`. Panics if `n == 0`.
pub fn generate_random(n: usize, d: u32, seed: u64) -> IntersectionMatrix {
    assert!(n > 0, "matrix size must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut off = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(0.5) {
                let w = rng.gen_range(0..=d) as i64;
                off[i][j] = w;
                off[j][i] = w;
            }
        }
    }
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let w = rng.gen_range(1..=d.max(1)) as i64;
        if off[u][v] == 0 {
            off[u][v] = w;
            off[v][u] = w;
        }
    }
    let diag: Vec<i64> = (0..n)
        .map(|i| {
            let total: i64 = off[i].iter().sum();
            -total - rng.gen_range(2..=4)
        })
        .collect();
    finish(off, diag)
}

/// Generates a valid intersection matrix crowded against the boundary of
/// validity: most row sums are zero, so pair conditions fail often and the
/// exact criteria are exercised near their thresholds.
///
/// A random tree with edge weight 1 (90%) or 2 is drawn, up to two extra
/// unit edges are added for `n ≥ 3` (creating cycles), and each diagonal is
/// `−max(2, row coupling sum + δ)` with `δ` weighted toward zero. If no row
/// sum ends up strictly negative (which would make the matrix singular), the
/// first diagonal is decreased by one.
///
/// Deterministic in `(n, seed)`. Panics if `n == 0`.
pub fn generate_boundary(n: usize, seed: u64) -> IntersectionMatrix {
    assert!(n > 0, "matrix size must be at least 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut off = vec![vec![0i64; n]; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        let w = if rng.gen_bool(0.9) { 1 } else { 2 };
        off[u][v] = w;
        off[v][u] = w;
    }
    if n >= 3 {
        for _ in 0..rng.gen_range(0..=2u32) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i != j && off[i][j] == 0 {
                off[i][j] = 1;
                off[j][i] = 1;
            }
        }
    }
    let mut diag: Vec<i64> = (0..n)
        .map(|i| {
            let total: i64 = off[i].iter().sum();
            let delta = match rng.gen_range(0..10u32) {
                0..=4 => 0,
                5..=7 => 1,
                _ => 2,
            };
            -(total + delta).max(2)
        })
        .collect();
    let has_strict = (0..n).any(|i| {
        let total: i64 = off[i].iter().sum();
        diag[i] + total < 0
    });
    if !has_strict {
        diag[0] -= 1;
    }
    finish(off, diag)
}
