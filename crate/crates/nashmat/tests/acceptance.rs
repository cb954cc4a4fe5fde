//! Acceptance gate: one test per release criterion. Each test prints a
//! `[criterion N] PASS` line on success; a failing criterion fails its test.

use nashmat::{
    branch_continued_fraction, canonical_vector, check_consistency, cor_polygon_minus2,
    cross_validate, exact_determinant, is_nash_matrix, is_negative_definite,
    nash_by_strict_components, nn_matrix, parse_matrix_file, principal_submatrix, rational_int,
    schur_onto, schur_onto_with_order, star_condition, dual_graph, generate_boundary,
    generate_random, GenusVector, IntersectionMatrix, ModelError, PairVerdict, SymMatrix,
    TheoremVerdict,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fs;
use std::path::PathBuf;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn load(name: &str) -> (IntersectionMatrix, GenusVector) {
    let text = fs::read_to_string(fixture_path(name))
        .unwrap_or_else(|e| panic!("cannot read fixture {name}: {e}"));
    parse_matrix_file(&text).unwrap_or_else(|e| panic!("fixture {name} is invalid: {e}"))
}

/// All-ones verdict display with `.` on the diagonal and `0` at the listed
/// 0-based cells.
fn ones_except(n: usize, zeros: &[(usize, usize)]) -> String {
    let mut out = String::new();
    for i in 0..n {
        let row: Vec<&str> = (0..n)
            .map(|j| {
                if i == j {
                    "."
                } else if zeros.contains(&(i, j)) {
                    "0"
                } else {
                    "1"
                }
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn chain(n: usize) -> IntersectionMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        rows[i][i] = -2;
        if i + 1 < n {
            rows[i][i + 1] = 1;
            rows[i + 1][i] = 1;
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntersectionMatrix::new(SymMatrix::from_int_rows(&refs).unwrap()).unwrap()
}

/// Star with `k` leaves of weight −2 and unit couplings, root weight `−r`.
fn minus2_star(k: usize, r: i64) -> Result<IntersectionMatrix, ModelError> {
    let n = k + 1;
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = -r;
    for v in 1..n {
        rows[v][v] = -2;
        rows[0][v] = 1;
        rows[v][0] = 1;
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntersectionMatrix::new(SymMatrix::from_int_rows(&refs).unwrap())
}

#[test]
fn criterion_1_reference_verdict_matrices() {
    let explicit: Vec<(&str, String)> = vec![
        (
            "d4.txt",
            ". 0 0 0\n1 . 1 1\n1 1 . 1\n1 1 1 .\n".to_string(),
        ),
        (
            "e6.txt",
            ". 1 1 1 1 1\n0 . 1 1 0 0\n0 0 . 0 0 0\n0 1 1 . 0 0\n1 1 1 1 . 1\n1 1 1 1 1 .\n"
                .to_string(),
        ),
        (
            "e7.txt",
            ". 1 1 1 1 1 1\n0 . 1 1 0 0 0\n0 0 . 0 0 0 0\n0 0 1 . 0 0 0\n0 1 1 1 . 0 1\n1 1 1 1 1 . 1\n0 1 1 1 1 0 .\n"
                .to_string(),
        ),
        (
            "e8.txt",
            ". 1 1 1 1 1 0 1\n0 . 1 1 0 0 0 0\n0 0 . 0 0 0 0 0\n0 0 1 . 0 0 0 0\n0 1 1 1 . 0 0 0\n0 1 1 1 1 . 0 1\n1 1 1 1 1 1 . 1\n0 1 1 1 1 0 0 .\n"
                .to_string(),
        ),
        (
            "star_chains_10.txt",
            ". 1 1 1 1 1 1 1 1 1\n0 . 1 1 1 1 1 1 1 1\n0 0 . 0 0 0 0 0 0 0\n1 1 1 . 0 1 1 1 1 1\n1 1 1 1 . 1 1 1 1 1\n1 1 1 1 1 . 0 0 1 1\n1 1 1 1 1 1 . 0 1 1\n1 1 1 1 1 1 1 . 1 1\n1 1 1 1 1 1 1 1 . 0\n1 1 1 1 1 1 1 1 1 .\n"
                .to_string(),
        ),
        ("star_chains_9.txt", ones_except(9, &[(1, 0)])),
        ("star_chains_8.txt", ones_except(8, &[])),
        ("tree_double_star_8.txt", ones_except(8, &[])),
        ("sandwich_a3.txt", ones_except(4, &[(2, 0)])),
        ("gencycle_8.txt", ones_except(8, &[])),
    ];
    for (name, expected) in &explicit {
        let (m, _) = load(name);
        let verdicts = nn_matrix(&m).unwrap();
        assert_eq!(
            verdicts.to_string(),
            *expected,
            "verdict matrix mismatch for {name}"
        );
    }
    // The sandwich's unique failing ordered pair, stated explicitly.
    let (sandwich, _) = load("sandwich_a3.txt");
    let verdicts = nn_matrix(&sandwich).unwrap();
    assert_eq!(verdicts.false_cells(), vec![(2, 0)]);
    println!("[criterion 1] PASS");
}

#[test]
fn criterion_2_chain_and_exceptional_verdicts() {
    for n in 2..=10 {
        assert!(is_nash_matrix(&chain(n)).unwrap(), "chain of {n} vertices");
    }
    for name in ["d4.txt", "e6.txt", "e7.txt", "e8.txt"] {
        let (m, _) = load(name);
        assert!(!is_nash_matrix(&m).unwrap(), "{name} must fail some pair");
    }
    println!("[criterion 2] PASS");
}

#[test]
fn criterion_3_minus2_star_thresholds() {
    for k in 3..=8usize {
        for r in 1..=(k as i64 + 2) {
            let result = minus2_star(k, r);
            let should_be_valid = 2 * r > k as i64;
            match result {
                Ok(m) => {
                    assert!(should_be_valid, "star k={k} r={r} should be invalid");
                    let nash = is_nash_matrix(&m).unwrap();
                    let threshold = 2 * r > (k + 1) as i64;
                    assert_eq!(nash, threshold, "star k={k} r={r}");
                    let v = cor_polygon_minus2(&m);
                    assert!(v.applicable, "star k={k} r={r}");
                    assert_eq!(
                        v.verdict == TheoremVerdict::NnTrue,
                        nash,
                        "closed form vs engine, star k={k} r={r}"
                    );
                }
                Err(err) => {
                    assert!(
                        !should_be_valid,
                        "star k={k} r={r} should be valid, got {err}"
                    );
                    assert!(matches!(err, ModelError::NotNegativeDefinite { .. }));
                }
            }
        }
    }
    println!("[criterion 3] PASS");
}

#[test]
fn criterion_4_witness_cross_validation() {
    let names = [
        "d4.txt",
        "e6.txt",
        "e7.txt",
        "e8.txt",
        "star_chains_10.txt",
        "star_chains_9.txt",
        "star_chains_8.txt",
        "tree_double_star_8.txt",
        "sandwich_a3.txt",
        "gencycle_8.txt",
    ];
    let mut failures: Vec<String> = Vec::new();
    for name in names {
        let (m, genus) = load(name);
        let c = canonical_vector(&m, &genus).unwrap();
        let report = cross_validate(&m, &c, 12).unwrap();
        let verdicts = nn_matrix(&m).unwrap();
        let true_pairs = (0..m.n())
            .flat_map(|i| (0..m.n()).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j && verdicts.verdict(i, j) == PairVerdict::True)
            .count();
        // Bookkeeping must be total regardless of outcome.
        assert_eq!(
            report.confirmed() + report.consistent_false() + report.mismatches(),
            m.n() * (m.n() - 1),
            "{name}: pair classification is not a partition"
        );
        assert_eq!(
            report.consistent_false(),
            m.n() * (m.n() - 1) - true_pairs,
            "{name}: a FALSE verdict was contradicted by a found witness"
        );
        if report.mismatches() != 0 {
            failures.push(format!(
                "{name}: {} of {} TRUE pairs unconfirmed at bound 12, e.g. {:?}",
                report.mismatches(),
                true_pairs,
                report
                    .mismatch_pairs()
                    .iter()
                    .take(4)
                    .collect::<Vec<_>>()
            ));
        }
    }
    if failures.is_empty() {
        println!("[criterion 4] PASS");
    } else {
        println!("[criterion 4] FAIL: witness search at bound 12 cannot confirm every TRUE pair");
        for line in &failures {
            println!("[criterion 4]   {line}");
        }
        println!(
            "[criterion 4]   the smallest witnesses for these pairs have entries larger than \
             12 (see tests/invariants.rs for explicit witnesses found beyond the bound), so \
             exhaustive search below the pinned bound returns none by necessity"
        );
    }
    assert!(
        failures.is_empty(),
        "cross-validation at bound 12 left unconfirmed TRUE pairs: {failures:?}"
    );
}

fn property_instances() -> Vec<(u64, IntersectionMatrix)> {
    (0..520u64)
        .map(|idx| {
            let n = 1 + (idx as usize) % 7;
            let m = if idx % 2 == 0 {
                generate_random(n, 1 + (idx / 2 % 3) as u32, 1_000 + idx)
            } else {
                generate_boundary(n, 2_000 + idx)
            };
            (idx, m)
        })
        .collect()
}

#[test]
fn criterion_5_property_suites() {
    let instances = property_instances();
    assert!(instances.len() >= 500);
    let mut rng = ChaCha8Rng::seed_from_u64(77);

    for (idx, m) in &instances {
        let n = m.n();
        let a = m.matrix();
        let verdicts = nn_matrix(m).unwrap();
        let nash = is_nash_matrix(m).unwrap();

        // (a) Separation: the two orders of a pair never both fail.
        for i in 0..n {
            for j in (i + 1)..n {
                let fwd = verdicts.verdict(i, j);
                let bwd = verdicts.verdict(j, i);
                assert!(
                    fwd == PairVerdict::True || bwd == PairVerdict::True,
                    "instance {idx}: pair ({i}, {j}) fails both ways"
                );
            }
        }

        // (b) Contraction result does not depend on elimination order.
        if n >= 2 {
            let keep_size = rng.gen_range(1..n);
            let mut all: Vec<usize> = (0..n).collect();
            all.shuffle(&mut rng);
            let mut keep: Vec<usize> = all[..keep_size].to_vec();
            keep.sort_unstable();
            let reference = schur_onto(a, &keep).unwrap();
            let complement: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
            for _ in 0..5 {
                let mut order = complement.clone();
                order.shuffle(&mut rng);
                let other = schur_onto_with_order(a, &keep, &order).unwrap();
                assert_eq!(reference, other, "instance {idx}: order {order:?}");
            }
        }

        // (c) Valid instances are negative definite and the determinant has
        // the sign forced by n negative pivots.
        assert!(is_negative_definite(a));
        let det = exact_determinant(a);
        if n % 2 == 0 {
            assert!(det > rational_int(0), "instance {idx}");
        } else {
            assert!(det < rational_int(0), "instance {idx}");
        }

        // (d) Level ladder: level l implies level l − 1.
        for l in 2..n {
            if star_condition(a, l).unwrap() {
                assert!(
                    star_condition(a, l - 1).unwrap(),
                    "instance {idx}: level {l} holds but level {} does not",
                    l - 1
                );
            }
        }

        // (e) A passing instance keeps passing on connected principal
        // submatrices and under making any diagonal entry more negative.
        if nash && n >= 2 {
            for _ in 0..3 {
                let keep = random_connected_subset(m, &mut rng);
                let sub = principal_submatrix(a, &keep).unwrap();
                let sub_m = IntersectionMatrix::new(sub)
                    .unwrap_or_else(|e| panic!("instance {idx}: subset {keep:?}: {e}"));
                assert!(
                    is_nash_matrix(&sub_m).unwrap(),
                    "instance {idx}: subset {keep:?} lost the property"
                );
            }
            let v = rng.gen_range(0..n);
            let mut rows: Vec<Vec<nashmat::ExactRational>> =
                (0..n).map(|i| a.row(i).to_vec()).collect();
            rows[v][v] = &rows[v][v] - &rational_int(1);
            let deeper =
                IntersectionMatrix::new(SymMatrix::from_rows(rows).unwrap()).unwrap();
            assert!(
                is_nash_matrix(&deeper).unwrap(),
                "instance {idx}: deepening vertex {v} lost the property"
            );
        }

        // (f) Structural criteria agree with the engine, and so does the
        // strict-component characterization whenever it applies.
        let verdict_list = nashmat::structural_verdicts(m);
        check_consistency(&verdict_list, nash)
            .unwrap_or_else(|e| panic!("instance {idx}: {e}"));
        if let Some(by_components) = nash_by_strict_components(m) {
            assert_eq!(by_components, nash, "instance {idx}");
        }
    }
    println!("[criterion 5] PASS");
}

fn random_connected_subset(m: &IntersectionMatrix, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let g = dual_graph(m);
    let n = m.n();
    let start = rng.gen_range(0..n);
    let target = rng.gen_range(1..=n);
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() && order.len() < target {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if !seen[w] && order.len() < target {
                seen[w] = true;
                order.push(w);
            }
        }
    }
    order.sort_unstable();
    order
}

#[test]
fn criterion_6_continued_fractions_match_contraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for case in 0..200 {
        let len = 1 + (case as usize) % 6;
        // Diagonally dominant chains: never a zero pivot.
        let couplings: Vec<i64> = (0..len.saturating_sub(1))
            .map(|_| rng.gen_range(1..=2))
            .collect();
        let diagonals: Vec<i64> = (0..len)
            .map(|v| {
                let incident: i64 = couplings
                    .iter()
                    .enumerate()
                    .filter(|&(e, _)| e == v || e + 1 == v)
                    .map(|(_, &w)| w)
                    .sum();
                -(incident + rng.gen_range(1..=3))
            })
            .collect();
        let mut rows = vec![vec![0i64; len]; len];
        for v in 0..len {
            rows[v][v] = diagonals[v];
        }
        for (e, &w) in couplings.iter().enumerate() {
            rows[e][e + 1] = w;
            rows[e + 1][e] = w;
        }
        let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        let matrix = SymMatrix::from_int_rows(&refs).unwrap();
        let pivot = schur_onto(&matrix, &[0]).unwrap().at(0, 0).clone();
        let cf = branch_continued_fraction(
            &diagonals.iter().map(|&d| rational_int(d)).collect::<Vec<_>>(),
            &couplings.iter().map(|&c| rational_int(c)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(cf, pivot, "case {case}: diag {diagonals:?} coup {couplings:?}");
    }
    println!("[criterion 6] PASS");
}
