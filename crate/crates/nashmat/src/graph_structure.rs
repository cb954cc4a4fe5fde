//! Dual-graph classification and structural criteria.
//!
//! These criteria read the shape of the dual graph (tree, cycle, star,
//! block decomposition) together with row sums and decide some verdicts
//! directly. They come in two strengths:
//!
//! - *exact* criteria are equivalences within their applicability domain and
//!   return `NN_TRUE` or `NN_FALSE`;
//! - *sufficient* criteria can only return `NN_TRUE`; when their hypotheses
//!   fail they return `INCONCLUSIVE`.
//!
//! A structural verdict never overrides the engine. Whenever an applicable
//! verdict is conclusive it must agree with [`crate::nash_engine`]; a
//! disagreement (checked by [`check_consistency`]) indicates a bug and is
//! treated as an internal error by callers.

use crate::core_linalg::ExactRational;
use crate::gauss_contraction::row_sums;
use crate::intersection_model::{dual_graph, DualGraph, IntersectionMatrix};
use num::{Signed, Zero};
use std::collections::VecDeque;
use std::fmt;
use thiserror::Error;

/// Errors from structural computations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    /// A branch must contain at least one vertex.
    #[error("branch must contain at least one vertex")]
    EmptyBranch,
    /// Mismatched diagonal/coupling counts.
    #[error("a branch with {diagonals} vertices needs {} couplings, got {couplings}", .diagonals - 1)]
    LengthMismatch { diagonals: usize, couplings: usize },
    /// A partial continued-fraction value hit zero (division by zero).
    #[error("continued fraction hit a zero partial value at position {position}")]
    ZeroPartialValue { position: usize },
}

/// Verdict of a structural criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremVerdict {
    /// All pair conditions hold.
    NnTrue,
    /// Some pair condition fails.
    NnFalse,
    /// The criterion cannot decide.
    Inconclusive,
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremVerdict::NnTrue => "NN_TRUE",
            TheoremVerdict::NnFalse => "NN_FALSE",
            TheoremVerdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Result of one structural criterion on one matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralVerdict {
    /// Stable identifier of the criterion.
    pub id: &'static str,
    /// Whether the criterion's hypotheses matched this input at all.
    pub applicable: bool,
    /// The verdict; conclusive only when `applicable`.
    pub verdict: TheoremVerdict,
    /// Human-readable justification fragments (1-based vertex labels).
    pub evidence: Vec<String>,
}

impl StructuralVerdict {
    fn not_applicable(id: &'static str, why: impl Into<String>) -> Self {
        Self {
            id,
            applicable: false,
            verdict: TheoremVerdict::Inconclusive,
            evidence: vec![why.into()],
        }
    }
}

/// A maximal 2-connected subgraph on at least three vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSubgraph {
    /// Sorted vertices of the block.
    pub vertices: Vec<usize>,
    /// Sorted cut vertices of the whole graph lying in this block.
    pub attachments: Vec<usize>,
}

/// A tree that is a star of chains: one root, every other vertex of degree
/// at most 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarShape {
    /// The root vertex.
    pub root: usize,
    /// The chains hanging off the root, each listed root-adjacent first,
    /// ordered by their first vertex.
    pub branches: Vec<Vec<usize>>,
}

/// Shape summary of a dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphClassification {
    /// Sorted degree-1 vertices.
    pub leaves: Vec<usize>,
    /// Whether the graph is a tree (connected with `n − 1` edges).
    pub is_tree: bool,
    /// Whether the graph is a single simple cycle (`n ≥ 3`, 2-regular).
    pub is_cycle: bool,
    /// Whether the graph is 2-vertex-connected on `n ≥ 3` vertices.
    pub is_generalized_cycle: bool,
    /// Star-of-chains structure, when the graph is one.
    pub star: Option<StarShape>,
    /// Blocks on `≥ 3` vertices with their attachment cut vertices.
    pub generalized_cycle_subgraphs: Vec<CycleSubgraph>,
    /// Sorted cut vertices of the graph.
    pub cut_vertices: Vec<usize>,
}

/// Block decomposition by depth-first search: returns the vertex sets of all
/// maximal 2-connected blocks (every edge lies in exactly one) and the cut
/// vertex flags.
fn block_decomposition(g: &DualGraph) -> (Vec<Vec<usize>>, Vec<bool>) {
    struct State<'a> {
        g: &'a DualGraph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        edge_stack: Vec<(usize, usize)>,
        blocks: Vec<Vec<usize>>,
        is_cut: Vec<bool>,
    }

    impl State<'_> {
        fn dfs(&mut self, u: usize, parent: Option<usize>) {
            self.time += 1;
            self.disc[u] = self.time;
            self.low[u] = self.time;
            let mut children = 0;
            for &v in self.g.neighbors(u) {
                if Some(v) == parent {
                    continue;
                }
                if self.disc[v] == 0 {
                    children += 1;
                    self.edge_stack.push((u, v));
                    self.dfs(v, Some(u));
                    self.low[u] = self.low[u].min(self.low[v]);
                    if self.low[v] >= self.disc[u] {
                        if parent.is_some() || children > 1 {
                            self.is_cut[u] = true;
                        }
                        let mut verts = Vec::new();
                        while let Some(&(a, b)) = self.edge_stack.last() {
                            self.edge_stack.pop();
                            verts.push(a);
                            verts.push(b);
                            if (a, b) == (u, v) {
                                break;
                            }
                        }
                        verts.sort_unstable();
                        verts.dedup();
                        self.blocks.push(verts);
                    }
                } else if self.disc[v] < self.disc[u] {
                    self.edge_stack.push((u, v));
                    self.low[u] = self.low[u].min(self.disc[v]);
                }
            }
        }
    }

    let n = g.n();
    let mut st = State {
        g,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        edge_stack: Vec::new(),
        blocks: Vec::new(),
        is_cut: vec![false; n],
    };
    for v in 0..n {
        if st.disc[v] == 0 {
            st.dfs(v, None);
        }
    }
    st.blocks.sort();
    let is_cut = st.is_cut;
    (st.blocks, is_cut)
}

/// Detects a star-of-chains in a tree: at most one vertex of degree `≥ 3`.
fn detect_star(g: &DualGraph, is_tree: bool) -> Option<StarShape> {
    if !is_tree || g.n() < 3 {
        return None;
    }
    let high: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 3).collect();
    let root = match high.len() {
        0 => {
            // A path: only the 3-vertex path has a canonical center.
            if g.n() == 3 {
                (0..3).find(|&v| g.degree(v) == 2)?
            } else {
                return None;
            }
        }
        1 => high[0],
        _ => return None,
    };
    let mut branches = Vec::new();
    for &start in g.neighbors(root) {
        let mut branch = vec![start];
        let mut prev = root;
        let mut cur = start;
        while g.degree(cur) == 2 {
            let &next = g
                .neighbors(cur)
                .iter()
                .find(|&&w| w != prev)
                .expect("degree-2 vertex has another neighbor");
            branch.push(next);
            prev = cur;
            cur = next;
        }
        branches.push(branch);
    }
    Some(StarShape { root, branches })
}

/// Classifies the shape of a dual graph.
pub fn classify(g: &DualGraph) -> GraphClassification {
    let n = g.n();
    let leaves: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 1).collect();
    let is_tree = g.edge_count() == n - 1;
    let is_cycle = n >= 3 && (0..n).all(|v| g.degree(v) == 2);
    let (blocks, is_cut) = block_decomposition(g);
    let cut_vertices: Vec<usize> = (0..n).filter(|&v| is_cut[v]).collect();
    let is_generalized_cycle = n >= 3 && blocks.len() == 1 && blocks[0].len() == n;
    let generalized_cycle_subgraphs: Vec<CycleSubgraph> = blocks
        .iter()
        .filter(|b| b.len() >= 3)
        .map(|b| CycleSubgraph {
            vertices: b.clone(),
            attachments: b.iter().copied().filter(|&v| is_cut[v]).collect(),
        })
        .collect();
    let star = detect_star(g, is_tree);
    GraphClassification {
        leaves,
        is_tree,
        is_cycle,
        is_generalized_cycle,
        star,
        generalized_cycle_subgraphs,
        cut_vertices,
    }
}

fn label(v: usize) -> usize {
    v + 1
}

fn label_set(vs: &[usize]) -> String {
    let labels: Vec<String> = vs.iter().map(|&v| label(v).to_string()).collect();
    format!("{{{}}}", labels.join(", "))
}

/// Flags edges carrying an intersection number `≥ 2`; the graph-shape
/// criteria treat such an edge as a single edge, which is only justified for
/// the row-sum arguments used here.
fn heavy_edge_notes(m: &IntersectionMatrix, g: &DualGraph) -> Vec<String> {
    let two = crate::core_linalg::rational_int(2);
    g.edges()
        .iter()
        .filter(|&&(i, j)| *m.at(i, j) >= two)
        .map(|&(i, j)| {
            format!(
                "edge ({}, {}) has intersection number ≥ 2 and is treated as a single edge",
                label(i),
                label(j)
            )
        })
        .collect()
}

/// Exact necessary condition from leaves: a leaf whose row sum is `≥ 0`
/// fails the pair toward its neighbor, because contraction never changes a
/// leaf's row. Always applicable; `NN_FALSE` or `INCONCLUSIVE`.
pub fn thm_leaf_necessary(m: &IntersectionMatrix) -> StructuralVerdict {
    let g = dual_graph(m);
    let rs = row_sums(m.matrix());
    let bad: Vec<usize> = (0..m.n())
        .filter(|&v| g.degree(v) == 1 && !rs[v].is_negative())
        .collect();
    if bad.is_empty() {
        StructuralVerdict {
            id: "leaf_necessary",
            applicable: true,
            verdict: TheoremVerdict::Inconclusive,
            evidence: vec!["every leaf has a strictly negative row sum".into()],
        }
    } else {
        let evidence = bad
            .iter()
            .map(|&v| {
                format!(
                    "leaf {} has row sum {} ≥ 0, so the pair ({}, {}) fails",
                    label(v),
                    rs[v],
                    label(v),
                    label(g.neighbors(v)[0])
                )
            })
            .collect();
        StructuralVerdict {
            id: "leaf_necessary",
            applicable: true,
            verdict: TheoremVerdict::NnFalse,
            evidence,
        }
    }
}

/// Exact criterion for trees with all row sums `≤ 0`: all pair conditions
/// hold iff every leaf's row sum is strictly negative.
pub fn thm_tree(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "tree";
    let g = dual_graph(m);
    let cls = classify(&g);
    if !cls.is_tree {
        return StructuralVerdict::not_applicable(ID, "the dual graph is not a tree");
    }
    let rs = row_sums(m.matrix());
    if let Some(v) = rs.iter().position(|s| s.is_positive()) {
        return StructuralVerdict::not_applicable(
            ID,
            format!("row sum of vertex {} is {} > 0", label(v), rs[v]),
        );
    }
    let weak: Vec<usize> = cls
        .leaves
        .iter()
        .copied()
        .filter(|&v| rs[v].is_zero())
        .collect();
    if weak.is_empty() {
        StructuralVerdict {
            id: ID,
            applicable: true,
            verdict: TheoremVerdict::NnTrue,
            evidence: vec![
                "tree with non-positive row sums and strictly negative leaf row sums".into(),
            ],
        }
    } else {
        StructuralVerdict {
            id: ID,
            applicable: true,
            verdict: TheoremVerdict::NnFalse,
            evidence: vec![format!(
                "leaves with zero row sum: {}",
                label_set(&weak)
            )],
        }
    }
}

/// Exact criterion for simple cycles with all row sums `≤ 0`: all pair
/// conditions hold iff at least two vertices have strictly negative row sums.
pub fn thm_cycle(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "cycle";
    let g = dual_graph(m);
    let cls = classify(&g);
    if !cls.is_cycle {
        return StructuralVerdict::not_applicable(ID, "the dual graph is not a single cycle");
    }
    let rs = row_sums(m.matrix());
    if let Some(v) = rs.iter().position(|s| s.is_positive()) {
        return StructuralVerdict::not_applicable(
            ID,
            format!("row sum of vertex {} is {} > 0", label(v), rs[v]),
        );
    }
    cycle_strict_count_verdict(ID, m, &g, &rs)
}

/// Shared verdict for cycle-shaped criteria: count strict row sums.
fn cycle_strict_count_verdict(
    id: &'static str,
    m: &IntersectionMatrix,
    g: &DualGraph,
    rs: &[ExactRational],
) -> StructuralVerdict {
    let strict: Vec<usize> = (0..m.n()).filter(|&v| rs[v].is_negative()).collect();
    let mut evidence = vec![format!(
        "vertices with strictly negative row sum: {}",
        label_set(&strict)
    )];
    evidence.extend(heavy_edge_notes(m, g));
    let verdict = if strict.len() >= 2 {
        TheoremVerdict::NnTrue
    } else {
        TheoremVerdict::NnFalse
    };
    StructuralVerdict {
        id,
        applicable: true,
        verdict,
        evidence,
    }
}

/// Exact criterion for 2-vertex-connected graphs on `≥ 3` vertices with all
/// row sums `≤ 0`: same strict-count test as [`thm_cycle`].
pub fn cor_generalized_cycle(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "generalized_cycle";
    let g = dual_graph(m);
    let cls = classify(&g);
    if !cls.is_generalized_cycle {
        return StructuralVerdict::not_applicable(
            ID,
            "the dual graph is not 2-vertex-connected on ≥ 3 vertices",
        );
    }
    let rs = row_sums(m.matrix());
    if let Some(v) = rs.iter().position(|s| s.is_positive()) {
        return StructuralVerdict::not_applicable(
            ID,
            format!("row sum of vertex {} is {} > 0", label(v), rs[v]),
        );
    }
    cycle_strict_count_verdict(ID, m, &g, &rs)
}

/// Exact criterion for mixed shapes (blocks joined through cut vertices,
/// pendant trees allowed) with all row sums `≤ 0` and every leaf strict:
/// all pair conditions hold iff every *leaf block* (a block on `≥ 3`
/// vertices containing at most one cut vertex) has an interior vertex
/// (not a cut vertex) with a strictly negative row sum.
pub fn thm_mixed(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "mixed";
    let g = dual_graph(m);
    let cls = classify(&g);
    if m.n() < 3 {
        return StructuralVerdict::not_applicable(ID, "fewer than 3 vertices");
    }
    if cls.is_generalized_cycle {
        return StructuralVerdict::not_applicable(
            ID,
            "the whole graph is 2-vertex-connected; use the generalized-cycle criterion",
        );
    }
    let rs = row_sums(m.matrix());
    if let Some(v) = rs.iter().position(|s| s.is_positive()) {
        return StructuralVerdict::not_applicable(
            ID,
            format!("row sum of vertex {} is {} > 0", label(v), rs[v]),
        );
    }
    let weak_leaves: Vec<usize> = cls
        .leaves
        .iter()
        .copied()
        .filter(|&v| !rs[v].is_negative())
        .collect();
    if !weak_leaves.is_empty() {
        return StructuralVerdict::not_applicable(
            ID,
            format!(
                "leaves without strictly negative row sum: {}",
                label_set(&weak_leaves)
            ),
        );
    }

    let mut evidence = Vec::new();
    evidence.extend(heavy_edge_notes(m, &g));
    let mut failures = Vec::new();
    for block in &cls.generalized_cycle_subgraphs {
        if block.attachments.len() > 1 {
            continue; // interior blocks are covered by their neighbors
        }
        let interior: Vec<usize> = block
            .vertices
            .iter()
            .copied()
            .filter(|v| !block.attachments.contains(v))
            .collect();
        let strict: Vec<usize> = interior
            .iter()
            .copied()
            .filter(|&v| rs[v].is_negative())
            .collect();
        if strict.is_empty() {
            failures.push(format!(
                "leaf block {} has no interior vertex with a strictly negative row sum",
                label_set(&block.vertices)
            ));
        } else {
            evidence.push(format!(
                "leaf block {}: strict interior vertices {}",
                label_set(&block.vertices),
                label_set(&strict)
            ));
        }
    }
    if failures.is_empty() {
        if cls.generalized_cycle_subgraphs.is_empty() {
            evidence.push("no blocks on ≥ 3 vertices; the tree argument applies".into());
        }
        StructuralVerdict {
            id: ID,
            applicable: true,
            verdict: TheoremVerdict::NnTrue,
            evidence,
        }
    } else {
        evidence.extend(failures);
        StructuralVerdict {
            id: ID,
            applicable: true,
            verdict: TheoremVerdict::NnFalse,
            evidence,
        }
    }
}

/// Exact criterion for stars whose branches are all single vertices
/// (`n ≥ 3`): closed-form tests for the three pair families
/// (leaf → root, leaf → leaf, root → leaf).
pub fn thm_polygon(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "polygon";
    let g = dual_graph(m);
    let cls = classify(&g);
    let Some(star) = cls.star.as_ref() else {
        return StructuralVerdict::not_applicable(ID, "the dual graph is not a star of chains");
    };
    if !star.branches.iter().all(|b| b.len() == 1) {
        return StructuralVerdict::not_applicable(
            ID,
            "some branch has more than one vertex",
        );
    }
    let r = star.root;
    let leaves: Vec<usize> = star.branches.iter().map(|b| b[0]).collect();
    let a = m.matrix();
    // Fully contracted root value Δ = a_rr − Σ_k a_rk² / a_kk.
    let mut delta = a.at(r, r).clone();
    for &k in &leaves {
        delta -= &(&(a.at(r, k) * a.at(r, k)) / a.at(k, k));
    }
    let mut evidence = vec![format!(
        "root {}, contracted root value {}",
        label(r),
        delta
    )];
    // Family 1: leaf → root.
    for &i in &leaves {
        let value = a.at(i, i) + a.at(r, i);
        if !value.is_negative() {
            evidence.push(format!(
                "pair ({}, {}) fails: leaf row value {} ≥ 0",
                label(i),
                label(r),
                value
            ));
            return StructuralVerdict {
                id: ID,
                applicable: true,
                verdict: TheoremVerdict::NnFalse,
                evidence,
            };
        }
    }
    // Family 2: leaf → leaf (ordered).
    for &i in &leaves {
        for &j in &leaves {
            if i == j {
                continue;
            }
            let value = &(&(a.at(i, i) * a.at(j, j)) * &delta)
                + &(a.at(r, j) * &(&(a.at(i, i) * a.at(r, j)) - &(a.at(j, j) * a.at(r, i))));
            if !value.is_negative() {
                evidence.push(format!(
                    "pair ({}, {}) fails: leaf-pair value {} ≥ 0",
                    label(i),
                    label(j),
                    value
                ));
                return StructuralVerdict {
                    id: ID,
                    applicable: true,
                    verdict: TheoremVerdict::NnFalse,
                    evidence,
                };
            }
        }
    }
    // Family 3: root → leaf.
    for &i in &leaves {
        let value = &(&(a.at(r, i) / a.at(i, i)) * &(a.at(i, i) + a.at(r, i))) + &delta;
        if !value.is_negative() {
            evidence.push(format!(
                "pair ({}, {}) fails: root-pair value {} ≥ 0",
                label(r),
                label(i),
                value
            ));
            return StructuralVerdict {
                id: ID,
                applicable: true,
                verdict: TheoremVerdict::NnFalse,
                evidence,
            };
        }
    }
    evidence.push("all three pair families pass their closed-form tests".into());
    StructuralVerdict {
        id: ID,
        applicable: true,
        verdict: TheoremVerdict::NnTrue,
        evidence,
    }
}

/// Exact threshold for stars with unit couplings and weight `−2` leaves:
/// with `k = n − 1` leaves, all pair conditions hold iff the root weight `w`
/// satisfies `−w > n / 2`. The only pairs that can fail are root → leaf.
pub fn cor_polygon_minus2(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "polygon_minus2";
    let g = dual_graph(m);
    let cls = classify(&g);
    let Some(star) = cls.star.as_ref() else {
        return StructuralVerdict::not_applicable(ID, "the dual graph is not a star of chains");
    };
    if !star.branches.iter().all(|b| b.len() == 1) {
        return StructuralVerdict::not_applicable(ID, "some branch has more than one vertex");
    }
    let r = star.root;
    let minus_two = crate::core_linalg::rational_int(-2);
    let one = crate::core_linalg::rational_int(1);
    let uniform = star.branches.iter().all(|b| {
        let v = b[0];
        *m.at(v, v) == minus_two && *m.at(r, v) == one
    });
    if !uniform {
        return StructuralVerdict::not_applicable(
            ID,
            "leaves must all have weight -2 and unit coupling to the root",
        );
    }
    let n = m.n();
    // −w > n/2  ⟺  −2·a_rr > n.
    let threshold_holds =
        -(m.at(r, r) * crate::core_linalg::rational_int(2)) > crate::core_linalg::rational_int(n as i64);
    let evidence = vec![format!(
        "root weight {} against threshold {}/2; failures can only occur on root → leaf pairs",
        m.at(r, r),
        n
    )];
    StructuralVerdict {
        id: ID,
        applicable: true,
        verdict: if threshold_holds {
            TheoremVerdict::NnTrue
        } else {
            TheoremVerdict::NnFalse
        },
        evidence,
    }
}

/// Value of a branch as a continued fraction. `diagonals` lists the branch
/// vertices' diagonal entries starting at the root-adjacent vertex;
/// `couplings[k]` couples vertex `k` to vertex `k + 1`, so there is one
/// coupling fewer than there are diagonals. The value is
///
/// ```text
/// q = d_1 − c_1² / (d_2 − c_2² / (… − c_{m−1}² / d_m))
/// ```
///
/// which equals the pivot obtained by contracting the branch onto its
/// root-adjacent vertex from the far end.
pub fn branch_continued_fraction(
    diagonals: &[ExactRational],
    couplings: &[ExactRational],
) -> Result<ExactRational, StructureError> {
    if diagonals.is_empty() {
        return Err(StructureError::EmptyBranch);
    }
    if couplings.len() + 1 != diagonals.len() {
        return Err(StructureError::LengthMismatch {
            diagonals: diagonals.len(),
            couplings: couplings.len(),
        });
    }
    let mut q = diagonals[diagonals.len() - 1].clone();
    for k in (0..couplings.len()).rev() {
        if q.is_zero() {
            return Err(StructureError::ZeroPartialValue { position: k + 1 });
        }
        q = &diagonals[k] - &(&(&couplings[k] * &couplings[k]) / &q);
    }
    Ok(q)
}

/// Sufficient criterion for stars of chains with at least three branches.
/// With `q_b` the continued-fraction value of branch `b`, the conditions
///
/// 1. every leaf row sum is strictly negative,
/// 2. every non-root row sum is `≤ 0`,
/// 3. for every pair of branches `i ≠ j`:
///    `a_rr + a_ri + a_rj − Σ_{b ∉ {i,j}} a_rb² / q_b ≤ 0`
///
/// together imply all pair conditions. When any of them fails the criterion
/// is inconclusive (never `NN_FALSE`).
pub fn thm_like_star(m: &IntersectionMatrix) -> StructuralVerdict {
    const ID: &str = "like_star";
    let g = dual_graph(m);
    let cls = classify(&g);
    let Some(star) = cls.star.as_ref() else {
        return StructuralVerdict::not_applicable(ID, "the dual graph is not a star of chains");
    };
    if star.branches.len() < 3 {
        return StructuralVerdict::not_applicable(ID, "fewer than three branches");
    }
    let r = star.root;
    let a = m.matrix();
    let rs = row_sums(a);

    let inconclusive = |evidence: Vec<String>| StructuralVerdict {
        id: ID,
        applicable: true,
        verdict: TheoremVerdict::Inconclusive,
        evidence,
    };

    for &v in &cls.leaves {
        if !rs[v].is_negative() {
            return inconclusive(vec![format!(
                "leaf {} has row sum {} ≥ 0 (condition 1 fails)",
                label(v),
                rs[v]
            )]);
        }
    }
    for v in 0..m.n() {
        if v != r && rs[v].is_positive() {
            return inconclusive(vec![format!(
                "non-root vertex {} has row sum {} > 0 (condition 2 fails)",
                label(v),
                rs[v]
            )]);
        }
    }

    let mut q_values = Vec::with_capacity(star.branches.len());
    for branch in &star.branches {
        let diagonals: Vec<ExactRational> =
            branch.iter().map(|&v| a.at(v, v).clone()).collect();
        let couplings: Vec<ExactRational> = branch
            .windows(2)
            .map(|w| a.at(w[0], w[1]).clone())
            .collect();
        match branch_continued_fraction(&diagonals, &couplings) {
            Ok(q) => q_values.push(q),
            Err(err) => {
                return inconclusive(vec![format!(
                    "branch starting at {} has a degenerate continued fraction: {err}",
                    label(branch[0])
                )]);
            }
        }
    }
    let mut evidence: Vec<String> = star
        .branches
        .iter()
        .zip(&q_values)
        .map(|(branch, q)| {
            format!("branch starting at {}: contracted value {}", label(branch[0]), q)
        })
        .collect();

    let s = star.branches.len();
    for i in 0..s {
        for j in (i + 1)..s {
            let mut value = a.at(r, r).clone();
            value += a.at(r, star.branches[i][0]);
            value += a.at(r, star.branches[j][0]);
            for (b, branch) in star.branches.iter().enumerate() {
                if b == i || b == j {
                    continue;
                }
                let coupling = a.at(r, branch[0]);
                value -= &(&(coupling * coupling) / &q_values[b]);
            }
            if value.is_positive() {
                evidence.push(format!(
                    "branch pair (starting at {}, {}) gives {} > 0 (condition 3 fails)",
                    label(star.branches[i][0]),
                    label(star.branches[j][0]),
                    value
                ));
                return inconclusive(evidence);
            }
        }
    }
    evidence.push("all three sufficient conditions hold".into());
    StructuralVerdict {
        id: ID,
        applicable: true,
        verdict: TheoremVerdict::NnTrue,
        evidence,
    }
}

/// Cheap sufficient/exact shortcuts:
///
/// - `quick_dominance` (sufficient, any `n`): if `min_i(−a_ii)` exceeds
///   `(n − 1) · max off-diagonal entry`, every contraction keeps all row
///   sums strictly negative, so all pair conditions hold.
/// - `quick_n3` (exact, `n = 3`): closed form for each ordered pair by
///   eliminating the third vertex.
pub fn quick_criteria(m: &IntersectionMatrix) -> Vec<StructuralVerdict> {
    let n = m.n();
    let a = m.matrix();
    let mut out = Vec::new();

    // quick_dominance
    {
        let min_diag_mag = (0..n)
            .map(|i| -a.at(i, i).clone())
            .min()
            .expect("non-empty matrix");
        let mut max_off = ExactRational::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j && *a.at(i, j) > max_off {
                    max_off = a.at(i, j).clone();
                }
            }
        }
        let rhs = crate::core_linalg::rational_int(n as i64 - 1) * &max_off;
        let holds = min_diag_mag > rhs;
        out.push(StructuralVerdict {
            id: "quick_dominance",
            applicable: true,
            verdict: if holds {
                TheoremVerdict::NnTrue
            } else {
                TheoremVerdict::Inconclusive
            },
            evidence: vec![format!(
                "smallest diagonal magnitude {min_diag_mag} vs (n−1)·max off-diagonal = {rhs}"
            )],
        });
    }

    // quick_n3
    if n != 3 {
        out.push(StructuralVerdict::not_applicable(
            "quick_n3",
            "only defined for n = 3",
        ));
    } else {
        let mut verdict = TheoremVerdict::NnTrue;
        let mut evidence = Vec::new();
        'pairs: for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let k = 3 - i - j;
                // Row-of-i sum of the 2×2 complement is negative iff
                // a_ki·a_kj − a_ij·a_kk < a_ii·a_kk − a_ki².
                let lhs = &(a.at(k, i) * a.at(k, j)) - &(a.at(i, j) * a.at(k, k));
                let rhs = &(a.at(i, i) * a.at(k, k)) - &(a.at(k, i) * a.at(k, i));
                if lhs >= rhs {
                    verdict = TheoremVerdict::NnFalse;
                    evidence.push(format!(
                        "ordered pair ({}, {}) fails the closed-form test",
                        label(i),
                        label(j)
                    ));
                    break 'pairs;
                }
            }
        }
        if verdict == TheoremVerdict::NnTrue {
            evidence.push("all six ordered pairs pass the closed-form test".into());
        }
        out.push(StructuralVerdict {
            id: "quick_n3",
            applicable: true,
            verdict,
            evidence,
        });
    }
    out
}

/// Runs every structural criterion in a fixed order.
pub fn structural_verdicts(m: &IntersectionMatrix) -> Vec<StructuralVerdict> {
    let mut out = vec![
        thm_leaf_necessary(m),
        thm_tree(m),
        thm_cycle(m),
        cor_generalized_cycle(m),
        thm_mixed(m),
        thm_polygon(m),
        cor_polygon_minus2(m),
        thm_like_star(m),
    ];
    out.extend(quick_criteria(m));
    out
}

/// A conclusive structural verdict that contradicts the engine.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("structural criterion '{id}' says {verdict} but the engine says is_nash = {engine}")]
pub struct ConsistencyError {
    /// Criterion identifier.
    pub id: String,
    /// The structural verdict.
    pub verdict: TheoremVerdict,
    /// The engine's overall verdict.
    pub engine: bool,
}

/// Checks that every applicable, conclusive structural verdict agrees with
/// the engine's overall verdict. Structural criteria never override the
/// engine; a disagreement is an internal error.
pub fn check_consistency(
    verdicts: &[StructuralVerdict],
    engine_is_nash: bool,
) -> Result<(), ConsistencyError> {
    for v in verdicts {
        if !v.applicable {
            continue;
        }
        let conflict = match v.verdict {
            TheoremVerdict::NnTrue => !engine_is_nash,
            TheoremVerdict::NnFalse => engine_is_nash,
            TheoremVerdict::Inconclusive => false,
        };
        if conflict {
            return Err(ConsistencyError {
                id: v.id.to_string(),
                verdict: v.verdict,
                engine: engine_is_nash,
            });
        }
    }
    Ok(())
}

/// Independent quadratic-time characterization used as a test oracle: when
/// every row sum is `≤ 0`, all pair conditions hold iff for every vertex
/// `j`, every connected component of the graph minus `j` contains a vertex
/// with a strictly negative row sum. Returns `None` when some row sum is
/// positive (the characterization does not apply).
pub fn nash_by_strict_components(m: &IntersectionMatrix) -> Option<bool> {
    let rs = row_sums(m.matrix());
    if rs.iter().any(|s| s.is_positive()) {
        return None;
    }
    let g = dual_graph(m);
    let n = m.n();
    if n == 1 {
        return Some(true);
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        seen[j] = true;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            // BFS one component of the graph minus j.
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            let mut has_strict = false;
            while let Some(u) = queue.pop_front() {
                if rs[u].is_negative() {
                    has_strict = true;
                }
                for &w in g.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            if !has_strict {
                return Some(false);
            }
        }
    }
    Some(true)
}
