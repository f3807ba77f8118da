//! Patched paths: auxiliary vertices attached to an induced path under three
//! adjacency clauses.

use crate::graph::Graph;

/// A k-patch of the induced path `path` = v_0..v_n: patch vertices
/// w_1..w_k (stored 0-based) with, for each i (1-based):
/// (i)   v_{i+2} is the only neighbor of w_i among v_{i+1}, …, v_n;
/// (ii)  for i > 1, N(w_i) ∩ {v_0..v_i, w_1..w_{i-1}} is nonempty and not
///       exactly {v_i, w_{i-1}};
/// (iii) N(w_1) ∩ {v_0, v_1} = {v_0}.
#[derive(Clone, Debug)]
pub struct PatchView {
    pub path: Vec<u32>,
    pub patch: Vec<u32>,
}

/// Which clause failed, with the offending 1-based patch index.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PatchViolation {
    NotInducedPath,
    Overlap,
    ClauseI(usize),
    ClauseII(usize),
    ClauseIII,
}

impl PatchView {
    pub fn is_full(&self) -> bool {
        self.path.len() >= 2 && self.patch.len() == self.path.len().saturating_sub(3)
    }
}

/// Check the k-patch conditions; pinpoints the first failing clause.
#[allow(clippy::needless_range_loop)]
pub fn validate_patch(g: &Graph, path: &[u32], patch: &[u32]) -> Result<(), PatchViolation> {
    // the sequence must be an induced path in the given orientation
    match crate::families::path_order_within(g, path) {
        Some(order) => {
            let mut rev = path.to_vec();
            rev.reverse();
            if order != path && order != rev {
                return Err(PatchViolation::NotInducedPath);
            }
        }
        None => return Err(PatchViolation::NotInducedPath),
    }
    let on_path: std::collections::BTreeSet<u32> = path.iter().copied().collect();
    let mut seen = std::collections::BTreeSet::new();
    for &w in patch {
        if on_path.contains(&w) || !seen.insert(w) {
            return Err(PatchViolation::Overlap);
        }
    }
    let n = path.len() - 1; // path length in edges
    for (idx, &w) in patch.iter().enumerate() {
        let i = idx + 1;
        // (i): among v_{i+1}..v_n exactly v_{i+2}
        for j in i + 1..=n {
            let want = j == i + 2;
            if g.has_edge(w, path[j]) != want {
                return Err(PatchViolation::ClauseI(i));
            }
        }
        if i == 1 {
            // (iii)
            if !g.has_edge(w, path[0]) || g.has_edge(w, path[1]) {
                return Err(PatchViolation::ClauseIII);
            }
        } else {
            // (ii)
            let mut trace: Vec<u32> = Vec::new();
            for &v in path.iter().take(i + 1) {
                if g.has_edge(w, v) {
                    trace.push(v);
                }
            }
            for &wp in patch.iter().take(idx) {
                if g.has_edge(w, wp) {
                    trace.push(wp);
                }
            }
            let exactly_vi_wprev = trace.len() == 2
                && trace.contains(&path[i])
                && trace.contains(&patch[idx - 1]);
            if trace.is_empty() || exactly_vi_wprev {
                return Err(PatchViolation::ClauseII(i));
            }
        }
    }
    Ok(())
}

/// The paper's example instance: a 4-patched path of length 8.
pub fn figure_patched_example() -> (Graph, PatchView) {
    // path v_0..v_8 = 0..8, patch w_1..w_4 = 9..12
    let mut edges: Vec<(u32, u32)> = (0..8).map(|i| (i, i + 1)).collect();
    edges.extend_from_slice(&[
        (9, 3),
        (10, 4),
        (11, 5),
        (12, 6), // w_i v_{i+2}
        (9, 0),  // w_1 v_0
        (10, 9),
        (10, 1), // w_2: w_1 and v_1
        (11, 9),
        (11, 3), // w_3: w_1 and v_3
        (12, 4), // w_4: v_4
    ]);
    let g = Graph::from_edges(13, &edges).unwrap();
    (
        g,
        PatchView {
            path: (0..=8).collect(),
            patch: (9..=12).collect(),
        },
    )
}
