//! Constructive extractors: each replays a reduction pipeline and returns a
//! certificate that is re-verified before being handed out.
//!
//! Guarantee mode enforces the size thresholds under which success is
//! promised (6(n-1)^2-3 for center-path shapes, 6n degree-3 vertices, 12n^2,
//! 192n^3 and 4608n^5 for ladders, 110592n^7 for the path pipeline) and
//! treats internal dead ends as hard errors. Best-effort mode runs the same
//! pipelines without the floors and may return an inconclusive outcome.
//! Early exits — the "unless G has a cycle ..." clauses — are successes in
//! both modes.

mod cliques;
mod fan;
mod ladder;
mod path;

pub use cliques::{induced_p4_between, matched_cliques_from_components};
pub use fan::{center_path_to_cycle, fan_to_cycle};
pub use ladder::{ladder_deg3_to_cycle, ladder_to_cycle};
pub use path::{
    build_patched_path, patched_path_to_ladder, path_to_cycle, shorten_path, PatchedOutcome,
    ShortenOutcome,
};

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::Error;
use crate::families::FamilySpec;
use crate::graph::Graph;
use crate::trace::{OpTrace, TraceBuilder};

#[derive(Clone, Debug, Default)]
pub struct ExtractStats {
    pub steps: usize,
    pub wall_ms: u128,
}

/// A finished extraction: the trace replays on the original input and its
/// claim has been verified.
#[derive(Clone, Debug)]
pub struct ExtractionReport {
    pub trace: OpTrace,
    pub target: FamilySpec,
    pub stats: ExtractStats,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Guarantee,
    BestEffort,
}

/// Extraction outcome under a mode that allows inconclusive results.
#[derive(Clone, Debug)]
pub enum Extraction {
    Done(ExtractionReport),
    Inconclusive(String),
}

impl Extraction {
    pub fn report(self) -> Option<ExtractionReport> {
        match self {
            Extraction::Done(r) => Some(r),
            Extraction::Inconclusive(_) => None,
        }
    }
}

/// Internal stage result: either the pipeline completed with an induced
/// cycle (given in cycle order) on the builder's current graph, or it
/// produced the stage's structural output, or (best-effort only) it got
/// stuck.
pub(crate) enum StageOut<T> {
    Cycle(Vec<u32>),
    Out(T),
    Stuck(String),
}

/// Delete everything off the cycle, shrink it to exactly `target_len` by
/// complement-and-delete steps, and package the verified report.
pub(crate) fn finish_cycle(
    source: &Graph,
    mut b: TraceBuilder,
    cycle: Vec<u32>,
    target_len: usize,
    started: Instant,
) -> Result<ExtractionReport, Error> {
    if cycle.len() < target_len || target_len < 3 {
        return Err(Error::invalid(
            "extract",
            format!("cycle of length {} cannot reach {}", cycle.len(), target_len),
        ));
    }
    let on_cycle: BTreeSet<u32> = cycle.iter().copied().collect();
    let extra: Vec<u32> = b
        .graph
        .vertices()
        .into_iter()
        .filter(|v| !on_cycle.contains(v))
        .collect();
    b.delete(&extra)?;
    let mut order = cycle;
    debug_assert!(is_induced_cycle(&b.graph, &order));
    while order.len() > target_len {
        let v = order[1];
        b.lc(v)?;
        b.delete(&[v])?;
        order.remove(1);
    }
    let keep: Vec<u32> = order.clone();
    let trace = b.finish(Some(keep), Some(FamilySpec::Cycle(target_len)));
    trace.replay_verified(source)?;
    Ok(ExtractionReport {
        stats: ExtractStats {
            steps: trace.steps.len(),
            wall_ms: started.elapsed().as_millis(),
        },
        trace,
        target: FamilySpec::Cycle(target_len),
    })
}

pub(crate) fn is_induced_cycle(g: &Graph, order: &[u32]) -> bool {
    let m = order.len();
    if m < 3 || g.n() < m {
        return false;
    }
    let set: BTreeSet<u32> = order.iter().copied().collect();
    if set.len() != m {
        return false;
    }
    for (k, &v) in order.iter().enumerate() {
        let prev = order[(k + m - 1) % m];
        let next = order[(k + 1) % m];
        let nbrs_in: Vec<u32> = g
            .neighbors(v)
            .into_iter()
            .filter(|u| set.contains(u))
            .collect();
        let mut want = vec![prev, next];
        want.sort_unstable();
        want.dedup();
        if nbrs_in != want {
            return false;
        }
    }
    true
}

/// Shortest path between two vertices (always an induced path).
pub(crate) fn shortest_path(g: &Graph, from: u32, to: u32) -> Option<Vec<u32>> {
    use std::collections::{HashMap, VecDeque};
    let mut prev: HashMap<u32, u32> = HashMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    prev.insert(from, from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for u in g.neighbors(v) {
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(u) {
                e.insert(v);
                queue.push_back(u);
            }
        }
    }
    None
}

/// Heuristic long induced path: double sweep of shortest paths (a shortest
/// path is always induced).
pub fn find_induced_path(g: &Graph) -> Vec<u32> {
    let verts = g.vertices();
    let Some(&start) = verts.first() else {
        return Vec::new();
    };
    let far = |from: u32| -> u32 {
        use std::collections::{HashMap, VecDeque};
        let mut dist: HashMap<u32, usize> = HashMap::new();
        let mut queue = VecDeque::new();
        dist.insert(from, 0);
        queue.push_back(from);
        let mut best = (from, 0usize);
        while let Some(v) = queue.pop_front() {
            let d = dist[&v];
            if d > best.1 {
                best = (v, d);
            }
            for u in g.neighbors(v) {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(u) {
                    e.insert(d + 1);
                    queue.push_back(u);
                }
            }
        }
        best.0
    };
    let a = far(start);
    let b = far(a);
    let mut path = shortest_path(g, a, b).unwrap_or_else(|| vec![start]);
    // greedy extension at both ends keeps the path induced: a candidate may
    // only touch the end it extends
    loop {
        let set: BTreeSet<u32> = path.iter().copied().collect();
        let extend_at = |end: u32| -> Option<u32> {
            g.neighbors(end).into_iter().find(|&u| {
                !set.contains(&u)
                    && g.neighbors(u)
                        .iter()
                        .all(|w| !set.contains(w) || *w == end)
            })
        };
        if let Some(u) = extend_at(*path.last().unwrap()) {
            path.push(u);
            continue;
        }
        if let Some(u) = extend_at(path[0]) {
            path.insert(0, u);
            continue;
        }
        break;
    }
    path
}
