//! Generalized ladders: two vertex-disjoint paths covering all vertices plus
//! non-crossing chords, with corner chords p_1q_1 and p_aq_b present.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::Graph;

/// A structural overlay on a graph: the defining paths in order. Chords are
/// every edge with one end on each path, other than path edges.
#[derive(Clone, Debug)]
pub struct LadderView {
    pub graph: Graph,
    pub p_order: Vec<u32>,
    pub q_order: Vec<u32>,
}

#[derive(Clone, Debug)]
pub enum LadderSpec {
    /// explicit paths sizes and 1-based chord list; the graph is path edges
    /// plus exactly these chords
    Explicit {
        a: usize,
        b: usize,
        chords: Vec<(usize, usize)>,
    },
    /// seed-deterministic random ladder with roughly `density` chance of a
    /// chord at each staircase step
    Random {
        a: usize,
        b: usize,
        density: f64,
        seed: u64,
    },
    /// the all-rungs ladder from the degree-3 reduction: a = b = 3n+1,
    /// chords p_1q_1, p_{i+1}q_i for all i, and p_aq_b
    Deg3Canonical { n: usize },
}

impl LadderView {
    /// Chords as (i, j) positions (1-based) into the P and Q orders,
    /// excluding nothing: corner chords are included.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        let qpos: std::collections::HashMap<u32, usize> = self
            .q_order
            .iter()
            .enumerate()
            .map(|(k, &v)| (v, k + 1))
            .collect();
        let mut out = Vec::new();
        for (i, &p) in self.p_order.iter().enumerate() {
            for u in self.graph.neighbors(p) {
                if let Some(&j) = qpos.get(&u) {
                    out.push((i + 1, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn a(&self) -> usize {
        self.p_order.len()
    }

    pub fn b(&self) -> usize {
        self.q_order.len()
    }

    /// Check all defining invariants; reports the first violation.
    pub fn validate(&self) -> Result<(), Error> {
        validate_parts(&self.graph, &self.p_order, &self.q_order)
    }

    /// Exchange the roles of P and Q.
    pub fn swapped(&self) -> LadderView {
        LadderView {
            graph: self.graph.clone(),
            p_order: self.q_order.clone(),
            q_order: self.p_order.clone(),
        }
    }

    /// Reverse both paths (the other corner becomes the first chord).
    pub fn reversed(&self) -> LadderView {
        let mut p = self.p_order.clone();
        let mut q = self.q_order.clone();
        p.reverse();
        q.reverse();
        LadderView {
            graph: self.graph.clone(),
            p_order: p,
            q_order: q,
        }
    }
}

/// Linear-time ladder validation over explicit path orders: the two orders
/// partition the live vertices into induced paths, both corner chords are
/// present, and no two chords cross.
pub fn validate_parts(g: &Graph, p_order: &[u32], q_order: &[u32]) -> Result<(), Error> {
    let a = p_order.len();
    let b = q_order.len();
    if a == 0 || b == 0 {
        return Err(Error::invalid("ladder", "both paths must be nonempty"));
    }
    // side[v] = (0 for P / 1 for Q, position)
    let mut side: std::collections::HashMap<u32, (u8, usize)> = std::collections::HashMap::new();
    for (k, &v) in p_order.iter().enumerate() {
        if !g.is_alive(v) {
            return Err(Error::invalid("ladder", format!("vertex {v} not live")));
        }
        if side.insert(v, (0, k)).is_some() {
            return Err(Error::invalid("ladder", format!("vertex {v} repeated")));
        }
    }
    for (k, &v) in q_order.iter().enumerate() {
        if !g.is_alive(v) {
            return Err(Error::invalid("ladder", format!("vertex {v} not live")));
        }
        if side.insert(v, (1, k)).is_some() {
            return Err(Error::invalid("ladder", format!("vertex {v} repeated")));
        }
    }
    if side.len() != g.n() {
        return Err(Error::invalid("ladder", "paths must cover every vertex"));
    }
    // each side is an induced path: consecutive adjacency plus no same-side
    // neighbors other than the consecutive ones
    for (tag, order) in [(0u8, p_order), (1u8, q_order)] {
        for k in 1..order.len() {
            if !g.has_edge(order[k - 1], order[k]) {
                return Err(Error::invalid(
                    "ladder",
                    format!("side {tag} not a path at position {k}"),
                ));
            }
        }
        for (k, &v) in order.iter().enumerate() {
            for u in g.neighbors(v) {
                let &(t, pos) = side.get(&u).expect("covered");
                if t == tag && pos != k.wrapping_sub(1) && pos != k + 1 {
                    return Err(Error::invalid(
                        "ladder",
                        format!("side {tag} not induced at positions {k} and {pos}"),
                    ));
                }
            }
        }
    }
    if !g.has_edge(p_order[0], q_order[0]) {
        return Err(Error::invalid("ladder", "first chord p1q1 missing"));
    }
    if !g.has_edge(p_order[a - 1], q_order[b - 1]) {
        return Err(Error::invalid("ladder", "last chord paqb missing"));
    }
    // chords sorted by (i, j); crossing iff some chord's j falls below the
    // maximum j of a strictly smaller i
    let mut chords: Vec<(usize, usize)> = Vec::new();
    for (k, &v) in p_order.iter().enumerate() {
        for u in g.neighbors(v) {
            let &(t, pos) = side.get(&u).expect("covered");
            if t == 1 {
                chords.push((k + 1, pos + 1));
            }
        }
    }
    chords.sort_unstable();
    let mut max_j_before = 0usize;
    let mut idx = 0;
    while idx < chords.len() {
        let i = chords[idx].0;
        let mut group_end = idx;
        while group_end < chords.len() && chords[group_end].0 == i {
            group_end += 1;
        }
        for &(_, j) in &chords[idx..group_end] {
            if j < max_j_before {
                return Err(Error::invalid(
                    "ladder",
                    format!("chord p{i}q{j} crosses an earlier chord"),
                ));
            }
        }
        max_j_before = max_j_before.max(chords[group_end - 1].1);
        idx = group_end;
    }
    Ok(())
}

pub fn make_ladder(spec: &LadderSpec) -> Result<LadderView, Error> {
    match spec {
        LadderSpec::Explicit { a, b, chords } => build(*a, *b, chords),
        LadderSpec::Random {
            a,
            b,
            density,
            seed,
        } => {
            if *a < 1 || *b < 1 {
                return Err(Error::invalid("ladder", "need a, b >= 1"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            // monotone staircase walk from (1,1) to (a,b); every visited pair
            // is a non-crossing chord candidate
            let mut chords = vec![(1usize, 1usize)];
            let (mut i, mut j) = (1usize, 1usize);
            while i < *a || j < *b {
                let di = if i < *a { rng.gen_range(1..=3.min(*a - i)) } else { 0 };
                let dj = if j < *b { rng.gen_range(0..=2.min(*b - j)) } else { 0 };
                if di == 0 && dj == 0 {
                    continue;
                }
                i += di;
                j += dj;
                if (i, j) == (*a, *b) {
                    break;
                }
                if rng.gen_bool(*density) {
                    chords.push((i, j));
                }
            }
            chords.push((*a, *b));
            build(*a, *b, &chords)
        }
        LadderSpec::Deg3Canonical { n } => {
            if *n < 1 {
                return Err(Error::invalid("ladder", "deg3-canonical needs n >= 1"));
            }
            let a = 3 * n + 1;
            let mut chords = vec![(1, 1)];
            for i in 1..a {
                chords.push((i + 1, i));
            }
            chords.push((a, a));
            build(a, a, &chords)
        }
    }
}

fn build(a: usize, b: usize, chords: &[(usize, usize)]) -> Result<LadderView, Error> {
    if a < 1 || b < 1 {
        return Err(Error::invalid("ladder", "need a, b >= 1"));
    }
    let mut g = Graph::new(a + b);
    for i in 1..a {
        g.set_edge(i as u32 - 1, i as u32, true);
    }
    for j in 1..b {
        g.set_edge((a + j - 1) as u32, (a + j) as u32, true);
    }
    let mut all = chords.to_vec();
    all.push((1, 1));
    all.push((a, b));
    all.sort_unstable();
    all.dedup();
    for &(i, j) in &all {
        if i < 1 || i > a || j < 1 || j > b {
            return Err(Error::invalid("ladder", format!("chord p{i}q{j} out of range")));
        }
        g.set_edge(i as u32 - 1, (a + j - 1) as u32, true);
    }
    let view = LadderView {
        graph: g,
        p_order: (0..a as u32).collect(),
        q_order: (a as u32..(a + b) as u32).collect(),
    };
    view.validate()?;
    Ok(view)
}

/// Try to recover a ladder view from a bare graph: backtracking over
/// (extend P | extend Q) choices from each corner-candidate pair, pruning
/// with the path-inducedness and non-crossing conditions. Budgeted; `None`
/// means no view was found within the budget (the graph may still be a
/// ladder under some ordering).
pub fn recognize_ladder(g: &Graph, budget: usize) -> Option<LadderView> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let verts = g.vertices();
    let mut spent = 0usize;
    // p_1 (or q_1) has degree <= 2 in every ladder
    for &c1 in verts.iter().filter(|&&v| g.degree(v) <= 2) {
        for c2 in g.neighbors(c1) {
            let mut p = vec![c1];
            let mut q = vec![c2];
            let mut used: std::collections::BTreeSet<u32> = [c1, c2].into_iter().collect();
            if extend(g, &verts, &mut p, &mut q, &mut used, &mut spent, budget) {
                let view = LadderView {
                    graph: g.clone(),
                    p_order: p,
                    q_order: q,
                };
                debug_assert!(view.validate().is_ok());
                return Some(view);
            }
            if spent > budget {
                return None;
            }
        }
    }
    None
}

fn extend(
    g: &Graph,
    verts: &[u32],
    p: &mut Vec<u32>,
    q: &mut Vec<u32>,
    used: &mut std::collections::BTreeSet<u32>,
    spent: &mut usize,
    budget: usize,
) -> bool {
    *spent += 1;
    if *spent > budget {
        return false;
    }
    if used.len() == verts.len() {
        return validate_parts(g, p, q).is_ok();
    }
    // appending a vertex to a side: it must be adjacent to the side's end,
    // non-adjacent to the rest of that side, and its chords must reach only
    // a suffix of the other side (non-crossing)
    let try_side = |side: &mut Vec<u32>,
                    other: &Vec<u32>,
                    used: &mut std::collections::BTreeSet<u32>,
                    cand: u32|
     -> bool {
        if used.contains(&cand) {
            return false;
        }
        let end = *side.last().unwrap();
        if !g.has_edge(cand, end) {
            return false;
        }
        if side.iter().rev().skip(1).any(|&v| g.has_edge(cand, v)) {
            return false;
        }
        // non-crossing: cand's chords into the existing other side must all
        // be at positions >= every chord position of earlier side vertices
        let max_before = side
            .iter()
            .flat_map(|&v| {
                other
                    .iter()
                    .enumerate()
                    .filter(move |(_, &u)| g.has_edge(v, u))
                    .map(|(k, _)| k)
            })
            .max();
        let min_cand = other
            .iter()
            .enumerate()
            .filter(|(_, &u)| g.has_edge(cand, u))
            .map(|(k, _)| k)
            .min();
        if let (Some(before), Some(mine)) = (max_before, min_cand) {
            if mine < before {
                return false;
            }
        }
        side.push(cand);
        used.insert(cand);
        true
    };
    let ends: Vec<u32> = g
        .neighbors(*p.last().unwrap())
        .into_iter()
        .chain(g.neighbors(*q.last().unwrap()))
        .collect();
    for cand in ends {
        if try_side(p, q, used, cand) {
            if extend(g, verts, p, q, used, spent, budget) {
                return true;
            }
            p.pop();
            used.remove(&cand);
        }
        if try_side(q, p, used, cand) {
            if extend(g, verts, p, q, used, spent, budget) {
                return true;
            }
            q.pop();
            used.remove(&cand);
        }
    }
    false
}
