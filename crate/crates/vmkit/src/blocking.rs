//! Blocking sequences: validity checking, search, the existence criterion,
//! and the reduction/shortening machinery.
//!
//! A sequence v_1..v_m over V \ (A ∪ B) blocks (A, B) when, with
//! k = ρ*(A, B):
//! (a) ρ*(A, B ∪ {v_1}) > k,
//! (b) ρ*(A ∪ {v_i}, B ∪ {v_{i+1}}) > k for all i,
//! (c) ρ*(A ∪ {v_m}, B) > k,
//! (d) no proper subsequence satisfies (a)–(c).
//!
//! Such a sequence exists iff every A ⊆ X ⊆ V \ B has ρ(X) > k.

use std::collections::HashMap;

use crate::error::Error;
use crate::graph::Graph;
use crate::rank::{cross_rank, cut_rank};
use crate::trace::{Step, TraceBuilder};

#[derive(Clone, Debug)]
pub struct BlockingSequence {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub seq: Vec<u32>,
    /// k = ρ*(A, B) in the context graph
    pub base: usize,
}

/// Which condition a candidate fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockingVerdict {
    Valid,
    FailsA,
    FailsB(usize),
    FailsC,
    /// a proper subsequence also satisfies (a)-(c); payload names a witness
    /// single-rank equality violated, as (x_extra, y_extra)
    FailsD(Option<u32>, Option<u32>),
}

/// Memoized rank queries for one fixed (G, A, B) context. The table is keyed
/// by the singleton extensions actually used by checker and finder.
pub struct RankContext<'g> {
    g: &'g Graph,
    a: Vec<u32>,
    b: Vec<u32>,
    pub base: usize,
    memo: HashMap<(Option<u32>, Option<u32>), usize>,
    pub queries: u64,
}

impl<'g> RankContext<'g> {
    pub fn new(g: &'g Graph, a: &[u32], b: &[u32]) -> Result<Self, Error> {
        let base = cross_rank(g, a, b)?;
        Ok(RankContext {
            g,
            a: a.to_vec(),
            b: b.to_vec(),
            base,
            memo: HashMap::new(),
            queries: 0,
        })
    }

    /// ρ*(A ∪ {x?}, B ∪ {y?})
    pub fn rank(&mut self, x: Option<u32>, y: Option<u32>) -> Result<usize, Error> {
        if let Some(&r) = self.memo.get(&(x, y)) {
            return Ok(r);
        }
        let mut xs = self.a.clone();
        let mut ys = self.b.clone();
        if let Some(v) = x {
            xs.push(v);
        }
        if let Some(v) = y {
            ys.push(v);
        }
        let r = cross_rank(self.g, &xs, &ys)?;
        self.queries += 1;
        self.memo.insert((x, y), r);
        Ok(r)
    }
}

fn check_disjoint(a: &[u32], b: &[u32], seq: &[u32]) -> Result<(), Error> {
    use std::collections::BTreeSet;
    let sa: BTreeSet<u32> = a.iter().copied().collect();
    let sb: BTreeSet<u32> = b.iter().copied().collect();
    if sa.intersection(&sb).next().is_some() {
        return Err(Error::OverlappingSets);
    }
    let mut seen = BTreeSet::new();
    for &v in seq {
        if sa.contains(&v) || sb.contains(&v) || !seen.insert(v) {
            return Err(Error::OverlappingSets);
        }
    }
    Ok(())
}

/// Check conditions (a)-(d). Condition (d) is decided by the
/// characterization lemma: given (a)-(c), a proper subsequence
/// satisfying them exists iff some single-vertex pattern rank exceeds the
/// base, i.e. ρ*(A, B∪{v_j}) for j ≥ 2, ρ*(A∪{v_i}, B) for i ≤ m-1, or
/// ρ*(A∪{v_i}, B∪{v_j}) for j - i ≥ 2. Each single-vertex deletion is also
/// re-tested directly.
pub fn is_blocking_sequence(
    g: &Graph,
    a: &[u32],
    b: &[u32],
    seq: &[u32],
) -> Result<BlockingVerdict, Error> {
    check_disjoint(a, b, seq)?;
    if seq.is_empty() {
        return Err(Error::precondition("a blocking sequence has m >= 1"));
    }
    let mut ctx = RankContext::new(g, a, b)?;
    check_with_ctx(&mut ctx, seq)
}

#[allow(clippy::needless_range_loop)]
fn check_with_ctx(ctx: &mut RankContext, seq: &[u32]) -> Result<BlockingVerdict, Error> {
    let m = seq.len();
    let k = ctx.base;
    if ctx.rank(None, Some(seq[0]))? <= k {
        return Ok(BlockingVerdict::FailsA);
    }
    for i in 0..m - 1 {
        if ctx.rank(Some(seq[i]), Some(seq[i + 1]))? <= k {
            return Ok(BlockingVerdict::FailsB(i + 1));
        }
    }
    if ctx.rank(Some(seq[m - 1]), None)? <= k {
        return Ok(BlockingVerdict::FailsC);
    }
    // (d) via the characterization lemma
    for j in 1..m {
        if ctx.rank(None, Some(seq[j]))? > k {
            return Ok(BlockingVerdict::FailsD(None, Some(seq[j])));
        }
    }
    for i in 0..m - 1 {
        if ctx.rank(Some(seq[i]), None)? > k {
            return Ok(BlockingVerdict::FailsD(Some(seq[i]), None));
        }
    }
    for i in 0..m {
        for j in i + 2..m {
            if ctx.rank(Some(seq[i]), Some(seq[j]))? > k {
                return Ok(BlockingVerdict::FailsD(Some(seq[i]), Some(seq[j])));
            }
        }
    }
    // belt and braces: every single-vertex deletion must break (a)-(c)
    debug_assert!({
        let mut ok = true;
        for drop in 0..m {
            if m == 1 {
                continue;
            }
            let sub: Vec<u32> = seq
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != drop)
                .map(|(_, &v)| v)
                .collect();
            let passes_abc = ctx.rank(None, Some(sub[0]))? > k
                && ctx.rank(Some(sub[sub.len() - 1]), None)? > k
                && (0..sub.len() - 1)
                    .map(|i| ctx.rank(Some(sub[i]), Some(sub[i + 1])).map(|r| r > k))
                    .collect::<Result<Vec<bool>, Error>>()?
                    .iter()
                    .all(|&x| x);
            if passes_abc {
                ok = false;
            }
        }
        ok
    });
    Ok(BlockingVerdict::Valid)
}

/// The existence criterion, evaluated exhaustively: true iff every
/// A ⊆ X ⊆ V \ B has ρ(X) > ρ*(A, B). Exponential in |V \ (A∪B)|; intended
/// for oracle-scale cross-validation.
pub fn existence_criterion_exhaustive(g: &Graph, a: &[u32], b: &[u32]) -> Result<bool, Error> {
    check_disjoint(a, b, &[])?;
    let k = cross_rank(g, a, b)?;
    let free: Vec<u32> = g
        .vertices()
        .into_iter()
        .filter(|v| !a.contains(v) && !b.contains(v))
        .collect();
    if free.len() > 24 {
        return Err(Error::UnsupportedSize {
            n: free.len(),
            max: 24,
        });
    }
    for mask in 0u64..1 << free.len() {
        let mut x: Vec<u32> = a.to_vec();
        for (i, &v) in free.iter().enumerate() {
            if mask >> i & 1 == 1 {
                x.push(v);
            }
        }
        if cut_rank(g, &x)? <= k {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shortest blocking sequence, lexicographically least among shortest;
/// `None` exactly when no sequence exists (equivalently, the existence
/// criterion fails).
///
/// Conditions (a)-(c) make a sequence a walk from the set
/// {v : ρ*(A, B∪{v}) > k} to the set {v : ρ*(A∪{v}, B) > k} along the
/// relation ρ*(A∪{v}, B∪{w}) > k, so the finder is a shortest-path search:
/// a reverse breadth-first sweep computes the remaining distance to the
/// goal set, then a greedy walk picks the least id at every level. A
/// shortest walk satisfies (d) for free — a proper subsequence meeting
/// (a)-(c) would itself be a shorter walk. Costs O(|free|²) rank queries.
pub fn find_blocking_sequence(
    g: &Graph,
    a: &[u32],
    b: &[u32],
) -> Result<Option<BlockingSequence>, Error> {
    check_disjoint(a, b, &[])?;
    let mut ctx = RankContext::new(g, a, b)?;
    let k = ctx.base;
    let free: Vec<u32> = g
        .vertices()
        .into_iter()
        .filter(|v| !a.contains(v) && !b.contains(v))
        .collect();
    let m = free.len();
    if m == 0 {
        return Ok(None);
    }
    // dist[i]: vertices remaining in the shortest suffix starting at free[i]
    let mut dist: Vec<Option<usize>> = vec![None; m];
    let mut frontier: Vec<usize> = Vec::new();
    for (i, &v) in free.iter().enumerate() {
        if ctx.rank(Some(v), None)? > k {
            dist[i] = Some(1);
            frontier.push(i);
        }
    }
    let mut level = 1usize;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (i, &v) in free.iter().enumerate() {
            if dist[i].is_some() {
                continue;
            }
            let mut reaches = false;
            for &j in &frontier {
                if ctx.rank(Some(v), Some(free[j]))? > k {
                    reaches = true;
                    break;
                }
            }
            if reaches {
                dist[i] = Some(level + 1);
                next.push(i);
            }
        }
        level += 1;
        frontier = next;
    }
    // shortest total length over valid starts
    let mut best: Option<(usize, usize)> = None; // (length, index)
    for (i, &v) in free.iter().enumerate() {
        if let Some(d) = dist[i] {
            if ctx.rank(None, Some(v))? > k && best.map_or(true, |(bl, _)| d < bl) {
                best = Some((d, i));
            }
        }
    }
    let Some((total, start)) = best else {
        return Ok(None);
    };
    // greedy lexicographic reconstruction level by level
    let mut seq = vec![free[start]];
    let mut cur = start;
    for remaining in (1..total).rev() {
        let mut chosen = None;
        for (i, &v) in free.iter().enumerate() {
            if dist[i] == Some(remaining) && ctx.rank(Some(free[cur]), Some(v))? > k {
                chosen = Some(i);
                break;
            }
        }
        let i = chosen.expect("distance levels are connected");
        seq.push(free[i]);
        cur = i;
    }
    debug_assert_eq!(check_with_ctx(&mut ctx, &seq)?, BlockingVerdict::Valid);
    Ok(Some(BlockingSequence {
        a: a.to_vec(),
        b: b.to_vec(),
        seq,
        base: ctx.base,
    }))
}

/// How to reduce at position `i` (0-based into `seq`).
#[derive(Clone, Copy, Debug)]
pub enum ReduceMode {
    /// locally complement at v_i
    Lc,
    /// pivot v_i with a neighbor w in A ∪ B
    PivotAnchor(u32),
    /// pivot v_i with a later sequence member v_j (adjacent)
    PivotPair(usize),
}

/// Reduction step of the blocking-sequence propositions: returns the new
/// graph, the shortened sequence, the new base rank, and the applied steps.
/// Base arithmetic is re-verified: it stays fixed above the threshold length
/// and rises by exactly one at it. The returned sequence is re-checked; a
/// failure is an implementation bug, not an input error.
pub fn reduce_at(
    g: &Graph,
    a: &[u32],
    b: &[u32],
    seq: &[u32],
    i: usize,
    mode: ReduceMode,
) -> Result<(Graph, Vec<u32>, usize, Vec<Step>), Error> {
    if is_blocking_sequence(g, a, b, seq)? != BlockingVerdict::Valid {
        return Err(Error::precondition("not a blocking sequence"));
    }
    let m = seq.len();
    if i >= m {
        return Err(Error::precondition("index out of sequence"));
    }
    let old_base = cross_rank(g, a, b)?;
    let (h, remaining, threshold, steps): (Graph, Vec<u32>, usize, Vec<Step>) = match mode {
        ReduceMode::Lc => {
            let h = g.local_complement(seq[i])?;
            let rem: Vec<u32> = seq
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &v)| v)
                .collect();
            (h, rem, 1, vec![Step::Lc(seq[i])])
        }
        ReduceMode::PivotAnchor(w) => {
            if !a.contains(&w) && !b.contains(&w) {
                return Err(Error::precondition("anchor must lie in A ∪ B"));
            }
            if !g.has_edge(seq[i], w) {
                return Err(Error::precondition("anchor must be adjacent to v_i"));
            }
            let h = g.pivot(seq[i], w)?;
            let rem: Vec<u32> = seq
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, &v)| v)
                .collect();
            (h, rem, 1, vec![Step::Pivot(seq[i], w)])
        }
        ReduceMode::PivotPair(j) => {
            if j <= i || j >= m {
                return Err(Error::precondition("pivot pair needs i < j < m"));
            }
            if !g.has_edge(seq[i], seq[j]) {
                return Err(Error::precondition("pivot pair must be adjacent"));
            }
            let h = g.pivot(seq[i], seq[j])?;
            let rem: Vec<u32> = seq
                .iter()
                .enumerate()
                .filter(|(x, _)| *x != i && *x != j)
                .map(|(_, &v)| v)
                .collect();
            (h, rem, 2, vec![Step::Pivot(seq[i], seq[j])])
        }
    };
    let new_base = cross_rank(&h, a, b)?;
    if m > threshold {
        assert_eq!(
            new_base, old_base,
            "reduction above threshold must preserve the base"
        );
        assert_eq!(
            is_blocking_sequence(&h, a, b, &remaining)?,
            BlockingVerdict::Valid,
            "shortened sequence must block in the reduced graph"
        );
    } else {
        assert_eq!(
            new_base,
            old_base + 1,
            "reduction at threshold must raise the base by exactly one"
        );
    }
    Ok((h, remaining, new_base, steps))
}

/// Outcome of [`shorten_for_patch`]: a locally equivalent graph with the
/// same induced subgraph on A ∪ B and a short blocking sequence, plus the
/// replayable steps from the input graph.
#[derive(Clone, Debug)]
pub struct ShortBlocking {
    pub graph: Graph,
    pub seq: Vec<u32>,
    pub steps: Vec<Step>,
    pub bound: usize,
}

/// Shorten a blocking sequence to the pigeonhole bound (3, 4, or 6 by the
/// |A0|, |B0| = 1 cases) by collapsing interior vertices with equal traces
/// on A ∪ B, while preserving G[A ∪ B] bit-exactly. The graph must be prime
/// with cross edges between A and B exactly A0 × B0.
pub fn shorten_for_patch(
    g: &Graph,
    a: &[u32],
    b: &[u32],
    a0: &[u32],
    b0: &[u32],
) -> Result<ShortBlocking, Error> {
    check_disjoint(a, b, &[])?;
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::precondition("|A|, |B| >= 2 required"));
    }
    if a0.is_empty() || b0.is_empty() {
        return Err(Error::precondition("A0 and B0 must be nonempty"));
    }
    for &x in a {
        for &y in b {
            let want = a0.contains(&x) && b0.contains(&y);
            if g.has_edge(x, y) != want {
                return Err(Error::precondition(format!(
                    "cross edges must be exactly A0 × B0 (pair {x},{y})"
                )));
            }
        }
    }
    let bound = match (a0.len(), b0.len()) {
        (1, 1) => 3,
        (1, _) | (_, 1) => 4,
        _ => 6,
    };
    let mut builder = TraceBuilder::new(g);
    let snapshot_ab = |g: &Graph| -> Vec<(u32, u32)> {
        let mut edges = Vec::new();
        for (i, &x) in a.iter().chain(b.iter()).enumerate() {
            for &y in a.iter().chain(b.iter()).skip(i + 1) {
                if g.has_edge(x, y) {
                    edges.push((x, y));
                }
            }
        }
        edges
    };
    let before = snapshot_ab(g);
    let mut seq = match find_blocking_sequence(&builder.graph, a, b)? {
        Some(bs) => bs.seq,
        None => {
            return Err(Error::precondition(
                "no blocking sequence exists; is the graph prime?",
            ))
        }
    };
    loop {
        if seq.len() <= bound {
            break;
        }
        let m = seq.len();
        let trace_of = |g: &Graph, v: u32| -> (Vec<u32>, Vec<u32>) {
            (
                a.iter().copied().filter(|&x| g.has_edge(v, x)).collect(),
                b.iter().copied().filter(|&x| g.has_edge(v, x)).collect(),
            )
        };
        // interior vertex with at most one neighbor in A ∪ B: a single local
        // complementation removes it and keeps G[A ∪ B]
        let single = (1..m - 1).find(|&i| {
            let (ta, tb) = trace_of(&builder.graph, seq[i]);
            ta.len() + tb.len() <= 1
        });
        if let Some(i) = single {
            let (h, rem, _, steps) =
                reduce_at(&builder.graph, a, b, &seq, i, ReduceMode::Lc)?;
            debug_assert_eq!(snapshot_ab(&h), before);
            builder.extend(&steps)?;
            seq = rem;
            continue;
        }
        // interior pair with equal traces on A ∪ B: collapse by pivot (if
        // adjacent) or two local complementations (if not)
        let mut pair = None;
        'outer: for i in 1..m - 1 {
            for j in i + 1..m - 1 {
                if trace_of(&builder.graph, seq[i]) == trace_of(&builder.graph, seq[j]) {
                    pair = Some((i, j));
                    break 'outer;
                }
            }
        }
        let Some((i, j)) = pair else {
            // the pigeonhole argument says this cannot happen above the bound
            return Err(Error::invalid(
                "blocking",
                format!(
                    "no collapsible interior vertex in sequence of length {m} (bound {bound})"
                ),
            ));
        };
        if builder.graph.has_edge(seq[i], seq[j]) {
            let (h, rem, _, steps) =
                reduce_at(&builder.graph, a, b, &seq, i, ReduceMode::PivotPair(j))?;
            debug_assert_eq!(snapshot_ab(&h), before);
            builder.extend(&steps)?;
            seq = rem;
        } else {
            let (_, rem1, _, steps1) =
                reduce_at(&builder.graph, a, b, &seq, i, ReduceMode::Lc)?;
            builder.extend(&steps1)?;
            // j shifted down by one after removing i < j
            let (_, rem2, _, steps2) =
                reduce_at(&builder.graph, a, b, &rem1, j - 1, ReduceMode::Lc)?;
            builder.extend(&steps2)?;
            debug_assert_eq!(snapshot_ab(&builder.graph), before);
            seq = rem2;
        }
    }
    assert_eq!(snapshot_ab(&builder.graph), before, "G[A ∪ B] must be preserved");
    assert_eq!(
        is_blocking_sequence(&builder.graph, a, b, &seq)?,
        BlockingVerdict::Valid
    );
    Ok(ShortBlocking {
        graph: builder.graph,
        seq,
        steps: builder.steps,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph, Graph};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
        let mut g = Graph::new(n);
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if rng.gen_bool(p) {
                    g.set_edge(i, j, true);
                }
            }
        }
        g
    }

    #[test]
    fn c6_example() {
        // C_6 on 0..5, A = {0,1}, B = {3,4}: base 0, [2] blocks, [2,5] fails (d)
        let g = cycle_graph(6);
        let a = [0u32, 1];
        let b = [3u32, 4];
        assert_eq!(
            is_blocking_sequence(&g, &a, &b, &[2]).unwrap(),
            BlockingVerdict::Valid
        );
        assert!(matches!(
            is_blocking_sequence(&g, &a, &b, &[2, 5]).unwrap(),
            BlockingVerdict::FailsD(..)
        ));
        let found = find_blocking_sequence(&g, &a, &b).unwrap().expect("exists");
        assert_eq!(found.seq, vec![2]); // both [2] and [5] block; least id wins
        assert_eq!(found.base, 0);
    }

    #[test]
    fn p4_has_none() {
        let g = path_graph(4);
        assert!(find_blocking_sequence(&g, &[0, 1], &[2, 3]).unwrap().is_none());
        assert!(!existence_criterion_exhaustive(&g, &[0, 1], &[2, 3]).unwrap());
    }

    #[test]
    fn finder_agrees_with_criterion_exhaustively() {
        let mut rng = StdRng::seed_from_u64(71);
        for _ in 0..300 {
            let n = rng.gen_range(4..=7);
            let g = random_graph(n, 0.5, &mut rng);
            let vs = g.vertices();
            let a = [vs[0], vs[1]];
            let b = [vs[2], vs[3]];
            let found = find_blocking_sequence(&g, &a, &b).unwrap();
            let criterion = existence_criterion_exhaustive(&g, &a, &b).unwrap();
            assert_eq!(found.is_some(), criterion, "criterion mismatch on {g:?}");
            if let Some(bs) = found {
                assert_eq!(
                    is_blocking_sequence(&g, &a, &b, &bs.seq).unwrap(),
                    BlockingVerdict::Valid
                );
            }
        }
    }

    #[test]
    fn reduce_base_arithmetic_m1() {
        let g = cycle_graph(6);
        let (h, rem, base, _) =
            reduce_at(&g, &[0, 1], &[3, 4], &[2], 0, ReduceMode::Lc).unwrap();
        assert!(rem.is_empty());
        assert_eq!(base, 1); // rose from 0
        assert_eq!(cross_rank(&h, &[0, 1], &[3, 4]).unwrap(), 1);
    }

    #[test]
    fn reduce_preserves_base_above_threshold() {
        // search-constructed m = 2 instances
        let mut rng = StdRng::seed_from_u64(73);
        let mut found = 0;
        'outer: for _ in 0..400 {
            let n = rng.gen_range(6..=8);
            let g = random_graph(n, 0.4, &mut rng);
            let vs = g.vertices();
            let a = [vs[0], vs[1]];
            let b = [vs[2], vs[3]];
            let Some(bs) = find_blocking_sequence(&g, &a, &b).unwrap() else {
                continue 'outer;
            };
            if bs.seq.len() != 2 {
                continue;
            }
            found += 1;
            let (h, rem, base, _) = reduce_at(&g, &a, &b, &bs.seq, 0, ReduceMode::Lc).unwrap();
            assert_eq!(base, bs.base);
            assert_eq!(rem, vec![bs.seq[1]]);
            assert_eq!(
                is_blocking_sequence(&h, &a, &b, &rem).unwrap(),
                BlockingVerdict::Valid
            );
            if found > 20 {
                break;
            }
        }
        assert!(found > 5, "need enough m = 2 instances");
    }

    #[test]
    fn pivot_pair_at_threshold_bumps_base() {
        let mut rng = StdRng::seed_from_u64(79);
        let mut found = 0;
        for _ in 0..600 {
            let n = rng.gen_range(6..=8);
            let g = random_graph(n, 0.4, &mut rng);
            let vs = g.vertices();
            let a = [vs[0], vs[1]];
            let b = [vs[2], vs[3]];
            let Some(bs) = find_blocking_sequence(&g, &a, &b).unwrap() else {
                continue;
            };
            if bs.seq.len() != 2 || !g.has_edge(bs.seq[0], bs.seq[1]) {
                continue;
            }
            found += 1;
            let (_, rem, base, _) =
                reduce_at(&g, &a, &b, &bs.seq, 0, ReduceMode::PivotPair(1)).unwrap();
            assert!(rem.is_empty());
            assert_eq!(base, bs.base + 1);
            if found > 10 {
                break;
            }
        }
        assert!(found > 3);
    }

    #[test]
    fn shorten_reaches_pigeonhole_bound() {
        // plant the cross pattern A0 × B0 in random graphs, keep prime ones
        let mut rng = StdRng::seed_from_u64(83);
        let mut tested = 0;
        for _ in 0..400 {
            let n = rng.gen_range(8..=10);
            let mut g = random_graph(n, 0.45, &mut rng);
            let a = [0u32, 1];
            let b = [2u32, 3];
            let (a0, b0): (Vec<u32>, Vec<u32>) = match rng.gen_range(0..3) {
                0 => (vec![0], vec![2]),
                1 => (vec![0], vec![2, 3]),
                _ => (vec![0, 1], vec![2, 3]),
            };
            for &x in &a {
                for &y in &b {
                    g.set_edge(x, y, a0.contains(&x) && b0.contains(&y));
                }
            }
            if !crate::structure::is_prime(&g).unwrap() {
                continue;
            }
            tested += 1;
            let out = shorten_for_patch(&g, &a, &b, &a0, &b0).unwrap();
            assert!(out.seq.len() <= out.bound);
            let expected_bound = match (a0.len(), b0.len()) {
                (1, 1) => 3,
                (1, _) | (_, 1) => 4,
                _ => 6,
            };
            assert_eq!(out.bound, expected_bound);
            // primality is preserved by local equivalence
            assert!(crate::structure::is_prime(&out.graph).unwrap());
            if tested >= 40 {
                break;
            }
        }
        assert!(tested >= 20, "need enough prime instances, got {tested}");
    }
}
