//! Decision procedures with certificates: vertex-minor containment, local
//! and pivot equivalence, orbit enumeration, and bipartite pattern finders.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::canon::{canonical_form, CanonicalCode};
use crate::error::Error;
use crate::families::JoinKind;
use crate::graph::Graph;
use crate::trace::{OpTrace, Step};

/// Practical bound for exhaustive containment certainty.
pub const VM_EXACT_LIMIT: usize = 14;

/// A verified positive answer: the trace replays on the searched graph and
/// its kept part is isomorphic to the target via `mapping`
/// (kept source id -> target id).
#[derive(Clone, Debug)]
pub struct ContainmentWitness {
    pub trace: OpTrace,
    pub mapping: Vec<(u32, u32)>,
}

/// Search outcome where budgets exist: a timeout never masquerades as a
/// non-containment proof.
#[derive(Clone, Debug)]
pub enum Outcome<T> {
    Found(T),
    /// search space exhausted: a proof of "no"
    None,
    /// budget ran out before exhaustion
    Inconclusive,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_none(&self) -> bool {
        matches!(self, Outcome::None)
    }
}

/// One-step vertex-minor reductions at `v`: delete, complement-delete, and
/// pivot-delete through the least-id neighbor (the choice of neighbor does
/// not matter because G∧xy = (G∧xz)∧yz).
fn reductions_at(g: &Graph, v: u32) -> Vec<(Graph, Vec<Step>)> {
    let mut out = Vec::new();
    let deleted = g.delete_vertices(&[v]).expect("live vertex");
    out.push((deleted, vec![Step::DeleteSet(vec![v])]));
    let lc = g
        .local_complement(v)
        .and_then(|h| h.delete_vertices(&[v]))
        .expect("live vertex");
    out.push((lc, vec![Step::Lc(v), Step::DeleteSet(vec![v])]));
    if let Some(&w) = g.neighbors(v).first() {
        let pv = g
            .pivot(v, w)
            .and_then(|h| h.delete_vertices(&[v]))
            .expect("edge exists");
        out.push((pv, vec![Step::Pivot(v, w), Step::DeleteSet(vec![v])]));
    }
    out
}

/// Shared memo for containment searches; key is (code of reduced graph,
/// code of target).
pub type VmMemo = HashMap<(CanonicalCode, CanonicalCode), bool>;

/// Is H a vertex-minor of G? Exhaustive and certificate-producing for
/// |V(G)| ≤ 14. `None` is a proof of non-containment at this size.
pub fn is_vertex_minor(h: &Graph, g: &Graph) -> Result<Option<ContainmentWitness>, Error> {
    let mut memo = VmMemo::new();
    is_vertex_minor_memo(h, g, &mut memo)
}

pub fn is_vertex_minor_memo(
    h: &Graph,
    g: &Graph,
    memo: &mut VmMemo,
) -> Result<Option<ContainmentWitness>, Error> {
    if g.n() > VM_EXACT_LIMIT {
        return Err(Error::UnsupportedSize {
            n: g.n(),
            max: VM_EXACT_LIMIT,
        });
    }
    if h.n() > g.n() {
        return Ok(None);
    }
    let code_h = canonical_form(h);
    let mut trace_steps: Vec<Step> = Vec::new();
    let found = search_vm(h, &code_h, g, memo, &mut trace_steps)?;
    if !found {
        return Ok(None);
    }
    // trace_steps now reduces G to a graph whose LC-orbit reaches (an
    // isomorphic copy of) H; finish the witness with the orbit word.
    let mut current = g.clone();
    for s in &trace_steps {
        match s {
            Step::Lc(v) => current.local_complement_mut(*v)?,
            Step::Pivot(x, y) => current.pivot_mut(*x, *y)?,
            Step::DeleteSet(xs) => xs.iter().try_for_each(|&v| current.delete_vertex_mut(v))?,
        }
    }
    let (word, mapping) = orbit_word_to(&current, h)?.expect("leaf was verified equivalent");
    trace_steps.extend(word.iter().map(|&v| Step::Lc(v)));
    let keep: Vec<u32> = mapping.iter().map(|&(a, _)| a).collect();
    let trace = OpTrace {
        steps: trace_steps,
        keep: Some(keep),
        claim: None,
    };
    let witness = ContainmentWitness { trace, mapping };
    debug_assert!(verify_witness(h, g, &witness));
    Ok(Some(witness))
}

/// Depth-first search over one-vertex reductions with canonical-code
/// memoization. On success, `path` holds the reduction steps root → leaf.
fn search_vm(
    h: &Graph,
    code_h: &CanonicalCode,
    g: &Graph,
    memo: &mut VmMemo,
    path: &mut Vec<Step>,
) -> Result<bool, Error> {
    if g.n() == h.n() {
        return orbit_contains(g, code_h);
    }
    let code_g = canonical_form(g);
    if let Some(&ans) = memo.get(&(code_g.clone(), code_h.clone())) {
        if !ans {
            return Ok(false);
        }
        // positive memo: re-walk this subtree to reconstruct a witness path
        // (cheap relative to the first discovery).
    }
    // branch on high-degree vertices first: fail-fast pruning
    let mut verts = g.vertices();
    verts.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut dedup: HashSet<CanonicalCode> = HashSet::new();
    for v in verts {
        for (child, steps) in reductions_at(g, v) {
            let child_code = canonical_form(&child);
            if !dedup.insert(child_code) {
                continue;
            }
            path.extend(steps.iter().cloned());
            if search_vm(h, code_h, &child, memo, path)? {
                memo.insert((code_g, code_h.clone()), true);
                return Ok(true);
            }
            for _ in 0..steps.len() {
                path.pop();
            }
        }
    }
    memo.insert((code_g, code_h.clone()), false);
    Ok(false)
}

fn verify_witness(h: &Graph, g: &Graph, w: &ContainmentWitness) -> bool {
    let Ok(out) = w.trace.replay(g) else {
        return false;
    };
    if out.graph.n() != h.n() {
        return false;
    }
    // mapping must be an isomorphism kept-subgraph -> H
    let pos: HashMap<u32, usize> = out.kept.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for &(a, ha) in &w.mapping {
        for &(b, hb) in &w.mapping {
            let (Some(&ia), Some(&ib)) = (pos.get(&a), pos.get(&b)) else {
                return false;
            };
            if out.graph.has_edge(ia as u32, ib as u32) != h.has_edge(ha, hb) {
                return false;
            }
        }
    }
    true
}

/// BFS over the local-complementation orbit, deduplicated by canonical code
/// (i.e. over isomorphism classes); checks membership of `code`.
fn orbit_contains(g: &Graph, code: &CanonicalCode) -> Result<bool, Error> {
    if &canonical_form(g) == code {
        return Ok(true);
    }
    Ok(orbit_word_by_code(g, code)?.is_some())
}

fn orbit_word_by_code(g: &Graph, target: &CanonicalCode) -> Result<Option<Vec<u32>>, Error> {
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut queue: VecDeque<(Graph, Vec<u32>)> = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back((g.clone(), Vec::new()));
    while let Some((cur, word)) = queue.pop_front() {
        if &canonical_form(&cur) == target {
            return Ok(Some(word));
        }
        for v in cur.vertices() {
            let next = cur.local_complement(v)?;
            let code = canonical_form(&next);
            if seen.insert(code) {
                let mut w = word.clone();
                w.push(v);
                queue.push_back((next, w));
            }
        }
    }
    Ok(None)
}

type WordAndMapping = (Vec<u32>, Vec<(u32, u32)>);

/// Word of local complementations from `g` to a graph isomorphic to `h`,
/// plus the final isomorphism mapping, if any such word exists.
fn orbit_word_to(g: &Graph, h: &Graph) -> Result<Option<WordAndMapping>, Error> {
    if g.n() != h.n() {
        return Ok(None);
    }
    let target = canonical_form(h);
    let Some(word) = orbit_word_by_code(g, &target)? else {
        return Ok(None);
    };
    let mut cur = g.clone();
    for &v in &word {
        cur.local_complement_mut(v)?;
    }
    let mapping = crate::canon::are_isomorphic(&cur, h)?.expect("codes matched");
    Ok(Some((word, mapping)))
}

/// Are G and H locally equivalent (up to isomorphism)? Returns the witness
/// word of local complementations in G's labels. BFS is exhaustive when the
/// orbit fits in `budget` classes.
pub fn locally_equivalent(g: &Graph, h: &Graph, budget: usize) -> Result<Outcome<Vec<u32>>, Error> {
    if g.n() != h.n() {
        return Ok(Outcome::None);
    }
    let target = canonical_form(h);
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut queue: VecDeque<(Graph, Vec<u32>)> = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back((g.clone(), Vec::new()));
    while let Some((cur, word)) = queue.pop_front() {
        if canonical_form(&cur) == target {
            return Ok(Outcome::Found(word));
        }
        if seen.len() > budget {
            return Ok(Outcome::Inconclusive);
        }
        for v in cur.vertices() {
            let next = cur.local_complement(v)?;
            let code = canonical_form(&next);
            if seen.insert(code) {
                let mut w = word.clone();
                w.push(v);
                queue.push_back((next, w));
            }
        }
    }
    Ok(Outcome::None)
}

/// As [`locally_equivalent`] but with pivot steps only.
pub fn pivot_equivalent(
    g: &Graph,
    h: &Graph,
    budget: usize,
) -> Result<Outcome<Vec<(u32, u32)>>, Error> {
    if g.n() != h.n() {
        return Ok(Outcome::None);
    }
    let target = canonical_form(h);
    let mut seen: HashSet<CanonicalCode> = HashSet::new();
    let mut queue: VecDeque<(Graph, Vec<(u32, u32)>)> = VecDeque::new();
    seen.insert(canonical_form(g));
    queue.push_back((g.clone(), Vec::new()));
    while let Some((cur, word)) = queue.pop_front() {
        if canonical_form(&cur) == target {
            return Ok(Outcome::Found(word));
        }
        if seen.len() > budget {
            return Ok(Outcome::Inconclusive);
        }
        for (x, y) in cur.edges() {
            let next = cur.pivot(x, y)?;
            let code = canonical_form(&next);
            if seen.insert(code) {
                let mut w = word.clone();
                w.push((x, y));
                queue.push_back((next, w));
            }
        }
    }
    Ok(Outcome::None)
}

/// Summary of the local-complementation orbit of a graph.
#[derive(Clone, Debug)]
pub struct OrbitSummary {
    pub codes: Vec<CanonicalCode>,
    pub size: usize,
    /// one witness word per code, parallel to `codes`
    pub generator_log: Vec<Vec<u32>>,
    pub complete: bool,
}

pub fn local_orbit(g: &Graph, budget: usize) -> Result<OrbitSummary, Error> {
    let mut seen: HashMap<CanonicalCode, Vec<u32>> = HashMap::new();
    let mut queue: VecDeque<(Graph, Vec<u32>)> = VecDeque::new();
    seen.insert(canonical_form(g), Vec::new());
    queue.push_back((g.clone(), Vec::new()));
    let mut complete = true;
    while let Some((cur, word)) = queue.pop_front() {
        if seen.len() > budget {
            complete = false;
            break;
        }
        for v in cur.vertices() {
            let next = cur.local_complement(v)?;
            let code = canonical_form(&next);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(code) {
                let mut w = word.clone();
                w.push(v);
                e.insert(w.clone());
                queue.push_back((next, w));
            }
        }
    }
    let mut items: Vec<(CanonicalCode, Vec<u32>)> = seen.into_iter().collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    let size = items.len();
    let (codes, generator_log) = items.into_iter().unzip();
    Ok(OrbitSummary {
        codes,
        size,
        generator_log,
        complete,
    })
}

/// One-sided randomized containment search for graphs beyond the exhaustive
/// bound: repeatedly performs random reduction walks and reports a verified
/// witness if one is found. Never returns a trusted "no".
pub fn is_vertex_minor_randomized(
    h: &Graph,
    g: &Graph,
    tries: usize,
    seed: u64,
) -> Result<Outcome<ContainmentWitness>, Error> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    if h.n() > g.n() {
        return Ok(Outcome::None);
    }
    for _ in 0..tries {
        let mut cur = g.clone();
        let mut steps: Vec<Step> = Vec::new();
        while cur.n() > h.n() && cur.n() > VM_EXACT_LIMIT {
            let vs = cur.vertices();
            let v = vs[rng.gen_range(0..vs.len())];
            let choice = rng.gen_range(0..3);
            let mut local = reductions_at(&cur, v);
            let idx = choice.min(local.len() - 1);
            let (next, s) = local.swap_remove(idx);
            cur = next;
            steps.extend(s);
        }
        if cur.n() <= VM_EXACT_LIMIT {
            if let Some(w) = is_vertex_minor(h, &cur)? {
                let mut full = steps;
                full.extend(w.trace.steps.clone());
                let trace = OpTrace {
                    steps: full,
                    keep: w.trace.keep.clone(),
                    claim: None,
                };
                let witness = ContainmentWitness {
                    trace,
                    mapping: w.mapping,
                };
                if verify_witness(h, g, &witness) {
                    return Ok(Outcome::Found(witness));
                }
            }
        }
    }
    Ok(Outcome::Inconclusive)
}

/// Ordered bipartite pattern found inside G[S, T].
#[derive(Clone, Debug)]
pub struct BipartitePattern {
    pub kind: JoinKind,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

/// Search for S' ⊆ S, T' ⊆ T with |S'| = |T'| = k and G[S', T'] equal, as an
/// ordered pattern, to a matching (i = j), chain (i ≥ j), or anti-matching
/// (i ≠ j). Tries the kinds in that order; exhaustive for small k.
pub fn find_bipartite_pattern(
    g: &Graph,
    s: &[u32],
    t: &[u32],
    k: usize,
) -> Result<Option<BipartitePattern>, Error> {
    for &v in s.iter().chain(t.iter()) {
        g.check_vertex(v)?;
    }
    for kind in [JoinKind::Matching, JoinKind::Chain, JoinKind::AntiMatching] {
        let mut chosen_s: Vec<u32> = Vec::new();
        let mut chosen_t: Vec<u32> = Vec::new();
        if pattern_dfs(g, s, t, k, kind, &mut chosen_s, &mut chosen_t) {
            return Ok(Some(BipartitePattern {
                kind,
                s: chosen_s,
                t: chosen_t,
            }));
        }
    }
    Ok(None)
}

fn pattern_cell(kind: JoinKind, i: usize, j: usize) -> bool {
    match kind {
        JoinKind::Matching => i == j,
        JoinKind::AntiMatching => i != j,
        JoinKind::Chain => i >= j,
    }
}

fn pattern_dfs(
    g: &Graph,
    s: &[u32],
    t: &[u32],
    k: usize,
    kind: JoinKind,
    chosen_s: &mut Vec<u32>,
    chosen_t: &mut Vec<u32>,
) -> bool {
    let depth = chosen_s.len();
    if depth == k {
        return true;
    }
    for &cs in s {
        if chosen_s.contains(&cs) {
            continue;
        }
        // consistency of the new row against already chosen columns
        if (0..depth).any(|j| g.has_edge(cs, chosen_t[j]) != pattern_cell(kind, depth, j)) {
            continue;
        }
        chosen_s.push(cs);
        for &ct in t {
            if chosen_t.contains(&ct) || ct == cs {
                continue;
            }
            if (0..=depth).any(|i| g.has_edge(chosen_s[i], ct) != pattern_cell(kind, i, depth)) {
                continue;
            }
            chosen_t.push(ct);
            if pattern_dfs(g, s, t, k, kind, chosen_s, chosen_t) {
                return true;
            }
            chosen_t.pop();
        }
        chosen_s.pop();
    }
    false
}

/// Either a hub vertex of S with degree at least t+1 into T, or an induced
/// matching of size at least ⌈|T| / t⌉, built by the greedy recursion: match
/// a degree-1 T-vertex, delete its partner's closed neighborhood.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchingOrHub {
    Hub(u32),
    Matching(Vec<(u32, u32)>),
}

pub fn find_induced_matching_or_hub(
    g: &Graph,
    s: &[u32],
    t: &[u32],
    td: usize,
) -> Result<MatchingOrHub, Error> {
    for &v in s.iter().chain(t.iter()) {
        g.check_vertex(v)?;
    }
    if td == 0 {
        return Err(Error::precondition("t must be positive"));
    }
    let deg_into = |live_s: &Vec<u32>, v: u32| -> Vec<u32> {
        g.neighbors(v)
            .into_iter()
            .filter(|u| live_s.contains(u))
            .collect()
    };
    for &v in t {
        if deg_into(&s.to_vec(), v).is_empty() {
            return Err(Error::precondition(format!(
                "T-vertex {v} has no neighbor in S"
            )));
        }
    }
    if let Some(&hub) = s.iter().find(|&&x| {
        g.neighbors(x).iter().filter(|u| t.contains(u)).count() > td
    }) {
        return Ok(MatchingOrHub::Hub(hub));
    }
    let mut live_s: Vec<u32> = s.to_vec();
    let mut live_t: Vec<u32> = t.to_vec();
    let mut matching: Vec<(u32, u32)> = Vec::new();
    while !live_t.is_empty() {
        let degree_one = live_t
            .iter()
            .copied()
            .find(|&w| deg_into(&live_s, w).len() == 1);
        match degree_one {
            Some(w) => {
                let v = deg_into(&live_s, w)[0];
                matching.push((v, w));
                let nv: Vec<u32> = g.neighbors(v);
                live_t.retain(|&x| x != w && !nv.contains(&x));
                live_s.retain(|&x| x != v);
                live_t.retain(|&x| !deg_into(&live_s, x).is_empty());
            }
            None => {
                // every T-vertex has degree >= 2: drop one S-vertex
                live_s.remove(0);
                live_t.retain(|&x| !deg_into(&live_s, x).is_empty());
            }
        }
    }
    Ok(MatchingOrHub::Matching(matching))
}
