//! Canonical forms and isomorphism for small graphs.
//!
//! Exact canonicalization is supported for graphs with at most 16 live
//! vertices: iterated degree/neighborhood refinement with backtracking over
//! the refined partition, pruning twin vertices inside a cell. Two graphs get
//! the same code iff they are isomorphic. Larger graphs get an
//! invariant-based hash code (marked inexact) and no mapping search.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::error::Error;
use crate::graph::Graph;

pub const EXACT_LIMIT: usize = 16;

/// Byte string identifying an isomorphism class (exact for n ≤ 16).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalCode {
    pub exact: bool,
    pub bytes: Vec<u8>,
}

/// Compact adjacency for canonicalization: row bitsets over at most 16
/// vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SmallGraph {
    pub n: usize,
    pub rows: [u16; 16],
}

impl SmallGraph {
    pub fn from_graph(g: &Graph) -> Result<(SmallGraph, Vec<u32>), Error> {
        let vs = g.vertices();
        if vs.len() > EXACT_LIMIT {
            return Err(Error::UnsupportedSize {
                n: vs.len(),
                max: EXACT_LIMIT,
            });
        }
        let mut s = SmallGraph {
            n: vs.len(),
            rows: [0u16; 16],
        };
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate() {
                if i != j && g.has_edge(u, v) {
                    s.rows[i] |= 1 << j;
                }
            }
        }
        Ok((s, vs))
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.rows[i] >> j & 1 == 1 {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        Graph::from_edges(self.n, &edges).expect("valid small graph")
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    /// Adjacency of the relabeled graph where old vertex `i` becomes
    /// `perm[i]`, encoded as the upper-triangle bitstring read row by row.
    fn code_under(&self, perm: &[usize]) -> Vec<u8> {
        let mut inv = [0usize; 16];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut bits: Vec<u8> = Vec::with_capacity((self.n * (self.n - 1) / 2).div_ceil(8) + 1);
        bits.push(self.n as u8);
        let mut cur = 0u8;
        let mut used = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                let bit = self.has_edge(inv[i], inv[j]) as u8;
                cur = cur << 1 | bit;
                used += 1;
                if used == 8 {
                    bits.push(cur);
                    cur = 0;
                    used = 0;
                }
            }
        }
        if used > 0 {
            bits.push(cur << (8 - used));
        }
        bits
    }
}

/// Iterated neighborhood refinement. `colors[i]` is the color of vertex `i`;
/// returns colors relabeled to 0..k in order of (color key) and stable under
/// isomorphism.
#[allow(clippy::needless_range_loop)]
fn refine(g: &SmallGraph, colors: &mut [u64; 16]) {
    let n = g.n;
    loop {
        // signature of v: (old color, multiset of neighbor colors)
        let mut sigs: Vec<(u64, Vec<u64>, usize)> = (0..n)
            .map(|v| {
                let mut ncols: Vec<u64> = (0..n)
                    .filter(|&u| g.has_edge(v, u))
                    .map(|u| colors[u])
                    .collect();
                ncols.sort_unstable();
                (colors[v], ncols, v)
            })
            .collect();
        sigs.sort();
        let mut new = [0u64; 16];
        let mut next = 0u64;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                next += 1;
            }
            new[sigs[i].2] = next;
        }
        if new[..n] == colors[..n] {
            return;
        }
        colors[..n].copy_from_slice(&new[..n]);
    }
}

/// Cells of a coloring, ordered by color.
fn cells(n: usize, colors: &[u64; 16]) -> Vec<Vec<usize>> {
    let mut maxc = 0;
    for &c in &colors[..n] {
        maxc = maxc.max(c);
    }
    let mut out = vec![Vec::new(); maxc as usize + 1];
    for v in 0..n {
        out[colors[v] as usize].push(v);
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn search_min_code(g: &SmallGraph, colors: [u64; 16], best: &mut Option<(Vec<u8>, Vec<usize>)>) {
    let cs = cells(g.n, &colors);
    if let Some(cell) = cs.iter().find(|c| c.len() > 1) {
        // individualize each non-twin representative of the first
        // non-singleton cell
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            // twin pruning: swapping two vertices with identical adjacency
            // outside the pair is an automorphism
            let is_twin_of_tried = tried.iter().any(|&u| {
                let mask = !(1u16 << u | 1u16 << v);
                g.rows[u] & mask == g.rows[v] & mask
            });
            if is_twin_of_tried {
                continue;
            }
            tried.push(v);
            let mut next = colors;
            // give v a color below its cell, keeping invariance
            next[v] *= 2;
            for u in 0..g.n {
                if u != v {
                    next[u] = next[u] * 2 + 1;
                }
            }
            refine(g, &mut next);
            search_min_code(g, next, best);
        }
        return;
    }
    // discrete: colors induce the permutation old -> position
    let mut perm = vec![0usize; g.n];
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| colors[v]);
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    let code = g.code_under(&perm);
    match best {
        Some((b, _)) if *b <= code => {}
        _ => *best = Some((code, perm)),
    }
}

/// Canonical code plus a permutation `old index -> canonical position`
/// achieving it, for a compact small graph.
pub fn canonical_small(g: &SmallGraph) -> (Vec<u8>, Vec<usize>) {
    if g.n == 0 {
        return (vec![0u8], Vec::new());
    }
    let mut colors = [0u64; 16];
    for (v, color) in colors.iter_mut().enumerate().take(g.n) {
        *color = g.rows[v].count_ones() as u64;
    }
    refine(g, &mut colors);
    let mut best = None;
    search_min_code(g, colors, &mut best);
    best.expect("at least one leaf")
}

/// Canonical code of a graph: exact for n ≤ 16, invariant hash above.
pub fn canonical_form(g: &Graph) -> CanonicalCode {
    match SmallGraph::from_graph(g) {
        Ok((s, _)) => CanonicalCode {
            exact: true,
            bytes: canonical_small(&s).0,
        },
        Err(_) => CanonicalCode {
            exact: false,
            bytes: invariant_hash(g),
        },
    }
}

fn invariant_hash(g: &Graph) -> Vec<u8> {
    let mut per_vertex: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .iter()
        .map(|&v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    per_vertex.sort();
    let mut h = DefaultHasher::new();
    g.n().hash(&mut h);
    g.edge_count().hash(&mut h);
    per_vertex.hash(&mut h);
    let mut out = vec![0xffu8]; // tag: inexact
    out.extend_from_slice(&h.finish().to_be_bytes());
    out.extend_from_slice(&(g.n() as u64).to_be_bytes());
    out
}

/// Isomorphism test with an explicit mapping on yes. The mapping sends live
/// vertices of `g` to live vertices of `h`.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<(u32, u32)>>, Error> {
    if g.n() != h.n() {
        return Ok(None);
    }
    let (sg, vg) = SmallGraph::from_graph(g)?;
    let (sh, vh) = SmallGraph::from_graph(h)?;
    let (cg, pg) = canonical_small(&sg);
    let (ch, ph) = canonical_small(&sh);
    if cg != ch {
        return Ok(None);
    }
    // position -> old index in h
    let mut inv_h = vec![0usize; sh.n];
    for (old, &pos) in ph.iter().enumerate() {
        inv_h[pos] = old;
    }
    let mapping: Vec<(u32, u32)> = (0..sg.n).map(|i| (vg[i], vh[inv_h[pg[i]]])).collect();
    debug_assert!(mapping
        .iter()
        .all(|&(a, b)| g.is_alive(a) && h.is_alive(b)));
    Ok(Some(mapping))
}

/// Check a candidate mapping (pairs of live vertices, g -> h) for being an
/// isomorphism; works at any size, covering graphs beyond the exact
/// canonicalization range.
pub fn verify_isomorphism(g: &Graph, h: &Graph, mapping: &[(u32, u32)]) -> bool {
    if mapping.len() != g.n() || g.n() != h.n() {
        return false;
    }
    let mut seen_a = std::collections::BTreeSet::new();
    let mut seen_b = std::collections::BTreeSet::new();
    for &(a, b) in mapping {
        if !g.is_alive(a) || !h.is_alive(b) || !seen_a.insert(a) || !seen_b.insert(b) {
            return false;
        }
    }
    for &(a, b) in mapping {
        for &(c, d) in mapping {
            if g.has_edge(a, c) != h.has_edge(b, d) {
                return false;
            }
        }
    }
    true
}

/// Exhaustive-permutation canonical code; the oracle for n ≤ 8.
pub fn canonical_form_bruteforce(g: &Graph) -> Result<Vec<u8>, Error> {
    let (s, _) = SmallGraph::from_graph(g)?;
    if s.n > 8 {
        return Err(Error::UnsupportedSize { n: s.n, max: 8 });
    }
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..s.n).collect();
    permute(&mut perm, 0, &mut |p| {
        let code = s.code_under(p);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    });
    Ok(best.unwrap_or_else(|| vec![0u8]))
}

/// All graphs on exactly `n` vertices up to isomorphism, one canonical
/// representative each, built by extending the (n-1)-vertex list with every
/// neighborhood of a fresh vertex and deduplicating on canonical codes.
/// Ordered by code.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>, Error> {
    if n > 8 {
        return Err(Error::UnsupportedSize { n, max: 8 });
    }
    let mut level: Vec<Graph> = vec![Graph::new(1)];
    for k in 1..n {
        let mut seen: std::collections::BTreeMap<CanonicalCode, Graph> =
            std::collections::BTreeMap::new();
        for g in &level {
            let base = g.edges();
            for mask in 0u32..1 << k {
                let mut edges = base.clone();
                for i in 0..k {
                    if mask >> i & 1 == 1 {
                        edges.push((i as u32, k as u32));
                    }
                }
                let h = Graph::from_edges(k + 1, &edges)?;
                let code = canonical_form(&h);
                seen.entry(code).or_insert(h);
            }
        }
        level = seen.into_values().collect();
    }
    Ok(level)
}

fn permute(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph};
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn random_graph(n: usize, p: f64, rng: &mut StdRng) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn code_invariant_under_relabeling() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..=10);
            let g = random_graph(n, 0.5, &mut rng);
            let code = canonical_form(&g);
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            assert_eq!(code, canonical_form(&h));
        }
    }

    #[test]
    fn matches_bruteforce_oracle() {
        let mut rng = StdRng::seed_from_u64(23);
        for _ in 0..300 {
            let n = rng.gen_range(1..=7);
            let g = random_graph(n, 0.5, &mut rng);
            let h = random_graph(n, 0.5, &mut rng);
            let same_fast = canonical_form(&g) == canonical_form(&h);
            let same_brute =
                canonical_form_bruteforce(&g).unwrap() == canonical_form_bruteforce(&h).unwrap();
            assert_eq!(same_fast, same_brute);
        }
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // brute-force enumeration over all 2^6 labeled graphs on 4 vertices
        let pairs = [(0u32, 1u32), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut codes = std::collections::BTreeSet::new();
        let mut brute = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<(u32, u32)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edges(4, &edges).unwrap();
            codes.insert(canonical_form(&g).bytes);
            brute.insert(canonical_form_bruteforce(&g).unwrap());
        }
        assert_eq!(codes.len(), 11);
        assert_eq!(brute.len(), 11);
    }

    #[test]
    fn c5_vs_p5_differ() {
        assert_ne!(canonical_form(&cycle_graph(5)), canonical_form(&path_graph(5)));
    }

    #[test]
    fn isomorphism_mapping_is_checked() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..50 {
            let n = rng.gen_range(1..=9);
            let g = random_graph(n, 0.5, &mut rng);
            let mut perm: Vec<u32> = (0..n as u32).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm).unwrap();
            let mapping = are_isomorphic(&g, &h).unwrap().expect("isomorphic");
            for &(a, b) in &mapping {
                for &(c, d) in &mapping {
                    assert_eq!(g.has_edge(a, c), h.has_edge(b, d));
                }
            }
        }
    }

    #[test]
    fn regular_graphs_canonize() {
        // cells never split by refinement alone; exercises the backtracking
        let c = canonical_form(&cycle_graph(12));
        let mut perm: Vec<u32> = (0..12).collect();
        perm.rotate_left(5);
        assert_eq!(c, canonical_form(&cycle_graph(12).relabel(&perm).unwrap()));
        // complete graphs rely on twin pruning
        let k = canonical_form(&complete_graph(16));
        assert!(k.exact);
        assert_ne!(canonical_form(&complete_graph(15)), k);
    }

    #[test]
    fn candidate_mappings_verify_beyond_the_exact_range() {
        let g = path_graph(40);
        let mut perm: Vec<u32> = (0..40).collect();
        perm.reverse();
        let h = g.relabel(&perm).unwrap();
        let mapping: Vec<(u32, u32)> = (0..40).map(|v| (v, 39 - v)).collect();
        assert!(verify_isomorphism(&g, &h, &mapping));
        let broken: Vec<(u32, u32)> = (0..40).map(|v| (v, v)).collect();
        assert!(!verify_isomorphism(&g, &h, &broken) || g == h);
    }

    #[test]
    fn enumeration_counts_match_oeis() {
        // numbers of graphs on n unlabeled vertices: 1, 2, 4, 11, 34, 156, 1044
        let want = [1usize, 2, 4, 11, 34, 156, 1044];
        for (idx, &w) in want.iter().enumerate() {
            let n = idx + 1;
            if n > 6 {
                continue; // n = 7 exercised in the acceptance suite
            }
            assert_eq!(enumerate_graphs(n).unwrap().len(), w, "count for n = {n}");
        }
    }

    #[test]
    fn oversize_graphs_get_inexact_codes() {
        let g = path_graph(40);
        let code = canonical_form(&g);
        assert!(!code.exact);
        assert!(are_isomorphic(&g, &g).is_err());
    }
}
