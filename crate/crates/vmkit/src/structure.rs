//! Splits, primality, and the 1-join.
//!
//! A split is a partition (A, B) with |A|, |B| ≥ 2 whose cross edges form a
//! complete bipartite graph A0 × B0; equivalently ρ_G(A) ≤ 1. Graphs with at
//! most 3 vertices are not prime by convention (the paper never defines
//! primality below 4 vertices; its prime results all assume at least 5).

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::Graph;
use crate::rank::cut_rank;

/// A split with its complete-bipartite cross witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub a0: Vec<u32>,
    pub b0: Vec<u32>,
}

impl Split {
    /// Check both characterizations: the witness sets and ρ(A) ≤ 1.
    pub fn validate(&self, g: &Graph) -> Result<(), Error> {
        let aset: BTreeSet<u32> = self.a.iter().copied().collect();
        let bset: BTreeSet<u32> = self.b.iter().copied().collect();
        if self.a.len() < 2 || self.b.len() < 2 {
            return Err(Error::invalid("split", "both sides need >= 2 vertices"));
        }
        if aset.intersection(&bset).next().is_some() {
            return Err(Error::invalid("split", "sides overlap"));
        }
        if aset.len() + bset.len() != g.n() {
            return Err(Error::invalid("split", "sides must partition V(G)"));
        }
        let a0: BTreeSet<u32> = self.a0.iter().copied().collect();
        let b0: BTreeSet<u32> = self.b0.iter().copied().collect();
        if !a0.is_subset(&aset) || !b0.is_subset(&bset) {
            return Err(Error::invalid("split", "witness sets not inside sides"));
        }
        for &x in &self.a {
            for &y in &self.b {
                let want = a0.contains(&x) && b0.contains(&y);
                if g.has_edge(x, y) != want {
                    return Err(Error::invalid(
                        "split",
                        format!("cross edge {x},{y} contradicts witness"),
                    ));
                }
            }
        }
        if cut_rank(g, &self.a)? > 1 {
            return Err(Error::invalid("split", "cut-rank of A exceeds 1"));
        }
        Ok(())
    }
}

/// Closure outcome for one (seed pair, pattern anchor) choice: grow the
/// forced A-side until the outside traces are uniform.
fn grow_split(g: &Graph, verts: &[u32], a1: u32, a2: u32, anchor: u32, cap: usize) -> Option<Vec<u32>> {
    let mut in_a: BTreeSet<u32> = [a1, a2].into_iter().collect();
    loop {
        if in_a.len() > cap || in_a.contains(&anchor) {
            return None;
        }
        // pattern = N(anchor) ∩ A; empty pattern means "no cross edges"
        let pattern: BTreeSet<u32> = g
            .neighbors(anchor)
            .into_iter()
            .filter(|v| in_a.contains(v))
            .collect();
        let mut violators: Vec<u32> = Vec::new();
        for &v in verts {
            if in_a.contains(&v) || v == anchor {
                continue;
            }
            let trace: BTreeSet<u32> = g
                .neighbors(v)
                .into_iter()
                .filter(|u| in_a.contains(u))
                .collect();
            let ok = trace.is_empty() || (!pattern.is_empty() && trace == pattern);
            if !ok {
                violators.push(v);
            }
        }
        if violators.is_empty() {
            if verts.len() - in_a.len() < 2 {
                return None;
            }
            return Some(in_a.into_iter().collect());
        }
        in_a.extend(violators);
    }
}

fn split_from_side(g: &Graph, verts: &[u32], a: Vec<u32>) -> Split {
    let aset: BTreeSet<u32> = a.iter().copied().collect();
    let b: Vec<u32> = verts.iter().copied().filter(|v| !aset.contains(v)).collect();
    let mut a0: BTreeSet<u32> = BTreeSet::new();
    let mut b0: BTreeSet<u32> = BTreeSet::new();
    for &x in &a {
        for &y in &b {
            if g.has_edge(x, y) {
                a0.insert(x);
                b0.insert(y);
            }
        }
    }
    Split {
        a,
        b,
        a0: a0.into_iter().collect(),
        b0: b0.into_iter().collect(),
    }
}

/// Find a split, or `None` when the graph is prime (or has fewer than 4
/// vertices). Deterministic: among all splits, returns the one whose A side
/// has minimum size, breaking ties by lexicographically least sorted id
/// list. Seed-pair closure: every inclusion-minimal split side containing a
/// given seed pair is discovered by growing the forced side against some
/// pattern anchor, so scanning all seed triples sees every minimal side.
pub fn find_split(g: &Graph) -> Result<Option<Split>, Error> {
    let verts = g.vertices();
    let n = verts.len();
    if n < 4 {
        return Ok(None);
    }
    let mut best: Option<Vec<u32>> = None;
    let mut cap = n - 2;
    for (i, &a1) in verts.iter().enumerate() {
        for &a2 in verts.iter().skip(i + 1) {
            for &anchor in &verts {
                if anchor == a1 || anchor == a2 {
                    continue;
                }
                if let Some(side) = grow_split(g, &verts, a1, a2, anchor, cap) {
                    let better = match &best {
                        None => true,
                        Some(cur) => {
                            side.len() < cur.len() || (side.len() == cur.len() && side < *cur)
                        }
                    };
                    if better {
                        cap = side.len();
                        best = Some(side);
                    }
                }
            }
        }
    }
    match best {
        None => Ok(None),
        Some(a) => {
            let split = split_from_side(g, &verts, a);
            split.validate(g)?;
            Ok(Some(split))
        }
    }
}

/// Exhaustive 2^n oracle over subsets; usable up to n = 12.
pub fn find_split_exhaustive(g: &Graph) -> Result<Option<Split>, Error> {
    let verts = g.vertices();
    let n = verts.len();
    if n < 4 {
        return Ok(None);
    }
    if n > 12 {
        return Err(Error::UnsupportedSize { n, max: 12 });
    }
    let mut best: Option<Vec<u32>> = None;
    for mask in 0u32..1 << n {
        let k = mask.count_ones() as usize;
        if k < 2 || n - k < 2 {
            continue;
        }
        let a: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| verts[i]).collect();
        if cut_rank(g, &a)? <= 1 {
            let better = match &best {
                None => true,
                Some(cur) => a.len() < cur.len() || (a.len() == cur.len() && a < *cur),
            };
            if better {
                best = Some(a);
            }
        }
    }
    Ok(best.map(|a| split_from_side(g, &verts, a)))
}

/// True iff the graph has at least 4 vertices and no split.
pub fn is_prime(g: &Graph) -> Result<bool, Error> {
    Ok(g.n() >= 4 && find_split(g)?.is_none())
}

/// 1-join: disjoint union of G1 \ v1 and G2 \ v2 plus the complete bipartite
/// graph N(v1) × N(v2). G1 \ v1 keeps its ids compacted to 0.., G2 \ v2
/// follows.
pub fn one_join(g1: &Graph, v1: u32, g2: &Graph, v2: u32) -> Result<Graph, Error> {
    g1.check_vertex(v1)?;
    g2.check_vertex(v2)?;
    let keep1: Vec<u32> = g1.vertices().into_iter().filter(|&v| v != v1).collect();
    let keep2: Vec<u32> = g2.vertices().into_iter().filter(|&v| v != v2).collect();
    let (h1, map1) = g1.induced(&keep1)?;
    let (h2, map2) = g2.induced(&keep2)?;
    let off = h1.n() as u32;
    let mut out = Graph::new(h1.n() + h2.n());
    for (u, v) in h1.edges() {
        out.set_edge(u, v, true);
    }
    for (u, v) in h2.edges() {
        out.set_edge(u + off, v + off, true);
    }
    let n1: Vec<u32> = (0..h1.n() as u32)
        .filter(|&i| g1.has_edge(map1[i as usize], v1))
        .collect();
    let n2: Vec<u32> = (0..h2.n() as u32)
        .filter(|&i| g2.has_edge(map2[i as usize], v2))
        .collect();
    for &x in &n1 {
        for &y in &n2 {
            out.set_edge(x, y + off, true);
        }
    }
    Ok(out)
}
