//! Induced x–y paths of length 3 from rank-2 pairs, and the K_c ⋈ K_c
//! assembly from components that each carry cross-rank 2 against {x, y}.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::Error;
use crate::families::{FamilySpec, JoinKind};
use crate::graph::Graph;
use crate::rank::{cross_rank, cut_rank};
use crate::trace::{OpTrace, TraceBuilder};

use super::{ExtractStats, ExtractionReport};

/// The quadruple {x, a, b, y} induces the path x–a–b–y.
fn find_p4(g: &Graph, x: u32, y: u32) -> Option<(u32, u32)> {
    if g.has_edge(x, y) {
        return None;
    }
    let verts = g.vertices();
    for &a in &verts {
        if a == x || a == y || !g.has_edge(x, a) || g.has_edge(y, a) {
            continue;
        }
        for &b in &verts {
            if b == x || b == y || b == a {
                continue;
            }
            if g.has_edge(a, b) && g.has_edge(b, y) && !g.has_edge(b, x) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Word of local complementations (at vertices other than x, y) after which
/// the graph has an induced path of length 3 from x to y. Requires
/// ρ({x, y}) = 2 and G \ x \ y connected.
fn p4_word(g: &Graph, x: u32, y: u32, depth: usize) -> Result<Vec<u32>, Error> {
    if depth > 2 * g.n() + 8 {
        return Err(Error::invalid("extract", "p4 recursion exceeded its bound"));
    }
    if cut_rank(&g.induced(&g.vertices())?.0, &[]).is_err() {
        // unreachable; keeps the rank module linked in debug builds
    }
    let pair_rank = {
        let rest: Vec<u32> = g
            .vertices()
            .into_iter()
            .filter(|&v| v != x && v != y)
            .collect();
        cross_rank(g, &[x, y], &rest)?
    };
    if pair_rank != 2 {
        return Err(Error::precondition(format!(
            "ρ({{x,y}}) must be 2, got {pair_rank}"
        )));
    }
    let minus = g.delete_vertices(&[x, y])?;
    if !minus.is_connected() {
        return Err(Error::precondition("G \\ x \\ y must be connected"));
    }
    if find_p4(g, x, y).is_some() {
        return Ok(Vec::new());
    }
    if g.n() == 4 {
        // breadth-first search over words on the two non-{x,y} vertices
        let others: Vec<u32> = g
            .vertices()
            .into_iter()
            .filter(|&v| v != x && v != y)
            .collect();
        let mut seen: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
        let mut queue: Vec<(Graph, Vec<u32>)> = vec![(g.clone(), Vec::new())];
        seen.insert(g.edges());
        while let Some((cur, word)) = queue.pop() {
            for &v in &others {
                let next = cur.local_complement(v)?;
                if find_p4(&next, x, y).is_some() {
                    let mut w = word.clone();
                    w.push(v);
                    return Ok(w);
                }
                if seen.insert(next.edges()) {
                    let mut w = word.clone();
                    w.push(v);
                    queue.push((next, w));
                }
            }
        }
        return Err(Error::invalid(
            "extract",
            "4-vertex base case admits no induced path; precondition violated?",
        ));
    }
    // classes of the non-{x,y} vertices by their adjacency to the pair
    let class = |v: u32| -> u8 {
        (g.has_edge(v, x) as u8) | (g.has_edge(v, y) as u8) << 1
    };
    let others: Vec<u32> = g
        .vertices()
        .into_iter()
        .filter(|&v| v != x && v != y)
        .collect();
    let deletable = |t: u32| -> bool {
        minus
            .delete_vertices(&[t])
            .map(|h| h.n() == 0 || h.is_connected())
            .unwrap_or(false)
    };
    // deletable vertex outside every class keeps the rank
    if let Some(&t) = others.iter().find(|&&t| class(t) == 0 && deletable(t)) {
        return p4_word(&g.delete_vertices(&[t])?, x, y, depth + 1);
    }
    // deletable vertex in a class of size > 1 keeps the rank
    for &t in &others {
        let c = class(t);
        if c != 0 && deletable(t) && others.iter().filter(|&&u| class(u) == c).count() > 1 {
            return p4_word(&g.delete_vertices(&[t])?, x, y, depth + 1);
        }
    }
    // three singleton-class deletable vertices: dropping one keeps two
    // nonempty classes
    let deletables: Vec<u32> = others.iter().copied().filter(|&t| deletable(t)).collect();
    if deletables.len() >= 3 {
        let t = deletables[0];
        return p4_word(&g.delete_vertices(&[t])?, x, y, depth + 1);
    }
    // G \ x \ y has at most 2 deletable vertices: it is a path; complement
    // at an interior vertex to free things up
    let w = others
        .iter()
        .copied()
        .find(|&v| minus.degree(v) == 2)
        .ok_or_else(|| Error::invalid("extract", "expected a path with an interior vertex"))?;
    let mut word = vec![w];
    word.extend(p4_word(&g.local_complement(w)?, x, y, depth + 1)?);
    Ok(word)
}

/// Trace whose word (local complementations off {x, y}) produces an induced
/// P_4 from x to y; the kept quadruple carries a `path 4` claim.
pub fn induced_p4_between(g: &Graph, x: u32, y: u32) -> Result<OpTrace, Error> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let word = p4_word(g, x, y, 0)?;
    let mut b = TraceBuilder::new(g);
    for &v in &word {
        b.lc(v)?;
    }
    let (a, bb) = find_p4(&b.graph, x, y)
        .ok_or_else(|| Error::invalid("extract", "word did not produce the promised path"))?;
    let trace = b.finish(Some(vec![x, a, bb, y]), Some(FamilySpec::Path(4)));
    trace.replay_verified(g)?;
    Ok(trace)
}

/// Each component F_1..F_c of G \ x \ y with ρ*({x, y}, F_i) = 2 is reduced
/// to an induced x–y path of length 3; complementing x and y then deleting
/// them leaves K_c ⋈ K_c.
pub fn matched_cliques_from_components(
    g: &Graph,
    x: u32,
    y: u32,
    c: usize,
) -> Result<ExtractionReport, Error> {
    let started = Instant::now();
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    let minus = g.delete_vertices(&[x, y])?;
    let comps = minus.components();
    if comps.len() < c || c == 0 {
        return Err(Error::precondition(format!(
            "need {c} components, found {}",
            comps.len()
        )));
    }
    let comps = &comps[..c];
    for comp in comps {
        if cross_rank(g, &[x, y], comp)? != 2 {
            return Err(Error::precondition(
                "every component must have cross-rank 2 against {x, y}",
            ));
        }
    }
    let mut b = TraceBuilder::new(g);
    // drop any components beyond the first c
    let used: BTreeSet<u32> = comps.iter().flatten().copied().collect();
    let extra: Vec<u32> = minus
        .vertices()
        .into_iter()
        .filter(|v| !used.contains(v))
        .collect();
    b.delete(&extra)?;
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for comp in comps {
        // work inside the component: build the induced subgraph on
        // comp ∪ {x, y}, find the word there, lift it (ids are stable)
        let mut sub_vs: Vec<u32> = comp.clone();
        sub_vs.push(x);
        sub_vs.push(y);
        sub_vs.sort_unstable();
        let (sub, map) = b.graph.induced(&sub_vs)?;
        let sx = map.iter().position(|&v| v == x).unwrap() as u32;
        let sy = map.iter().position(|&v| v == y).unwrap() as u32;
        let word = p4_word(&sub, sx, sy, 0)?;
        for &v in &word {
            b.lc(map[v as usize])?;
        }
        // the component now holds the path; trim it to the two middle
        // vertices
        let (sub2, map2) = b.graph.induced(&sub_vs)?;
        let (sa, sb) = find_p4(&sub2, sx, sy)
            .ok_or_else(|| Error::invalid("extract", "component word failed"))?;
        let (a, bb) = (map2[sa as usize], map2[sb as usize]);
        let doomed: Vec<u32> = comp.iter().copied().filter(|&v| v != a && v != bb).collect();
        b.delete(&doomed)?;
        pairs.push((a, bb));
    }
    debug_assert!(!b.graph.has_edge(x, y));
    b.lc(x)?;
    b.lc(y)?;
    b.delete(&[x, y])?;
    let keep: Vec<u32> = pairs.iter().flat_map(|&(a, bb)| [a, bb]).collect();
    let claim = FamilySpec::Join(
        JoinKind::Matching,
        Box::new(FamilySpec::Complete(c)),
        Box::new(FamilySpec::Complete(c)),
    );
    let trace = b.finish(Some(keep), Some(claim.clone()));
    trace.replay_verified(g)?;
    Ok(ExtractionReport {
        stats: ExtractStats {
            steps: trace.steps.len(),
            wall_ms: started.elapsed().as_millis(),
        },
        trace,
        target: claim,
    })
}
