//! Fan and center-path extractors: F_{3n} reduces to C_{2n+1} by
//! complementing every third path vertex; a center over an induced path with
//! adjacent ends reduces through the fan or through a chord-free subpath.

use std::time::Instant;

use crate::error::Error;
use crate::families::{self, FamilySpec};
use crate::graph::Graph;
use crate::trace::TraceBuilder;

use super::{finish_cycle, Extraction, ExtractionReport, Mode, StageOut};

/// The zigzag steps on an already-recognized fan sitting inside the
/// builder's current graph: trims the path to 3n vertices with the center,
/// complements positions 3, 6, …, 3n-3 and deletes them. Returns the cycle
/// order left behind.
pub(crate) fn fan_steps(
    b: &mut TraceBuilder,
    center: u32,
    path: &[u32],
    n: usize,
) -> Result<Vec<u32>, Error> {
    let need = 3 * n - 1;
    if path.len() < need {
        return Err(Error::precondition(format!(
            "fan path has {} vertices, need {need}",
            path.len()
        )));
    }
    let trim: Vec<u32> = path[need..].to_vec();
    b.delete(&trim)?;
    let path = &path[..need];
    // positions are 1-based in v_1..v_{3n-1}
    let hit: Vec<u32> = (1..n).map(|i| path[3 * i - 1]).collect();
    for &v in &hit {
        b.lc(v)?;
    }
    b.delete(&hit)?;
    // cycle order: center, then v_1, v_2, skip each v_{3i}, …
    let mut order = vec![center];
    for (idx, &v) in path.iter().enumerate() {
        if (idx + 1) % 3 != 0 || idx + 1 == need {
            order.push(v);
        }
    }
    debug_assert!(super::is_induced_cycle(&b.graph, &order));
    Ok(order)
}

/// F_m -> C_{2n+1} with n = ⌊m/3⌋; extra path vertices are trimmed first.
/// The input must be a fan.
pub fn fan_to_cycle(g: &Graph) -> Result<ExtractionReport, Error> {
    let started = Instant::now();
    let (center, path) = families::recognize_fan(g)
        .ok_or_else(|| Error::precondition("input is not a fan"))?;
    let m = g.n();
    let n = m / 3;
    if n == 0 {
        return Err(Error::precondition("fan too small"));
    }
    let mut b = TraceBuilder::new(g);
    let cycle = fan_steps(&mut b, center, &path, n)?;
    let report = finish_cycle(g, b, cycle, 2 * n + 1, started)?;
    debug_assert_eq!(report.target, FamilySpec::Cycle(2 * n + 1));
    Ok(report)
}

/// Core of the center-path lemma, running on a builder. `c` dominates
/// nothing by assumption beyond its path neighbors; the rest of the graph
/// must be exactly an induced path whose ends are adjacent to `c`.
/// Returns a cycle of length exactly 2n+1 (as the order), or Stuck in
/// best-effort mode.
pub(crate) fn center_path_steps(
    b: &mut TraceBuilder,
    c: u32,
    n: usize,
    mode: Mode,
) -> Result<StageOut<()>, Error> {
    if n < 2 {
        return Err(Error::precondition("center-path lemma needs n >= 2"));
    }
    let shape = |g: &Graph| -> Result<Vec<u32>, Error> {
        let rest: Vec<u32> = g.vertices().into_iter().filter(|&v| v != c).collect();
        let path = families::path_order_within(g, &rest)
            .ok_or_else(|| Error::precondition("graph minus center is not an induced path"))?;
        if !g.has_edge(c, path[0]) || !g.has_edge(c, *path.last().unwrap()) {
            return Err(Error::precondition("path ends must be adjacent to the center"));
        }
        Ok(path)
    };
    let mut path = shape(&b.graph)?;
    if path.len() == 2 {
        // triangle; cannot reach 2n+1 >= 5
        return Ok(StageOut::Stuck("triangle only".into()));
    }
    // a wide chord-free subpath may already exist (e.g. the whole graph is
    // a cycle); harvesting it first keeps the normalization from spending it
    if let Some(cycle) = gap_exit(b, c, &path, n)? {
        return Ok(StageOut::Cycle(cycle));
    }
    // normalization: make v_2, v_{k-1}, v_3, v_{k-2} adjacent to c
    if path.len() >= 6 {
        for _ in 0..2 {
            let k = path.len();
            if !b.graph.has_edge(c, path[1]) {
                b.lc(path[0])?;
            }
            if !b.graph.has_edge(c, path[k - 2]) {
                b.lc(path[k - 1])?;
            }
            if !b.graph.has_edge(c, path[2]) {
                b.pivot(path[0], path[1])?;
            }
            if !b.graph.has_edge(c, path[k - 3]) {
                b.pivot(path[k - 1], path[k - 2])?;
            }
            path = shape(&b.graph)?;
            let k = path.len();
            let ok = b.graph.has_edge(c, path[1])
                && b.graph.has_edge(c, path[2])
                && b.graph.has_edge(c, path[k - 2])
                && b.graph.has_edge(c, path[k - 3]);
            if ok {
                break;
            }
        }
    }
    let count_nbrs = |g: &Graph, path: &[u32]| -> usize {
        path.iter().filter(|&&v| g.has_edge(c, v)).count()
    };
    if count_nbrs(&b.graph, &path) >= 3 * n - 1 {
        // fan route: dissolve internal path vertices not adjacent to c
        loop {
            let inner = path[1..path.len() - 1]
                .iter()
                .copied()
                .find(|&v| !b.graph.has_edge(c, v));
            match inner {
                Some(v) => {
                    b.lc(v)?;
                    b.delete(&[v])?;
                    path.retain(|&x| x != v);
                }
                None => break,
            }
        }
        debug_assert!(path.iter().all(|&v| b.graph.has_edge(c, v)));
        let cycle = fan_steps(b, c, &path, n)?;
        // fan_steps leaves an induced cycle of length 2n+1 exactly
        debug_assert_eq!(cycle.len(), 2 * n + 1);
        return Ok(StageOut::Cycle(cycle));
    }
    // gap route: a chord-free subpath of length >= 2n-1 between consecutive
    // neighbors of c closes into an induced cycle of length >= 2n+1
    match gap_exit(b, c, &path, n)? {
        Some(cycle) => Ok(StageOut::Cycle(cycle)),
        None => {
            if mode == Mode::Guarantee {
                Err(Error::invalid(
                    "extract",
                    "guaranteed gap missing; input below the size floor?",
                ))
            } else {
                Ok(StageOut::Stuck("no wide enough chord-free subpath".into()))
            }
        }
    }
}

/// If c has two consecutive path neighbors at distance at least 2n-1, close
/// the subpath into an induced cycle and shrink it to exactly 2n+1.
fn gap_exit(
    b: &mut TraceBuilder,
    c: u32,
    path: &[u32],
    n: usize,
) -> Result<Option<Vec<u32>>, Error> {
    let nbr_positions: Vec<usize> = path
        .iter()
        .enumerate()
        .filter(|(_, &v)| b.graph.has_edge(c, v))
        .map(|(i, _)| i)
        .collect();
    let mut best: Option<(usize, usize)> = None;
    for w in nbr_positions.windows(2) {
        let gap = w[1] - w[0];
        if best.is_none_or(|(_, g0)| gap > g0) {
            best = Some((w[0], gap));
        }
    }
    match best {
        Some((start, gap)) if gap >= 2 * n - 1 => {
            let mut cycle = vec![c];
            cycle.extend_from_slice(&path[start..=start + gap]);
            let keep: std::collections::BTreeSet<u32> = cycle.iter().copied().collect();
            let extra: Vec<u32> = b
                .graph
                .vertices()
                .into_iter()
                .filter(|v| !keep.contains(v))
                .collect();
            b.delete(&extra)?;
            debug_assert!(super::is_induced_cycle(&b.graph, &cycle));
            // shrink to exactly 2n+1 (never touching c's cycle membership)
            while cycle.len() > 2 * n + 1 {
                let v = cycle[2];
                b.lc(v)?;
                b.delete(&[v])?;
                cycle.remove(2);
            }
            Ok(Some(cycle))
        }
        _ => Ok(None),
    }
}

/// Lemma on center-path shapes: G \ c an induced path with both ends
/// adjacent to c. Guarantee mode requires |V| >= 6(n-1)^2 - 3 and always
/// succeeds; the result is a C_{2n+1} certificate.
pub fn center_path_to_cycle(g: &Graph, c: u32, n: usize, mode: Mode) -> Result<Extraction, Error> {
    let started = Instant::now();
    g.check_vertex(c)?;
    if mode == Mode::Guarantee && g.n() < 6 * (n - 1) * (n - 1) - 3 {
        return Err(Error::GuaranteeRefused(format!(
            "need at least {} vertices for n = {n}, got {}",
            6 * (n - 1) * (n - 1) - 3,
            g.n()
        )));
    }
    let mut b = TraceBuilder::new(g);
    match center_path_steps(&mut b, c, n, mode)? {
        StageOut::Cycle(cycle) => Ok(Extraction::Done(finish_cycle(g, b, cycle, 2 * n + 1, started)?)),
        StageOut::Stuck(why) => Ok(Extraction::Inconclusive(why)),
        StageOut::Out(()) => unreachable!("center-path stage only yields cycles"),
    }
}
