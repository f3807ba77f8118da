//! Brooms: a center with a handle path and fibers hanging off the center.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::Graph;

/// A (h, w, ℓ)-broom: `handle` lists the handle path starting at the center
/// (h edges), each fiber has exactly ℓ vertices and is a component of
/// H \ V(handle).
#[derive(Clone, Debug)]
pub struct BroomView {
    pub graph: Graph,
    pub center: u32,
    pub handle: Vec<u32>,
    pub fibers: Vec<Vec<u32>>,
}

/// Internal shape of each fiber.
#[derive(Clone, Copy, Debug)]
pub enum FiberSpec {
    Path,
    Clique,
    RandomConnected,
}

/// How the center attaches to each fiber.
#[derive(Clone, Copy, Debug)]
pub enum AttachmentSpec {
    First,
    All,
    RandomNonempty,
}

impl BroomView {
    pub fn height(&self) -> usize {
        self.handle.len() - 1
    }

    pub fn width(&self) -> usize {
        self.fibers.len()
    }

    pub fn validate(&self) -> Result<(), Error> {
        let g = &self.graph;
        if self.handle.first() != Some(&self.center) {
            return Err(Error::invalid("broom", "handle must start at the center"));
        }
        if crate::families::path_order_within(g, &self.handle).is_none() {
            return Err(Error::invalid("broom", "handle is not an induced path"));
        }
        if !g.is_connected() {
            return Err(Error::invalid("broom", "broom must be connected"));
        }
        // handle minus center is a component of H \ center
        let minus_center = g.delete_vertices(&[self.center])?;
        let tail: std::collections::BTreeSet<u32> =
            self.handle.iter().skip(1).copied().collect();
        if !tail.is_empty()
            && !minus_center
                .components()
                .iter()
                .any(|c| c.iter().copied().collect::<std::collections::BTreeSet<_>>() == tail)
        {
            return Err(Error::invalid(
                "broom",
                "handle minus center is not a component of H minus center",
            ));
        }
        // fibers are exactly the components of H \ V(handle)
        let minus_handle = g.delete_vertices(&self.handle)?;
        let comps = minus_handle.components();
        if comps.len() != self.fibers.len() {
            return Err(Error::invalid(
                "broom",
                format!("expected {} fibers, found {} components", self.fibers.len(), comps.len()),
            ));
        }
        let mut want: Vec<Vec<u32>> = self
            .fibers
            .iter()
            .map(|f| {
                let mut f = f.clone();
                f.sort_unstable();
                f
            })
            .collect();
        want.sort();
        let mut got = comps;
        got.sort();
        if want != got {
            return Err(Error::invalid("broom", "fibers are not the components"));
        }
        let l = self.fibers.first().map_or(0, |f| f.len());
        if self.fibers.iter().any(|f| f.len() != l) {
            return Err(Error::invalid("broom", "fibers must share one length"));
        }
        Ok(())
    }
}

/// Does `v` (outside the broom) block fiber `fiber_idx`? A vertex blocks a
/// fiber F when ρ*(V(F), (V(H) \ V(F)) ∪ {v}) > 1.
pub fn blocks_fiber(
    g: &crate::graph::Graph,
    broom: &BroomView,
    fiber_idx: usize,
    v: u32,
) -> Result<bool, Error> {
    let fiber = broom
        .fibers
        .get(fiber_idx)
        .ok_or_else(|| Error::invalid("broom", "fiber index out of range"))?;
    let mut rest: Vec<u32> = broom
        .handle
        .iter()
        .chain(broom.fibers.iter().flatten())
        .copied()
        .filter(|u| !fiber.contains(u))
        .collect();
    rest.push(v);
    Ok(crate::rank::cross_rank(g, fiber, &rest)? > 1)
}

/// Deterministically build a (h, w, ℓ)-broom. Labeling: center 0, handle
/// 1..=h, then fibers in consecutive blocks of ℓ.
pub fn make_broom(
    h: usize,
    w: usize,
    l: usize,
    fiber: FiberSpec,
    attach: AttachmentSpec,
    seed: u64,
) -> Result<BroomView, Error> {
    if h < 1 || w < 1 || l < 1 {
        return Err(Error::FamilyTooSmall("broom needs h, w, l >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + h + w * l;
    let mut g = Graph::new(n);
    for i in 0..h {
        g.set_edge(i as u32, i as u32 + 1, true);
    }
    let mut fibers = Vec::new();
    for f in 0..w {
        let base = (1 + h + f * l) as u32;
        let verts: Vec<u32> = (base..base + l as u32).collect();
        match fiber {
            FiberSpec::Path => {
                for i in 1..l {
                    g.set_edge(verts[i - 1], verts[i], true);
                }
            }
            FiberSpec::Clique => {
                for i in 0..l {
                    for j in i + 1..l {
                        g.set_edge(verts[i], verts[j], true);
                    }
                }
            }
            FiberSpec::RandomConnected => {
                // random spanning tree, then a sprinkle of extra edges
                for i in 1..l {
                    let j = rng.gen_range(0..i);
                    g.set_edge(verts[i], verts[j], true);
                }
                for i in 0..l {
                    for j in i + 1..l {
                        if rng.gen_bool(0.2) {
                            g.set_edge(verts[i], verts[j], true);
                        }
                    }
                }
            }
        }
        let attach_to: Vec<u32> = match attach {
            AttachmentSpec::First => vec![verts[0]],
            AttachmentSpec::All => verts.clone(),
            AttachmentSpec::RandomNonempty => {
                let k = rng.gen_range(1..=l);
                let mut vs = verts.clone();
                vs.shuffle(&mut rng);
                vs.truncate(k);
                vs
            }
        };
        for v in attach_to {
            g.set_edge(0, v, true);
        }
        fibers.push(verts);
    }
    let view = BroomView {
        graph: g,
        center: 0,
        handle: (0..=h as u32).collect(),
        fibers,
    };
    view.validate()?;
    Ok(view)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use crate::families::{make, FamilySpec};

    #[test]
    fn one_t_one_broom_is_a_star() {
        // a (1,t,1)-broom is isomorphic to K_{1,t+1}
        for t in 1..5 {
            let b = make_broom(1, t, 1, FiberSpec::Path, AttachmentSpec::All, 0).unwrap();
            assert_eq!(
                canonical_form(&b.graph),
                canonical_form(&make(&FamilySpec::Star(t + 2)).unwrap())
            );
        }
    }

    #[test]
    fn validator_catches_merged_fibers() {
        let mut b = make_broom(2, 3, 2, FiberSpec::Path, AttachmentSpec::First, 1).unwrap();
        // an edge between two fibers merges components
        let (f0, f1) = (b.fibers[0][0], b.fibers[1][0]);
        b.graph.set_edge(f0, f1, true);
        assert!(b.validate().is_err());
    }

    #[test]
    fn blocking_a_fiber() {
        // broom inside a larger graph: an outside vertex sees one fiber
        // vertex the center does not see
        let b = make_broom(1, 2, 2, FiberSpec::Path, AttachmentSpec::First, 0).unwrap();
        let inner_n = b.graph.n() as u32;
        let mut edges = b.graph.edges();
        let outside = inner_n;
        // fiber 0 vertices are 2, 3 (center 0, handle 0-1)
        edges.push((outside, b.fibers[0][1]));
        let g = crate::graph::Graph::from_edges(inner_n as usize + 1, &edges).unwrap();
        assert!(blocks_fiber(&g, &b, 0, outside).unwrap());
        assert!(!blocks_fiber(&g, &b, 1, outside).unwrap());
    }

    #[test]
    fn random_fibers_reproducible() {
        let a = make_broom(3, 4, 5, FiberSpec::RandomConnected, AttachmentSpec::RandomNonempty, 9)
            .unwrap();
        let b = make_broom(3, 4, 5, FiberSpec::RandomConnected, AttachmentSpec::RandomNonempty, 9)
            .unwrap();
        assert_eq!(a.graph, b.graph);
        a.validate().unwrap();
    }
}
