//! GF(2) cross-rank ρ* and cut-rank ρ.
//!
//! `cross_rank(G, X, Y)` is the rank of the X × Y adjacency submatrix over
//! GF(2), computed by word-parallel XOR elimination. These functions are
//! stateless; callers that need memoization keep their own tables.

use crate::error::Error;
use crate::graph::Graph;

/// Rank of a list of bit rows (destructive elimination on a local copy).
fn rank_of_rows(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len());
    for word in 0..width {
        for bit in 0..64 {
            let mut pivot = None;
            for (i, row) in rows.iter().enumerate().skip(rank) {
                if row[word] >> bit & 1 == 1 {
                    pivot = Some(i);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            rows.swap(rank, p);
            let (pivot_row, rest) = {
                let (a, b) = rows.split_at_mut(rank + 1);
                (&a[rank], b)
            };
            for row in rest.iter_mut() {
                if row[word] >> bit & 1 == 1 {
                    for (r, pv) in row.iter_mut().zip(pivot_row.iter()) {
                        *r ^= pv;
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                return rank;
            }
        }
    }
    rank
}

fn pack_rows(g: &Graph, xs: &[u32], ys: &[u32]) -> Vec<Vec<u64>> {
    let words = ys.len().div_ceil(64).max(1);
    xs.iter()
        .map(|&x| {
            let mut row = vec![0u64; words];
            for (j, &y) in ys.iter().enumerate() {
                if g.has_edge(x, y) {
                    row[j >> 6] |= 1u64 << (j & 63);
                }
            }
            row
        })
        .collect()
}

/// ρ*_G(X, Y) = rank of A(G)[X, Y] over GF(2). X and Y must be disjoint.
pub fn cross_rank(g: &Graph, xs: &[u32], ys: &[u32]) -> Result<usize, Error> {
    for &v in xs.iter().chain(ys.iter()) {
        g.check_vertex(v)?;
    }
    let xset: std::collections::BTreeSet<u32> = xs.iter().copied().collect();
    if ys.iter().any(|y| xset.contains(y)) {
        return Err(Error::OverlappingSets);
    }
    if xs.is_empty() || ys.is_empty() {
        return Ok(0);
    }
    Ok(rank_of_rows(pack_rows(g, xs, ys)))
}

/// ρ_G(X) = ρ*_G(X, V(G) \ X).
pub fn cut_rank(g: &Graph, xs: &[u32]) -> Result<usize, Error> {
    for &v in xs {
        g.check_vertex(v)?;
    }
    let xset: std::collections::BTreeSet<u32> = xs.iter().copied().collect();
    let rest: Vec<u32> = g
        .vertices()
        .into_iter()
        .filter(|v| !xset.contains(v))
        .collect();
    if xs.is_empty() || rest.is_empty() {
        return Ok(0);
    }
    Ok(rank_of_rows(pack_rows(g, xs, &rest)))
}

/// All sets X with `anchor ∈ X`, `|X| = size`, `ρ(X) = rank`, enumerated
/// completely in ascending lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutRankProfile {
    pub anchor: u32,
    pub size: usize,
    pub rank: usize,
    pub sets: Vec<Vec<u32>>,
}

pub fn cutrank_profile(
    g: &Graph,
    anchor: u32,
    size: usize,
    rank: usize,
) -> Result<CutRankProfile, Error> {
    g.check_vertex(anchor)?;
    if size > g.n() {
        return Err(Error::precondition(format!(
            "size {size} exceeds vertex count {}",
            g.n()
        )));
    }
    let others: Vec<u32> = g.vertices().into_iter().filter(|&v| v != anchor).collect();
    let mut sets = Vec::new();
    if size == 0 {
        return Ok(CutRankProfile {
            anchor,
            size,
            rank,
            sets,
        });
    }
    let k = size - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mut set: Vec<u32> = vec![anchor];
        set.extend(idx.iter().map(|&i| others[i]));
        set.sort_unstable();
        if cut_rank(g, &set)? == rank {
            sets.push(set);
        }
        // next combination
        if k == 0 {
            break;
        }
        let mut i = k;
        loop {
            if i == 0 {
                idx.clear();
                break;
            }
            i -= 1;
            if idx[i] != i + others.len() - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if idx.is_empty() {
            break;
        }
    }
    sets.sort();
    Ok(CutRankProfile {
        anchor,
        size,
        rank,
        sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{make, FamilySpec};
    use crate::graph::{complete_graph, cycle_graph, Graph};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Independent oracle: the rank is the log2 of the span size.
    fn rank_oracle(g: &Graph, xs: &[u32], ys: &[u32]) -> usize {
        let rows: Vec<u64> = xs
            .iter()
            .map(|&x| {
                ys.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &y)| acc | (g.has_edge(x, y) as u64) << j)
            })
            .collect();
        let mut span = std::collections::BTreeSet::new();
        for mask in 0u32..1 << rows.len() {
            let mut v = 0u64;
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    v ^= r;
                }
            }
            span.insert(v);
        }
        span.len().trailing_zeros() as usize
    }

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

    fn random_disjoint_sets(n: usize, rng: &mut StdRng) -> (Vec<u32>, Vec<u32>) {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for v in 0..n as u32 {
            match rng.gen_range(0..3) {
                0 => xs.push(v),
                1 => ys.push(v),
                _ => {}
            }
        }
        (xs, ys)
    }

    #[test]
    fn matches_bruteforce_oracle() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(2..=10);
            let g = random_graph(n, 0.5, &mut rng);
            let (xs, ys) = random_disjoint_sets(n, &mut rng);
            assert_eq!(
                cross_rank(&g, &xs, &ys).unwrap(),
                rank_oracle(&g, &xs, &ys)
            );
        }
    }

    #[test]
    fn c5_example() {
        // ρ*_{C_5}({v1,v2}, {v3,v4,v5}) = 2, by elimination on the 2×3 matrix
        let c5 = cycle_graph(5);
        assert_eq!(cross_rank(&c5, &[0, 1], &[2, 3, 4]).unwrap(), 2);
        assert_eq!(rank_oracle(&c5, &[0, 1], &[2, 3, 4]), 2);
    }

    #[test]
    fn basic_shapes() {
        let g = Graph::new(6);
        assert_eq!(cross_rank(&g, &[0, 1], &[2, 3]).unwrap(), 0);
        // perfect matching: identity matrix
        let m = Graph::from_edges(6, &[(0, 3), (1, 4), (2, 5)]).unwrap();
        assert_eq!(cross_rank(&m, &[0, 1, 2], &[3, 4, 5]).unwrap(), 3);
        assert_eq!(cut_rank(&m, &[]).unwrap(), 0);
        // all-ones block
        let k = complete_graph(7);
        for size in 1..7 {
            let xs: Vec<u32> = (0..size as u32).collect();
            assert_eq!(cut_rank(&k, &xs).unwrap(), 1);
        }
        assert!(cross_rank(&g, &[0, 1], &[1, 2]).is_err());
    }

    #[test]
    fn cut_rank_symmetric_in_complement() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..200 {
            let n = rng.gen_range(2..=11);
            let g = random_graph(n, 0.5, &mut rng);
            let xs: Vec<u32> = (0..n as u32).filter(|_| rng.gen_bool(0.5)).collect();
            let rest: Vec<u32> = (0..n as u32).filter(|v| !xs.contains(v)).collect();
            assert_eq!(cut_rank(&g, &xs).unwrap(), cut_rank(&g, &rest).unwrap());
        }
    }

    #[test]
    fn profile_rows_of_figure_seven() {
        // re-derived census: 3-sets of cut-rank 2 through a fixed vertex
        let c7 = cycle_graph(7);
        assert_eq!(cutrank_profile(&c7, 6, 3, 2).unwrap().sets.len(), 3);
        let f1 = make(&FamilySpec::F1).unwrap();
        assert_eq!(cutrank_profile(&f1, 6, 3, 2).unwrap().sets.len(), 3);
        let f2 = make(&FamilySpec::F2).unwrap();
        assert_eq!(cutrank_profile(&f2, 6, 3, 2).unwrap().sets.len(), 3);
        let f3 = make(&FamilySpec::F3).unwrap();
        let p3 = cutrank_profile(&f3, 6, 3, 2).unwrap();
        assert_eq!(p3.sets.len(), 1);
    }

    proptest::proptest! {
        #[test]
        fn submodularity_of_cross_rank(seed in 0u64..500) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.gen_range(2..=10);
            let g = random_graph(n, 0.5, &mut rng);
            let (a, b) = random_disjoint_sets(n, &mut rng);
            let (a2, b2) = random_disjoint_sets(n, &mut rng);
            let inter = |u: &Vec<u32>, v: &Vec<u32>| -> Vec<u32> {
                u.iter().copied().filter(|x| v.contains(x)).collect()
            };
            let union = |u: &Vec<u32>, v: &Vec<u32>| -> Vec<u32> {
                let mut out: Vec<u32> = u.iter().chain(v.iter()).copied().collect();
                out.sort_unstable();
                out.dedup();
                out
            };
            let ai = inter(&a, &a2);
            let bu = union(&b, &b2);
            let au = union(&a, &a2);
            let bi = inter(&b, &b2);
            // the inequality needs the arguments disjoint
            if ai.iter().any(|x| bu.contains(x)) || au.iter().any(|x| bi.contains(x)) {
                return Ok(());
            }
            let lhs = cross_rank(&g, &a, &b).unwrap() + cross_rank(&g, &a2, &b2).unwrap();
            let rhs = cross_rank(&g, &ai, &bu).unwrap() + cross_rank(&g, &au, &bi).unwrap();
            proptest::prop_assert!(lhs >= rhs);
        }

        #[test]
        fn cut_rank_invariant_under_local_complementation(seed in 0u64..300) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.gen_range(1..=8);
            let g = random_graph(n, 0.5, &mut rng);
            let v = rng.gen_range(0..n) as u32;
            let h = g.local_complement(v).unwrap();
            for mask in 0u32..1 << n {
                let xs: Vec<u32> = (0..n as u32).filter(|i| mask >> i & 1 == 1).collect();
                proptest::prop_assert_eq!(cut_rank(&g, &xs).unwrap(), cut_rank(&h, &xs).unwrap());
            }
        }
    }
}
