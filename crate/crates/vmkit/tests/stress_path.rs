use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vmkit::extract::{path_to_cycle, Extraction, Mode};
use vmkit::graph::Graph;

#[test]
fn stress_path_pipeline_on_random_primes() {
    let mut rng = StdRng::seed_from_u64(2024);
    let mut done = 0;
    let mut inconclusive = 0;
    let mut attempts = 0;
    while done + inconclusive < 150 && attempts < 3000 {
        attempts += 1;
        let n = rng.gen_range(12..=48);
        // sparse-ish connected graphs carry longer induced paths
        let p = rng.gen_range(0.06..0.30);
        let mut edges = Vec::new();
        for i in 0..n as u32 {
            for j in i + 1..n as u32 {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges).unwrap();
        if !g.is_connected() || !vmkit::structure::is_prime(&g).unwrap() {
            continue;
        }
        match path_to_cycle(&g, None, 1, Mode::BestEffort) {
            Ok(Extraction::Done(r)) => {
                assert_eq!(
                    r.trace.replay(&g).unwrap().claim_ok,
                    Some(true),
                    "bad certificate on {g:?}"
                );
                done += 1;
            }
            Ok(Extraction::Inconclusive(_)) => inconclusive += 1,
            Err(e) => panic!("pipeline error on {n}-vertex prime: {e} ({g:?})"),
        }
    }
    println!("done {done}, inconclusive {inconclusive}, attempts {attempts}");
    assert!(done > 20, "pipeline should succeed on a fair share");
}

#[test]
fn stress_subdivided_primes() {
    // subdividing edges of small prime graphs yields sparse primes with
    // long induced paths
    let mut rng = StdRng::seed_from_u64(7);
    let mut done = 0;
    let mut inconclusive = 0;
    for _ in 0..40 {
        let base_n = rng.gen_range(5..=8);
        let mut edges = Vec::new();
        for i in 0..base_n as u32 {
            for j in i + 1..base_n as u32 {
                if rng.gen_bool(0.5) {
                    edges.push((i, j));
                }
            }
        }
        // subdivide every edge 3..6 times
        let mut next = base_n as u32;
        let mut out: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            let k = rng.gen_range(3..=6);
            let mut prev = u;
            for _ in 0..k {
                out.push((prev, next));
                prev = next;
                next += 1;
            }
            out.push((prev, v));
        }
        if out.is_empty() {
            continue;
        }
        let g = Graph::from_edges(next as usize, &out).unwrap();
        if !g.is_connected() || g.n() < 20 || !vmkit::structure::is_prime(&g).unwrap() {
            continue;
        }
        match path_to_cycle(&g, None, 1, Mode::BestEffort) {
            Ok(Extraction::Done(r)) => {
                assert_eq!(r.trace.replay(&g).unwrap().claim_ok, Some(true));
                done += 1;
            }
            Ok(Extraction::Inconclusive(_)) => inconclusive += 1,
            Err(e) => panic!("subdivided pipeline error: {e}"),
        }
    }
    println!("subdivided: done {done}, inconclusive {inconclusive}");
}
