//! Graph corpora for the verification suites: an exhaustive small-graph
//! sweep and seeded random connected graphs.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Every simple graph on at most `n_max` vertices, one per labelled edge
/// set, named for reproducible report output.
pub fn all_graphs_up_to(n_max: usize) -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for bits in 0u64..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| bits >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let name = format!("n{n}-e{bits:0width$b}", width = pairs.len());
            out.push((name, Graph::new(n, edges).expect("simple by construction")));
        }
    }
    out
}

/// A connected simple graph with `n` vertices and `m` edges: a uniform
/// random spanning tree skeleton plus random extra edges. Requires
/// `n - 1 <= m <= n(n-1)/2`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Graph {
    assert!(n >= 1);
    assert!(m + 1 >= n && m <= n * (n - 1) / 2, "infeasible edge count");
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(m);
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let mut spare: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|e| !edges.contains(e))
        .collect();
    spare.shuffle(rng);
    edges.extend(spare.into_iter().take(m - (n - 1)));
    Graph::new(n, edges).expect("simple by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_stats;

    #[test]
    fn sweep_sizes() {
        let all = all_graphs_up_to(4);
        // 1 + 2 + 8 + 64 labelled edge sets
        assert_eq!(all.len(), 75);
        let names: std::collections::HashSet<_> = all.iter().map(|(n, _)| n.clone()).collect();
        assert_eq!(names.len(), all.len());
    }

    #[test]
    fn random_graphs_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let n = rng.gen_range(2..=6);
            let m = rng.gen_range(n - 1..=n * (n - 1) / 2);
            let g = random_connected(&mut rng, n, m);
            assert_eq!(g.m(), m);
            assert_eq!(graph_stats(&g, g.full_mask()).components, 1);
        }
    }

    #[test]
    fn random_graphs_seed_stable() {
        let g1 = random_connected(&mut ChaCha8Rng::seed_from_u64(3), 5, 7);
        let g2 = random_connected(&mut ChaCha8Rng::seed_from_u64(3), 5, 7);
        assert_eq!(g1.edges(), g2.edges());
    }
}
