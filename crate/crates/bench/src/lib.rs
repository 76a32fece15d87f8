//! Fixtures shared by the criterion benches.

use graphshare::{ColoredGraph, Coloring, Graph, RandomSource};

/// A reproducible random colored graph.
pub fn random_colored_graph(n: usize, k: u32, seed: u64) -> ColoredGraph {
    let mut rng = RandomSource::from_u64(seed);
    let bits = (0..n * (n - 1) / 2).map(|_| rng.below(2) == 1).collect();
    let colors = (0..n).map(|_| rng.below(u64::from(k)) as u32).collect();
    ColoredGraph::new(
        Graph::new(n, bits).unwrap(),
        Coloring::new(k, colors).unwrap(),
    )
    .unwrap()
}
