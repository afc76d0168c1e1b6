//! Seeded instance generators for the benchmarks.

use ghd_core::Hypergraph;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// A random hypergraph with `edge_count` edges over a pool of
/// `vertex_pool` vertices, edge sizes between 1 and `max_edge_size`.
/// Deterministic in the seed. Vertices that end up in no edge simply do
/// not exist in the result.
pub fn random_hypergraph(
    seed: u64,
    vertex_pool: usize,
    edge_count: usize,
    max_edge_size: usize,
) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let width = vertex_pool.to_string().len();
    let edges: Vec<(String, Vec<String>)> = (0..edge_count)
        .map(|e| {
            let size = 1 + (rng.next_u64() as usize) % max_edge_size;
            let vertices: Vec<String> = (0..size)
                .map(|_| {
                    let v = (rng.next_u64() as usize) % vertex_pool;
                    format!("v{v:0width$}")
                })
                .collect();
            (
                format!("e{:0width$}", e, width = edge_count.to_string().len()),
                vertices,
            )
        })
        .collect();
    Hypergraph::build(edges).expect("generated edges are non-empty and uniquely named")
}
