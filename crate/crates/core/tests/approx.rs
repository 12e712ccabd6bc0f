use opdi_core::{opdi_value, oracle_opdi, random_maximal, star_triangulate, verify_completion, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Hamiltonian outer cycle plus a random subset of chords.
fn biconnected(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_maximal(&mut rng, n);
    let mut g = Graph::new(n);
    for i in 0..n {
        g.add_edge(m.outer_order[i], m.outer_order[(i + 1) % n]).unwrap();
    }
    for &(a, b) in &m.chords {
        if rng.gen_bool(0.3) {
            g.add_edge(a, b).unwrap();
        }
    }
    g
}

#[test]
fn within_twice_optimum_on_biconnected_inputs() {
    for seed in 0..120 {
        let g = biconnected(8 + (seed as usize % 15), seed);
        let opt = opdi_value(&g).unwrap();
        let c = star_triangulate(&g).unwrap();
        assert!(verify_completion(&g, &c, c.diameter.finite().unwrap()));
        let d = c.diameter.finite().unwrap();
        assert!(opt <= d && d <= 2 * opt, "seed {seed}: optimum {opt}, fan {d}");
    }
}

// The factor 2 holds for a fixed embedding. A tree leaves the embedding
// open, and the one picked here is far from the best.
#[test]
fn free_embedding_can_exceed_the_factor() {
    let g = Graph::from_edges(10, [(0, 4), (0, 8), (1, 6), (2, 9), (3, 5), (5, 8), (6, 7), (7, 9), (8, 9)]).unwrap();
    assert_eq!(oracle_opdi(&g).unwrap(), 2);
    assert_eq!(opdi_value(&g).unwrap(), 2);
    let c = star_triangulate(&g).unwrap();
    assert_eq!(c.diameter.finite(), Some(5));
}
