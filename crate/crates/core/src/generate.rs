//! Seeded random outerplanar instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};
use crate::oracle::{MaximalOuterplanar, ORACLE_CAP};

/// Uniformly random maximal outerplanar graph for `n <= ORACLE_CAP`: a
/// uniform cyclic order times a uniform triangulation hits every labelled
/// graph equally often. Larger `n` split polygons at a uniform apex instead.
pub fn random_maximal(rng: &mut ChaCha8Rng, n: usize) -> MaximalOuterplanar {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut chords = Vec::new();
    if n >= 4 {
        let uniform = n <= ORACLE_CAP;
        let mut stack = vec![(0usize, n - 1)];
        while let Some((i, j)) = stack.pop() {
            if j - i < 2 {
                continue;
            }
            let k = if uniform { catalan_apex(rng, i, j) } else { rng.gen_range(i + 1..j) };
            for (a, b) in [(i, k), (k, j)] {
                if b - a >= 2 {
                    chords.push((order[a].min(order[b]), order[a].max(order[b])));
                    stack.push((a, b));
                }
            }
        }
        chords.sort_unstable();
    }
    MaximalOuterplanar { outer_order: order, chords }
}

// Apex of the triangle on side (i, j), weighted by the number of
// triangulations it leaves on either side.
fn catalan_apex(rng: &mut ChaCha8Rng, i: usize, j: usize) -> usize {
    let cat = |m: usize| -> u64 {
        // Triangulations of a polygon with m + 2 corners.
        (0..m).fold(1u64, |c, t| c * 2 * (2 * t as u64 + 1) / (t as u64 + 2))
    };
    let weight = |k: usize| cat(k - i - 1) * cat(j - k - 1);
    let total: u64 = (i + 1..j).map(weight).sum();
    let mut pick = rng.gen_range(0..total);
    for k in i + 1..j {
        let w = weight(k);
        if pick < w {
            return k;
        }
        pick -= w;
    }
    unreachable!()
}

/// Random maximal outerplanar graph on `n` vertices with every edge dropped
/// independently with probability 1/2. With `connected`, drops that would
/// disconnect the graph are skipped.
pub fn random_outerplanar(n: usize, seed: u64, connected: bool) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_maximal(&mut rng, n);
    let edges = m.graph().edges().collect::<Vec<_>>();
    let mut kept = vec![true; edges.len()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        incident[a].push(i);
        incident[b].push(i);
    }
    for i in 0..edges.len() {
        if !rng.gen_bool(0.5) {
            continue;
        }
        kept[i] = false;
        if connected && !reaches(&edges, &kept, &incident, edges[i]) {
            kept[i] = true;
        }
    }
    Graph::from_edges(n, edges.iter().zip(&kept).filter(|(_, &k)| k).map(|(&e, _)| e)).unwrap()
}

fn reaches(edges: &[(Vertex, Vertex)], kept: &[bool], incident: &[Vec<usize>], (s, t): (Vertex, Vertex)) -> bool {
    let mut seen = vec![false; incident.len()];
    let mut stack = vec![s];
    seen[s] = true;
    while let Some(v) = stack.pop() {
        if v == t {
            return true;
        }
        for &e in &incident[v] {
            if kept[e] {
                let (a, b) = edges[e];
                let w = if a == v { b } else { a };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_outerplanar;
    use std::collections::BTreeMap;

    #[test]
    fn deterministic_and_outerplanar() {
        for n in [1, 2, 5, 9, 40] {
            for seed in 0..5 {
                let g = random_outerplanar(n, seed, false);
                assert_eq!(g, random_outerplanar(n, seed, false));
                assert_eq!(g.n(), n);
                assert!(is_outerplanar(&g));
                let c = random_outerplanar(n, seed, true);
                assert!(c.is_connected() && is_outerplanar(&c));
            }
        }
    }

    #[test]
    fn maximal_samples_are_uniform() {
        // 4 vertices: 6 labelled graphs.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut hits: BTreeMap<Vec<(usize, usize)>, usize> = BTreeMap::new();
        for _ in 0..6000 {
            let m = random_maximal(&mut rng, 4);
            assert_eq!(m.graph().m(), 5);
            *hits.entry(m.graph().edges().collect()).or_default() += 1;
        }
        assert_eq!(hits.len(), 6);
        assert!(hits.values().all(|&h| (800..1200).contains(&h)), "{hits:?}");
    }
}
