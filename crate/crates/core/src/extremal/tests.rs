use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::graph::{diameter, is_outer_order, is_outerplanar, Dist};
use crate::oracle::{enumerate_maximal_outerplanar, oracle_opdi};

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

#[test]
fn outer_order_examples() {
    let c = cycle(6);
    let o = outer_order(&c).unwrap();
    assert!(is_outer_order(&c, &o));
    // Two triangles sharing a vertex, plus a pendant path.
    let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5), (5, 6)]).unwrap();
    assert!(is_outer_order(&g, &outer_order(&g).unwrap()));
    for m in enumerate_maximal_outerplanar(6).unwrap().step_by(11) {
        let h = m.graph();
        let o = outer_order(&h).unwrap();
        assert!(is_outer_order(&h, &o));
        let back = MaximalOuterplanar::from_graph(&h).unwrap();
        assert_eq!(back.graph(), h);
    }
    assert!(MaximalOuterplanar::from_graph(&cycle(5)).is_err());
}

#[test]
fn matching_examples() {
    let tri = MaximalOuterplanar::from_graph(&cycle(3)).unwrap();
    assert_eq!(max_parallel_matching(&tri), 0);
    let mut fan = cycle(5);
    fan.add_edge(0, 2).unwrap();
    fan.add_edge(0, 3).unwrap();
    let m = MaximalOuterplanar::from_graph(&fan).unwrap();
    assert_eq!(diameter(&fan), Dist::Finite(2));
    assert_eq!(max_parallel_matching(&m), 1);
    assert_eq!(brute_force_max_parallel_matching(&fan, &m.outer_order), 1);
}

#[test]
fn matching_equals_diameter_minus_one() {
    for n in 4..=7 {
        for m in enumerate_maximal_outerplanar(n).unwrap().step_by(3) {
            let g = m.graph();
            let Dist::Finite(d) = diameter(&g) else { unreachable!() };
            let pm = maximum_parallel_matching(&m);
            assert_eq!(pm.edges.len(), d as usize - 1, "{m:?}");
            assert!(is_parallel_matching(&m.outer_order, &pm.edges), "{pm:?}");
            if n <= 6 {
                assert_eq!(brute_force_max_parallel_matching(&g, &m.outer_order), d as usize - 1);
            }
        }
    }
}

#[test]
fn matching_below_diameter_on_sparse_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n = rng.gen_range(3..=7);
        let all: Vec<_> = enumerate_maximal_outerplanar(n).unwrap().collect();
        let m = &all[rng.gen_range(0..all.len())];
        let full = m.graph();
        let g = Graph::from_edges(n, full.edges().filter(|_| rng.gen_bool(0.7))).unwrap();
        if let Dist::Finite(d) = diameter(&g) {
            assert!(brute_force_max_parallel_matching(&g, &m.outer_order) < d as usize);
        }
    }
}

#[test]
fn star_triangulation_examples() {
    let c = star_triangulate(&cycle(5)).unwrap();
    assert!(c.verify(None));
    assert_eq!(c.diameter, Dist::Finite(2));
    assert!(c.added.iter().all(|&(a, _)| a == 0));
    for n in 3..=12 {
        let c = star_triangulate(&path(n)).unwrap();
        assert!(c.verify(None));
        assert_eq!(c.added.len() + n - 1, 2 * n - 3);
        assert_eq!(c.diameter, Dist::Finite(if n == 3 { 1 } else { 2 }));
    }
    assert!(matches!(star_triangulate(&Graph::new(3)), Err(Error::Disconnected)));
}

#[test]
fn star_triangulation_is_two_approximation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..150 {
        let n = rng.gen_range(3..=8);
        let all: Vec<_> = enumerate_maximal_outerplanar(n).unwrap().collect();
        let m = &all[rng.gen_range(0..all.len())];
        let mut edges: Vec<_> = m.graph().edges().collect();
        edges.retain(|_| rng.gen_bool(0.6));
        let g = Graph::from_edges(n, edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let c = star_triangulate(&g).unwrap();
        assert!(c.verify(None));
        assert!(is_outerplanar(&c.graph()));
        assert_eq!(c.graph().m(), 2 * n - 3);
        let opt = oracle_opdi(&g).unwrap();
        let Dist::Finite(d) = c.diameter else { unreachable!() };
        assert!(opt <= d && d <= 2 * opt, "{g:?}");
    }
}

#[test]
fn obstruction_shapes() {
    let a = |i| gen_obstruction(ObstructionSpec { family: Family::A, index: i });
    let b = |i| gen_obstruction(ObstructionSpec { family: Family::B, index: i });
    assert_eq!(a(0), vec![Graph::new(2)]);
    assert_eq!(a(1), vec![Graph::new(4)]);
    assert_eq!(b(1).len(), 1);
    assert_eq!(b(1)[0].m(), 3);
    assert!(b(2).is_empty() && b(4).is_empty());
    let b3 = &b(3)[0];
    assert_eq!(b3.n(), 13);
    assert_eq!(b3.m(), 12);
    assert!(b3.is_connected());
    let mut degrees: Vec<usize> = (0..13).map(|v| b3.degree(v)).collect();
    degrees.sort_unstable();
    assert_eq!(degrees, [1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 4, 4, 4]);
    assert_eq!(b3.degree(12), 3);
    assert_eq!(b(5)[0].n(), 3 * 13 + 1);
    assert_eq!(a(2)[0].n(), 8);
    assert_eq!(a(3)[0].n(), 16);
    assert_eq!(a(4)[0].n(), 26);
    assert_eq!(a(5)[0].n(), 52);
}

#[test]
fn small_obstructions_verify() {
    assert!(verify_obstruction(&Graph::new(4), 1).unwrap());
    let k13 = Graph::from_edges(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
    assert!(verify_obstruction(&k13, 1).unwrap());
    assert!(!verify_obstruction(&k13, 2).unwrap());
    for d in 1..=3 {
        for fam in [Family::A, Family::B] {
            for g in gen_obstruction(ObstructionSpec { family: fam, index: d }) {
                assert!(verify_obstruction(&g, d).unwrap(), "{fam:?}{d}");
            }
        }
    }
}

#[test]
fn adding_an_edge_keeps_obstruction() {
    let g = &gen_obstruction(ObstructionSpec { family: Family::A, index: 2 })[0];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10 {
        let (a, b) = (rng.gen_range(0..g.n()), rng.gen_range(0..g.n()));
        let mut h = g.clone();
        if a == b || h.has_edge(a, b) {
            continue;
        }
        h.add_edge(a, b).unwrap();
        if is_outerplanar(&h) {
            assert!(verify_obstruction(&h, 2).unwrap());
        }
    }
}
