use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ecc::PairEcc;
use crate::graph::{boundary, connected_components, cut_vertices, smallest_non_cut_vertex};
use crate::oracle::{enumerate_maximal_outerplanar, oracle_decide, oracle_ecc_star, oracle_pair_ecc_star};

fn g(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
    Graph::from_edges(n, edges.iter().copied()).unwrap()
}

fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Random connected outerplanar graph: a random maximal one with edges
/// dropped at random whenever that keeps it connected.
fn random_connected(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let all: Vec<_> = enumerate_maximal_outerplanar(n).unwrap().collect();
    let m = &all[rng.gen_range(0..all.len())];
    let mut edges: Vec<_> = m.graph().edges().collect();
    let mut i = 0;
    while i < edges.len() {
        if rng.gen_bool(0.5) {
            let e = edges.remove(i);
            if !Graph::from_edges(n, edges.iter().copied()).unwrap().is_connected() {
                edges.insert(i, e);
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn spec_examples() {
    assert_eq!(opdi_connected(&Graph::new(1), 0, 1).unwrap().0, Dist::Finite(0));
    assert_eq!(opdi_connected(&path(2), 0, 1).unwrap().0, Dist::Finite(1));
    for r in 1..4 {
        assert_eq!(opdi_connected(&star(3), r, 1).unwrap().0, Dist::Infinite);
    }
    let v = opdi_connected(&path(4), 0, 2).unwrap().0;
    assert!(v <= Dist::Finite(2));
    assert_eq!(v, oracle_ecc_star(&path(4), 0, 2).unwrap());

    assert_eq!(opdi_value_connected(&path(2), 0).unwrap(), 1);
    assert_eq!(opdi_value_connected(&star(3), 1).unwrap(), 2);
    assert_eq!(opdi_value_connected(&cycle(8), 0).unwrap(), crate::oracle::oracle_opdi(&cycle(8)).unwrap());
}

#[test]
fn input_errors() {
    assert!(matches!(opdi_connected(&path(3), 1, 2), Err(Error::CutVertexRoot(1))));
    assert!(matches!(opdi_connected(&Graph::new(2), 0, 2), Err(Error::Disconnected)));
    let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    assert!(matches!(opdi_connected(&k4, 0, 2), Err(Error::NotOuterplanar(_))));
    assert!(matches!(opdi_connected(&path(2), 0, 0), Err(Error::InvalidBound)));
    assert!(matches!(opdi_connected(&path(2), 5, 1), Err(Error::VertexOutOfRange { .. })));
}

#[test]
fn matches_oracle_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for _ in 0..40 {
            let h = random_connected(&mut rng, n);
            let r = smallest_non_cut_vertex(&h).unwrap();
            for d in 1..=n as u32 {
                let got = opdi_connected(&h, r, d).unwrap().0;
                assert_eq!(got, oracle_ecc_star(&h, r, d).unwrap(), "{h:?} r={r} d={d}");
                // Cut roots too.
                for c in cut_vertices(&h) {
                    assert_eq!(ecc_star(&h, c, d).unwrap(), oracle_ecc_star(&h, c, d).unwrap(), "{h:?} c={c} d={d}");
                }
            }
        }
    }
}

#[test]
fn table_cells_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..30 {
        let n = rng.gen_range(3..=7);
        let h = random_connected(&mut rng, n);
        let r = smallest_non_cut_vertex(&h).unwrap();
        let d = rng.gen_range(1..=4);
        let (_, t) = opdi_connected(&h, r, d).unwrap();
        for (key, value) in t.entries() {
            let want = oracle_pair_ecc_star(&h, key.u, key.v, &key.x, d).unwrap();
            assert_eq!(value, want, "{h:?} {key:?} d={d}");
            assert_eq!(t.get(key.v, key.u, &key.x).unwrap(), value.transpose());
            checked += 1;
        }
    }
    assert!(checked > 100);
}

#[test]
fn base_cell_is_edge() {
    let (_, t) = opdi_connected(&cycle(4), 0, 3).unwrap();
    let e = t.entries();
    let (_, v) = e.iter().find(|(k, _)| k.x.len() == 2).unwrap();
    assert_eq!(v.alternatives(), &[PairEcc::EDGE]);
}

#[test]
fn witnesses_verify() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let n = rng.gen_range(1..=9);
        let h = if n <= 7 { random_connected(&mut rng, n) } else { path(n) };
        let d = rng.gen_range(1..=5);
        match complete_connected(&h, d).unwrap() {
            Some(c) => {
                assert!(c.verify(Some(d)), "{h:?} d={d}");
                if n <= 7 {
                    assert!(oracle_decide(&h, d).unwrap());
                }
            }
            None => {
                if n <= 7 {
                    assert!(!oracle_decide(&h, d).unwrap());
                }
            }
        }
    }
}

#[test]
fn witness_examples() {
    let c = complete_connected(&path(2), 1).unwrap().unwrap();
    assert!(c.added.is_empty());
    let c = complete_connected(&path(4), 2).unwrap().unwrap();
    assert!(c.verify(Some(2)));
    let c = complete_connected(&cycle(5), 2).unwrap().unwrap();
    assert!(c.verify(Some(2)));
    assert_eq!(c.added.len(), 2);
}

#[test]
fn witness_through_many_branches() {
    // Spiders whose legs exceed the reduction threshold at the centre.
    for legs in [9, 12] {
        for len in 1..=2 {
            let mut edges = Vec::new();
            let mut next = 1;
            for _ in 0..legs {
                let mut prev = 0;
                for _ in 0..len {
                    edges.push((prev, next));
                    prev = next;
                    next += 1;
                }
            }
            let h = Graph::from_edges(next, edges).unwrap();
            for d in 1..=4 {
                let c = complete_connected(&h, d).unwrap();
                if d >= 2 * len as u32 {
                    assert!(c.is_some(), "legs={legs} len={len} d={d}");
                }
                if d == 1 {
                    assert!(c.is_none());
                }
                if let Some(c) = c {
                    assert!(c.verify(Some(d)));
                }
            }
        }
    }
}

#[test]
fn monotone_in_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let n = rng.gen_range(2..=9);
        let h = random_connected(&mut rng, n.min(7));
        let r = smallest_non_cut_vertex(&h).unwrap();
        let mut prev = Dist::Infinite;
        for d in 1..=h.n() as u32 {
            let v = opdi_connected(&h, r, d).unwrap().0;
            assert!(v <= prev);
            prev = v;
        }
        assert!(prev.is_finite());
    }
}

#[test]
fn feasibility_does_not_depend_on_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let h = random_connected(&mut rng, 7);
        let roots: Vec<_> = (0..7).filter(|&v| !crate::graph::is_cut_vertex(&h, v)).collect();
        for d in 1..=4 {
            let f: Vec<bool> = roots.iter().map(|&r| opdi_connected(&h, r, d).unwrap().0.is_finite()).collect();
            assert!(f.iter().all(|&x| x == f[0]));
        }
    }
}

#[test]
fn reduction_preserves_answers() {
    let opts = SolverOptions { reduce_branches: false };
    // Spiders and caterpillars with many branches at one vertex.
    let mut graphs = vec![star(9), star(10)];
    let mut spider = star(8);
    spider = spider.with_vertices(1);
    spider.add_edge(1, 9).unwrap();
    graphs.push(spider);
    let mut cat = path(3);
    for _ in 0..7 {
        let v = cat.n();
        cat = cat.with_vertices(1);
        cat.add_edge(1, v).unwrap();
    }
    graphs.push(cat);
    for h in &graphs {
        let r = smallest_non_cut_vertex(h).unwrap();
        for d in 1..=5 {
            let a = opdi_connected(h, r, d).unwrap().0;
            let b = opdi_connected_with(h, r, d, opts).unwrap().0;
            assert_eq!(a.is_finite(), b.is_finite(), "{h:?} d={d}");
            assert_eq!(a, b);
        }
    }
}

#[test]
fn reduce_branches_examples() {
    // Nine unit legs at vertex 0 plus a root leg: seven survive.
    let mut h = star(10);
    h = h.with_vertices(1);
    h.add_edge(10, 11).unwrap();
    let red = reduce_branches(&h, 0, Some(11), branch_ecc(&h, 2)).unwrap();
    assert_eq!(red.removed.len(), 2);
    assert_eq!(red.graph.n(), 12 - 2);
    assert!(red.kept.contains(&11) && red.kept.contains(&10));

    let red = reduce_branches(&star(3), 0, Some(1), branch_ecc(&star(3), 2)).unwrap();
    assert_eq!(red.graph, star(3));
    assert!(red.removed.is_empty());

    // K_{1,10} rooted at a leaf keeps 7 other legs: 8 vertices around the centre.
    let s = star(10);
    let red = reduce_branches(&s, 0, Some(1), branch_ecc(&s, 2)).unwrap();
    assert_eq!(red.graph.n(), 9);
    assert_eq!(oracle_decide(&red.graph, 2).unwrap(), true);
    // Without a root, eight survive.
    let red = reduce_branches(&s, 0, None, branch_ecc(&s, 2)).unwrap();
    assert_eq!(red.graph.n(), 9);
    let red = reduce_branches(&star(8), 0, None, branch_ecc(&star(8), 2)).unwrap();
    assert!(red.removed.is_empty());
}

#[test]
fn reduction_ties_prefer_small_anchor() {
    let s = star(10);
    let red = reduce_branches(&s, 0, Some(10), branch_ecc(&s, 2)).unwrap();
    let gone: Vec<_> = red.removed.iter().map(|b| b.anchor()).collect();
    assert_eq!(gone, vec![8, 9]);
}

/// All (u, v, X) with u < v, boundary of X inside {u, v} and r not inside.
fn brute_triples(h: &Graph, r: Vertex) -> Vec<DpKey> {
    let n = h.n();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let x: Vec<Vertex> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let b = boundary(h, &x);
        for (i, &u) in x.iter().enumerate() {
            for &v in &x[i + 1..] {
                if b.iter().all(|&y| y == u || y == v) && (!x.contains(&r) || r == u || r == v) {
                    out.push(DpKey { u, v, x: x.clone() });
                }
            }
        }
    }
    out.sort_by(|a, b| a.x.len().cmp(&b.x.len()).then_with(|| a.cmp(b)));
    out
}

#[test]
fn triples_match_definition() {
    let tri = g(3, &[(0, 1), (1, 2), (0, 2)]);
    let t = enumerate_triples(&tri, 0).unwrap();
    assert_eq!(t, brute_triples(&tri, 0));
    assert_eq!(enumerate_triples(&path(2), 0).unwrap(), vec![DpKey { u: 0, v: 1, x: vec![0, 1] }]);
    let p = enumerate_triples(&path(3), 0).unwrap();
    assert!(p.contains(&DpKey { u: 1, v: 2, x: vec![1, 2] }));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let n = rng.gen_range(2..=7);
        let h = random_connected(&mut rng, n);
        let r = rng.gen_range(0..n);
        let t = enumerate_triples(&h, r).unwrap();
        assert!(t.windows(2).all(|w| w[0].x.len() <= w[1].x.len() && w[0] != w[1]));
        assert_eq!(t, brute_triples(&h, r));
    }
}

/// Splits by the definition: X_u, X_v cover X, share only w, and each has
/// boundary inside its two ends in G[X] plus the triangle u v w.
fn brute_splits(h: &Graph, key: &DpKey) -> Vec<Split> {
    let (sub, map) = h.induced(&key.x);
    let iu = map.binary_search(&key.u).unwrap();
    let iv = map.binary_search(&key.v).unwrap();
    let k = sub.n();
    let mut out = Vec::new();
    for w in 0..k {
        if w == iu || w == iv {
            continue;
        }
        let mut t = sub.clone();
        for (a, b) in [(iu, iv), (iu, w), (iv, w)] {
            if !t.has_edge(a, b) {
                t.add_edge(a, b).unwrap();
            }
        }
        let rest: Vec<usize> = (0..k).filter(|&y| y != iu && y != iv && y != w).collect();
        for mask in 0u32..1 << rest.len() {
            let mut xu = vec![iu, w];
            let mut xv = vec![iv, w];
            for (i, &y) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 { xu.push(y) } else { xv.push(y) }
            }
            xu.sort_unstable();
            xv.sort_unstable();
            let ok_u = boundary(&t, &xu).iter().all(|&y| y == iu || y == w);
            let ok_v = boundary(&t, &xv).iter().all(|&y| y == iv || y == w);
            if ok_u && ok_v {
                out.push(Split {
                    w: map[w],
                    x_u: xu.iter().map(|&y| map[y]).collect(),
                    x_v: xv.iter().map(|&y| map[y]).collect(),
                });
            }
        }
    }
    out
}

#[test]
fn splits_match_definition() {
    let key = DpKey { u: 0, v: 1, x: vec![0, 1, 2] };
    let s = enumerate_splits(&Graph::new(3), &key);
    // Not connected around w, but still a state.
    assert_eq!(s.unwrap(), vec![Split { w: 2, x_u: vec![0, 2], x_v: vec![1, 2] }]);

    let pa = g(3, &[(0, 2), (2, 1)]);
    let s = enumerate_splits(&pa, &DpKey { u: 0, v: 1, x: vec![0, 1, 2] }).unwrap();
    assert!(s.iter().all(|sp| sp.w == 2));

    // w = 2 carries two pendant leaves 3 and 4.
    let h = g(5, &[(0, 2), (1, 2), (2, 3), (2, 4)]);
    let key = DpKey { u: 0, v: 1, x: vec![0, 1, 2, 3, 4] };
    let s = enumerate_splits(&h, &key).unwrap();
    assert_eq!(s.iter().filter(|sp| sp.w == 2).count(), 4);

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let n = rng.gen_range(3..=7);
        let h = random_connected(&mut rng, n);
        for key in enumerate_triples(&h, 0).unwrap().into_iter().filter(|k| k.x.len() >= 3) {
            let mut got = enumerate_splits(&h, &key).unwrap();
            let mut want = brute_splits(&h, &key);
            got.sort();
            want.sort();
            assert_eq!(got, want, "{h:?} {key:?}");
        }
    }
}

#[test]
fn subgraph_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let h = random_connected(&mut rng, 7);
        let r = smallest_non_cut_vertex(&h).unwrap();
        // Grow a connected induced subgraph from r.
        let mut keep = vec![r];
        while keep.len() < 5 {
            let next = keep.iter().flat_map(|&x| h.neighbors(x).iter().copied()).find(|y| !keep.contains(y));
            match next {
                Some(y) => keep.push(y),
                None => break,
            }
        }
        keep.sort_unstable();
        let (sub, map) = h.induced(&keep);
        let sr = map.binary_search(&r).unwrap();
        for d in 1..=5 {
            assert!(ecc_star(&sub, sr, d).unwrap() <= ecc_star(&h, r, d).unwrap());
        }
        assert_eq!(connected_components(&sub).len(), 1);
    }
}
