//! Exhaustive ground truth for small graphs.
//!
//! Every outerplanar completion embeds in a maximal one on the same vertex
//! set, and a labelled maximal outerplanar graph is a cyclic vertex order
//! (up to rotation and reflection) plus a triangulation of that polygon.
//! For up to eight vertices all of them are generated once and cached as
//! edge bitmasks; nine and ten vertices are streamed, skipping orders along
//! which the input already crosses itself.

use std::sync::OnceLock;

use crate::ecc::{minimal_alternatives, PairEcc, PairEccSet};
use crate::error::{Error, Result};
use crate::graph::{Dist, Graph, Vertex};

/// Largest vertex count the oracle accepts.
pub const ORACLE_CAP: usize = 10;
const CACHE_CAP: usize = 8;

/// A maximal outerplanar graph given by its outer cycle and its chords.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MaximalOuterplanar {
    pub outer_order: Vec<Vertex>,
    pub chords: Vec<(Vertex, Vertex)>,
}

impl MaximalOuterplanar {
    pub fn n(&self) -> usize {
        self.outer_order.len()
    }

    pub fn graph(&self) -> Graph {
        let n = self.n();
        let mut g = Graph::new(n);
        for (a, b) in self.polygon_edges().into_iter().chain(self.chords.iter().copied()) {
            if !g.has_edge(a, b) {
                g.add_edge(a, b).expect("vertices are in range");
            }
        }
        g
    }

    pub fn polygon_edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n();
        match n {
            0 | 1 => Vec::new(),
            2 => vec![(self.outer_order[0].min(self.outer_order[1]), self.outer_order[0].max(self.outer_order[1]))],
            _ => (0..n)
                .map(|i| {
                    let (a, b) = (self.outer_order[i], self.outer_order[(i + 1) % n]);
                    (a.min(b), a.max(b))
                })
                .collect(),
        }
    }
}

fn pair_index(a: usize, b: usize) -> u32 {
    let (a, b) = (a.min(b), a.max(b));
    (b * (b - 1) / 2 + a) as u32
}

fn bit(a: usize, b: usize) -> u64 {
    1u64 << pair_index(a, b)
}

fn edge_mask(g: &Graph) -> u64 {
    g.edges().fold(0, |m, (a, b)| m | bit(a, b))
}

/// Triangulations of a polygon on positions `0..n` as chord lists.
fn triangulations(n: usize) -> &'static [Vec<(u8, u8)>] {
    static CACHE: OnceLock<Vec<Vec<Vec<(u8, u8)>>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (0..=ORACLE_CAP)
            .map(|n| if n < 3 { vec![Vec::new()] } else { polygon_triangulations(0, n - 1, &[]) })
            .collect()
    });
    &all[n]
}

fn crosses(a: (u8, u8), b: (u8, u8)) -> bool {
    let ((p, q), (r, s)) = (a, b);
    (p < r && r < q && q < s) || (r < p && p < s && s < q)
}

/// Chord sets triangulating the polygon `i..=j` (positions, `ij` a side),
/// restricted to those compatible with the `required` chords.
fn polygon_triangulations(i: usize, j: usize, required: &[(u8, u8)]) -> Vec<Vec<(u8, u8)>> {
    if j <= i + 1 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let sides = [(i as u8, k as u8), (k as u8, j as u8)];
        if sides.iter().any(|&s| required.iter().any(|&r| crosses(r, s))) {
            continue;
        }
        let left = polygon_triangulations(i, k, required);
        let right = polygon_triangulations(k, j, required);
        for l in &left {
            for r in &right {
                let mut t = Vec::with_capacity(l.len() + r.len() + 2);
                if k > i + 1 {
                    t.push((i as u8, k as u8));
                }
                if j > k + 1 {
                    t.push((k as u8, j as u8));
                }
                t.extend_from_slice(l);
                t.extend_from_slice(r);
                out.push(t);
            }
        }
    }
    out
}

/// Advances `p` to the next permutation in lexicographic order.
fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Cyclic orders of `0..n` with vertex 0 first, one per reflection pair.
fn cyclic_orders(n: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut rest: Vec<usize> = (1..n).collect();
    let mut first = true;
    std::iter::from_fn(move || loop {
        if first {
            first = false;
        } else if !next_permutation(&mut rest) {
            return None;
        }
        if rest.len() >= 2 && rest[0] > rest[rest.len() - 1] {
            continue;
        }
        let mut order = Vec::with_capacity(n);
        if n > 0 {
            order.push(0);
        }
        order.extend_from_slice(&rest);
        return Some(order);
    })
    .take_while(move |_| n > 0)
}

/// Every labelled maximal outerplanar graph on `n` vertices, exactly once.
pub fn enumerate_maximal_outerplanar(n: usize) -> Result<impl Iterator<Item = MaximalOuterplanar>> {
    if n > ORACLE_CAP {
        return Err(Error::OracleCap { n, cap: ORACLE_CAP });
    }
    let tris = triangulations(n);
    Ok(cyclic_orders(n).flat_map(move |order| {
        tris.iter().map(move |t| MaximalOuterplanar {
            outer_order: order.clone(),
            chords: t
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (order[a as usize], order[b as usize]);
                    (x.min(y), x.max(y))
                })
                .collect(),
        })
    }))
}

/// `(n-1)!/2 * Catalan(n-2)` for `n >= 3`, and 1 below.
pub fn maximal_outerplanar_count(n: usize) -> u64 {
    if n < 3 {
        return 1;
    }
    let fact: u64 = (1..n as u64).product();
    let m = n as u64 - 2;
    let catalan = (0..m).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2));
    fact / 2 * catalan
}

/// Cached summary of one maximal outerplanar graph.
#[derive(Clone, Copy)]
struct Entry {
    edges: u64,
    outer: u64,
    diam: u8,
    ecc: [u8; ORACLE_CAP],
}

fn summarize(n: usize, edges: u64, outer: u64) -> Entry {
    let mut adj = [0u16; ORACLE_CAP];
    for b in 1..n {
        for a in 0..b {
            if edges & bit(a, b) != 0 {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
    }
    let mut ecc = [0u8; ORACLE_CAP];
    let full = ((1u32 << n) - 1) as u16;
    for (s, e) in ecc.iter_mut().enumerate().take(n) {
        let mut seen: u16 = 1 << s;
        let mut frontier = seen;
        let mut d = 0u8;
        while seen != full {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[x];
            }
            next &= !seen;
            if next == 0 {
                d = u8::MAX;
                break;
            }
            seen |= next;
            frontier = next;
            d += 1;
        }
        *e = d;
    }
    let diam = ecc[..n].iter().copied().max().unwrap_or(0);
    Entry { edges, outer, diam, ecc }
}

fn entry_of(m: &MaximalOuterplanar) -> Entry {
    let n = m.n();
    let outer = m.polygon_edges().into_iter().fold(0, |acc, (a, b)| acc | bit(a, b));
    let edges = m.chords.iter().fold(outer, |acc, &(a, b)| acc | bit(a, b));
    summarize(n, edges, outer)
}

fn catalog(n: usize) -> &'static [Entry] {
    static CACHE: [OnceLock<Vec<Entry>>; CACHE_CAP + 1] = [const { OnceLock::new() }; CACHE_CAP + 1];
    CACHE[n].get_or_init(|| {
        enumerate_maximal_outerplanar(n).expect("within cap").map(|m| entry_of(&m)).collect()
    })
}

/// Calls `visit` on every maximal outerplanar supergraph of `g` (same vertex
/// set). With `outer_edge`, only those in which it is a polygon side.
fn for_each_supergraph(g: &Graph, outer_edge: Option<(Vertex, Vertex)>, mut visit: impl FnMut(&Entry)) -> Result<()> {
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::OracleCap { n, cap: ORACLE_CAP });
    }
    let need = edge_mask(g);
    let need_outer = outer_edge.map_or(0, |(a, b)| bit(a, b));
    if n <= CACHE_CAP {
        for e in catalog(n) {
            if e.edges & need == need && e.outer & need_outer == need_outer {
                visit(e);
            }
        }
        return Ok(());
    }
    stream_supergraphs(g, outer_edge, need, visit);
    Ok(())
}

fn stream_supergraphs(g: &Graph, outer_edge: Option<(Vertex, Vertex)>, need: u64, mut visit: impl FnMut(&Entry)) {
    let n = g.n();
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut pos = vec![0usize; n];
    for order in cyclic_orders(n) {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let chords: Vec<(u8, u8)> = edges
            .iter()
            .map(|&(a, b)| {
                let (p, q) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
                (p as u8, q as u8)
            })
            .filter(|&(p, q)| q - p != 1 && !(p == 0 && q as usize == n - 1))
            .collect();
        if chords.iter().enumerate().any(|(i, &a)| chords[i + 1..].iter().any(|&b| crosses(a, b))) {
            continue;
        }
        if let Some((a, b)) = outer_edge {
            let gap = pos[a].abs_diff(pos[b]);
            if gap != 1 && gap != n - 1 {
                continue;
            }
        }
        let m = MaximalOuterplanar { outer_order: order.clone(), chords: Vec::new() };
        let outer = m.polygon_edges().into_iter().fold(0, |acc, (a, b)| acc | bit(a, b));
        for t in polygon_triangulations(0, n - 1, &chords) {
            let mask = t.iter().fold(outer, |acc, &(p, q)| acc | bit(order[p as usize], order[q as usize]));
            if mask & need == need {
                visit(&summarize(n, mask, outer));
            }
        }
    }
}

fn check_small(g: &Graph) -> Result<()> {
    if g.n() > ORACLE_CAP {
        return Err(Error::OracleCap { n: g.n(), cap: ORACLE_CAP });
    }
    Ok(())
}

/// Minimum diameter over all outerplanar completions of `g`.
pub fn oracle_opdi(g: &Graph) -> Result<u32> {
    check_small(g)?;
    if let Some(v) = crate::graph::outerplanarity_violation(g) {
        return Err(Error::NotOuterplanar(v));
    }
    let mut best = u8::MAX;
    for_each_supergraph(g, None, |e| best = best.min(e.diam))?;
    assert!(best != u8::MAX, "an outerplanar graph has a maximal outerplanar supergraph");
    Ok(best as u32)
}

/// Whether some outerplanar completion of `g` has diameter at most `d`.
pub fn oracle_decide(g: &Graph, d: u32) -> Result<bool> {
    Ok(oracle_opdi(g)? <= d)
}

/// Least eccentricity of `r` over completions of diameter at most `d`.
pub fn oracle_ecc_star(g: &Graph, r: Vertex, d: u32) -> Result<Dist> {
    check_small(g)?;
    g.check_vertex(r)?;
    let mut best = u8::MAX;
    for_each_supergraph(g, None, |e| {
        if e.diam as u32 <= d {
            best = best.min(e.ecc[r]);
        }
    })?;
    Ok(if best == u8::MAX { Dist::Infinite } else { Dist::Finite(best as u32) })
}

/// Minimal pair eccentricities of `uv` over completions of `G[x]` with
/// diameter at most `d` in which `uv` lies on the outer face.
pub fn oracle_pair_ecc_star(g: &Graph, u: Vertex, v: Vertex, x: &[Vertex], d: u32) -> Result<PairEccSet> {
    let (sub, map) = g.induced(x);
    check_small(&sub)?;
    let (Ok(iu), Ok(iv)) = (map.binary_search(&u), map.binary_search(&v)) else {
        return Err(Error::InvalidArgument("u and v must belong to x".into()));
    };
    if iu == iv {
        return Err(Error::InvalidArgument("u and v must differ".into()));
    }
    let n = sub.n();
    let mut found: Vec<PairEcc> = Vec::new();
    for_each_supergraph(&sub, Some((iu, iv)), |e| {
        if e.diam as u32 > d {
            return;
        }
        let du = bfs_mask(n, e.edges, iu);
        let dv = bfs_mask(n, e.edges, iv);
        let p = PairEcc::from_pairs((0..n).map(|w| (du[w] as u32, dv[w] as u32)));
        if !found.contains(&p) {
            found.push(p);
        }
    })?;
    Ok(minimal_alternatives(found))
}

fn bfs_mask(n: usize, edges: u64, s: usize) -> [u8; ORACLE_CAP] {
    let mut dist = [u8::MAX; ORACLE_CAP];
    dist[s] = 0;
    let mut queue = vec![s];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for y in 0..n {
            if y != x && edges & bit(x, y) != 0 && dist[y] == u8::MAX {
                dist[y] = dist[x] + 1;
                queue.push(y);
            }
        }
    }
    dist
}
