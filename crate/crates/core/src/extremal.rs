//! Parallel matchings, the fan-triangulation 2-approximation and the
//! obstruction families `A_i` / `B_i`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::completion::Completion;
use crate::disconnected::decide;
use crate::error::{Error, Result};
use crate::graph::{block_decomposition, connected_components, outerplanarity_violation, Graph, Vertex};
use crate::oracle::MaximalOuterplanar;

/// Cyclic vertex order along which the edges of an outerplanar graph do not
/// cross. Components are laid out one after another.
pub fn outer_order(g: &Graph) -> Result<Vec<Vertex>> {
    if let Some(v) = outerplanarity_violation(g) {
        return Err(Error::NotOuterplanar(v));
    }
    let mut order = Vec::with_capacity(g.n());
    for comp in connected_components(g) {
        let (sub, map) = g.induced(&comp);
        order.extend(connected_outer_order(&sub).into_iter().map(|v| map[v]));
    }
    debug_assert!(crate::graph::is_outer_order(g, &order));
    Ok(order)
}

/// Outer cycle of a 2-connected outerplanar graph given as a vertex list,
/// found by peeling degree-2 vertices.
fn block_cycle(g: &Graph, block: &[Vertex]) -> Vec<Vertex> {
    if block.len() <= 3 {
        return block.to_vec();
    }
    let inside: BTreeSet<Vertex> = block.iter().copied().collect();
    let mut adj: std::collections::BTreeMap<Vertex, BTreeSet<Vertex>> = block
        .iter()
        .map(|&v| (v, g.neighbors(v).iter().copied().filter(|y| inside.contains(y)).collect()))
        .collect();
    let mut peeled = Vec::new();
    let mut queue: Vec<Vertex> = block.iter().copied().filter(|v| adj[v].len() == 2).collect();
    let mut left = block.len();
    while left > 3 {
        let v = queue.pop().expect("a 2-connected outerplanar graph has a degree-2 vertex");
        if !adj.contains_key(&v) || adj[&v].len() != 2 {
            continue;
        }
        let nb: Vec<Vertex> = adj.remove(&v).unwrap().into_iter().collect();
        let (a, b) = (nb[0], nb[1]);
        for &x in &nb {
            adj.get_mut(&x).unwrap().remove(&v);
        }
        adj.get_mut(&a).unwrap().insert(b);
        adj.get_mut(&b).unwrap().insert(a);
        for &x in &nb {
            if adj[&x].len() == 2 {
                queue.push(x);
            }
        }
        peeled.push((v, a, b));
        left -= 1;
    }
    // Rebuild as a doubly linked cycle.
    let rest: Vec<Vertex> = adj.keys().copied().collect();
    let n = g.n();
    let (mut next, mut prev) = (vec![usize::MAX; n], vec![usize::MAX; n]);
    for i in 0..3 {
        next[rest[i]] = rest[(i + 1) % 3];
        prev[rest[(i + 1) % 3]] = rest[i];
    }
    for &(v, a, b) in peeled.iter().rev() {
        let (x, y) = if next[a] == b { (a, b) } else { (b, a) };
        debug_assert_eq!(next[x], y);
        next[x] = v;
        prev[v] = x;
        next[v] = y;
        prev[y] = v;
    }
    let mut cycle = vec![block[0]];
    while cycle.len() < block.len() {
        cycle.push(next[*cycle.last().unwrap()]);
    }
    cycle
}

fn connected_outer_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let tree = block_decomposition(g).expect("connected");
    let cycles: Vec<Vec<Vertex>> = tree.blocks.iter().map(|b| block_cycle(g, b)).collect();
    let mut blocks_at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, b) in tree.blocks.iter().enumerate() {
        for &v in b {
            blocks_at[v].push(i);
        }
    }
    let mut used = vec![false; cycles.len()];
    let mut order = Vec::with_capacity(n);
    // Each frame walks one block's cycle starting after its attachment vertex.
    let mut frames: Vec<(Vec<Vertex>, usize)> = Vec::new();
    let mut enter = |v: Vertex, order: &mut Vec<Vertex>, frames: &mut Vec<(Vec<Vertex>, usize)>| {
        order.push(v);
        for &b in &blocks_at[v] {
            if !used[b] {
                used[b] = true;
                let c = &cycles[b];
                let s = c.iter().position(|&x| x == v).unwrap();
                let rotated: Vec<Vertex> = c[s..].iter().chain(&c[..s]).copied().collect();
                frames.push((rotated, 1));
            }
        }
    };
    enter(0, &mut order, &mut frames);
    while let Some((cycle, i)) = frames.last_mut() {
        if *i == cycle.len() {
            frames.pop();
            continue;
        }
        let w = cycle[*i];
        *i += 1;
        enter(w, &mut order, &mut frames);
    }
    order
}

/// Fan triangulation of a connected outerplanar graph: embed it, add the
/// missing outer cycle edges, and triangulate every face from its
/// smallest vertex.
///
/// Within twice the optimum when `g` is biconnected, since the embedding is
/// then forced. With cut vertices the chosen embedding may be a bad one and
/// the factor can be exceeded (a 10-vertex tree with optimum 2 gets 5).
pub fn star_triangulate(g: &Graph) -> Result<Completion> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let order = outer_order(g)?;
    let n = g.n();
    if n <= 2 {
        return Ok(Completion::new(g, [], order));
    }
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut chords_from: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (a, b) in g.edges() {
        let (i, j) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        if j - i >= 2 && !(i == 0 && j == n - 1) {
            chords_from[i].push(j);
        }
    }
    for c in &mut chords_from {
        c.sort_unstable();
    }
    let mut added: Vec<(Vertex, Vertex)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let regions = std::iter::once((0, n - 1)).chain((0..n).flat_map(|i| chords_from[i].iter().map(move |&j| (i, j))));
    for (i, j) in regions.collect::<Vec<_>>() {
        // Walk the face directly inside chord (i, j).
        let mut face = vec![i];
        let mut k = i;
        while k != j {
            let next = chords_from[k].iter().rev().copied().find(|&m| m <= j && (k, m) != (i, j)).unwrap_or(k + 1);
            face.push(next);
            k = next;
        }
        if face.len() < 4 {
            continue;
        }
        let verts: Vec<Vertex> = face.iter().map(|&p| order[p]).collect();
        let a = (0..verts.len()).min_by_key(|&t| verts[t]).unwrap();
        let len = verts.len();
        for t in 2..len - 1 {
            added.push((verts[a], verts[(a + t) % len]));
        }
    }
    Ok(Completion::new(g, added, order))
}

/// A set of pairwise disjoint, nested chords of a maximal outerplanar
/// graph, listed from one end to the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelMatching {
    pub edges: Vec<(Vertex, Vertex)>,
    pub outer_order: Vec<Vertex>,
}

impl MaximalOuterplanar {
    /// Recovers the outer cycle and chords of a maximal outerplanar graph.
    pub fn from_graph(g: &Graph) -> Result<MaximalOuterplanar> {
        let n = g.n();
        let maximal_edges = if n >= 2 { 2 * n - 3 } else { 0 };
        if g.m() != maximal_edges || outerplanarity_violation(g).is_some() || !g.is_connected() {
            return Err(Error::NotMaximalOuterplanar(format!(
                "expected a connected outerplanar graph with {maximal_edges} edges"
            )));
        }
        let order = outer_order(g)?;
        let sides: BTreeSet<(Vertex, Vertex)> = (0..n)
            .filter(|_| n >= 3)
            .map(|i| {
                let (a, b) = (order[i], order[(i + 1) % n]);
                (a.min(b), a.max(b))
            })
            .collect();
        if sides.iter().any(|&(a, b)| !g.has_edge(a, b)) {
            return Err(Error::NotMaximalOuterplanar("outer cycle is not Hamiltonian".into()));
        }
        let chords = g.edges().filter(|e| !sides.contains(e)).collect();
        Ok(MaximalOuterplanar { outer_order: order, chords })
    }
}

fn disjoint(a: (Vertex, Vertex), b: (Vertex, Vertex)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

/// Triangles of a maximal outerplanar graph and, for each chord, the two
/// triangles on either side.
fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for (a, b) in g.edges() {
        for &c in g.neighbors(a) {
            if c > b && g.has_edge(b, c) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Largest parallel matching, by walking every path of the dual tree and
/// greedily keeping chords disjoint from the last one kept. Chords sharing
/// a vertex form a contiguous run along any dual path, so the greedy choice
/// is optimal on each path.
pub fn maximum_parallel_matching(m: &MaximalOuterplanar) -> ParallelMatching {
    let g = m.graph();
    let tris = triangles(&g);
    let chord_set: BTreeSet<(Vertex, Vertex)> = m.chords.iter().copied().collect();
    let mut sides_of: std::collections::BTreeMap<(Vertex, Vertex), Vec<usize>> = Default::default();
    for (t, tri) in tris.iter().enumerate() {
        for (x, y) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
            if chord_set.contains(&(x, y)) {
                sides_of.entry((x, y)).or_default().push(t);
            }
        }
    }
    let mut best: Vec<(Vertex, Vertex)> = Vec::new();
    for &c in &m.chords {
        for &t0 in &sides_of[&c] {
            // (triangle, chord we came through, chosen so far)
            let mut stack = vec![(t0, c, vec![c])];
            while let Some((t, via, chosen)) = stack.pop() {
                if chosen.len() > best.len() {
                    best = chosen.clone();
                }
                let tri = tris[t];
                for e in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
                    if e == via || !chord_set.contains(&e) {
                        continue;
                    }
                    let next_t = sides_of[&e].iter().copied().find(|&x| x != t).unwrap();
                    let mut next = chosen.clone();
                    if disjoint(*chosen.last().unwrap(), e) {
                        next.push(e);
                    }
                    stack.push((next_t, e, next));
                }
            }
        }
    }
    ParallelMatching { edges: orient(&m.outer_order, best), outer_order: m.outer_order.clone() }
}

/// Orients nested chords as `u_i v_i` so that the `u`s run forward along
/// the cycle and the `v`s backward.
fn orient(order: &[Vertex], mut edges: Vec<(Vertex, Vertex)>) -> Vec<(Vertex, Vertex)> {
    let n = order.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let fwd = |a: Vertex, b: Vertex| (pos[b] + n - pos[a]) % n;
    if edges.len() >= 2 {
        let (a, b) = edges[0];
        let x = edges[1].0;
        if fwd(a, x) > fwd(a, b) {
            edges[0] = (b, a);
        }
    }
    for i in 1..edges.len() {
        let u = edges[i - 1].0;
        let (a, b) = edges[i];
        if fwd(u, b) < fwd(u, a) {
            edges[i] = (b, a);
        }
    }
    edges
}

/// Size of a largest parallel matching.
pub fn max_parallel_matching(m: &MaximalOuterplanar) -> usize {
    maximum_parallel_matching(m).edges.len()
}

/// Whether `edges`, in this order and orientation, form a parallel matching
/// along the cyclic `order`: `u1 .. uk vk .. v1` appear cyclically in order
/// and both extreme arcs contain a vertex.
pub fn is_parallel_matching(order: &[Vertex], edges: &[(Vertex, Vertex)]) -> bool {
    let n = order.len();
    if edges.is_empty() {
        return true;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let seq: Vec<usize> = edges.iter().map(|e| pos[e.0]).chain(edges.iter().rev().map(|e| pos[e.1])).collect();
    let distinct: BTreeSet<usize> = seq.iter().copied().collect();
    if distinct.len() != seq.len() {
        return false;
    }
    let descents = (0..seq.len()).filter(|&i| seq[i] > seq[(i + 1) % seq.len()]).count();
    let gap = |a: usize, b: usize| (b + n - a) % n;
    let k = edges.len();
    descents <= 1 && gap(pos[edges[0].1], pos[edges[0].0]) >= 2 && gap(pos[edges[k - 1].0], pos[edges[k - 1].1]) >= 2
}

/// Exhaustive maximum over all edge subsets, orders and orientations.
/// Exponential; meant for graphs with a handful of chords.
pub fn brute_force_max_parallel_matching(g: &Graph, order: &[Vertex]) -> usize {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut best = 0;
    for mask in 1u64..(1u64 << edges.len()) {
        let pick: Vec<(Vertex, Vertex)> = (0..edges.len()).filter(|&i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if pick.len() <= best {
            continue;
        }
        if pick.iter().enumerate().any(|(i, &a)| pick[i + 1..].iter().any(|&b| !disjoint(a, b))) {
            continue;
        }
        let mut idx: Vec<usize> = (0..pick.len()).collect();
        let found = 'search: loop {
            for flips in 0u32..(1 << pick.len()) {
                let seq: Vec<(Vertex, Vertex)> = idx
                    .iter()
                    .enumerate()
                    .map(|(t, &i)| if flips >> t & 1 == 1 { (pick[i].1, pick[i].0) } else { pick[i] })
                    .collect();
                if is_parallel_matching(order, &seq) {
                    break 'search true;
                }
            }
            if !next_permutation(&mut idx) {
                break false;
            }
        };
        if found {
            best = pick.len();
        }
    }
    best
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
}

/// One of the obstruction families `A_i` or `B_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ObstructionSpec {
    pub family: Family,
    pub index: u32,
}

/// A graph with a designated attachment vertex (the last one).
fn k13() -> Graph {
    Graph::from_edges(4, [(0, 3), (1, 3), (2, 3)]).unwrap()
}

fn disjoint_union_all(parts: &[&Graph]) -> Graph {
    parts.iter().fold(Graph::new(0), |acc, p| acc.disjoint_union(p))
}

/// Multisets of size `k` drawn from `0..len`, in lexicographic order.
fn multisets(len: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(len: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..len {
            cur.push(i);
            go(len, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, k, 0, &mut Vec::new(), &mut out);
    out
}

fn copies(family: &[Graph], k: usize) -> Vec<Vec<Graph>> {
    multisets(family.len(), k).into_iter().map(|pick| pick.into_iter().map(|i| family[i].clone()).collect()).collect()
}

/// `join(v, parts)`: the parts side by side plus a last vertex `v` joined by
/// one edge to the last vertex of each part.
fn join(parts: &[Graph]) -> Graph {
    let refs: Vec<&Graph> = parts.iter().collect();
    let mut g = disjoint_union_all(&refs).with_vertices(1);
    let v = g.n() - 1;
    let mut offset = 0;
    for p in parts {
        offset += p.n();
        g.add_edge(offset - 1, v).expect("fresh vertex");
    }
    g
}

/// All graphs of the family, built by the mutual recursion
/// `A_0 = {2K1}`, `A_i = 2B_{i-1}` (even `i`), `A_i = 2A_{i-1}` (odd `i`),
/// `B_1 = {K_{1,3}}`, `B_i` empty for even `i`, `B_i = join(v, 3B_{i-2})`.
pub fn gen_obstruction(spec: ObstructionSpec) -> Vec<Graph> {
    match (spec.family, spec.index) {
        (Family::A, 0) => vec![Graph::new(2)],
        (Family::A, i) => {
            let inner = if i % 2 == 0 {
                ObstructionSpec { family: Family::B, index: i - 1 }
            } else {
                ObstructionSpec { family: Family::A, index: i - 1 }
            };
            copies(&gen_obstruction(inner), 2).iter().map(|c| disjoint_union_all(&c.iter().collect::<Vec<_>>())).collect()
        }
        (Family::B, 1) => vec![k13()],
        (Family::B, i) if i % 2 == 0 => Vec::new(),
        (Family::B, i) => {
            let inner = gen_obstruction(ObstructionSpec { family: Family::B, index: i - 2 });
            copies(&inner, 3).iter().map(|c| join(c)).collect()
        }
    }
}

/// Whether the solver confirms that `g` has no completion of diameter `d`.
pub fn verify_obstruction(g: &Graph, d: u32) -> Result<bool> {
    Ok(!decide(g, d)?)
}

#[cfg(test)]
mod tests;
