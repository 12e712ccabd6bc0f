//! Simple undirected graphs over dense vertex ids, decomposition primitives
//! and the edge-list interchange format.

use std::collections::VecDeque;
use std::fmt;

use rustworkx_core::petgraph::graph::UnGraph;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::{Error, Result};

pub type Vertex = usize;

pub(crate) const UNREACHED: u32 = u32::MAX;

/// A natural number or infinity. Orders every finite value below `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dist {
    Finite(u32),
    Infinite,
}

impl Dist {
    pub fn is_finite(self) -> bool {
        matches!(self, Dist::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Dist::Finite(d) => Some(d),
            Dist::Infinite => None,
        }
    }

    pub(crate) fn from_raw(d: u32) -> Dist {
        if d == UNREACHED {
            Dist::Infinite
        } else {
            Dist::Finite(d)
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Finite(d) => write!(f, "{d}"),
            Dist::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Dist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Dist::Finite(d) => s.serialize_u32(*d),
            Dist::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Dist {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(u32),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Dist::Finite(v)),
            Repr::Text(t) if t == "inf" => Ok(Dist::Infinite),
            Repr::Text(t) => Err(serde::de::Error::custom(format!("expected a number or \"inf\", got {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeError {
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    Duplicate(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {error}")]
    Edge { line: usize, error: EdgeError },
}

/// Why a graph fails to be outerplanar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum OuterplanarViolation {
    /// More than `2n - 3` edges.
    TooManyEdges { m: usize, bound: usize },
    /// The graph plus a universal apex vertex is not planar.
    ApexNotPlanar,
}

impl fmt::Display for OuterplanarViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuterplanarViolation::TooManyEdges { m, bound } => {
                write!(f, "{m} edges exceed the outerplanar bound 2n-3 = {bound}")
            }
            OuterplanarViolation::ApexNotPlanar => {
                f.write_str("adding a universal apex vertex yields a non-planar graph")
            }
        }
    }
}

/// Simple undirected graph on vertices `0..n`. Adjacency lists are kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> std::result::Result<Self, EdgeError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> std::result::Result<(), EdgeError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(EdgeError::OutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(EdgeError::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(EdgeError::Duplicate(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Subgraph induced by `vertices`, relabelled so that the i-th smallest
    /// member becomes vertex i. Returns the graph and the new-to-old map.
    pub fn induced(&self, vertices: &[Vertex]) -> (Graph, Vec<Vertex>) {
        let mut old: Vec<Vertex> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(old.len());
        for (i, &v) in old.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_id[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j).expect("induced edges are simple");
                }
            }
        }
        (g, old)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n();
        let mut g = self.clone();
        g.adj.extend((0..other.n()).map(|_| Vec::new()));
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("shifted edges are simple");
        }
        g
    }

    pub fn with_vertices(&self, extra: usize) -> Graph {
        let mut g = self.clone();
        g.adj.extend((0..extra).map(|_| Vec::new()));
        g
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || connected_components(self).len() == 1
    }

    /// Parses the edge-list format: a header `n m` followed by `m` lines `u v`.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> std::result::Result<Graph, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(ParseError::Malformed {
            line: 0,
            message: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Graph::new(n);
        let mut seen = 0usize;
        let mut last = hline;
        for (line, content) in lines {
            last = line;
            let (u, v) = parse_pair(line, content)?;
            seen += 1;
            if seen > m {
                return Err(ParseError::Malformed {
                    line,
                    message: format!("more than the {m} edges announced in the header"),
                });
            }
            g.add_edge(u, v).map_err(|error| ParseError::Edge { line, error })?;
        }
        if seen != m {
            return Err(ParseError::Malformed {
                line: last,
                message: format!("header announces {m} edges but {seen} were given"),
            });
        }
        Ok(g)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: usize, content: &str) -> std::result::Result<(usize, usize), ParseError> {
    let mut it = content.split_whitespace();
    let malformed = |message: String| ParseError::Malformed { line, message };
    let mut field = |what: &str| -> std::result::Result<usize, ParseError> {
        let tok = it.next().ok_or_else(|| malformed(format!("missing {what}")))?;
        tok.parse::<usize>()
            .map_err(|_| malformed(format!("expected a non-negative integer for {what}, got {tok:?}")))
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if let Some(extra) = it.next() {
        return Err(malformed(format!("unexpected trailing token {extra:?}")));
    }
    Ok((a, b))
}

/// Maximal connected vertex sets, each ascending, listed by smallest member.
pub fn connected_components(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut label = vec![usize::MAX; g.n()];
    let mut comps = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        if label[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        label[s] = id;
        queue.push_back(s);
        let mut comp = Vec::new();
        while let Some(x) = queue.pop_front() {
            comp.push(x);
            for &y in g.neighbors(x) {
                if label[y] == usize::MAX {
                    label[y] = id;
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// A cut vertex together with one component of its removal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub cut_vertex: Vertex,
    /// Ascending, includes `cut_vertex`.
    pub vertices: Vec<Vertex>,
}

impl Branch {
    /// Smallest vertex other than the cut vertex.
    pub fn anchor(&self) -> Vertex {
        self.vertices.iter().copied().find(|&x| x != self.cut_vertex).unwrap_or(self.cut_vertex)
    }
}

/// One branch per component of `g - v`, ordered by smallest member.
pub fn branches_at(g: &Graph, v: Vertex) -> Vec<Branch> {
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    components_avoiding(g, &blocked, |_| true)
        .into_iter()
        .map(|mut c| {
            let pos = c.binary_search(&v).unwrap_err();
            c.insert(pos, v);
            Branch { cut_vertex: v, vertices: c }
        })
        .collect()
}

/// Components of the subgraph induced by vertices that are not `blocked`
/// and satisfy `keep`, ordered by smallest member.
pub(crate) fn components_avoiding(
    g: &Graph,
    blocked: &[bool],
    keep: impl Fn(Vertex) -> bool,
) -> Vec<Vec<Vertex>> {
    let mut seen = blocked.to_vec();
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..g.n() {
        if seen[s] || !keep(s) {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in g.neighbors(x) {
                if !seen[y] && keep(y) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Vertices of `s` with at least one neighbour outside `s`.
pub fn boundary(g: &Graph, s: &[Vertex]) -> Vec<Vertex> {
    let mut inside = vec![false; g.n()];
    for &x in s {
        inside[x] = true;
    }
    let mut out: Vec<Vertex> = s
        .iter()
        .copied()
        .filter(|&x| g.neighbors(x).iter().any(|&y| !inside[y]))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Blocks (2-connected components and bridges) and cut vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockTree {
    /// Each block ascending; blocks ordered lexicographically.
    pub blocks: Vec<Vec<Vertex>>,
    pub cut_vertices: Vec<Vertex>,
    /// `incidence[i]` lists the indices of the blocks containing `cut_vertices[i]`.
    pub incidence: Vec<Vec<usize>>,
}

impl BlockTree {
    pub fn blocks_containing(&self, v: Vertex) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b].binary_search(&v).is_ok()).collect()
    }
}

pub fn block_decomposition(g: &Graph) -> Result<BlockTree> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let all: Vec<Vertex> = (0..g.n()).collect();
    let scope = vec![true; g.n()];
    let (mut blocks, is_cut) = blocks_within(g, &all, &scope);
    blocks.sort();
    let cut_vertices: Vec<Vertex> = (0..g.n()).filter(|&v| is_cut[v]).collect();
    let incidence = cut_vertices
        .iter()
        .map(|&c| (0..blocks.len()).filter(|&b| blocks[b].binary_search(&c).is_ok()).collect())
        .collect();
    Ok(BlockTree { blocks, cut_vertices, incidence })
}

/// Blocks and articulation flags of the subgraph induced by `vertices`
/// (`in_scope` marks the same set). Isolated vertices form singleton blocks.
pub(crate) fn blocks_within(
    g: &Graph,
    vertices: &[Vertex],
    in_scope: &[bool],
) -> (Vec<Vec<Vertex>>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![u32::MAX; n];
    let mut low = vec![0u32; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut time = 0u32;
    // (vertex, parent, next neighbour index, child count)
    let mut stack: Vec<(Vertex, Vertex, usize, u32)> = Vec::new();

    for &root in vertices {
        if disc[root] != u32::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        if !g.neighbors(root).iter().any(|&y| in_scope[y]) {
            blocks.push(vec![root]);
            continue;
        }
        stack.push((root, usize::MAX, 0, 0));
        while let Some(&mut (x, parent, ref mut idx, _)) = stack.last_mut() {
            let ns = g.neighbors(x);
            if *idx < ns.len() {
                let y = ns[*idx];
                *idx += 1;
                if !in_scope[y] || y == parent {
                    continue;
                }
                if disc[y] == u32::MAX {
                    edge_stack.push((x, y));
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.last_mut().unwrap().3 += 1;
                    stack.push((y, x, 0, 0));
                } else if disc[y] < disc[x] {
                    edge_stack.push((x, y));
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                let (child, _, _, _) = stack.pop().unwrap();
                if let Some(&(p, _, _, children)) = stack.last() {
                    low[p] = low[p].min(low[child]);
                    if low[child] >= disc[p] {
                        let is_root = stack.len() == 1;
                        if !is_root || children > 1 {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, child) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
        // The root counted its children as they were discovered.
    }
    (blocks, is_cut)
}

/// Vertices whose removal increases the number of components.
pub fn cut_vertices(g: &Graph) -> Vec<Vertex> {
    let all: Vec<Vertex> = (0..g.n()).collect();
    let scope = vec![true; g.n()];
    let (_, is_cut) = blocks_within(g, &all, &scope);
    (0..g.n()).filter(|&v| is_cut[v]).collect()
}

pub fn is_cut_vertex(g: &Graph, v: Vertex) -> bool {
    cut_vertices(g).binary_search(&v).is_ok()
}

/// Smallest-id vertex that is not a cut vertex (exists whenever `n >= 1`).
pub fn smallest_non_cut_vertex(g: &Graph) -> Option<Vertex> {
    let cuts = cut_vertices(g);
    (0..g.n()).find(|v| cuts.binary_search(v).is_err())
}

pub fn outerplanarity_violation(g: &Graph) -> Option<OuterplanarViolation> {
    let n = g.n();
    if n >= 2 && g.m() > 2 * n - 3 {
        return Some(OuterplanarViolation::TooManyEdges { m: g.m(), bound: 2 * n - 3 });
    }
    if n <= 3 {
        return None;
    }
    let mut pg = UnGraph::<(), ()>::with_capacity(n + 1, g.m() + n);
    let nodes: Vec<_> = (0..=n).map(|_| pg.add_node(())).collect();
    for (u, v) in g.edges() {
        pg.add_edge(nodes[u], nodes[v], ());
    }
    for v in 0..n {
        pg.add_edge(nodes[n], nodes[v], ());
    }
    if rustworkx_core::planar::is_planar(&pg) {
        None
    } else {
        Some(OuterplanarViolation::ApexNotPlanar)
    }
}

/// Outerplanarity via planarity of `g` plus a universal apex vertex.
pub fn is_outerplanar(g: &Graph) -> bool {
    outerplanarity_violation(g).is_none()
}

pub(crate) fn bfs_into(g: &Graph, src: Vertex, dist: &mut Vec<u32>, queue: &mut VecDeque<Vertex>) {
    dist.clear();
    dist.resize(g.n(), UNREACHED);
    dist[src] = 0;
    queue.clear();
    queue.push_back(src);
    while let Some(x) = queue.pop_front() {
        let d = dist[x] + 1;
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHED {
                dist[y] = d;
                queue.push_back(y);
            }
        }
    }
}

/// Shortest-path distances from `src`.
pub fn distances_from(g: &Graph, src: Vertex) -> Vec<Dist> {
    let mut dist = Vec::new();
    bfs_into(g, src, &mut dist, &mut VecDeque::new());
    dist.into_iter().map(Dist::from_raw).collect()
}

/// Largest eccentricity; `Infinite` when disconnected, 0 when `n <= 1`.
pub fn diameter(g: &Graph) -> Dist {
    let mut best = 0u32;
    let mut dist = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..g.n() {
        bfs_into(g, s, &mut dist, &mut queue);
        for &d in &dist {
            if d == UNREACHED {
                return Dist::Infinite;
            }
            best = best.max(d);
        }
    }
    Dist::Finite(best)
}

/// Smallest eccentricity; `Infinite` when disconnected, 0 when `n <= 1`.
pub fn radius(g: &Graph) -> Dist {
    (0..g.n())
        .map(|v| crate::ecc::ecc_vertex(g, v))
        .min()
        .unwrap_or(Dist::Finite(0))
}

/// Checks that `order` is a permutation of `0..n` along which no two edges
/// of `g` cross when drawn as chords of a circle.
pub fn is_outer_order(g: &Graph, order: &[Vertex]) -> bool {
    let n = g.n();
    if order.len() != n {
        return false;
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return false;
        }
        pos[v] = i;
    }
    let chords: Vec<(usize, usize)> = g
        .edges()
        .map(|(u, v)| {
            let (a, b) = (pos[u], pos[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    // Non-crossing chords on a line nest like parentheses: sweep with a stack.
    let mut events: Vec<(usize, bool, usize)> = Vec::with_capacity(2 * chords.len());
    for (i, &(a, b)) in chords.iter().enumerate() {
        events.push((a, true, i));
        events.push((b, false, i));
    }
    // At a shared position: close chords before opening, and among closes
    // the most recently opened (longest-start) first; among opens, longer first.
    events.sort_by(|x, y| {
        x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1)).then_with(|| {
            let (ca, cb) = (chords[x.2], chords[y.2]);
            if x.1 {
                cb.1.cmp(&ca.1)
            } else {
                cb.0.cmp(&ca.0)
            }
        })
    });
    let mut stack: Vec<usize> = Vec::new();
    for (_, open, i) in events {
        if open {
            stack.push(i);
        } else if stack.pop() != Some(i) {
            return false;
        }
    }
    true
}
