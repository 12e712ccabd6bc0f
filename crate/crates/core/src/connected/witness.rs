//! Turning a solved table back into an explicit completion.
//!
//! The table's hints give the triangles of a completion of the reduced
//! graph. Each removed branch is then completed on its own and attached at
//! its cut vertex. If that attachment breaks the bound, the branches around
//! an offending cut vertex are regrouped as in the gluing argument: the six
//! branches with the largest rooted eccentricity are completed together and
//! every other branch is completed alone, all hanging off the cut vertex.

use super::dp::Dp;
use super::{reduce, DpTable};
use crate::completion::Completion;
use crate::error::{Error, Result};
use crate::graph::{components_avoiding, diameter, distances_from, is_outer_order, Dist, Graph, Vertex};

type Edges = Vec<(u32, u32)>;

/// A verified completion of `g` with diameter at most the table's bound.
pub fn reconstruct_completion(g: &Graph, table: &DpTable) -> Result<Completion> {
    if &table.dp.g != g {
        return Err(Error::InvalidArgument("the table was computed for a different graph".into()));
    }
    if !table.value.is_finite() {
        return Err(Error::Infeasible);
    }
    let d = table.dp.d;
    let (edges, order) = glue_removed(table);
    let c = to_completion(g, &edges, &order);
    if c.verify(Some(d)) {
        return Ok(c);
    }
    let scope = vec![true; g.n()];
    let rebuilt = regroup(g, &scope, table.root, d)
        .ok_or_else(|| Error::Reconstruction("no gluing of branch completions met the bound".into()))?;
    let c = to_completion(g, &rebuilt.0, &rebuilt.1);
    c.check(Some(d)).map_err(|e| Error::Reconstruction(format!("{e:?}")))?;
    Ok(c)
}

fn to_completion(g: &Graph, edges: &Edges, order: &[u32]) -> Completion {
    Completion::new(
        g,
        edges.iter().map(|&(a, b)| (a as Vertex, b as Vertex)),
        order.iter().map(|&v| v as Vertex).collect(),
    )
}

/// Completion of the reduced graph from the hints, with every removed
/// branch's own completion attached right after its cut vertex.
fn glue_removed(table: &DpTable) -> (Edges, Vec<u32>) {
    let dp = &table.dp;
    let mut edges = Edges::new();
    let mut order = vec![table.root];
    if let Some(ch) = table.choice {
        dp.unwind(ch.key, ch.alt, table.root, &mut edges, &mut order);
    }
    // Shallow removals first so that deeper cut vertices are already placed.
    for rem in table.removed.iter().rev() {
        let Some(ch) = rem.choice else { continue };
        let mut arc = vec![rem.cut];
        dp.unwind(ch.key, ch.alt, rem.cut, &mut edges, &mut arc);
        let pos = order.iter().position(|&v| v == rem.cut).expect("cut vertex already placed");
        order.splice(pos + 1..pos + 1, arc[1..].iter().copied());
    }
    (edges, order)
}

/// Solves `G[scope]` rooted at `root` and glues removed branches back.
fn solve_scope(g: &Graph, scope: &[bool], root: u32, d: u32) -> Option<(Edges, Vec<u32>)> {
    let mut dp = Dp::new(g.clone(), scope.to_vec(), d);
    let removed = reduce::reduce(&mut dp, root)?;
    let (value, choice) = dp.root_value(root, None);
    if !value.is_finite() {
        return None;
    }
    let table = DpTable { dp, root, value, choice, removed };
    Some(glue_removed(&table))
}

/// Whether `edges` plus the edges of `G[scope]` form an outerplanar graph
/// along `order` whose diameter is at most `d`.
fn scoped_ok(g: &Graph, scope: &[bool], edges: &Edges, order: &[u32], d: u32) -> bool {
    let (sub, map) = scoped_graph(g, scope, edges);
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        pos[v] = i;
    }
    let relabeled: Option<Vec<Vertex>> =
        order.iter().map(|&v| Some(pos[v as usize]).filter(|&p| p != usize::MAX)).collect();
    let Some(relabeled) = relabeled else { return false };
    is_outer_order(&sub, &relabeled) && diameter(&sub) <= Dist::Finite(d)
}

fn scoped_graph(g: &Graph, scope: &[bool], edges: &Edges) -> (Graph, Vec<Vertex>) {
    let mut h = g.clone();
    for &(a, b) in edges {
        if !h.has_edge(a as Vertex, b as Vertex) {
            h.add_edge(a as Vertex, b as Vertex).expect("valid edge");
        }
    }
    let verts: Vec<Vertex> = (0..g.n()).filter(|&v| scope[v]).collect();
    h.induced(&verts)
}

/// Eccentricity of `c` in the completion of `G[scope]` given by `edges`.
fn ecc_in(g: &Graph, scope: &[bool], edges: &Edges, c: u32) -> Dist {
    let (sub, map) = scoped_graph(g, scope, edges);
    let i = map.binary_search(&(c as Vertex)).expect("c in scope");
    distances_from(&sub, i).into_iter().max().unwrap_or(Dist::Finite(0))
}

/// A completion of `G[scope]` meeting the bound, regrouping branches around
/// a crowded cut vertex when plain gluing fails.
fn regroup(g: &Graph, scope: &[bool], root: u32, d: u32) -> Option<(Edges, Vec<u32>)> {
    if let Some((edges, order)) = solve_scope(g, scope, root, d) {
        if scoped_ok(g, scope, &edges, &order, d) {
            return Some((edges, order));
        }
    }
    let n = g.n();
    let crowded = (0..n).filter(|&c| scope[c]).find_map(|c| {
        let mut blocked: Vec<bool> = scope.iter().map(|&s| !s).collect();
        blocked[c] = true;
        let comps = components_avoiding(g, &blocked, |_| true);
        (comps.len() > reduce::KEEP_NON_ROOT).then_some((c as u32, comps))
    });
    let (c, comps) = crowded?;

    let mut parts = Vec::with_capacity(comps.len());
    for comp in comps {
        let mut sc = vec![false; n];
        for &v in &comp {
            sc[v] = true;
        }
        sc[c as usize] = true;
        let (edges, order) = regroup(g, &sc, c, d)?;
        let e = ecc_in(g, &sc, &edges, c);
        parts.push((e, comp[0], sc, edges, order));
    }
    parts.sort_by_key(|p| (std::cmp::Reverse(p.0), p.1));
    let mut top = vec![false; n];
    for p in &parts[..6] {
        for v in 0..n {
            top[v] |= p.2[v];
        }
    }
    let (mut edges, mut order) = regroup(g, &top, c, d)?;
    for p in &parts[6..] {
        edges.extend_from_slice(&p.3);
        let start = p.4.iter().position(|&v| v == c).expect("branch contains its cut vertex");
        let tail: Vec<u32> = p.4[start + 1..].iter().chain(&p.4[..start]).copied().collect();
        let pos = order.iter().position(|&v| v == c).expect("cut vertex placed");
        order.splice(pos + 1..pos + 1, tail);
    }
    scoped_ok(g, scope, &edges, &order, d).then_some((edges, order))
}
