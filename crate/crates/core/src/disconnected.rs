//! Deciding disconnected inputs, and the general entry points.
//!
//! Each component `C` gets two numbers: `r*(C)`, the least radius of a
//! diameter-`D` completion of `C`, and the escalated eccentricity `r+(C)`,
//! the least eccentricity of an extra vertex joined to `C` by one edge.
//! Components with `2 r+ < D` can always be hung off a central vertex and
//! are dropped. The components with `2 r+ > D` must be pairwise adjacent in
//! any solution, so there are at most three of them and the connecting
//! edges can be guessed. For even `D` the components with `2 r+ = D` must
//! also touch the big ones and their edges are guessed too.

use serde::Serialize;

use crate::completion::Completion;
use crate::connected::{complete_connected, ecc_star};
use crate::error::{Error, Result};
use crate::graph::{connected_components, outerplanarity_violation, smallest_non_cut_vertex, Dist, Graph, Vertex};

/// Radius figures of one connected component for a fixed bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentProfile {
    /// Ascending vertex ids in the input graph.
    pub component: Vec<Vertex>,
    pub min_radius: Dist,
    pub escalated_ecc: Dist,
    /// A vertex attaining `min_radius`.
    #[serde(skip)]
    center: Option<Vertex>,
    /// A vertex whose pendant neighbour attains `escalated_ecc`.
    #[serde(skip)]
    anchor: Option<Vertex>,
}

/// `G[verts]` plus `extra` edges, relabelled; `map[i]` is the original id of `i`.
fn subgraph(g: &Graph, verts: &[Vertex], extra: &[(Vertex, Vertex)]) -> (Graph, Vec<Vertex>) {
    let (mut h, map) = g.induced(verts);
    for &(a, b) in extra {
        let (ia, ib) = (map.binary_search(&a).unwrap(), map.binary_search(&b).unwrap());
        if !h.has_edge(ia, ib) {
            h.add_edge(ia, ib).expect("distinct vertices");
        }
    }
    (h, map)
}

/// Whether a connected graph has a diameter-`d` completion. Callers ensure
/// outerplanarity; guessed edges that break it simply fail.
fn feasible_connected(h: &Graph, d: u32) -> bool {
    if h.n() <= 1 {
        return true;
    }
    if outerplanarity_violation(h).is_some() {
        return false;
    }
    let r = smallest_non_cut_vertex(h).expect("nonempty");
    ecc_star(h, r, d).expect("valid instance").is_finite()
}

fn check_component(c: &Graph, d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidBound);
    }
    if !c.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(v) = outerplanarity_violation(c) {
        return Err(Error::NotOuterplanar(v));
    }
    Ok(())
}

fn radius_with_center(c: &Graph, d: u32) -> (Dist, Option<Vertex>) {
    let mut best = (Dist::Infinite, None);
    for u in 0..c.n() {
        let e = ecc_star(c, u, d).expect("checked instance");
        if e < best.0 {
            best = (e, Some(u));
        }
    }
    best
}

fn escalated_with_anchor(c: &Graph, d: u32) -> (Dist, Option<Vertex>) {
    let n = c.n();
    let mut best = (Dist::Infinite, None);
    for u in 0..n {
        let mut h = c.with_vertices(1);
        h.add_edge(u, n).expect("fresh vertex");
        if outerplanarity_violation(&h).is_some() {
            continue;
        }
        let e = ecc_star(&h, n, d).expect("checked instance");
        if e < best.0 {
            best = (e, Some(u));
        }
    }
    best
}

/// `r*(c)`: least radius over diameter-`d` completions of the connected
/// graph `c`, or infinity when there is none.
pub fn min_radius(c: &Graph, d: u32) -> Result<Dist> {
    check_component(c, d)?;
    if c.n() == 0 {
        return Ok(Dist::Finite(0));
    }
    Ok(radius_with_center(c, d).0)
}

/// `r+(c)`: least eccentricity of a new vertex joined to `c` by one edge
/// over diameter-`d` completions.
pub fn escalated_ecc(c: &Graph, d: u32) -> Result<Dist> {
    check_component(c, d)?;
    if c.n() == 0 {
        return Ok(Dist::Finite(0));
    }
    Ok(escalated_with_anchor(c, d).0)
}

/// Profiles of every component of `g`, ordered by smallest member.
pub fn component_profiles(g: &Graph, d: u32) -> Result<Vec<ComponentProfile>> {
    check_input(g, d)?;
    Ok(connected_components(g).into_iter().map(|comp| profile(g, comp, d)).collect())
}

fn profile(g: &Graph, comp: Vec<Vertex>, d: u32) -> ComponentProfile {
    let (c, map) = g.induced(&comp);
    let (min_radius, center) = radius_with_center(&c, d);
    let (escalated_ecc, anchor) = escalated_with_anchor(&c, d);
    ComponentProfile {
        component: comp,
        min_radius,
        escalated_ecc,
        center: center.map(|v| map[v]),
        anchor: anchor.map(|v| map[v]),
    }
}

fn check_input(g: &Graph, d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidBound);
    }
    if let Some(v) = outerplanarity_violation(g) {
        return Err(Error::NotOuterplanar(v));
    }
    Ok(())
}

/// `2 r` against `D`, with infinity above everything.
fn twice(r: Dist) -> u64 {
    match r {
        Dist::Finite(x) => 2 * x as u64,
        Dist::Infinite => u64::MAX,
    }
}

/// How a yes-instance is put together: `core` components joined by
/// `core_edges` form a connected feasible graph, and every satellite
/// component is hung off a central vertex of the core through its anchor.
struct Plan {
    core: Vec<usize>,
    core_edges: Vec<(Vertex, Vertex)>,
    hub: Option<Vertex>,
    satellites: Vec<usize>,
}

/// All edges with one end in `a` and the other in `b`.
fn cross_edges(a: &[Vertex], b: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| (x.min(y), x.max(y)))).collect()
}

/// Edges between `a` and `b` that survive on their own: the union of the two
/// parts plus the edge must be completable. Any solution contracts onto such
/// a graph, so discarding the others loses nothing.
fn viable_edges(g: &Graph, a: &[Vertex], b: &[Vertex], d: u32) -> Vec<(Vertex, Vertex)> {
    let mut verts = [a, b].concat();
    verts.sort_unstable();
    cross_edges(a, b)
        .into_iter()
        .filter(|&e| feasible_connected(&subgraph(g, &verts, &[e]).0, d))
        .collect()
}

/// Calls `f` on each choice of one item per list until it returns true.
fn any_product<T: Copy>(lists: &[Vec<T>], f: &mut impl FnMut(&[T]) -> bool) -> bool {
    fn go<T: Copy>(lists: &[Vec<T>], pick: &mut Vec<T>, f: &mut impl FnMut(&[T]) -> bool) -> bool {
        let Some((first, rest)) = lists.split_first() else { return f(pick) };
        for &x in first {
            pick.push(x);
            if go(rest, pick, f) {
                return true;
            }
            pick.pop();
        }
        false
    }
    go(lists, &mut Vec::with_capacity(lists.len()), f)
}

fn plan(g: &Graph, d: u32, profiles: &[ComponentProfile]) -> Option<Plan> {
    let d2 = d as u64;
    if profiles.iter().any(|p| p.escalated_ecc == Dist::Infinite) {
        return None;
    }
    let all: Vec<usize> = (0..profiles.len()).collect();
    let others = |keep: &[usize]| all.iter().copied().filter(|i| !keep.contains(i)).collect::<Vec<_>>();
    let kept: Vec<usize> = all.iter().copied().filter(|&i| twice(profiles[i].escalated_ecc) >= d2).collect();

    if kept.iter().all(|&i| twice(profiles[i].escalated_ecc) <= d2) {
        let c0 = *all.iter().min_by_key(|&&i| (profiles[i].min_radius, i)).expect("nonempty graph");
        return Some(Plan { core: vec![c0], core_edges: Vec::new(), hub: profiles[c0].center, satellites: others(&[c0]) });
    }
    let big: Vec<usize> = kept.iter().copied().filter(|&i| twice(profiles[i].escalated_ecc) > d2).collect();
    let equal: Vec<usize> = kept.iter().copied().filter(|&i| twice(profiles[i].escalated_ecc) == d2).collect();
    if big.len() == 1 && twice(profiles[big[0]].min_radius) <= d2 {
        let c = big[0];
        return Some(Plan { core: vec![c], core_edges: Vec::new(), hub: profiles[c].center, satellites: others(&[c]) });
    }
    let p = big.len();
    if p >= 4 {
        return None;
    }
    let q = equal.len();
    if d % 2 == 0 && 1 + q > 5 - p {
        return None;
    }

    let comp = |i: usize| profiles[i].component.as_slice();
    // Big components joined in a star from the first one.
    let p_lists: Vec<Vec<(Vertex, Vertex)>> =
        big[1..].iter().map(|&j| viable_edges(g, comp(big[0]), comp(j), d)).collect();
    let mut big_verts: Vec<Vertex> = big.iter().flat_map(|&i| comp(i).iter().copied()).collect();
    big_verts.sort_unstable();
    let mut found = None;
    any_product(&p_lists, &mut |p_edges| {
        if !feasible_connected(&subgraph(g, &big_verts, p_edges).0, d) {
            return false;
        }
        if q == 0 {
            found = Some(p_edges.to_vec());
            return true;
        }
        // Each remaining component touches the joined big part.
        let q_lists: Vec<Vec<(Vertex, Vertex)>> =
            equal.iter().map(|&j| viable_edges_with(g, &big_verts, p_edges, comp(j), d)).collect();
        let mut all_verts = big_verts.clone();
        all_verts.extend(equal.iter().flat_map(|&i| comp(i).iter().copied()));
        all_verts.sort_unstable();
        any_product(&q_lists, &mut |q_edges| {
            let edges = [p_edges, q_edges].concat();
            if feasible_connected(&subgraph(g, &all_verts, &edges).0, d) {
                found = Some(edges);
                true
            } else {
                false
            }
        })
    });
    let core_edges = found?;
    let core: Vec<usize> = big.iter().chain(&equal).copied().collect();
    Some(Plan { satellites: others(&core), core, core_edges, hub: None })
}

/// Like [`viable_edges`] for a part that already carries guessed edges.
fn viable_edges_with(
    g: &Graph,
    part: &[Vertex],
    part_edges: &[(Vertex, Vertex)],
    b: &[Vertex],
    d: u32,
) -> Vec<(Vertex, Vertex)> {
    let mut verts = [part, b].concat();
    verts.sort_unstable();
    cross_edges(part, b)
        .into_iter()
        .filter(|&e| {
            let edges = [part_edges, &[e]].concat();
            feasible_connected(&subgraph(g, &verts, &edges).0, d)
        })
        .collect()
}

/// Decides a graph with at least two components. Connected inputs are
/// passed on to the connected solver.
pub fn opdi_disconnected(g: &Graph, d: u32) -> Result<bool> {
    check_input(g, d)?;
    if g.n() <= 1 || g.is_connected() {
        return Ok(feasible_connected(g, d));
    }
    let profiles = component_profiles(g, d)?;
    Ok(plan(g, d, &profiles).is_some())
}

/// Whether `g` has an outerplanar completion of diameter at most `d`.
pub fn decide(g: &Graph, d: u32) -> Result<bool> {
    opdi_disconnected(g, d)
}

/// A verified completion of diameter at most `d`, or `None` if there is none.
pub fn complete(g: &Graph, d: u32) -> Result<Option<Completion>> {
    check_input(g, d)?;
    if g.n() <= 1 || g.is_connected() {
        return complete_connected(g, d);
    }
    let profiles = component_profiles(g, d)?;
    let Some(plan) = plan(g, d, &profiles) else { return Ok(None) };

    let mut core_verts: Vec<Vertex> = plan.core.iter().flat_map(|&i| profiles[i].component.iter().copied()).collect();
    core_verts.sort_unstable();
    let hub = match plan.hub {
        Some(h) => h,
        None => {
            let (h, map) = subgraph(g, &core_verts, &plan.core_edges);
            map[radius_with_center(&h, d).1.expect("core is feasible")]
        }
    };
    let mut extra = plan.core_edges.clone();
    for &i in &plan.satellites {
        extra.push((hub, profiles[i].anchor.expect("finite escalated eccentricity")));
    }
    let mut joined = g.clone();
    for &(a, b) in &extra {
        if !joined.has_edge(a, b) {
            joined.add_edge(a, b).expect("distinct vertices");
        }
    }
    let c = complete_connected(&joined, d)?
        .ok_or_else(|| Error::Reconstruction("the joined graph admits no completion".into()))?;
    let edges = c.added.iter().copied().chain(extra);
    let out = Completion::new(g, edges, c.outer_order.clone());
    out.check(Some(d)).map_err(|e| Error::Reconstruction(format!("{e:?}")))?;
    Ok(Some(out))
}

/// Smallest `D` admitting a completion of diameter `D`; 0 for `n <= 1`.
pub fn opdi_value(g: &Graph) -> Result<u32> {
    check_input(g, 1)?;
    let n = g.n();
    if n <= 1 {
        return Ok(0);
    }
    let (mut lo, mut hi) = (1u32, n as u32 - 1);
    debug_assert!(decide(g, hi)?);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if decide(g, mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// [`opdi_value`] together with a completion attaining it.
pub fn minimum_completion(g: &Graph) -> Result<(u32, Completion)> {
    let d = opdi_value(g)?;
    if g.n() <= 1 {
        return Ok((0, Completion::new(g, [], (0..g.n()).collect())));
    }
    let c = complete(g, d)?.ok_or(Error::Infeasible)?;
    Ok((d, c))
}

#[cfg(test)]
mod tests;
