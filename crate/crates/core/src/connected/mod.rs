//! Exact solver for connected inputs.
//!
//! `ecc*_D(r, G)` is the least eccentricity of `r` over all outerplanar
//! completions of `G` with diameter at most `D`. It is computed from a table
//! over separator states `(u, v, X)`: `X` is a vertex set whose only vertices
//! with neighbours outside are `u` and `v`, and the table holds the minimal
//! pair eccentricities of `uv` over completions of `G[X]` with `uv` on the
//! outer face. Cut vertices with many branches are first reduced.

mod dp;
mod reduce;
mod witness;

use serde::Serialize;

use crate::completion::Completion;
use crate::ecc::PairEccSet;
use crate::error::{Error, Result};
use crate::graph::{branches_at, is_cut_vertex, outerplanarity_violation, Branch, Dist, Graph, Vertex};

use dp::{Dp, Key, Reps, RootChoice};
use reduce::Removed;

pub use witness::reconstruct_completion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Drop surplus branches at cut vertices before running the table.
    /// Turning this off is only sensible for small inputs.
    pub reduce_branches: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { reduce_branches: true }
    }
}

/// A separator state with its vertex set spelled out.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DpKey {
    pub u: Vertex,
    pub v: Vertex,
    /// Ascending, contains `u` and `v`.
    pub x: Vec<Vertex>,
}

/// A triangle `u v w` splitting a state into `(u, w, x_u)` and `(w, v, x_v)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Split {
    pub w: Vertex,
    pub x_u: Vec<Vertex>,
    pub x_v: Vec<Vertex>,
}

/// The filled table of one rooted solve, with everything needed to rebuild a
/// witness.
pub struct DpTable {
    dp: Dp,
    root: u32,
    value: Dist,
    choice: Option<RootChoice>,
    removed: Vec<Removed>,
}

impl DpTable {
    pub fn value(&self) -> Dist {
        self.value
    }

    pub fn root(&self) -> Vertex {
        self.root as Vertex
    }

    pub fn bound(&self) -> u32 {
        self.dp.d
    }

    /// Number of evaluated states.
    pub fn len(&self) -> usize {
        self.dp.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The input graph restricted to the vertices that survived reduction.
    pub fn reduced_vertices(&self) -> Vec<Vertex> {
        (0..self.dp.g.n()).filter(|&v| self.dp.alive[v]).collect()
    }

    /// Branches dropped by the reduction, each with its rooted eccentricity.
    pub fn removed_branches(&self) -> Vec<(Branch, Dist)> {
        self.removed
            .iter()
            .map(|r| {
                let b = Branch {
                    cut_vertex: r.cut as Vertex,
                    vertices: r.vertices.iter().map(|&v| v as Vertex).collect(),
                };
                (b, r.value)
            })
            .collect()
    }

    /// Every evaluated state over the reduced graph, keyed canonically
    /// (`u < v`), with its value oriented `(u, v)`.
    pub fn entries(&self) -> Vec<(DpKey, PairEccSet)> {
        let mut out = Vec::new();
        for i in 0..self.dp.len() {
            let Some(cell) = &self.dp.cells[i] else { continue };
            let key = &self.dp.key(i as u32);
            if key.reps.iter().chain([&key.lo, &key.hi]).any(|&v| !self.dp.alive[v as usize]) {
                continue;
            }
            out.push((
                DpKey { u: key.lo as Vertex, v: key.hi as Vertex, x: state_vertices(&self.dp.g, &self.dp.alive, key) },
                cell.value(),
            ));
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// The stored value of `(u, v, x)` oriented `(u, v)`, if that state was
    /// evaluated.
    pub fn get(&self, u: Vertex, v: Vertex, x: &[Vertex]) -> Option<PairEccSet> {
        let reps = state_reps(&self.dp.g, &self.dp.alive, u, v, x)?;
        let key = Key { lo: u.min(v) as u32, hi: u.max(v) as u32, reps };
        let id = self.dp.lookup(&key)?;
        let value = self.dp.cells[id as usize].as_ref()?.value();
        Some(if u < v { value } else { value.transpose() })
    }
}

/// Vertex set of a state by search from its component representatives.
fn state_vertices(g: &Graph, alive: &[bool], key: &Key) -> Vec<Vertex> {
    let mut seen = vec![false; g.n()];
    seen[key.lo as usize] = true;
    seen[key.hi as usize] = true;
    let mut out = vec![key.lo as Vertex, key.hi as Vertex];
    let mut stack: Vec<Vertex> = Vec::new();
    for &r in &key.reps {
        if !seen[r as usize] {
            seen[r as usize] = true;
            stack.push(r as Vertex);
        }
        while let Some(x) = stack.pop() {
            out.push(x);
            for &y in g.neighbors(x) {
                if alive[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Component representatives of `x \ {u, v}`, or `None` if `x` is not a valid
/// state (some vertex other than `u`, `v` has a neighbour outside `x`).
fn state_reps(g: &Graph, alive: &[bool], u: Vertex, v: Vertex, x: &[Vertex]) -> Option<Reps> {
    let n = g.n();
    if u == v || u >= n || v >= n {
        return None;
    }
    let mut in_x = vec![false; n];
    for &y in x {
        if y >= n || !alive[y] {
            return None;
        }
        in_x[y] = true;
    }
    if !in_x[u] || !in_x[v] {
        return None;
    }
    let mut seen = vec![false; n];
    seen[u] = true;
    seen[v] = true;
    let mut reps = Reps::new();
    let mut sorted = x.to_vec();
    sorted.sort_unstable();
    for &s in &sorted {
        if seen[s] {
            continue;
        }
        reps.push(s as u32);
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(a) = stack.pop() {
            for &b in g.neighbors(a) {
                if !alive[b] || seen[b] {
                    continue;
                }
                if !in_x[b] {
                    return None;
                }
                seen[b] = true;
                stack.push(b);
            }
        }
    }
    Some(reps)
}

fn check_instance(g: &Graph, r: Vertex, d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidBound);
    }
    g.check_vertex(r)?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(v) = outerplanarity_violation(g) {
        return Err(Error::NotOuterplanar(v));
    }
    Ok(())
}

/// Solves with root `r`, which may be a cut vertex. Inputs are not checked.
pub(crate) fn solve_unchecked(g: &Graph, r: Vertex, d: u32, opts: SolverOptions) -> DpTable {
    let mut dp = Dp::new(g.clone(), vec![true; g.n()], d);
    let root = r as u32;
    let removed = if opts.reduce_branches { reduce::reduce(&mut dp, root) } else { Some(Vec::new()) };
    let Some(removed) = removed else {
        return DpTable { dp, root, value: Dist::Infinite, choice: None, removed: Vec::new() };
    };
    let (value, choice) = dp.root_value(root, None);
    DpTable { dp, root, value, choice, removed }
}

/// `ecc*_D(r, g)` for a connected outerplanar `g` and a root `r` that is not a
/// cut vertex, together with the filled table.
pub fn opdi_connected(g: &Graph, r: Vertex, d: u32) -> Result<(Dist, DpTable)> {
    opdi_connected_with(g, r, d, SolverOptions::default())
}

pub fn opdi_connected_with(g: &Graph, r: Vertex, d: u32, opts: SolverOptions) -> Result<(Dist, DpTable)> {
    check_instance(g, r, d)?;
    if is_cut_vertex(g, r) {
        return Err(Error::CutVertexRoot(r));
    }
    let t = solve_unchecked(g, r, d, opts);
    Ok((t.value, t))
}

/// `ecc*_D(r, g)` for any root, cut vertices included.
pub fn ecc_star(g: &Graph, r: Vertex, d: u32) -> Result<Dist> {
    ecc_star_with(g, r, d, SolverOptions::default())
}

pub fn ecc_star_with(g: &Graph, r: Vertex, d: u32, opts: SolverOptions) -> Result<Dist> {
    check_instance(g, r, d)?;
    Ok(solve_unchecked(g, r, d, opts).value)
}

/// Like [`ecc_star`] but keeps the table for witness reconstruction.
pub fn solve_rooted(g: &Graph, r: Vertex, d: u32) -> Result<DpTable> {
    check_instance(g, r, d)?;
    Ok(solve_unchecked(g, r, d, SolverOptions::default()))
}

/// Smallest `D >= 1` admitting a diameter-`D` outerplanar completion of a
/// connected outerplanar graph, found by bisection over `1..=max(1, n-1)`.
pub fn opdi_value_connected(g: &Graph, r: Vertex) -> Result<u32> {
    check_instance(g, r, 1)?;
    if is_cut_vertex(g, r) {
        return Err(Error::CutVertexRoot(r));
    }
    if g.n() <= 1 {
        return Ok(0);
    }
    let (mut lo, mut hi) = (1u32, (g.n() as u32 - 1).max(1));
    debug_assert!(solve_unchecked(g, r, hi, SolverOptions::default()).value.is_finite());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if solve_unchecked(g, r, mid, SolverOptions::default()).value.is_finite() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Result of [`reduce_branches`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchReduction {
    /// The kept vertices, relabelled in ascending order.
    pub graph: Graph,
    /// `kept[i]` is the original id of vertex `i` of `graph`.
    pub kept: Vec<Vertex>,
    pub removed: Vec<Branch>,
}

/// One reduction step at cut vertex `v`. With a `root`, the branch containing
/// it always stays and seven more survive once there are at least eight
/// others; without one, eight survive once there are nine or more. Branch
/// eccentricities come from `ecc_of_branch`; ties favour the branch with the
/// smaller vertex.
pub fn reduce_branches(
    g: &Graph,
    v: Vertex,
    root: Option<Vertex>,
    mut ecc_of_branch: impl FnMut(&Branch) -> Dist,
) -> Result<BranchReduction> {
    g.check_vertex(v)?;
    if let Some(r) = root {
        g.check_vertex(r)?;
    }
    let all = branches_at(g, v);
    let mut others: Vec<Branch> = all
        .into_iter()
        .filter(|b| !root.is_some_and(|r| r != v && b.vertices.binary_search(&r).is_ok()))
        .collect();
    let keep = if root.is_some() { reduce::KEEP_NON_ROOT } else { reduce::KEEP_AT_ROOT };
    let mut scored = Vec::with_capacity(others.len());
    for b in others.drain(..) {
        let e = ecc_of_branch(&b);
        if e == Dist::Infinite {
            return Err(Error::Infeasible);
        }
        scored.push((e, b));
    }
    let mut removed = Vec::new();
    if scored.len() > keep {
        scored.sort_by_key(|(e, b)| (std::cmp::Reverse(*e), b.anchor()));
        removed = scored.drain(keep..).map(|(_, b)| b).collect();
    }
    let mut dead = vec![false; g.n()];
    for b in &removed {
        for &x in &b.vertices {
            if x != v {
                dead[x] = true;
            }
        }
    }
    let kept: Vec<Vertex> = (0..g.n()).filter(|&x| !dead[x]).collect();
    let (graph, kept) = g.induced(&kept);
    removed.sort_by_key(|b| b.anchor());
    Ok(BranchReduction { graph, kept, removed })
}

/// Branch eccentricity for [`reduce_branches`]: `ecc*_D` of the cut vertex
/// inside the branch.
pub fn branch_ecc(g: &Graph, d: u32) -> impl FnMut(&Branch) -> Dist + '_ {
    move |b: &Branch| {
        let (sub, map) = g.induced(&b.vertices);
        let c = map.binary_search(&b.cut_vertex).expect("cut vertex lies in its branch");
        solve_unchecked(&sub, c, d, SolverOptions::default()).value
    }
}

/// All states `(u, v, X)` with `u < v`, `X` closed except at `u` and `v`, and
/// `r` not inside `X \ {u, v}`, ordered by `|X|` and then lexicographically.
/// The count grows as `2^k` in the number `k` of components around a pair,
/// so pairs with more than 20 such components are refused.
pub fn enumerate_triples(g: &Graph, r: Vertex) -> Result<Vec<DpKey>> {
    g.check_vertex(r)?;
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let comps: Vec<Vec<Vertex>> = crate::graph::components_avoiding(g, &blocked(n, u, v), |_| true)
                .into_iter()
                .filter(|c| c.binary_search(&r).is_err())
                .collect();
            if comps.len() > 20 {
                return Err(Error::InvalidArgument(format!(
                    "pair ({u}, {v}) has {} components; reduce branches first",
                    comps.len()
                )));
            }
            for mask in 0u32..(1 << comps.len()) {
                let mut x = vec![u, v];
                for (i, c) in comps.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        x.extend_from_slice(c);
                    }
                }
                x.sort_unstable();
                out.push(DpKey { u, v, x });
            }
        }
    }
    out.sort_by(|a, b| a.x.len().cmp(&b.x.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn blocked(n: usize, u: Vertex, v: Vertex) -> Vec<bool> {
    let mut b = vec![false; n];
    b[u] = true;
    b[v] = true;
    b
}

/// All splits of a state by a triangle `u v w` with `w` inside `X`: `X_u` and
/// `X_v` share exactly `w`, cover `X`, and no edge of `G[X]` joins
/// `X_u \ {u, w}` to `X_v \ {w}` or `X_v \ {v, w}` to `X_u \ {w}`.
/// Ordered by `w` and then by side assignment.
pub fn enumerate_splits(g: &Graph, key: &DpKey) -> Result<Vec<Split>> {
    let alive = vec![true; g.n()];
    let reps = state_reps(g, &alive, key.u, key.v, &key.x)
        .ok_or_else(|| Error::InvalidArgument("the vertex set is not a separator state".into()))?;
    let mut dp = Dp::new(g.clone(), alive, 1);
    let id = dp.intern(key.u as u32, key.v as u32, reps);
    let raw = dp.splits(id);
    let mut out = Vec::with_capacity(raw.len());
    for (w, left, right) in raw {
        let (lx, rx) = (dp.vertex_set(left), dp.vertex_set(right));
        // Sides follow the key's own orientation.
        let (x_u, x_v) = if key.u < key.v { (lx, rx) } else { (rx, lx) };
        out.push(Split {
            w: w as Vertex,
            x_u: x_u.into_iter().map(|v| v as Vertex).collect(),
            x_v: x_v.into_iter().map(|v| v as Vertex).collect(),
        });
    }
    Ok(out)
}

/// A verified completion of a connected graph with diameter at most `d`, or
/// `None` when none exists.
pub fn complete_connected(g: &Graph, d: u32) -> Result<Option<Completion>> {
    let r = crate::graph::smallest_non_cut_vertex(g).unwrap_or(0);
    if g.n() == 0 {
        return Ok(Some(Completion::new(g, [], Vec::new())));
    }
    let t = solve_rooted(g, r, d)?;
    if !t.value().is_finite() {
        return Ok(None);
    }
    reconstruct_completion(g, &t).map(Some)
}

#[cfg(test)]
mod tests;
