//! Branch reduction at cut vertices with many branches.
//!
//! Walks the block-cut tree bottom-up from the root. At a cut vertex with at
//! least eight branches away from the root only the seven with the largest
//! rooted eccentricity survive; at a cut root the eight largest survive once
//! there are nine or more. Ties go to the branch with the smaller vertex.

use std::cmp::Reverse;

use super::dp::{Dp, RootChoice};
use crate::graph::{blocks_within, Dist, Vertex};

/// Non-root branches at which reduction starts.
pub(crate) const KEEP_NON_ROOT: usize = 7;
/// Branches kept at a cut root.
pub(crate) const KEEP_AT_ROOT: usize = 8;

/// A branch dropped by the reduction, with the solve that certified it.
#[derive(Clone, Debug)]
pub(crate) struct Removed {
    pub cut: u32,
    pub vertices: Vec<u32>,
    pub value: Dist,
    pub choice: Option<RootChoice>,
}

/// Outcome of reducing around a root: `None` when some branch is infeasible.
pub(crate) fn reduce(dp: &mut Dp, root: u32) -> Option<Vec<Removed>> {
    let n = dp.g.n();
    let verts: Vec<Vertex> = (0..n).filter(|&v| dp.alive[v]).collect();
    let (blocks, is_cut) = blocks_within(&dp.g, &verts, &dp.alive);
    let nb = blocks.len();

    // Block-cut tree: nodes 0..nb are blocks, nb + v is cut vertex v.
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nb + n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            if is_cut[v] {
                adj[b].push(nb + v);
                adj[nb + v].push(b);
            }
        }
    }
    let root_node = if is_cut[root as usize] {
        nb + root as usize
    } else {
        blocks.iter().position(|b| b.contains(&(root as usize))).expect("root lies in a block")
    };

    let mut parent = vec![usize::MAX; nb + n];
    let mut order = vec![root_node];
    parent[root_node] = root_node;
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }

    let mut removed = Vec::new();
    for &node in order.iter().rev() {
        if node < nb {
            continue;
        }
        let c = (node - nb) as u32;
        let children: Vec<usize> = adj[node].iter().copied().filter(|&b| parent[b] == node && b != parent[node]).collect();
        let keep = if node == root_node { KEEP_AT_ROOT } else { KEEP_NON_ROOT };
        if children.len() <= keep {
            continue;
        }
        let mut branches = Vec::with_capacity(children.len());
        for &b in &children {
            let mut inside = vec![false; n];
            let mut stack = vec![b];
            while let Some(x) = stack.pop() {
                if x < nb {
                    for &v in &blocks[x] {
                        if dp.alive[v] {
                            inside[v] = true;
                        }
                    }
                }
                stack.extend(adj[x].iter().copied().filter(|&y| parent[y] == x && y != parent[x]));
            }
            inside[c as usize] = true;
            let (value, choice) = dp.root_value(c, Some(&inside));
            if value == Dist::Infinite {
                return None;
            }
            let vertices: Vec<u32> = (0..n as u32).filter(|&v| inside[v as usize]).collect();
            let anchor = vertices.iter().copied().find(|&v| v != c).unwrap_or(c);
            branches.push((value, anchor, vertices, choice));
        }
        branches.sort_by_key(|b| (Reverse(b.0), b.1));
        for (value, _, vertices, choice) in branches.drain(keep..) {
            for &v in &vertices {
                if v != c {
                    dp.alive[v as usize] = false;
                }
            }
            removed.push(Removed { cut: c, vertices, value, choice });
        }
    }
    Some(removed)
}
