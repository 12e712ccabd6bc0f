use serde::{Deserialize, Serialize};

use crate::graph::{diameter, is_outer_order, is_outerplanar, Dist, Graph, Vertex};

/// A graph together with the edges added to it, the resulting diameter and a
/// cyclic vertex order along which no two edges cross.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    #[serde(skip)]
    pub base: Graph,
    /// Sorted, each `(u, v)` with `u < v`, disjoint from the base edges.
    pub added: Vec<(Vertex, Vertex)>,
    pub diameter: Dist,
    pub outer_order: Vec<Vertex>,
}

/// Why a completion was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletionDefect {
    AddedEdgeInBase(Vertex, Vertex),
    BadEdge(Vertex, Vertex),
    NotOuterplanar,
    BadOuterOrder,
    DiameterMismatch { stored: Dist, actual: Dist },
    DiameterTooLarge { actual: Dist, bound: u32 },
}

impl Completion {
    /// Builds a completion from any superset of edges; base edges are
    /// filtered out and the diameter is measured.
    pub fn new(base: &Graph, edges: impl IntoIterator<Item = (Vertex, Vertex)>, outer_order: Vec<Vertex>) -> Completion {
        let mut added: Vec<(Vertex, Vertex)> = edges
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .filter(|&(a, b)| a != b && !base.has_edge(a, b))
            .collect();
        added.sort_unstable();
        added.dedup();
        let mut c = Completion { base: base.clone(), added, diameter: Dist::Finite(0), outer_order };
        c.diameter = diameter(&c.graph());
        c
    }

    pub fn graph(&self) -> Graph {
        let mut g = self.base.clone();
        for &(a, b) in &self.added {
            // Invalid edges are reported by `check`.
            let _ = g.add_edge(a, b);
        }
        g
    }

    /// Independent re-verification: the base is contained, the result is
    /// outerplanar with a valid outer order, the stored diameter is exact and
    /// within `bound` when given.
    pub fn check(&self, bound: Option<u32>) -> Result<(), CompletionDefect> {
        let n = self.base.n();
        for &(a, b) in &self.added {
            if a >= n || b >= n || a == b {
                return Err(CompletionDefect::BadEdge(a, b));
            }
            if self.base.has_edge(a, b) {
                return Err(CompletionDefect::AddedEdgeInBase(a, b));
            }
        }
        let g = self.graph();
        if g.m() != self.base.m() + self.added.len() {
            let (a, b) = self.added.windows(2).find(|w| w[0] == w[1]).map_or((0, 0), |w| w[0]);
            return Err(CompletionDefect::BadEdge(a, b));
        }
        if !is_outerplanar(&g) {
            return Err(CompletionDefect::NotOuterplanar);
        }
        if !is_outer_order(&g, &self.outer_order) {
            return Err(CompletionDefect::BadOuterOrder);
        }
        let actual = diameter(&g);
        if actual != self.diameter {
            return Err(CompletionDefect::DiameterMismatch { stored: self.diameter, actual });
        }
        if let Some(bound) = bound {
            if actual > Dist::Finite(bound) {
                return Err(CompletionDefect::DiameterTooLarge { actual, bound });
            }
        }
        Ok(())
    }

    pub fn verify(&self, bound: Option<u32>) -> bool {
        self.check(bound).is_ok()
    }
}

/// Checks `c` against an independently supplied base graph.
pub fn verify_completion(base: &Graph, c: &Completion, bound: u32) -> bool {
    &c.base == base && c.verify(Some(bound))
}
