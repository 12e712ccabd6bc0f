//! Vertex and edge eccentricities and the small algebra the connected solver
//! is built on.
//!
//! A [`PairEcc`] attached to an ordered pair `(a, b)` always stores its pairs
//! as `(distance to a, distance to b)`. Call sites transpose explicitly when
//! they look an entry up with its ends reversed.

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::graph::{bfs_into, Dist, Graph, Vertex, UNREACHED};

/// Maximal distance pairs of an edge, or `INFINITY`.
///
/// Finite values hold one or two pairs sorted by first coordinate; two pairs
/// are always `(d, d+1), (d+1, d)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairEcc {
    pairs: [(u32, u32); 2],
    // 0 encodes INFINITY.
    len: u8,
}

impl PairEcc {
    pub const INFINITY: PairEcc = PairEcc { pairs: [(0, 0); 2], len: 0 };

    /// `{(0,1),(1,0)}`: a bare edge.
    pub const EDGE: PairEcc = PairEcc { pairs: [(0, 1), (1, 0)], len: 2 };

    /// Keeps the maximal elements of `pairs` under the componentwise order.
    ///
    /// Panics if `pairs` is empty or the maxima are not one of the shapes an
    /// edge can produce.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> PairEcc {
        let out = Self::maxima(pairs);
        out.assert_shape();
        out
    }

    /// [`PairEcc::from_pairs`] with the shape check left to debug builds,
    /// for inputs that come from well-formed values.
    pub(crate) fn maxima<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> PairEcc {
        // Antichains of an edge's pairs are tiny; anything past four is
        // already malformed and caught below.
        let mut max = [(0u32, 0u32); 5];
        let mut len = 0;
        for p in pairs {
            if max[..len].iter().any(|q| p.0 <= q.0 && p.1 <= q.1) {
                continue;
            }
            let mut k = 0;
            for i in 0..len {
                if !(max[i].0 <= p.0 && max[i].1 <= p.1) {
                    max[k] = max[i];
                    k += 1;
                }
            }
            assert!(k < max.len(), "too many incomparable distance pairs for an edge");
            max[k] = p;
            len = k + 1;
        }
        assert!(len > 0, "PairEcc::from_pairs needs at least one pair");
        let out = match len {
            1 => PairEcc { pairs: [max[0], (0, 0)], len: 1 },
            2 => {
                let (a, b) = if max[0] <= max[1] { (max[0], max[1]) } else { (max[1], max[0]) };
                PairEcc { pairs: [a, b], len: 2 }
            }
            n => panic!("{n} incomparable distance pairs cannot come from an edge"),
        };
        if cfg!(debug_assertions) {
            out.assert_shape();
        }
        out
    }

    fn assert_shape(&self) {
        match self.pairs() {
            [] => {}
            [(a, b)] => assert!(a.abs_diff(*b) <= 1, "pair ({a},{b}) differs by more than one"),
            [(a, b), (c, d)] => assert!(
                *b == a + 1 && *c == a + 1 && *d == *a,
                "pairs ({a},{b}),({c},{d}) are not of the form (d,d+1),(d+1,d)"
            ),
            _ => unreachable!(),
        }
    }

    /// Packs a finite value into a `u32` as `d << 3 | form`; 0 is never
    /// produced.
    pub(crate) fn pack(&self) -> u32 {
        let (d, form) = match self.pairs() {
            [(a, b)] if a == b => (*a, 1),
            [(a, b)] if a + 1 == *b => (*a, 2),
            [(a, b)] if *a == b + 1 => (*b, 3),
            [(a, _), _] => (*a, 4),
            _ => panic!("cannot pack {self}"),
        };
        debug_assert!(d < 1 << 29);
        d << 3 | form
    }

    pub(crate) fn unpack(x: u32) -> PairEcc {
        let d = x >> 3;
        match x & 7 {
            1 => PairEcc { pairs: [(d, d), (0, 0)], len: 1 },
            2 => PairEcc { pairs: [(d, d + 1), (0, 0)], len: 1 },
            3 => PairEcc { pairs: [(d + 1, d), (0, 0)], len: 1 },
            4 => PairEcc { pairs: [(d, d + 1), (d + 1, d)], len: 2 },
            _ => panic!("not a packed PairEcc: {x:#x}"),
        }
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs[..self.len as usize]
    }

    pub fn is_infinite(&self) -> bool {
        self.len == 0
    }

    /// Swaps the roles of the two ends.
    pub fn transpose(&self) -> PairEcc {
        match self.len {
            // Two pairs are always (d, d+1), (d+1, d): symmetric.
            0 | 2 => *self,
            _ => {
                let (a, b) = self.pairs[0];
                PairEcc { pairs: [(b, a), (0, 0)], len: 1 }
            }
        }
    }

    /// Every pair of `self` is dominated by a pair of `other`.
    pub fn le(&self, other: &PairEcc) -> bool {
        if other.is_infinite() {
            return true;
        }
        if self.is_infinite() {
            return false;
        }
        self.pairs()
            .iter()
            .all(|&(a, b)| other.pairs().iter().any(|&(c, d)| a <= c && b <= d))
    }

    /// Eccentricity of the first end.
    pub fn first_ecc(&self) -> Dist {
        self.pairs().iter().map(|p| p.0).max().map_or(Dist::Infinite, Dist::Finite)
    }

    /// Eccentricity of the second end.
    pub fn second_ecc(&self) -> Dist {
        self.pairs().iter().map(|p| p.1).max().map_or(Dist::Infinite, Dist::Finite)
    }
}

impl fmt::Display for PairEcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            return f.write_str("INFINITY");
        }
        f.write_str("{")?;
        for (i, (a, b)) in self.pairs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PairEcc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PairEcc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            self.pairs().serialize(s)
        }
    }
}

/// Antichain of minimal [`PairEcc`] alternatives, or `{INFINITY}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PairEccSet {
    alts: [PairEcc; 2],
    len: u8,
}

impl PairEccSet {
    pub const INFINITY: PairEccSet = PairEccSet { alts: [PairEcc::INFINITY; 2], len: 1 };

    pub fn single(p: PairEcc) -> PairEccSet {
        minimal_alternatives([p])
    }

    pub fn alternatives(&self) -> &[PairEcc] {
        &self.alts[..self.len as usize]
    }

    pub fn is_infinite(&self) -> bool {
        self.alts[0].is_infinite()
    }

    pub fn transpose(&self) -> PairEccSet {
        minimal_alternatives(self.alternatives().iter().map(PairEcc::transpose))
    }

    fn assert_shape(&self) {
        match self.alternatives() {
            [_] => {}
            [a, b] => {
                let (a, b) = (a.pairs(), b.pairs());
                let ok = a.len() == 1
                    && b.len() == 1
                    && a[0].1 == a[0].0 + 1
                    && b[0] == (a[0].1, a[0].0);
                assert!(ok, "two alternatives must be {{(d,d+1)}} and {{(d+1,d)}}");
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for PairEccSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.alternatives().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for PairEccSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for PairEccSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            self.alternatives().serialize(s)
        }
    }
}

/// Largest distance from `u`; infinite when some vertex is unreachable.
pub fn ecc_vertex(g: &Graph, u: Vertex) -> Dist {
    let mut dist = Vec::new();
    bfs_into(g, u, &mut dist, &mut VecDeque::new());
    dist.into_iter().max().map_or(Dist::Finite(0), Dist::from_raw)
}

/// Maximal `(dist(u, w), dist(v, w))` over all vertices `w`.
pub fn ecc_pair(g: &Graph, u: Vertex, v: Vertex) -> Result<PairEcc> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(u, v));
    }
    let mut queue = VecDeque::new();
    let (mut du, mut dv) = (Vec::new(), Vec::new());
    bfs_into(g, u, &mut du, &mut queue);
    bfs_into(g, v, &mut dv, &mut queue);
    if du.contains(&UNREACHED) {
        return Err(Error::Disconnected);
    }
    Ok(PairEcc::from_pairs(du.into_iter().zip(dv)))
}

pub fn le_pairecc(a: &PairEcc, b: &PairEcc) -> bool {
    a.le(b)
}

/// The `le`-minimal candidates; `{INFINITY}` when nothing finite is offered.
pub fn minimal_alternatives<I: IntoIterator<Item = PairEcc>>(candidates: I) -> PairEccSet {
    let mut min: SmallVec<[PairEcc; 4]> = SmallVec::new();
    for c in candidates {
        if c.is_infinite() || min.iter().any(|m| m.le(&c)) {
            continue;
        }
        min.retain(|m| !c.le(m));
        min.push(c);
    }
    if min.is_empty() {
        return PairEccSet::INFINITY;
    }
    min.sort_unstable();
    let set = match min.as_slice() {
        &[a] => PairEccSet { alts: [a, PairEcc::INFINITY], len: 1 },
        &[a, b] => PairEccSet { alts: [a, b], len: 2 },
        other => panic!("{} incomparable alternatives violate the five-form property", other.len()),
    };
    set.assert_shape();
    set
}

/// Pair eccentricity of `uv` after gluing two completions along the triangle
/// `uvw`. `s_u` is oriented `(u, w)`, `s_v` is oriented `(w, v)` and the
/// result is oriented `(u, v)`.
pub fn combine_triangle(s_u: &PairEcc, s_v: &PairEcc) -> PairEcc {
    if s_u.is_infinite() || s_v.is_infinite() {
        return PairEcc::INFINITY;
    }
    let mut pts = [(0u32, 0u32); 4];
    let mut k = 0;
    for &(du, dw) in s_u.pairs() {
        pts[k] = (du, du.min(dw) + 1);
        k += 1;
    }
    for &(dw, dv) in s_v.pairs() {
        pts[k] = (dw.min(dv) + 1, dv);
        k += 1;
    }
    PairEcc::maxima(pts[..k].iter().copied())
}

/// Whether gluing along the triangle `uvw` keeps every distance between the
/// two sides within `d`. Orientations as in [`combine_triangle`].
///
/// A vertex `x` on the `u` side and `y` on the `v` side are at distance
/// `min(d(x,w) + d(w,y), d(x,u) + 1 + d(v,y))`, and the condition is monotone,
/// so the maximal pairs suffice.
pub fn diameter_guard(s_u: &PairEcc, s_v: &PairEcc, d: u32) -> bool {
    if s_u.is_infinite() || s_v.is_infinite() {
        return false;
    }
    s_u.pairs().iter().all(|&(a_u, a_w)| {
        s_v.pairs().iter().all(|&(b_w, b_v)| a_w + b_w <= d || a_u + 1 + b_v <= d)
    })
}
