//! Memoized table over separator states `(u, v, X)`.
//!
//! `X \ {u, v}` is always a union of components of `G - {u, v}` (restricted to
//! alive vertices), so a state is identified by its two ends and the smallest
//! vertex of each chosen component. States are evaluated on demand from an
//! explicit work stack; a state's sub-states always have strictly smaller `X`.

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use crate::ecc::{combine_triangle, diameter_guard, minimal_alternatives, PairEcc, PairEccSet};
use crate::graph::{Dist, Graph};

pub(crate) type Reps = SmallVec<[u32; 14]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Key {
    pub lo: u32,
    pub hi: u32,
    pub reps: Reps,
}

#[derive(Clone, Copy)]
struct KeyRec {
    lo: u32,
    hi: u32,
    off: u32,
    len: u32,
}

/// How an alternative was obtained: the apex `w` of the triangle on `lo hi`
/// and the chosen alternatives of the two sub-states.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Hint {
    pub w: u32,
    pub left: u32,
    pub left_alt: u8,
    pub right: u32,
    pub right_alt: u8,
}

/// Minimal alternatives oriented `(lo, hi)`; empty means infeasible.
#[derive(Clone, Debug, Default)]
pub(crate) struct Cell {
    pub alts: SmallVec<[(PairEcc, Option<Hint>); 2]>,
}

impl Cell {
    pub fn value(&self) -> PairEccSet {
        minimal_alternatives(self.alts.iter().map(|a| a.0))
    }
}

#[derive(Clone, Copy, Debug)]
struct Cand {
    w: u32,
    left: u32,
    right: u32,
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    cu: u32,
    cv: u32,
    min: u32,
}

/// The best root edge found by [`Dp::root_value`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct RootChoice {
    pub x: u32,
    pub key: u32,
    pub alt: u8,
}

pub(crate) struct Dp {
    pub g: Graph,
    pub alive: Vec<bool>,
    pub d: u32,
    /// State ids by an order-independent key hash. Each hit is checked
    /// against the stored key; keys whose hash is already taken by another
    /// key live in `clashes`.
    by_hash: FxHashMap<u64, u32>,
    clashes: FxHashMap<Key, u32>,
    /// Ends and a slice of `rep_arena` for every state.
    keys: Vec<KeyRec>,
    rep_arena: Vec<u32>,
    pub cells: Vec<Option<Cell>>,
    /// Packed alternatives of each evaluated cell (two `PairEcc::pack` codes,
    /// 0 for a missing one), or `UNSET`. `combine` reads only these.
    vals: Vec<u64>,
    mark: Vec<u32>,
    label: Vec<u32>,
    stamp: u32,
    near_u: Vec<u32>,
    near_v: Vec<u32>,
    near_stamp: u32,
    local: Vec<u32>,
    scratch: Scratch,
    /// `pieces` output per `(u, v, component rep)`, which many states share:
    /// the map gives an offset into `piece_start`, whose entries index
    /// `piece_buf` for each vertex of the component in ascending order.
    /// Branch removal keeps entries valid: a cached component lies inside
    /// one branch, so it either survives whole or its rep dies with it.
    piece_cache: FxHashMap<(u32, u32, u32), u32>,
    piece_start: Vec<u32>,
    piece_buf: Vec<Piece>,
}

/// Buffers reused across `expand` calls.
#[derive(Default)]
struct Scratch {
    comp_verts: Vec<u32>,
    comp_start: Vec<usize>,
    nodes: Vec<Node>,
    order: Vec<u32>,
    stack: Vec<(u32, usize)>,
    pmin: Vec<u32>,
    sfx: Vec<u32>,
    /// Separated subtrees, chained per apex through `Node::head`.
    seps: Vec<(Piece, u32)>,
    /// Pieces around each apex `w`: `piece_buf[piece_start[w]..piece_start[w + 1]]`.
    piece_start: Vec<u32>,
    piece_buf: Vec<Piece>,
    /// Sorted reps of the two sides of the candidate being interned.
    left: Vec<u32>,
    right: Vec<u32>,
    left_base: Vec<u32>,
    right_base: Vec<u32>,
    fixed_l: Vec<u32>,
    fixed_r: Vec<u32>,
}

/// DFS record of one vertex of the component being split.
#[derive(Clone, Copy, Default)]
struct Node {
    pre: u32,
    low: u32,
    parent: u32,
    size: u32,
    cu: u32,
    cv: u32,
    smin: u32,
    /// Children whose subtrees reach above this vertex, merged.
    up_u: u32,
    up_v: u32,
    up_min: u32,
    head: u32,
}

fn reset(v: &mut Vec<u32>, len: usize, fill: u32) {
    v.clear();
    v.resize(len, fill);
}

const NONE: u32 = u32::MAX;
const UNSET: u64 = u64::MAX;

/// Merges the sorted `base` with the entries of the sorted `extra` whose bit
/// is set in `mask`, into `out`.
fn merge_chosen(base: &[u32], extra: &[u32], mask: u32, out: &mut Vec<u32>) {
    out.clear();
    let mut i = 0;
    for (j, &e) in extra.iter().enumerate() {
        if mask >> j & 1 == 0 {
            continue;
        }
        while i < base.len() && base[i] < e {
            out.push(base[i]);
            i += 1;
        }
        out.push(e);
    }
    out.extend_from_slice(&base[i..]);
}

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Dp {
    pub fn new(g: Graph, alive: Vec<bool>, d: u32) -> Self {
        let n = g.n();
        Dp {
            g,
            alive,
            d,
            by_hash: FxHashMap::default(),
            clashes: FxHashMap::default(),
            keys: Vec::new(),
            rep_arena: Vec::new(),
            cells: Vec::new(),
            vals: Vec::new(),
            mark: vec![0; n],
            label: vec![0; n],
            stamp: 0,
            near_u: vec![0; n],
            near_v: vec![0; n],
            near_stamp: 0,
            local: vec![0; n],
            scratch: Scratch::default(),
            piece_cache: FxHashMap::default(),
            piece_start: Vec::new(),
            piece_buf: Vec::new(),
        }
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp += 1;
        if self.stamp == u32::MAX {
            self.mark.iter_mut().for_each(|m| *m = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    fn ends_hash(lo: u32, hi: u32) -> u64 {
        mix((lo as u64) << 32 | hi as u64)
    }

    fn rep_hash(r: u32) -> u64 {
        mix(r as u64 ^ 0x9e37_79b9_7f4a_7c15)
    }

    fn key_hash(lo: u32, hi: u32, reps: &[u32]) -> u64 {
        // Summing per-rep mixes makes the hash independent of rep order and
        // lets `expand` update it one rep at a time.
        reps.iter().fold(Self::ends_hash(lo, hi), |h, &r| h.wrapping_add(Self::rep_hash(r)))
    }

    /// Interns a key whose `reps` are sorted and whose hash is `h`.
    fn intern_sorted(&mut self, lo: u32, hi: u32, reps: &[u32], h: u64) -> u32 {
        debug_assert!(lo < hi && reps.windows(2).all(|w| w[0] < w[1]));
        match self.by_hash.get(&h) {
            None => {
                let id = self.push_key(lo, hi, reps);
                self.by_hash.insert(h, id);
                id
            }
            Some(&id) if self.matches(id, lo, hi, reps) => id,
            Some(_) => {
                let key = Key { lo, hi, reps: Reps::from_slice(reps) };
                if let Some(&id) = self.clashes.get(&key) {
                    return id;
                }
                let id = self.push_key(lo, hi, reps);
                self.clashes.insert(key, id);
                id
            }
        }
    }

    fn matches(&self, id: u32, lo: u32, hi: u32, reps: &[u32]) -> bool {
        let k = self.keys[id as usize];
        k.lo == lo && k.hi == hi && self.reps_of(k) == reps
    }

    fn push_key(&mut self, lo: u32, hi: u32, reps: &[u32]) -> u32 {
        let off = self.rep_arena.len() as u32;
        self.rep_arena.extend_from_slice(reps);
        self.keys.push(KeyRec { lo, hi, off, len: reps.len() as u32 });
        self.cells.push(None);
        self.vals.push(UNSET);
        (self.keys.len() - 1) as u32
    }

    /// State id for ends `a`, `b` and component reps in any order.
    pub fn intern(&mut self, a: u32, b: u32, mut reps: Reps) -> u32 {
        let (lo, hi) = (a.min(b), a.max(b));
        reps.sort_unstable();
        let h = Self::key_hash(lo, hi, &reps);
        self.intern_sorted(lo, hi, &reps, h)
    }

    pub fn lookup(&self, key: &Key) -> Option<u32> {
        let mut sorted = key.reps.clone();
        sorted.sort_unstable();
        match self.by_hash.get(&Self::key_hash(key.lo, key.hi, &sorted)) {
            Some(&id) if self.matches(id, key.lo, key.hi, &sorted) => Some(id),
            _ => self.clashes.get(key).copied(),
        }
    }

    fn reps_of(&self, k: KeyRec) -> &[u32] {
        &self.rep_arena[k.off as usize..(k.off + k.len) as usize]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    /// The key of state `id`, reps ascending.
    pub fn key(&self, id: u32) -> Key {
        let k = self.keys[id as usize];
        Key { lo: k.lo, hi: k.hi, reps: Reps::from_slice(self.reps_of(k)) }
    }

    pub fn cell(&self, id: u32) -> &Cell {
        self.cells[id as usize].as_ref().expect("state evaluated")
    }

    /// Components of alive vertices minus `blocked`, grown from `seeds`,
    /// written flat into the scratch buffers. Each component is sorted.
    /// Vertices already marked in this round are skipped, so seeds inside
    /// one component yield it once.
    fn grow_flat(&mut self, seeds: impl IntoIterator<Item = u32>, blocked: [u32; 2]) {
        let stamp = self.next_stamp();
        for b in blocked {
            if b != NONE {
                self.mark[b as usize] = stamp;
            }
        }
        let verts = &mut self.scratch.comp_verts;
        let starts = &mut self.scratch.comp_start;
        verts.clear();
        starts.clear();
        starts.push(0);
        for s in seeds {
            if self.mark[s as usize] == stamp || !self.alive[s as usize] {
                continue;
            }
            let idx = (starts.len() - 1) as u32;
            let first = verts.len();
            self.mark[s as usize] = stamp;
            self.label[s as usize] = idx;
            verts.push(s);
            let mut head = first;
            while head < verts.len() {
                let x = verts[head] as usize;
                head += 1;
                for &y in self.g.neighbors(x) {
                    if self.alive[y] && self.mark[y] != stamp {
                        self.mark[y] = stamp;
                        self.label[y] = idx;
                        verts.push(y as u32);
                    }
                }
            }
            verts[first..].sort_unstable();
            starts.push(verts.len());
        }
        for b in blocked {
            if b != NONE {
                // Keep the ends out of every component lookup below.
                self.label[b as usize] = NONE;
            }
        }
    }

    fn grow(&mut self, seeds: impl IntoIterator<Item = u32>, blocked: [u32; 2]) -> Vec<Vec<u32>> {
        self.grow_flat(seeds, blocked);
        let (verts, starts) = (&self.scratch.comp_verts, &self.scratch.comp_start);
        starts.windows(2).map(|w| verts[w[0]..w[1]].to_vec()).collect()
    }

    /// Vertices of `X` for a key, ascending.
    pub fn vertex_set(&mut self, id: u32) -> Vec<u32> {
        let key = self.key(id);
        let mut out: Vec<u32> = self.grow(key.reps.iter().copied(), [key.lo, key.hi]).concat();
        out.push(key.lo);
        out.push(key.hi);
        out.sort_unstable();
        out
    }

    /// Reps of the components of `alive - {r, x}`, optionally only those
    /// inside `within`.
    pub fn all_component_reps(&mut self, r: u32, x: u32, within: Option<&[bool]>) -> Reps {
        let n = self.g.n() as u32;
        let seeds: Vec<u32> = (0..n)
            .filter(|&y| y != r && y != x && within.map_or(true, |w| w[y as usize]))
            .collect();
        self.grow(seeds, [r, x]).into_iter().map(|c| c[0]).collect()
    }

    /// Minimum eccentricity of `r` over the stored completions with an edge
    /// `r x` on the outer face, restricted to `within` when given.
    pub fn root_value(&mut self, r: u32, within: Option<&[bool]>) -> (Dist, Option<RootChoice>) {
        let n = self.g.n() as u32;
        let mut others = (0..n).filter(|&x| {
            x != r && self.alive[x as usize] && within.map_or(true, |w| w[x as usize])
        });
        if others.next().is_none() {
            return (Dist::Finite(0), None);
        }
        let mut best: Option<(u32, RootChoice)> = None;
        for x in 0..n {
            if x == r || !self.alive[x as usize] || !within.map_or(true, |w| w[x as usize]) {
                continue;
            }
            let reps = self.all_component_reps(r, x, within);
            let id = self.intern(r, x, reps);
            self.ensure(id);
            for (i, (p, _)) in self.cell(id).alts.iter().enumerate() {
                let e = if r < x { p.first_ecc() } else { p.second_ecc() };
                let e = e.finite().expect("stored alternatives are finite");
                if best.map_or(true, |(b, _)| e < b) {
                    best = Some((e, RootChoice { x, key: id, alt: i as u8 }));
                }
            }
        }
        match best {
            Some((e, c)) => (Dist::Finite(e), Some(c)),
            None => (Dist::Infinite, None),
        }
    }

    /// Evaluates `root` and everything it depends on.
    pub fn ensure(&mut self, root: u32) {
        let mut stack = vec![root];
        let mut plans: FxHashMap<u32, Vec<Cand>> = FxHashMap::default();
        while let Some(&id) = stack.last() {
            if self.vals[id as usize] != UNSET {
                stack.pop();
                continue;
            }
            let plan = match plans.remove(&id) {
                Some(p) => p,
                None => match self.expand(id) {
                    Some(p) => p,
                    None => {
                        let base = Cell { alts: smallvec::smallvec![(PairEcc::EDGE, None)] };
                        self.store(id, base);
                        stack.pop();
                        continue;
                    }
                },
            };
            let before = stack.len();
            for c in &plan {
                for k in [c.left, c.right] {
                    if self.vals[k as usize] == UNSET {
                        stack.push(k);
                    }
                }
            }
            if stack.len() == before {
                let cell = self.combine(id, &plan);
                self.store(id, cell);
                stack.pop();
            } else {
                plans.insert(id, plan);
            }
        }
    }

    /// All triangle apexes and side assignments for a state, grouped by
    /// host component, then apex, then assignment mask. `None` for the base
    /// state `X = {u, v}`.
    fn expand(&mut self, id: u32) -> Option<Vec<Cand>> {
        let key = self.key(id);
        if key.reps.is_empty() {
            return None;
        }
        let (u, v) = (key.lo, key.hi);
        self.grow_flat(key.reps.iter().copied(), [u, v]);
        let comp_stamp = self.stamp;
        let verts = std::mem::take(&mut self.scratch.comp_verts);
        let starts = std::mem::take(&mut self.scratch.comp_start);

        self.near_stamp += 1;
        let ns = self.near_stamp;
        for &y in self.g.neighbors(u as usize) {
            self.near_u[y] = ns;
        }
        for &y in self.g.neighbors(v as usize) {
            self.near_v[y] = ns;
        }
        let comp = |k: usize| &verts[starts[k]..starts[k + 1]];
        let ncomp = starts.len() - 1;
        let touch: SmallVec<[(bool, bool); 8]> = (0..ncomp)
            .map(|k| {
                let tu = comp(k).iter().any(|&x| self.near_u[x as usize] == ns);
                let tv = comp(k).iter().any(|&x| self.near_v[x as usize] == ns);
                (tu, tv)
            })
            .collect();

        let both: SmallVec<[usize; 2]> = (0..ncomp).filter(|&k| touch[k].0 && touch[k].1).take(2).collect();
        let mut plan = Vec::with_capacity(verts.len());
        if both.len() < 2 {
            let hosts: SmallVec<[usize; 8]> = if both.len() == 1 { both.iter().copied().collect() } else { (0..ncomp).collect() };
            for &k in &hosts {
                let mut fixed_l = std::mem::take(&mut self.scratch.fixed_l);
                let mut fixed_r = std::mem::take(&mut self.scratch.fixed_r);
                fixed_l.clear();
                fixed_r.clear();
                for j in (0..ncomp).filter(|&j| j != k) {
                    if touch[j].0 {
                        fixed_l.push(comp(j)[0]);
                    } else {
                        debug_assert!(touch[j].1, "every component of a state touches an end");
                        fixed_r.push(comp(j)[0]);
                    }
                }
                // Components come out in seed order, which is ascending.
                debug_assert!(fixed_l.is_sorted() && fixed_r.is_sorted());
                let zl = Self::key_hash(0, 0, &fixed_l).wrapping_sub(Self::ends_hash(0, 0));
                let zr_fixed = Self::key_hash(0, 0, &fixed_r).wrapping_sub(Self::ends_hash(0, 0));
                let base = match self.piece_cache.get(&(u, v, comp(k)[0])) {
                    Some(&o) => o as usize,
                    None => {
                        self.pieces(comp(k), k as u32, comp_stamp, ns);
                        let o = self.piece_start.len();
                        let shift = self.piece_buf.len() as u32;
                        self.piece_start.extend(self.scratch.piece_start.iter().map(|&x| x + shift));
                        self.piece_buf.extend_from_slice(&self.scratch.piece_buf);
                        self.piece_cache.insert((u, v, comp(k)[0]), o as u32);
                        o
                    }
                };
                let piece_start = std::mem::take(&mut self.piece_start);
                let piece_buf = std::mem::take(&mut self.piece_buf);
                let mut l = std::mem::take(&mut self.scratch.left);
                let mut r = std::mem::take(&mut self.scratch.right);
                let mut lbase = std::mem::take(&mut self.scratch.left_base);
                let mut rbase = std::mem::take(&mut self.scratch.right_base);
                for (i, &w) in comp(k).iter().enumerate() {
                    let pieces = &piece_buf[piece_start[base + i] as usize..piece_start[base + i + 1] as usize];
                    if pieces.iter().any(|p| p.cu > 0 && p.cv > 0) {
                        continue;
                    }
                    let mut extra_l: SmallVec<[u32; 4]> = SmallVec::new();
                    let mut extra_r: SmallVec<[u32; 4]> = SmallVec::new();
                    let mut free: SmallVec<[u32; 8]> = SmallVec::new();
                    for p in pieces {
                        if p.cu > 0 {
                            extra_l.push(p.min);
                        } else if p.cv > 0 {
                            extra_r.push(p.min);
                        } else {
                            free.push(p.min);
                        }
                    }
                    assert!(free.len() < 31, "too many free pieces at one apex; reduce branches first");
                    extra_l.sort_unstable();
                    extra_r.sort_unstable();
                    free.sort_unstable();
                    let (lw, hw) = (u.min(w), u.max(w));
                    let (lv, hv) = (w.min(v), w.max(v));
                    let sum = |xs: &[u32]| xs.iter().fold(0u64, |h, &x| h.wrapping_add(Self::rep_hash(x)));
                    let hl = Self::ends_hash(lw, hw).wrapping_add(zl).wrapping_add(sum(&extra_l));
                    let hr = Self::ends_hash(lv, hv).wrapping_add(zr_fixed).wrapping_add(sum(&extra_r));
                    if free.is_empty() {
                        merge_chosen(&fixed_l, &extra_l, u32::MAX, &mut l);
                        merge_chosen(&fixed_r, &extra_r, u32::MAX, &mut r);
                        let left = self.intern_sorted(lw, hw, &l, hl);
                        let right = self.intern_sorted(lv, hv, &r, hr);
                        plan.push(Cand { w, left, right });
                        continue;
                    }
                    merge_chosen(&fixed_l, &extra_l, u32::MAX, &mut lbase);
                    merge_chosen(&fixed_r, &extra_r, u32::MAX, &mut rbase);
                    let zf: SmallVec<[u64; 8]> = free.iter().map(|&f| Self::rep_hash(f)).collect();
                    let all_free: u64 = zf.iter().fold(0, |a, &z| a.wrapping_add(z));
                    for mask in 0u32..(1u32 << free.len()) {
                        // Bit i set sends free piece i to the right.
                        let mut zr = 0u64;
                        let mut bits = mask;
                        while bits != 0 {
                            zr = zr.wrapping_add(zf[bits.trailing_zeros() as usize]);
                            bits &= bits - 1;
                        }
                        merge_chosen(&lbase, &free, !mask, &mut l);
                        merge_chosen(&rbase, &free, mask, &mut r);
                        let left = self.intern_sorted(lw, hw, &l, hl.wrapping_add(all_free.wrapping_sub(zr)));
                        let right = self.intern_sorted(lv, hv, &r, hr.wrapping_add(zr));
                        plan.push(Cand { w, left, right });
                    }
                }
                self.piece_start = piece_start;
                self.piece_buf = piece_buf;
                self.scratch.left = l;
                self.scratch.right = r;
                self.scratch.left_base = lbase;
                self.scratch.right_base = rbase;
                self.scratch.fixed_l = fixed_l;
                self.scratch.fixed_r = fixed_r;
            }
        }
        self.scratch.comp_verts = verts;
        self.scratch.comp_start = starts;
        Some(plan)
    }

    /// For every vertex `w` of the component `verts`, the components of
    /// `verts - w` with their neighbour counts toward `u` and `v` and their
    /// smallest vertex, written to the piece scratch buffers. One DFS;
    /// separated subtrees come from low-points.
    fn pieces(&mut self, verts: &[u32], comp: u32, stamp: u32, ns: u32) {
        let k = verts.len();
        for (i, &x) in verts.iter().enumerate() {
            self.local[x as usize] = i as u32;
        }
        let sc = &mut self.scratch;
        let (mark, label, local, g) = (&self.mark, &self.label, &self.local, &self.g);
        let (near_u, near_v) = (&self.near_u, &self.near_v);
        let inside = |y: usize| mark[y] == stamp && label[y] == comp;

        sc.nodes.clear();
        sc.nodes.resize(k, Node { pre: NONE, ..Node::default() });
        sc.order.clear();
        sc.stack.clear();
        sc.seps.clear();
        let (nodes, order, seps) = (&mut sc.nodes, &mut sc.order, &mut sc.seps);
        let discover = |nodes: &mut [Node], x: u32, parent: u32, t: u32| {
            let gv = verts[x as usize];
            let at = (near_u[gv as usize] == ns) as u32;
            let bt = (near_v[gv as usize] == ns) as u32;
            nodes[x as usize] = Node {
                pre: t,
                low: t,
                parent,
                size: 1,
                cu: at,
                cv: bt,
                smin: gv,
                up_u: 0,
                up_v: 0,
                up_min: NONE,
                head: NONE,
            };
        };
        discover(nodes, 0, NONE, 0);
        order.push(0);
        sc.stack.push((0, 0));
        let mut t = 1u32;
        while let Some(top) = sc.stack.last_mut() {
            let (x, i) = (top.0, top.1);
            let ns_x = g.neighbors(verts[x as usize] as usize);
            if i < ns_x.len() {
                top.1 += 1;
                let y = ns_x[i];
                if !inside(y) {
                    continue;
                }
                let yl = local[y];
                if nodes[yl as usize].pre == NONE {
                    discover(nodes, yl, x, t);
                    t += 1;
                    order.push(yl);
                    sc.stack.push((yl, 0));
                } else if yl != nodes[x as usize].parent {
                    let p = nodes[yl as usize].pre;
                    let n = &mut nodes[x as usize];
                    n.low = n.low.min(p);
                }
            } else {
                sc.stack.pop();
                let Some(&(p, _)) = sc.stack.last() else { continue };
                let c = nodes[x as usize];
                let n = &mut nodes[p as usize];
                n.low = n.low.min(c.low);
                n.size += c.size;
                n.cu += c.cu;
                n.cv += c.cv;
                n.smin = n.smin.min(c.smin);
                if c.low >= n.pre {
                    // The subtree of `x` hangs off `p` alone.
                    seps.push((Piece { cu: c.cu, cv: c.cv, min: c.smin }, n.head));
                    n.head = (seps.len() - 1) as u32;
                } else {
                    n.up_u += c.cu;
                    n.up_v += c.cv;
                    n.up_min = n.up_min.min(c.smin);
                }
            }
        }
        debug_assert_eq!(order.len(), k, "component is connected");

        // Prefix and suffix minima of vertex ids along the preorder.
        reset(&mut sc.pmin, k + 1, NONE);
        reset(&mut sc.sfx, k + 1, NONE);
        let (pmin, sfx) = (&mut sc.pmin, &mut sc.sfx);
        for i in 0..k {
            pmin[i + 1] = pmin[i].min(verts[order[i] as usize]);
        }
        for i in (0..k).rev() {
            sfx[i] = sfx[i + 1].min(verts[order[i] as usize]);
        }

        let root = nodes[0];
        sc.piece_start.clear();
        sc.piece_buf.clear();
        for (w, n) in nodes.iter().enumerate() {
            sc.piece_start.push(sc.piece_buf.len() as u32);
            let mut e = n.head;
            while e != NONE {
                let (piece, next) = seps[e as usize];
                sc.piece_buf.push(piece);
                e = next;
            }
            if w != 0 {
                // Everything outside the subtree of `w`, plus the children
                // that reach above it.
                let a = n.pre as usize;
                sc.piece_buf.push(Piece {
                    cu: root.cu - n.cu + n.up_u,
                    cv: root.cv - n.cv + n.up_v,
                    min: pmin[a].min(sfx[a + n.size as usize]).min(n.up_min),
                });
            }
        }
        sc.piece_start.push(sc.piece_buf.len() as u32);
    }

    fn store(&mut self, id: u32, cell: Cell) {
        let code = |i: usize| cell.alts.get(i).map_or(0, |a| a.0.pack() as u64);
        debug_assert!(cell.alts.len() <= 2);
        self.vals[id as usize] = code(0) | code(1) << 32;
        self.cells[id as usize] = Some(cell);
    }

    /// Stored alternatives of an evaluated state, in cell order.
    fn alts(&self, id: u32) -> impl Iterator<Item = PairEcc> {
        let v = self.vals[id as usize];
        debug_assert_ne!(v, UNSET);
        [v as u32, (v >> 32) as u32].into_iter().take_while(|&c| c != 0).map(PairEcc::unpack)
    }

    fn combine(&self, id: u32, plan: &[Cand]) -> Cell {
        let key = self.keys[id as usize];
        let (u, v) = (key.lo, key.hi);
        let mut cell = Cell::default();
        for c in plan {
            for (i, a) in self.alts(c.left).enumerate() {
                let a = if u < c.w { a } else { a.transpose() };
                for (j, b) in self.alts(c.right).enumerate() {
                    let b = if c.w < v { b } else { b.transpose() };
                    if !diameter_guard(&a, &b, self.d) {
                        continue;
                    }
                    let e = combine_triangle(&a, &b);
                    if cell.alts.iter().any(|(x, _)| x.le(&e)) {
                        continue;
                    }
                    cell.alts.retain(|(x, _)| !e.le(x));
                    let hint = Hint { w: c.w, left: c.left, left_alt: i as u8, right: c.right, right_alt: j as u8 };
                    cell.alts.push((e, Some(hint)));
                }
            }
        }
        cell.alts.sort_by(|a, b| a.0.cmp(&b.0));
        if cfg!(debug_assertions) {
            // Validates the five-form shape.
            let _ = cell.value();
        }
        cell
    }

    /// Outer arc of the stored completion of state `id`, alternative `alt`,
    /// walked from `from` to the other end. Appends the vertices after
    /// `from` to `arc` and every triangle side to `edges`.
    pub fn unwind(&self, id: u32, alt: u8, from: u32, edges: &mut Vec<(u32, u32)>, arc: &mut Vec<u32>) {
        let key = self.keys[id as usize];
        let (u, v) = (key.lo, key.hi);
        let to = if from == u { v } else { u };
        edges.push((u, v));
        match self.cell(id).alts[alt as usize].1 {
            None => arc.push(to),
            Some(h) => {
                if from == u {
                    self.unwind(h.left, h.left_alt, u, edges, arc);
                    self.unwind(h.right, h.right_alt, h.w, edges, arc);
                } else {
                    self.unwind(h.right, h.right_alt, v, edges, arc);
                    self.unwind(h.left, h.left_alt, h.w, edges, arc);
                }
            }
        }
    }

    /// Splits of a state as `(w, left state, right state)`.
    pub fn splits(&mut self, id: u32) -> Vec<(u32, u32, u32)> {
        self.expand(id).unwrap_or_default().into_iter().map(|c| (c.w, c.left, c.right)).collect()
    }
}
