//! Kauffman states, state circles, and the state-sum bracket.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;

use super::{arc_ends, corner, corner_before, other_end, PdCode, Pos};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::unionfind::{RollbackUnionFind, UnionFind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    /// The slot joined to `slot` by this smoothing. The A-smoothing of
    /// `(a, b, c, d)` joins `a–b` and `c–d`; the B-smoothing `a–d` and `b–c`.
    #[inline]
    pub fn partner(self, slot: u8) -> u8 {
        match self {
            Smoothing::A => slot ^ 1,
            Smoothing::B => 3 - slot,
        }
    }

    /// Which of the two smoothed strands (0 or 1) passes through `slot`.
    /// Strand 0 always contains slot 0.
    #[inline]
    pub fn strand(self, slot: u8) -> u8 {
        match self {
            Smoothing::A => slot >> 1,
            Smoothing::B => u8::from(slot == 1 || slot == 2),
        }
    }

    /// Corners merged into one region by the smoothing.
    #[inline]
    fn open_corners(self) -> (u8, u8) {
        match self {
            Smoothing::A => (1, 3),
            Smoothing::B => (0, 2),
        }
    }
}

/// A choice of smoothing at every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State(Vec<Smoothing>);

impl State {
    pub fn all_a(n: usize) -> Self {
        Self(vec![Smoothing::A; n])
    }

    pub fn all_b(n: usize) -> Self {
        Self(vec![Smoothing::B; n])
    }

    /// B exactly on the crossings whose bit is set.
    pub fn from_b_mask(n: usize, mask: u64) -> Self {
        Self(
            (0..n)
                .map(|i| {
                    if i < 64 && mask >> i & 1 == 1 {
                        Smoothing::B
                    } else {
                        Smoothing::A
                    }
                })
                .collect(),
        )
    }

    pub fn from_smoothings(v: Vec<Smoothing>) -> Self {
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Smoothing {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[Smoothing] {
        &self.0
    }
}

/// Circles of a fully smoothed diagram.
///
/// Chord endpoints are half-edges `2·i + strand` of crossing `i`. Each
/// circle lists the endpoints it meets in traversal order, where circles are
/// traversed with the odd-depth side on their left: circles nested inside an
/// even number of others run counterclockwise, the rest clockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircles {
    pub count: usize,
    /// Circle of every arc, indexed by `label - 1`.
    pub arc_circle: Vec<usize>,
    /// Circle of every chord endpoint (half-edge).
    pub endpoint_circle: Vec<usize>,
    pub cyclic_orders: Vec<Vec<usize>>,
}

impl PdCode {
    /// Smooths every crossing and traces the resulting circles. The outer
    /// face of the plane map is the one containing corner 0 of crossing 0.
    pub fn smooth_state(&self, state: &State) -> Result<StateCircles> {
        self.smooth_state_with_outer(state, 0)
    }

    /// As [`smooth_state`](Self::smooth_state), with the point at infinity
    /// placed in the face containing `outer_corner`.
    pub fn smooth_state_with_outer(
        &self,
        state: &State,
        outer_corner: usize,
    ) -> Result<StateCircles> {
        let n = self.n_crossings();
        if state.len() != n {
            return Err(Error::Precondition(format!(
                "state has {} entries for {n} crossings",
                state.len()
            )));
        }
        if outer_corner >= 4 * n {
            return Err(Error::Precondition(format!("no corner {outer_corner}")));
        }
        self.require_connected()?;
        let crossings = self.crossings();
        let ends = arc_ends(crossings);

        // Circles as classes of arcs.
        let mut arcs = UnionFind::new(self.n_arcs());
        for (i, t) in crossings.iter().enumerate() {
            let s = state.get(i);
            for slot in 0..4u8 {
                let p = s.partner(slot);
                arcs.union(t[slot as usize] as usize - 1, t[p as usize] as usize - 1);
            }
        }
        let (arc_circle, count) = arcs.labels();

        // Regions of the complement of the circles: faces of the plane map,
        // glued through the opened corners of every smoothing.
        let mut regions = self.face_union_find();
        for i in 0..n {
            let (x, y) = state.get(i).open_corners();
            regions.union(4 * i + x as usize, 4 * i + y as usize);
        }
        let (region_of, n_regions) = regions.labels();
        if n_regions != count + 1 {
            return Err(Error::Internal(format!(
                "{count} disjoint circles bound {n_regions} regions"
            )));
        }

        // Each circle separates two regions; the regions and circles form a
        // tree. Depth parity comes from a BFS out of the outer region.
        let mut sides = vec![(usize::MAX, usize::MAX); count];
        for (l, [p, _]) in ends.iter().enumerate() {
            let c = arc_circle[l];
            if sides[c].0 == usize::MAX {
                // leaving p: corner(p) on the left, the corner before p on the right
                sides[c] = (region_of[corner(*p)], region_of[corner_before(*p)]);
            }
        }
        let mut adj = vec![Vec::new(); n_regions];
        for &(l, r) in &sides {
            if l == r {
                return Err(Error::Internal(
                    "circle with one region on both sides".into(),
                ));
            }
            adj[l].push(r);
            adj[r].push(l);
        }
        let mut depth = vec![usize::MAX; n_regions];
        let root = region_of[outer_corner];
        depth[root] = 0;
        let mut queue = alloc::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if depth[y] == usize::MAX {
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        if depth.contains(&usize::MAX) {
            return Err(Error::Internal("region tree is disconnected".into()));
        }

        // Trace each circle with its odd-depth region on the left.
        let mut endpoint_circle = vec![usize::MAX; 2 * n];
        let mut cyclic_orders = vec![Vec::new(); count];
        let mut started = vec![false; count];
        for (l, &[p, q]) in ends.iter().enumerate() {
            let c = arc_circle[l];
            if started[c] {
                continue;
            }
            started[c] = true;
            // Travelling p→q keeps corner(p)'s region on the left.
            let start: Pos = if depth[region_of[corner(p)]] % 2 == 1 {
                q
            } else {
                p
            };
            let mut at = start;
            loop {
                let (i, slot) = at;
                let s = state.get(i);
                let h = 2 * i + s.strand(slot) as usize;
                endpoint_circle[h] = c;
                cyclic_orders[c].push(h);
                let exit = (i, s.partner(slot));
                at = other_end(&ends, crossings, exit);
                if at == start {
                    break;
                }
            }
        }
        debug_assert!(endpoint_circle.iter().all(|&c| c != usize::MAX));
        Ok(StateCircles {
            count,
            arc_circle,
            endpoint_circle,
            cyclic_orders,
        })
    }
}

/// Counts circles of many states of one diagram, reusing scratch space.
#[derive(Clone, Debug)]
pub struct CircleCounter {
    arcs: usize,
    /// `[a-1, b-1, c-1, d-1]` per crossing
    tuples: Vec<[usize; 4]>,
    uf: UnionFind,
}

impl CircleCounter {
    pub fn new(pd: &PdCode) -> Self {
        Self {
            arcs: pd.n_arcs(),
            tuples: pd
                .crossings()
                .iter()
                .map(|t| t.map(|l| l as usize - 1))
                .collect(),
            uf: UnionFind::new(pd.n_arcs()),
        }
    }

    /// Circles of the state that is B exactly on the bits of `b_mask`.
    #[inline]
    pub fn count(&mut self, b_mask: u64) -> usize {
        self.uf.reset(self.arcs);
        for (i, t) in self.tuples.iter().enumerate() {
            if b_mask >> i & 1 == 0 {
                self.uf.union(t[0], t[1]);
                self.uf.union(t[2], t[3]);
            } else {
                self.uf.union(t[0], t[3]);
                self.uf.union(t[1], t[2]);
            }
        }
        self.uf.sets()
    }
}

/// Number of states with a given `(#B, #circles)`; a commutative monoid
/// under [`merge`](Self::merge).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StateHistogram {
    pub crossings: usize,
    pub counts: BTreeMap<(u32, u32), u64>,
}

impl StateHistogram {
    pub fn merge(&mut self, other: &StateHistogram) {
        for (k, v) in &other.counts {
            *self.counts.entry(*k).or_default() += v;
        }
    }

    /// `Σ A^{#A − #B} δ^{#circles − 1}`.
    pub fn bracket(&self) -> LaurentPoly {
        let n = self.crossings as i64;
        let mut delta_pows: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        let delta = LaurentPoly::delta();
        let mut out = LaurentPoly::zero();
        for (&(nb, circles), &count) in &self.counts {
            while delta_pows.len() < circles as usize {
                let next = delta_pows.last().unwrap() * &delta;
                delta_pows.push(next);
            }
            let term = delta_pows[circles as usize - 1]
                .shift(n - 2 * nb as i64)
                .scale(&BigInt::from(count));
            out += &term;
        }
        out
    }
}

/// Accumulates the states whose B-masks lie in `range`.
///
/// The range is cut into aligned blocks `hi·2^k + [0, 2^k)`. Each block
/// smooths its fixed high crossings once, then walks the low `k` crossings
/// depth first, undoing unions on the way back, so a state costs two unions
/// on average.
pub fn state_histogram_range(pd: &PdCode, range: Range<u64>) -> StateHistogram {
    let n = pd.n_crossings();
    let tuples: Vec<[usize; 4]> = pd
        .crossings()
        .iter()
        .map(|t| t.map(|l| l as usize - 1))
        .collect();
    let arcs = pd.n_arcs();
    // dense[nb * (arcs + 1) + circles]
    let mut dense = vec![0u64; (n + 1) * (arcs + 1)];
    let mut uf = RollbackUnionFind::new(arcs);
    let (mut lo, hi) = (
        range.start,
        range.end.min(if n >= 64 { u64::MAX } else { 1 << n }),
    );
    while lo < hi {
        let mut k = if lo == 0 {
            n as u32
        } else {
            lo.trailing_zeros().min(n as u32)
        };
        while k > 0 && lo + (1u64 << k) > hi {
            k -= 1;
        }
        let k = k as usize;
        for (i, t) in tuples.iter().enumerate().skip(k) {
            smooth(&mut uf, t, lo >> i & 1 == 1);
        }
        walk(
            &mut uf,
            &tuples[..k],
            lo.count_ones() as usize,
            arcs + 1,
            &mut dense,
        );
        for _ in k..n {
            uf.undo();
            uf.undo();
        }
        lo += 1u64 << k;
    }
    let mut hist = StateHistogram {
        crossings: n,
        ..Default::default()
    };
    for (i, &count) in dense.iter().enumerate() {
        if count > 0 {
            hist.counts
                .insert(((i / (arcs + 1)) as u32, (i % (arcs + 1)) as u32), count);
        }
    }
    hist
}

#[inline]
fn smooth(uf: &mut RollbackUnionFind, t: &[usize; 4], b: bool) {
    if b {
        uf.union(t[0], t[3]);
        uf.union(t[1], t[2]);
    } else {
        uf.union(t[0], t[1]);
        uf.union(t[2], t[3]);
    }
}

/// Every smoothing of `free` on top of the unions already in `uf`.
fn walk(
    uf: &mut RollbackUnionFind,
    free: &[[usize; 4]],
    nb: usize,
    stride: usize,
    dense: &mut [u64],
) {
    let Some((last, rest)) = free.split_last() else {
        dense[nb * stride + uf.sets()] += 1;
        return;
    };
    for b in [false, true] {
        smooth(uf, last, b);
        walk(uf, rest, nb + b as usize, stride, dense);
        uf.undo();
        uf.undo();
    }
}

/// All B-masks of `pd`'s states, if its crossing count is within `cap`.
pub fn state_mask_range(pd: &PdCode, cap: usize) -> Result<Range<u64>> {
    let n = pd.n_crossings();
    let limit = cap.min(crate::MAX_SCAN_EDGES);
    if n > limit {
        return Err(Error::CapExceeded {
            what: "state sum over crossings",
            size: n,
            cap: limit,
        });
    }
    Ok(0..1u64 << n)
}

/// Kauffman bracket by direct summation over all `2^n` states.
pub fn state_sum_bracket(pd: &PdCode, cap: usize) -> Result<LaurentPoly> {
    Ok(state_histogram_range(pd, state_mask_range(pd, cap)?).bracket())
}
