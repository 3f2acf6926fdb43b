//! Enumeration of spanning sub-dessins by edge bitmask.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigInt;

use super::{Counts, Dessin};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// Reusable scratch space for computing counts of many sub-dessins.
#[derive(Clone, Debug)]
pub struct Scanner {
    v: usize,
    /// Per vertex: `(half-edge, edge)` in rotation order.
    rotations: Vec<Vec<(usize, usize)>>,
    mate: Vec<usize>,
    /// End vertices per edge.
    ends: Vec<(usize, usize)>,
    next: Vec<usize>,
    seen: Vec<bool>,
    uf: UnionFind,
}

impl Scanner {
    pub fn new(d: &Dessin) -> Self {
        let h = 2 * d.n_edges();
        let mut edge_of = vec![0; h];
        for (i, &[x, y]) in d.edges().iter().enumerate() {
            edge_of[x] = i;
            edge_of[y] = i;
        }
        Self {
            v: d.n_vertices(),
            rotations: d
                .rotations()
                .iter()
                .map(|r| r.iter().map(|&x| (x, edge_of[x])).collect())
                .collect(),
            mate: d.mate.clone(),
            ends: d.graph_edges(),
            next: vec![0; h],
            seen: vec![false; h],
            uf: UnionFind::new(d.n_vertices()),
        }
    }

    /// `(e, f, k)` of the sub-dessin on the edges whose bit is set.
    #[inline]
    pub fn efk(&mut self, mask: u64) -> (usize, usize, usize) {
        let mut faces = 0;
        for rot in &self.rotations {
            let mut first = usize::MAX;
            let mut prev = usize::MAX;
            for &(x, e) in rot {
                if mask >> e & 1 == 0 {
                    continue;
                }
                if prev == usize::MAX {
                    first = x;
                } else {
                    self.next[prev] = x;
                }
                prev = x;
                self.seen[x] = false;
            }
            if prev == usize::MAX {
                faces += 1;
            } else {
                self.next[prev] = first;
            }
        }
        self.uf.reset(self.v);
        let mut e = 0;
        for (i, &(a, b)) in self.ends.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e += 1;
                self.uf.union(a, b);
            }
        }
        for rot in &self.rotations {
            for &(x, ed) in rot {
                if mask >> ed & 1 == 0 || self.seen[x] {
                    continue;
                }
                faces += 1;
                let mut y = x;
                while !self.seen[y] {
                    self.seen[y] = true;
                    y = self.next[self.mate[y]];
                }
            }
        }
        (e, faces, self.uf.sets())
    }

    pub fn counts(&mut self, mask: u64) -> Result<Counts> {
        let (e, f, k) = self.efk(mask);
        Counts::new(self.v, e, f, k)
    }
}

/// All masks of `d`'s edge set, if `e` is within `cap`.
pub fn mask_range(d: &Dessin, cap: usize) -> Result<Range<u64>> {
    let e = d.n_edges();
    let limit = cap.min(crate::MAX_SCAN_EDGES);
    if e > limit {
        return Err(Error::CapExceeded {
            what: "sub-dessin scan over edges",
            size: e,
            cap: limit,
        });
    }
    Ok(0..1u64 << e)
}

/// Visits every spanning sub-dessin once, in increasing mask order.
pub fn scan_subdessins(d: &Dessin, cap: usize, visitor: impl FnMut(u64, Counts)) -> Result<()> {
    let range = mask_range(d, cap)?;
    scan_range(d, range, visitor)
}

/// Visits the sub-dessins whose masks lie in `range`.
pub fn scan_range(
    d: &Dessin,
    range: Range<u64>,
    mut visitor: impl FnMut(u64, Counts),
) -> Result<()> {
    let mut s = Scanner::new(d);
    for mask in range {
        visitor(mask, s.counts(mask)?);
    }
    Ok(())
}

/// Number of spanning sub-dessins with given `(e(H), f(H), k(H))`. A
/// commutative monoid under [`merge`](Self::merge); every sum over
/// sub-dessins in this crate is read off it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SubdessinHistogram {
    pub v: usize,
    pub e: usize,
    pub counts: BTreeMap<(u32, u32, u32), u64>,
}

impl SubdessinHistogram {
    pub fn empty(d: &Dessin) -> Self {
        Self {
            v: d.n_vertices(),
            e: d.n_edges(),
            counts: BTreeMap::new(),
        }
    }

    pub fn merge(&mut self, other: &SubdessinHistogram) {
        for (k, c) in &other.counts {
            *self.counts.entry(*k).or_default() += c;
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Every class with its [`Counts`] and multiplicity.
    pub fn classes(&self) -> impl Iterator<Item = Result<(Counts, u64)>> + '_ {
        self.counts.iter().map(|(&(e, f, k), &c)| {
            Counts::new(self.v, e as usize, f as usize, k as usize).map(|x| (x, c))
        })
    }

    /// Counts of the whole dessin, if the full edge set was scanned.
    pub fn whole(&self) -> Option<Counts> {
        self.counts
            .keys()
            .find(|k| k.0 as usize == self.e)
            .and_then(|&(e, f, k)| Counts::new(self.v, e as usize, f as usize, k as usize).ok())
    }
}

/// Accumulates the sub-dessins with masks in `range` into a histogram.
pub fn subdessin_histogram_range(d: &Dessin, range: Range<u64>) -> SubdessinHistogram {
    let (v, e) = (d.n_vertices(), d.n_edges());
    // dense (e_H, f_H, k_H) table; f_H ≤ v + e_H and k_H ≤ v
    let (fs, ks) = (v + e + 1, v + 1);
    let mut dense = vec![0u64; (e + 1) * fs * ks];
    let mut s = Scanner::new(d);
    for mask in range {
        let (eh, fh, kh) = s.efk(mask);
        dense[(eh * fs + fh) * ks + kh] += 1;
    }
    let mut hist = SubdessinHistogram::empty(d);
    for (idx, &c) in dense.iter().enumerate() {
        if c > 0 {
            let kh = idx % ks;
            let fh = idx / ks % fs;
            let eh = idx / ks / fs;
            hist.counts.insert((eh as u32, fh as u32, kh as u32), c);
        }
    }
    hist
}

pub fn subdessin_histogram(d: &Dessin, cap: usize) -> Result<SubdessinHistogram> {
    let range = mask_range(d, cap)?;
    Ok(subdessin_histogram_range(d, range))
}

/// `s[j]`: spanning sub-dessins with one component, one face and genus `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiTreeCounts(pub Vec<u64>);

impl QuasiTreeCounts {
    /// Reads the counts off a full-scan histogram of a connected dessin.
    pub fn from_histogram(hist: &SubdessinHistogram) -> Result<Self> {
        let whole = hist.whole().ok_or_else(|| {
            Error::Precondition("histogram does not cover the full edge set".into())
        })?;
        if whole.k != 1 {
            return Err(Error::Disconnected);
        }
        let mut s = vec![0u64; whole.g + 1];
        for class in hist.classes() {
            let (c, mult) = class?;
            let tree_edges = c.e as i64 == c.v as i64 - 1 + 2 * c.g as i64;
            let conditions = [c.k == 1, c.f == 1, tree_edges];
            let held = conditions.iter().filter(|&&x| x).count();
            if held == 2 {
                return Err(Error::Internal(format!(
                    "two quasi-tree conditions hold without the third: {c:?}"
                )));
            }
            if held == 3 {
                s[c.g] += mult;
            }
        }
        Ok(Self(s))
    }

    /// `Σ (−1)^j s[j]`.
    pub fn alternating_sum(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .map(|(j, &x)| {
                if j % 2 == 0 {
                    BigInt::from(x)
                } else {
                    -BigInt::from(x)
                }
            })
            .sum()
    }

    pub fn determinant(&self) -> BigInt {
        num_traits::Signed::abs(&self.alternating_sum())
    }
}

pub fn quasi_tree_counts(d: &Dessin, cap: usize) -> Result<QuasiTreeCounts> {
    if d.components() != 1 {
        return Err(Error::Disconnected);
    }
    QuasiTreeCounts::from_histogram(&subdessin_histogram(d, cap)?)
}
