//! Planar-diagram (PD) codes of link diagrams.
//!
//! A crossing is a 4-tuple `(a, b, c, d)` of arc labels listed
//! counterclockwise, starting at the incoming under-strand. Positions inside
//! a tuple are called *slots*; the corner between slot `s` and slot `s + 1`
//! is corner `s` of that crossing.

mod generate;
mod orient;
mod reduce;
mod state;
mod table;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

pub use generate::{braid_closure, from_chord_sides, plat_closure, pretzel, twist, twist_chords};
pub use reduce::reduce_to_one_vertex;
pub use state::{
    state_histogram_range, state_mask_range, state_sum_bracket, CircleCounter, Smoothing, State,
    StateCircles, StateHistogram,
};
pub use table::KnotTable;

/// `(crossing index, slot)`.
pub type Pos = (usize, u8);

#[inline]
pub(crate) fn corner(pos: Pos) -> usize {
    4 * pos.0 + pos.1 as usize
}

#[inline]
pub(crate) fn corner_before(pos: Pos) -> usize {
    4 * pos.0 + ((pos.1 + 3) % 4) as usize
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    signs: Option<Vec<i8>>,
}

impl PdCode {
    /// Validates and normalizes arc labels to `1..=2n`, preserving their
    /// relative order. Rejects label multiplicities other than two and
    /// tuples that do not describe a planar 4-valent map.
    pub fn new(crossings: Vec<[i64; 4]>, signs: Option<Vec<i8>>) -> Result<Self> {
        if crossings.is_empty() {
            return Err(Error::Empty);
        }
        let mut labels: Vec<i64> = crossings.iter().flatten().copied().collect();
        if let Some(&bad) = labels.iter().find(|&&l| l <= 0) {
            return Err(Error::Parse(format!("arc label {bad} is not positive")));
        }
        labels.sort_unstable();
        let mut distinct = Vec::new();
        let mut i = 0;
        while i < labels.len() {
            let mut j = i;
            while j < labels.len() && labels[j] == labels[i] {
                j += 1;
            }
            if j - i != 2 {
                return Err(Error::ArcMultiplicity {
                    label: labels[i],
                    count: j - i,
                });
            }
            distinct.push(labels[i]);
            i = j;
        }
        let rank = |l: i64| distinct.binary_search(&l).unwrap() as u32 + 1;
        let crossings: Vec<[u32; 4]> = crossings
            .iter()
            .map(|t| [rank(t[0]), rank(t[1]), rank(t[2]), rank(t[3])])
            .collect();
        if let Some(s) = &signs {
            if s.len() != crossings.len() {
                return Err(Error::Parse(format!(
                    "{} signs given for {} crossings",
                    s.len(),
                    crossings.len()
                )));
            }
            if s.iter().any(|&x| x != 1 && x != -1) {
                return Err(Error::Parse("signs must be + or -".to_string()));
            }
        }
        let pd = Self { crossings, signs };
        pd.check_planar()?;
        Ok(pd)
    }

    pub(crate) fn from_normalized(crossings: Vec<[u32; 4]>, signs: Option<Vec<i8>>) -> Self {
        Self { crossings, signs }
    }

    /// Parses whitespace-separated `X[a,b,c,d]` tokens with an optional
    /// trailing `S[+,-,...]` sign list. A surrounding `PD[...]` and commas
    /// between tokens are tolerated.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = text.trim();
        if let Some(inner) = s.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
            s = inner;
        }
        let mut crossings = Vec::new();
        let mut signs = None;
        let mut rest = s;
        loop {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',');
            if rest.is_empty() {
                break;
            }
            let (tag, after) = rest.split_at(1);
            let body_end = after
                .find(']')
                .ok_or_else(|| Error::Parse(format!("unterminated token near {rest:?}")))?;
            let body = after
                .strip_prefix('[')
                .map(|b| &b[..body_end - 1])
                .ok_or_else(|| Error::Parse(format!("expected '[' after {tag:?}")))?;
            let items: Vec<&str> = body.split(',').map(str::trim).collect();
            match tag {
                "X" => {
                    if items.len() != 4 {
                        return Err(Error::Parse(format!(
                            "crossing X[{body}] has {} entries, expected 4",
                            items.len()
                        )));
                    }
                    let mut t = [0i64; 4];
                    for (slot, item) in t.iter_mut().zip(&items) {
                        *slot = item
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad arc label {item:?}")))?;
                    }
                    crossings.push(t);
                }
                "S" => {
                    if signs.is_some() {
                        return Err(Error::Parse("more than one S[...] list".to_string()));
                    }
                    let v = items
                        .iter()
                        .map(|x| match *x {
                            "+" | "+1" | "1" => Ok(1i8),
                            "-" | "-1" => Ok(-1i8),
                            other => Err(Error::Parse(format!("bad sign {other:?}"))),
                        })
                        .collect::<Result<Vec<_>>>()?;
                    signs = Some(v);
                }
                other => return Err(Error::Parse(format!("unknown token tag {other:?}"))),
            }
            rest = &after[body_end + 1..];
        }
        Self::new(crossings, signs)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn n_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn n_arcs(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Explicit crossing signs, when the input carried them.
    pub fn explicit_signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// Both ends of every arc, indexed by `label - 1`.
    pub fn arc_ends(&self) -> Vec<[Pos; 2]> {
        arc_ends(&self.crossings)
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n_arcs());
        for t in &self.crossings {
            uf.union(t[0] as usize - 1, t[2] as usize - 1);
            uf.union(t[1] as usize - 1, t[3] as usize - 1);
        }
        uf.sets()
    }

    /// Connected components of the underlying 4-valent graph.
    pub fn graph_components(&self) -> usize {
        let mut uf = UnionFind::new(self.n_crossings());
        for [p, q] in self.arc_ends() {
            uf.union(p.0, q.0);
        }
        uf.sets()
    }

    pub fn is_connected(&self) -> bool {
        self.graph_components() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Faces of the 4-valent plane map: `face_of[corner]` plus the count.
    pub fn planar_faces(&self) -> (Vec<usize>, usize) {
        let mut uf = self.face_union_find();
        uf.labels()
    }

    pub(crate) fn face_union_find(&self) -> UnionFind {
        let mut uf = UnionFind::new(4 * self.n_crossings());
        for [p, q] in self.arc_ends() {
            // Walking from p to q: left face holds corner(p) and the corner
            // before q; the right face the corner before p and corner(q).
            uf.union(corner(p), corner_before(q));
            uf.union(corner_before(p), corner(q));
        }
        uf
    }

    fn check_planar(&self) -> Result<()> {
        let (_, faces) = self.planar_faces();
        // Euler: V − E + F = 1 + C for a plane graph with C components.
        let expected = self.n_crossings() + 1 + self.graph_components();
        if faces == expected {
            Ok(())
        } else {
            Err(Error::NonPlanar {
                crossings: self.n_crossings(),
                faces,
            })
        }
    }

    /// Mirror image: every tuple's cyclic order is reversed, which swaps the
    /// roles of the A- and B-smoothings and negates every crossing sign.
    pub fn mirror(&self) -> Self {
        Self {
            crossings: self
                .crossings
                .iter()
                .map(|&[a, b, c, d]| [a, d, c, b])
                .collect(),
            signs: self.signs.as_ref().map(|s| s.iter().map(|x| -x).collect()),
        }
    }

    /// Crossing signs: explicit ones when present, otherwise inferred by
    /// walking a single-component diagram.
    pub fn signs(&self) -> Result<Vec<i8>> {
        orient::signs(self)
    }

    pub fn writhe(&self) -> Result<i64> {
        Ok(self.signs()?.iter().map(|&s| s as i64).sum())
    }

    /// Builds a PD from tuples that each start at *an* end of the
    /// under-strand, choosing an orientation for every component, rotating
    /// tuples so they start at the incoming under-strand, and relabelling
    /// arcs consecutively along the components.
    pub fn from_unoriented(crossings: Vec<[u32; 4]>) -> Result<Self> {
        orient::from_unoriented(crossings)
    }

    /// Like [`from_unoriented`](Self::from_unoriented) for tuples already
    /// in the incoming-under convention with known signs.
    pub fn from_oriented(crossings: Vec<[u32; 4]>, signs: Vec<i8>) -> Result<Self> {
        orient::from_oriented(crossings, signs)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.crossings.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]));
        }
        if let Some(signs) = &self.signs {
            out.push_str(" S[");
            for (i, s) in signs.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push(if *s > 0 { '+' } else { '-' });
            }
            out.push(']');
        }
        out
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl core::str::FromStr for PdCode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

pub(crate) fn arc_ends(crossings: &[[u32; 4]]) -> Vec<[Pos; 2]> {
    let mut ends = vec![[(usize::MAX, 0u8); 2]; 2 * crossings.len()];
    let mut seen = vec![0u8; 2 * crossings.len()];
    for (i, t) in crossings.iter().enumerate() {
        for (s, &l) in t.iter().enumerate() {
            let k = l as usize - 1;
            ends[k][seen[k] as usize] = (i, s as u8);
            seen[k] += 1;
        }
    }
    ends
}

#[inline]
pub(crate) fn other_end(ends: &[[Pos; 2]], crossings: &[[u32; 4]], pos: Pos) -> Pos {
    let l = crossings[pos.0][pos.1 as usize] as usize - 1;
    let [p, q] = ends[l];
    if p == pos {
        q
    } else {
        p
    }
}
