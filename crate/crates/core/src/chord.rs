//! One-vertex dessins as chord diagrams, and their intersection matrices.
//!
//! A chord diagram is the cyclic sequence of chord labels met around the
//! circle from a basepoint. Chords are numbered `1..=m` by first appearance.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::dessin::{Dessin, QuasiTreeCounts};
use crate::error::{Error, Result};
use crate::linalg::{self, IntPoly};
use crate::poly::GaussianInt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ChordDiagram {
    endpoints: Vec<u32>,
}

impl ChordDiagram {
    /// Relabels chords by first appearance; every label must occur twice.
    pub fn new(sequence: &[u32]) -> Result<Self> {
        let mut map: Vec<(u32, u32, usize)> = Vec::new();
        let mut endpoints = Vec::with_capacity(sequence.len());
        for &l in sequence {
            let idx = match map.iter().position(|(from, _, _)| *from == l) {
                Some(i) => i,
                None => {
                    map.push((l, map.len() as u32 + 1, 0));
                    map.len() - 1
                }
            };
            map[idx].2 += 1;
            endpoints.push(map[idx].1);
        }
        if let Some((l, _, c)) = map.iter().find(|(_, _, c)| *c != 2) {
            return Err(Error::Parse(format!(
                "chord {l} has {c} endpoints, expected 2"
            )));
        }
        Ok(Self { endpoints })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let seq = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad chord label {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&seq)
    }

    pub fn m(&self) -> usize {
        self.endpoints.len() / 2
    }

    pub fn endpoints(&self) -> &[u32] {
        &self.endpoints
    }

    /// The same diagram read from a basepoint moved `k` positions on.
    pub fn rotated(&self, k: usize) -> Self {
        let len = self.endpoints.len().max(1);
        let seq: Vec<u32> = (0..self.endpoints.len())
            .map(|i| self.endpoints[(i + k) % len])
            .collect();
        Self::new(&seq).expect("rotation keeps every chord")
    }

    /// `(first, second)` endpoint positions of every chord.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.m()];
        for (at, &l) in self.endpoints.iter().enumerate() {
            let p = &mut pos[l as usize - 1];
            if p.0 == usize::MAX {
                p.0 = at;
            } else {
                p.1 = at;
            }
        }
        pos
    }

    /// The one-vertex dessin with half-edges numbered by circle position.
    pub fn to_dessin(&self) -> Dessin {
        let rotation = (0..self.endpoints.len()).collect();
        let edges = self.positions().iter().map(|&(p, q)| [p, q]).collect();
        Dessin::new(vec![rotation], edges, None).expect("a chord diagram is a valid dessin")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.endpoints.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&format!("{l}"));
        }
        out
    }
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChordDiagram({})", self.render())
    }
}

impl core::str::FromStr for ChordDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Reads a one-vertex dessin around its circle, starting just before the
/// smallest half-edge id.
pub fn to_chord_diagram(d: &Dessin) -> Result<ChordDiagram> {
    if d.n_vertices() != 1 {
        return Err(Error::Precondition(format!(
            "a chord diagram needs a one-vertex dessin, not {} vertices",
            d.n_vertices()
        )));
    }
    let rot = &d.rotations()[0];
    let start = rot
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map_or(0, |(i, _)| i);
    let seq: Vec<u32> = (0..rot.len())
        .map(|i| {
            let x = rot[(start + i) % rot.len()];
            d.edge_of(x) as u32 + 1
        })
        .collect();
    ChordDiagram::new(&seq)
}

/// Skew-symmetric matrix with entry `sign(i − j)` when chords `i` and `j`
/// interlace and zero otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntersectionMatrix {
    pub entries: Vec<Vec<i8>>,
}

impl IntersectionMatrix {
    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// The principal submatrix on the chords whose bit is set.
    pub fn principal(&self, subset: u64) -> Vec<Vec<BigInt>> {
        let idx: Vec<usize> = (0..self.m()).filter(|&i| subset >> i & 1 == 1).collect();
        idx.iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| BigInt::from(self.entries[i][j]))
                    .collect()
            })
            .collect()
    }

    pub fn principal_minor(&self, subset: u64) -> BigInt {
        let idx: Vec<usize> = (0..self.m()).filter(|&i| subset >> i & 1 == 1).collect();
        let small: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| {
                idx.iter()
                    .map(|&j| i128::from(self.entries[i][j]))
                    .collect()
            })
            .collect();
        match linalg::bareiss_det_small(&small) {
            Some(d) => BigInt::from(d),
            None => linalg::bareiss_det(&self.principal(subset)),
        }
    }
}

pub fn intersection_matrix(cd: &ChordDiagram) -> IntersectionMatrix {
    let pos = cd.positions();
    let m = pos.len();
    let mut entries = vec![vec![0i8; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = pos[i];
            let inside = |t: usize| a < t && t < b;
            if i != j && inside(pos[j].0) != inside(pos[j].1) {
                entries[i][j] = if i > j { 1 } else { -1 };
            }
        }
    }
    IntersectionMatrix { entries }
}

/// `det(M − xI)`.
pub fn char_poly(m: &IntersectionMatrix) -> IntPoly {
    linalg::char_poly_m_minus_x(&m.to_big())
}

/// Quasi-tree counts read off the characteristic polynomial,
/// `det(IM − xI) = (−1)^m Σ s[j] x^{m − 2j}`, and the determinant
/// `|det(IM − iI)|`.
pub fn quasi_counts_and_det(cd: &ChordDiagram) -> Result<(QuasiTreeCounts, BigInt)> {
    let m = cd.m();
    let p = char_poly(&intersection_matrix(cd));
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let mut s = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if (m - k) % 2 == 1 {
            return Err(Error::Internal(format!(
                "characteristic polynomial has a term x^{k} of the wrong parity"
            )));
        }
        let j = (m - k) / 2;
        let v = (c * BigInt::from(sign))
            .to_u64()
            .ok_or_else(|| Error::Internal(format!("coefficient {c} is not a signed count")))?;
        if s.len() <= j {
            s.resize(j + 1, 0);
        }
        s[j] = v;
    }
    let det = p
        .eval_gaussian(&GaussianInt::i())
        .exact_abs()
        .ok_or_else(|| Error::Internal("|det(IM − iI)|² is not a square".into()))?;
    debug_assert_eq!(det, QuasiTreeCounts(s.clone()).alternating_sum().abs());
    Ok((QuasiTreeCounts(s), det))
}
