//! Oriented ribbon graphs ("dessins") built from Kauffman states.
//!
//! Half-edges are numbered `0..2e`. A dessin stores, for every vertex, the
//! cyclic order of its half-edges, and for every edge its two half-edges.
//! Faces are the orbits of `succ ∘ mate`, where `mate` swaps the two ends of
//! an edge and `succ` advances one step around a vertex.

mod scan;
mod weighted;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{CircleCounter, PdCode, State};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

pub use scan::{
    mask_range, quasi_tree_counts, scan_range, scan_subdessins, subdessin_histogram,
    subdessin_histogram_range, QuasiTreeCounts, Scanner, SubdessinHistogram,
};
pub use weighted::{contract_parallel, WeightedDessin};

/// `v, e, f, k` of a ribbon graph with its genus `g` and nullity `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Counts {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub k: usize,
    pub g: usize,
    pub n: usize,
}

impl Counts {
    /// Derives `g` and `n` from `v − e + f = 2k − 2g` and `n = e − v + k`.
    pub fn new(v: usize, e: usize, f: usize, k: usize) -> Result<Self> {
        let twice_g = (2 * k + e) as i64 - (v + f) as i64;
        if twice_g < 0 || twice_g % 2 != 0 || e + k < v {
            return Err(Error::Internal(format!(
                "counts v={v} e={e} f={f} k={k} violate the Euler relation"
            )));
        }
        Ok(Self {
            v,
            e,
            f,
            k,
            g: (twice_g / 2) as usize,
            n: e + k - v,
        })
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Dessin {
    rotations: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    labels: Option<Vec<usize>>,
    vertex_of: Vec<usize>,
    succ: Vec<usize>,
    mate: Vec<usize>,
}

impl Dessin {
    /// Checks that every half-edge `0..2·edges.len()` sits in exactly one
    /// rotation and exactly one edge.
    pub fn new(
        rotations: Vec<Vec<usize>>,
        edges: Vec<[usize; 2]>,
        labels: Option<Vec<usize>>,
    ) -> Result<Self> {
        let h = 2 * edges.len();
        let mut vertex_of = vec![usize::MAX; h];
        let mut succ = vec![usize::MAX; h];
        for (v, rot) in rotations.iter().enumerate() {
            for (j, &x) in rot.iter().enumerate() {
                if x >= h || vertex_of[x] != usize::MAX {
                    return Err(Error::Parse(format!(
                        "half-edge {} is out of range or repeated in the rotations",
                        x + 1
                    )));
                }
                vertex_of[x] = v;
                succ[x] = rot[(j + 1) % rot.len()];
            }
        }
        if vertex_of.contains(&usize::MAX) {
            return Err(Error::Parse(
                "a half-edge is missing from the rotations".into(),
            ));
        }
        let mut mate = vec![usize::MAX; h];
        for &[x, y] in &edges {
            if x == y || x >= h || y >= h || mate[x] != usize::MAX || mate[y] != usize::MAX {
                return Err(Error::Parse(format!(
                    "edge ({},{}) is invalid or reuses a half-edge",
                    x + 1,
                    y + 1
                )));
            }
            mate[x] = y;
            mate[y] = x;
        }
        if let Some(l) = &labels {
            if l.len() != edges.len() {
                return Err(Error::Parse("one label per edge is required".into()));
            }
        }
        Ok(Self {
            rotations,
            edges,
            labels,
            vertex_of,
            succ,
            mate,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn edges(&self) -> &[[usize; 2]] {
        &self.edges
    }

    /// Crossing that produced each edge, for diagram-built dessins.
    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn vertex_of(&self, half_edge: usize) -> usize {
        self.vertex_of[half_edge]
    }

    pub fn mate(&self, half_edge: usize) -> usize {
        self.mate[half_edge]
    }

    pub fn succ(&self, half_edge: usize) -> usize {
        self.succ[half_edge]
    }

    pub fn edge_of(&self, half_edge: usize) -> usize {
        self.edges
            .iter()
            .position(|e| e.contains(&half_edge))
            .expect("validated half-edge")
    }

    /// End vertices of every edge.
    pub fn graph_edges(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .map(|&[x, y]| (self.vertex_of[x], self.vertex_of[y]))
            .collect()
    }

    pub fn has_loop(&self) -> bool {
        self.graph_edges().iter().any(|(u, v)| u == v)
    }

    /// Face boundaries: the orbits of `succ ∘ mate`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let h = self.succ.len();
        let mut seen = vec![false; h];
        let mut faces = Vec::new();
        for start in 0..h {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                face.push(x);
                x = self.succ[self.mate[x]];
            }
            faces.push(face);
        }
        faces
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.n_vertices());
        for (u, v) in self.graph_edges() {
            uf.union(u, v);
        }
        uf.sets()
    }

    pub fn counts(&self) -> Counts {
        let isolated = self.rotations.iter().filter(|r| r.is_empty()).count();
        Counts::new(
            self.n_vertices(),
            self.n_edges(),
            self.faces().len() + isolated,
            self.components(),
        )
        .expect("a valid rotation system satisfies the Euler relation")
    }

    /// Counts of the spanning sub-dessin on the edges whose bit is set.
    pub fn sub_counts(&self, edge_set: u64) -> Result<Counts> {
        if self.n_edges() > crate::MAX_SCAN_EDGES {
            return Err(Error::CapExceeded {
                what: "edge mask",
                size: self.n_edges(),
                cap: crate::MAX_SCAN_EDGES,
            });
        }
        Scanner::new(self).counts(edge_set)
    }

    /// The dual ribbon graph: one vertex per face, rotation `succ ∘ mate`,
    /// same edges. `dual(dual(d))` has the rotation of `d`.
    pub fn dual(&self) -> Result<Dessin> {
        if self.components() != 1 {
            return Err(Error::Disconnected);
        }
        if self.n_edges() == 0 {
            return Ok(self.clone());
        }
        Dessin::new(self.faces(), self.edges.clone(), self.labels.clone())
    }

    /// Text form `V: (1 3 2 4) E: (1,2) (3,4)` with 1-based half-edges.
    pub fn render(&self) -> String {
        let mut out = String::from("V:");
        for rot in &self.rotations {
            out.push_str(" (");
            for (j, x) in rot.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(&format!("{}", x + 1));
            }
            out.push(')');
        }
        out.push_str(" E:");
        for [x, y] in &self.edges {
            out.push_str(&format!(" ({},{})", x + 1, y + 1));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let rest = text
            .strip_prefix("V:")
            .ok_or_else(|| Error::Parse("dessin text must start with 'V:'".into()))?;
        let (v_part, e_part) = rest
            .split_once("E:")
            .ok_or_else(|| Error::Parse("dessin text lacks 'E:'".into()))?;
        let groups = |s: &str| -> Result<Vec<Vec<usize>>> {
            let mut out = Vec::new();
            let mut s = s.trim();
            while !s.is_empty() {
                let body = s
                    .strip_prefix('(')
                    .and_then(|r| r.split_once(')'))
                    .ok_or_else(|| Error::Parse(format!("expected '(...)' at {s:?}")))?;
                let ids = body
                    .0
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| match t.parse::<usize>() {
                        Ok(x) if x >= 1 => Ok(x - 1),
                        _ => Err(Error::Parse(format!("bad half-edge id {t:?}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.push(ids);
                s = body.1.trim_start();
            }
            Ok(out)
        };
        let rotations = groups(v_part)?;
        let edges = groups(e_part)?
            .into_iter()
            .map(|g| match g[..] {
                [x, y] => Ok([x, y]),
                _ => Err(Error::Parse("an edge joins exactly two half-edges".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        if rotations.is_empty() {
            return Err(Error::Empty);
        }
        Dessin::new(rotations, edges, None)
    }
}

impl fmt::Display for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dessin({})", self.render())
    }
}

impl core::str::FromStr for Dessin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// The dessin of a state: one vertex per state circle, one edge per crossing
/// joining its half-edges `2i` and `2i + 1`.
pub fn build_dessin(pd: &PdCode, state: &State) -> Result<Dessin> {
    build_dessin_with_outer(pd, state, 0)
}

/// As [`build_dessin`], with the unbounded face placed at `outer_corner`.
pub fn build_dessin_with_outer(pd: &PdCode, state: &State, outer_corner: usize) -> Result<Dessin> {
    let circles = pd.smooth_state_with_outer(state, outer_corner)?;
    let n = pd.n_crossings();
    let edges = (0..n).map(|i| [2 * i, 2 * i + 1]).collect();
    Dessin::new(circles.cyclic_orders, edges, Some((0..n).collect()))
}

pub fn all_a_dessin(pd: &PdCode) -> Result<Dessin> {
    build_dessin(pd, &State::all_a(pd.n_crossings()))
}

/// Circles of the state that is B exactly on `edge_set`.
pub fn mixed_state_face_count(pd: &PdCode, edge_set: u64) -> Result<usize> {
    pd.require_connected()?;
    if pd.n_crossings() > crate::MAX_SCAN_EDGES {
        return Err(Error::CapExceeded {
            what: "crossing mask",
            size: pd.n_crossings(),
            cap: crate::MAX_SCAN_EDGES,
        });
    }
    Ok(CircleCounter::new(pd).count(edge_set))
}
