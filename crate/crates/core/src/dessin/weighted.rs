//! Collapsing classes of parallel chords of a one-vertex dessin.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::Dessin;
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// A one-vertex dessin whose edges stand for `weights[i]` parallel chords.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDessin {
    pub base: Dessin,
    pub weights: Vec<u32>,
}

impl WeightedDessin {
    pub fn total_edges(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }
}

/// Merges parallel chords. Chords with endpoint positions `{p, q}` and
/// `{p + 1, q − 1}` (cyclically) bound a strip containing no other endpoint
/// and are parallel; classes are the transitive closure.
pub fn contract_parallel(d: &Dessin) -> Result<WeightedDessin> {
    if d.n_vertices() != 1 {
        return Err(Error::Precondition(format!(
            "parallel chords are defined for one-vertex dessins, not {} vertices",
            d.n_vertices()
        )));
    }
    let rot = &d.rotations()[0];
    let len = rot.len();
    let e = d.n_edges();
    let mut pos = vec![0usize; len];
    for (p, &x) in rot.iter().enumerate() {
        pos[x] = p;
    }
    let mut edge_at = vec![0usize; len];
    for (i, &[x, y]) in d.edges().iter().enumerate() {
        edge_at[pos[x]] = i;
        edge_at[pos[y]] = i;
    }
    let mut uf = UnionFind::new(e);
    for (i, &[x, y]) in d.edges().iter().enumerate() {
        let (p, q) = (pos[x], pos[y]);
        for (dp, dq) in [(1, len - 1), (len - 1, 1)] {
            let (p2, q2) = ((p + dp) % len, (q + dq) % len);
            if p2 == q || p2 == q2 {
                continue;
            }
            let j = edge_at[p2];
            if j != i && edge_at[q2] == j {
                uf.union(i, j);
            }
        }
    }
    let (class, classes) = uf.labels();
    let mut weights = vec![0u32; classes];
    for &c in &class {
        weights[c] += 1;
    }
    // Representative of each class: its lowest-numbered edge.
    let mut rep = vec![usize::MAX; classes];
    for (i, &c) in class.iter().enumerate() {
        if rep[c] == usize::MAX {
            rep[c] = i;
        }
    }
    // Renumber the representatives' half-edges in rotation order.
    let mut new_id = vec![usize::MAX; len];
    let mut rotation = Vec::with_capacity(2 * classes);
    for &x in rot {
        let i = edge_at[pos[x]];
        if rep[class[i]] == i {
            new_id[x] = rotation.len();
            rotation.push(rotation.len());
        }
    }
    let edges = rep
        .iter()
        .map(|&i| {
            let [x, y] = d.edges()[i];
            [new_id[x], new_id[y]]
        })
        .collect();
    let labels = d.labels().map(|l| rep.iter().map(|&i| l[i]).collect());
    let base = Dessin::new(vec![rotation], edges, labels)?;
    Ok(WeightedDessin { base, weights })
}
