//! Diagram families: pretzel links, twist knots, diagrams drawn from a
//! chord diagram, and braid closures.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::PdCode;
use crate::error::{Error, Result};

/// Crossing type of a twist column. `Vertical` columns have vertical
/// A-smoothings; `Horizontal` ones horizontal A-smoothings. The two types
/// are mirror images.
#[derive(Clone, Copy)]
enum Column {
    Vertical,
    Horizontal,
}

/// The pretzel link `K(p₁,…,p_n, −q₁,…,−q_m)`: `n + m` vertical twist
/// columns joined side by side, the `p`-columns twisted one way and the
/// `q`-columns the other.
///
/// Its all-A dessin has `v = n − m + Σq`, `e = Σp + Σq`, `f = m − n + Σp`.
pub fn pretzel(p: &[u32], q: &[u32]) -> Result<PdCode> {
    if p.is_empty() && q.is_empty() {
        return Err(Error::Empty);
    }
    if p.iter().chain(q).any(|&x| x == 0) {
        return Err(Error::Precondition(
            "pretzel parameters must be positive".into(),
        ));
    }
    let columns: Vec<(u32, Column)> = p
        .iter()
        .map(|&c| (c, Column::Vertical))
        .chain(q.iter().map(|&c| (c, Column::Horizontal)))
        .collect();
    let k = columns.len() as u32;
    // Top arc j joins column j to column j + 1 (cyclically); labels 1..=k.
    // Bottom arcs likewise, labels k+1..=2k.
    let top = |j: u32| 1 + j % k;
    let bottom = |j: u32| 1 + k + j % k;
    let mut next = 2 * k + 1;
    let mut crossings = Vec::new();
    for (j, &(c, kind)) in columns.iter().enumerate() {
        let j = j as u32;
        let (mut nw, mut ne) = (top(j + k - 1), top(j));
        for r in 0..c {
            let (sw, se) = if r + 1 == c {
                (bottom(j + k - 1), bottom(j))
            } else {
                next += 2;
                (next - 2, next - 1)
            };
            crossings.push(match kind {
                // under-strand NW–SE, counterclockwise NW, SW, SE, NE
                Column::Vertical => [nw, sw, se, ne],
                // under-strand NE–SW, counterclockwise NE, NW, SW, SE
                Column::Horizontal => [ne, nw, sw, se],
            });
            nw = sw;
            ne = se;
        }
    }
    PdCode::from_unoriented(crossings)
}

/// Diagram whose all-A state is one circle carrying the given chord
/// diagram. `sequence` lists the chord labels met around the circle;
/// chords in `inner` are drawn inside the circle, the rest outside. Chords
/// on the same side must not interlace.
pub fn from_chord_sides(sequence: &[u32], inner: &[u32]) -> Result<PdCode> {
    let len = sequence.len();
    if len == 0 {
        return Err(Error::Empty);
    }
    let mut positions: Vec<(u32, Vec<usize>)> = Vec::new();
    for (at, &label) in sequence.iter().enumerate() {
        match positions.iter_mut().find(|(l, _)| *l == label) {
            Some((_, v)) => v.push(at),
            None => positions.push((label, vec![at])),
        }
    }
    if let Some((l, v)) = positions.iter().find(|(_, v)| v.len() != 2) {
        return Err(Error::Parse(format!(
            "chord {l} has {} endpoints, expected 2",
            v.len()
        )));
    }
    let interlace = |x: &[usize], y: &[usize]| {
        let inside = |t: usize| x[0] < t && t < x[1];
        inside(y[0]) != inside(y[1])
    };
    for (i, (li, pi)) in positions.iter().enumerate() {
        for (lj, pj) in &positions[i + 1..] {
            if inner.contains(li) == inner.contains(lj) && interlace(pi, pj) {
                return Err(Error::NonPlanar {
                    crossings: positions.len(),
                    faces: 0,
                });
            }
        }
    }
    // Segment s_k runs from position k to k + 1 around the circle.
    let seg = |k: usize| ((k + len) % len) as u32 + 1;
    let crossings = positions
        .iter()
        .map(|(label, p)| {
            let (i, j) = (p[0], p[1]);
            if inner.contains(label) {
                [seg(i + len - 1), seg(i), seg(j - 1), seg(j)]
            } else {
                [seg(i), seg(i + len - 1), seg(j), seg(j - 1)]
            }
        })
        .collect();
    PdCode::from_unoriented(crossings)
}

/// Chord sequence and inner chords of the `(p, q)`-twist knot: `p` nested
/// chords inside the circle, each crossing all of `q` nested chords outside.
pub fn twist_chords(p: u32, q: u32) -> (Vec<u32>, Vec<u32>) {
    let mut seq: Vec<u32> = (1..=p + q).collect();
    seq.extend((1..=p).rev());
    seq.extend((p + 1..=p + q).rev());
    (seq, (1..=p).collect())
}

/// The `(p, q)`-twist knot; `twist(2, 3)` is the figure-eight knot.
pub fn twist(p: u32, q: u32) -> Result<PdCode> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition(
            "twist parameters must be positive".into(),
        ));
    }
    let (seq, inner) = twist_chords(p, q);
    from_chord_sides(&seq, &inner)
}

/// Closure of a braid on `strands` strands. Letter `±i` is the generator
/// `σ_i^{±1}` crossing strands `i` and `i + 1`.
pub fn braid_closure(strands: u32, word: &[i32]) -> Result<PdCode> {
    let (mut crossings, current) = braid_crossings(strands, word)?;
    // An unused generator splits the closure.
    if (1..strands as i32).any(|i| !word.iter().any(|g| g.abs() == i)) {
        return Err(Error::Disconnected);
    }
    let signs = word.iter().map(|&g| if g > 0 { 1 } else { -1 }).collect();
    // Close up: strand k's final label is its initial one.
    let rename: Vec<(u32, u32)> = current
        .iter()
        .enumerate()
        .map(|(k, &l)| (l, k as u32 + 1))
        .collect();
    relabel(&mut crossings, &rename);
    PdCode::from_oriented(compress_labels(crossings), signs)
}

/// Plat closure of a braid on an even number of strands: caps join strands
/// `2k + 1` and `2k + 2` above and below the braid.
pub fn plat_closure(strands: u32, word: &[i32]) -> Result<PdCode> {
    if strands % 2 == 1 {
        return Err(Error::Precondition(format!(
            "a plat closure needs an even number of strands, not {strands}"
        )));
    }
    let (mut crossings, current) = braid_crossings(strands, word)?;
    // Top caps: strands 2k + 1 and 2k + 2 start on one arc.
    let top: Vec<(u32, u32)> = (1..=strands).map(|l| (l, l.div_ceil(2) * 2 - 1)).collect();
    relabel(&mut crossings, &top);
    let mut bottom: Vec<u32> = current
        .iter()
        .map(|l| {
            top.iter()
                .find(|(from, _)| from == l)
                .map_or(*l, |&(_, to)| to)
        })
        .collect();
    for k in 0..bottom.len() / 2 {
        let (keep, drop) = (bottom[2 * k], bottom[2 * k + 1]);
        relabel(&mut crossings, &[(drop, keep)]);
        for l in bottom.iter_mut() {
            if *l == drop {
                *l = keep;
            }
        }
    }
    // A cap-to-cap arc that meets no crossing is a split unknotted circle.
    if bottom
        .iter()
        .any(|l| !crossings.iter().flatten().any(|x| x == l))
    {
        return Err(Error::Disconnected);
    }
    PdCode::from_unoriented(compress_labels(crossings))
}

/// Crossing tuples of a braid read top to bottom, with strands labelled
/// `1..=strands` at the top, plus the labels leaving the bottom.
fn braid_crossings(strands: u32, word: &[i32]) -> Result<(Vec<[u32; 4]>, Vec<u32>)> {
    if word.is_empty() {
        return Err(Error::Empty);
    }
    let s = strands as usize;
    if let Some(g) = word
        .iter()
        .find(|g| **g == 0 || g.unsigned_abs() as usize >= s)
    {
        return Err(Error::Parse(format!(
            "generator {g} is not valid on {strands} strands"
        )));
    }
    let mut current: Vec<u32> = (1..=strands).collect();
    let mut next = strands + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize - 1;
        let (x0, x1) = (current[i], current[i + 1]);
        let (y0, y1) = (next, next + 1);
        next += 2;
        crossings.push(if g > 0 {
            [x1, y1, y0, x0]
        } else {
            [x0, x1, y1, y0]
        });
        current[i] = y0;
        current[i + 1] = y1;
    }
    Ok((crossings, current))
}

fn relabel(crossings: &mut [[u32; 4]], rename: &[(u32, u32)]) {
    for t in crossings.iter_mut() {
        for l in t.iter_mut() {
            if let Some(&(_, to)) = rename.iter().find(|(from, _)| from == l) {
                *l = to;
            }
        }
    }
}

/// Renumbers the labels in use to `1..=count`, keeping their order.
fn compress_labels(mut crossings: Vec<[u32; 4]>) -> Vec<[u32; 4]> {
    let mut seen: Vec<u32> = crossings.iter().flatten().copied().collect();
    seen.sort_unstable();
    seen.dedup();
    for t in &mut crossings {
        for l in t.iter_mut() {
            *l = seen.binary_search(l).unwrap() as u32 + 1;
        }
    }
    crossings
}
