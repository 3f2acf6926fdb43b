//! Orientations of PD codes: crossing signs and consecutive relabelling.
//!
//! An orientation is recorded as the *head* of every arc: the position at
//! which the arc enters a crossing.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{arc_ends, other_end, PdCode, Pos};
use crate::error::{Error, Result};

const NO_POS: Pos = (usize::MAX, 0);

/// Heads implied by the incoming-under convention plus crossing signs:
/// slot 0 is incoming, and the over-strand enters at slot 3 for a positive
/// crossing and at slot 1 for a negative one.
pub(crate) fn heads_from_signs(crossings: &[[u32; 4]], signs: &[i8]) -> Vec<Pos> {
    let mut heads = vec![NO_POS; 2 * crossings.len()];
    for (i, t) in crossings.iter().enumerate() {
        let over_in = if signs[i] > 0 { 3 } else { 1 };
        heads[t[0] as usize - 1] = (i, 0);
        heads[t[over_in as usize] as usize - 1] = (i, over_in);
    }
    heads
}

/// Walks every component, choosing its direction so that it enters the
/// first slot (in crossing-then-slot order) it visits. For each crossing,
/// the under-strand is on slots 0 and 2.
fn traverse_heads(crossings: &[[u32; 4]]) -> Vec<Pos> {
    let ends = arc_ends(crossings);
    let mut heads = vec![NO_POS; 2 * crossings.len()];
    for i in 0..crossings.len() {
        for slot in 0..4u8 {
            let label = crossings[i][slot as usize] as usize - 1;
            if heads[label] != NO_POS {
                continue;
            }
            let start = (i, slot);
            let mut at = start;
            loop {
                let exit = (at.0, (at.1 + 2) % 4);
                let next = other_end(&ends, crossings, exit);
                let l = crossings[next.0][next.1 as usize] as usize - 1;
                heads[l] = next;
                at = next;
                if at == start {
                    break;
                }
            }
        }
    }
    heads
}

/// Rotates tuples so slot 0 is the incoming under-strand and reads off the
/// signs; then relabels arcs consecutively along the oriented components.
fn apply_heads(crossings: &[[u32; 4]], heads: &[Pos]) -> Result<(Vec<[u32; 4]>, Vec<i8>)> {
    let n = crossings.len();
    let mut rotated = Vec::with_capacity(n);
    let mut signs = Vec::with_capacity(n);
    let is_head = |i: usize, s: usize| heads[crossings[i][s] as usize - 1] == (i, s as u8);
    for (i, t) in crossings.iter().enumerate() {
        let r = match (is_head(i, 0), is_head(i, 2)) {
            (true, false) => 0,
            (false, true) => 2,
            _ => {
                return Err(Error::Orientation(format!(
                    "under-strand of crossing {i} is not traversed through"
                )))
            }
        };
        let tuple = [t[r], t[(r + 1) % 4], t[(r + 2) % 4], t[(r + 3) % 4]];
        let d_in = is_head(i, (r + 3) % 4);
        let b_in = is_head(i, (r + 1) % 4);
        if d_in == b_in {
            return Err(Error::Orientation(format!(
                "over-strand of crossing {i} is not traversed through"
            )));
        }
        rotated.push(tuple);
        signs.push(if d_in { 1 } else { -1 });
    }
    // Relabel: walk components starting from the lowest incoming slot.
    let heads = heads_from_signs(&rotated, &signs);
    let ends = arc_ends(&rotated);
    let mut new_label = vec![0u32; 2 * n];
    let mut next = 1u32;
    for i in 0..n {
        for slot in [0u8, 1, 3] {
            let l = rotated[i][slot as usize] as usize - 1;
            if heads[l] != (i, slot) || new_label[l] != 0 {
                continue;
            }
            // l enters here; walk forward from this arrival
            let start = (i, slot);
            let mut at = start;
            let mut incoming = l;
            loop {
                new_label[incoming] = next;
                next += 1;
                let exit = (at.0, (at.1 + 2) % 4);
                at = other_end(&ends, &rotated, exit);
                incoming = rotated[at.0][at.1 as usize] as usize - 1;
                if at == start {
                    break;
                }
            }
        }
    }
    debug_assert_eq!(next as usize, 2 * n + 1);
    let relabeled = rotated
        .iter()
        .map(|t| t.map(|l| new_label[l as usize - 1]))
        .collect();
    Ok((relabeled, signs))
}

fn finish(crossings: Vec<[u32; 4]>, signs: Vec<i8>) -> Result<PdCode> {
    let pd = PdCode::from_normalized(crossings, None);
    let signs = if pd.components() > 1 {
        Some(signs)
    } else {
        None
    };
    let pd = PdCode::from_normalized(pd.crossings, signs);
    pd.check_planar()?;
    Ok(pd)
}

pub(crate) fn from_unoriented(crossings: Vec<[u32; 4]>) -> Result<PdCode> {
    if crossings.is_empty() {
        return Err(Error::Empty);
    }
    let heads = traverse_heads(&crossings);
    let (c, s) = apply_heads(&crossings, &heads)?;
    finish(c, s)
}

pub(crate) fn from_oriented(crossings: Vec<[u32; 4]>, signs: Vec<i8>) -> Result<PdCode> {
    if crossings.is_empty() {
        return Err(Error::Empty);
    }
    let heads = heads_from_signs(&crossings, &signs);
    let (c, s) = apply_heads(&crossings, &heads)?;
    finish(c, s)
}

/// Rebuilds a PD from tuples and arc heads (used after surgery).
pub(crate) fn from_heads(crossings: Vec<[u32; 4]>, heads: &[Pos]) -> Result<PdCode> {
    let (c, s) = apply_heads(&crossings, heads)?;
    finish(c, s)
}

pub(crate) fn signs(pd: &PdCode) -> Result<Vec<i8>> {
    if let Some(s) = pd.explicit_signs() {
        return Ok(s.to_vec());
    }
    if pd.components() != 1 {
        return Err(Error::Orientation(format!(
            "a {}-component link needs an explicit S[...] sign list",
            pd.components()
        )));
    }
    let crossings = pd.crossings();
    let ends = arc_ends(crossings);
    let mut signs = vec![0i8; crossings.len()];
    // Slot 0 of crossing 0 is incoming; follow the knot from there.
    let start = (0usize, 0u8);
    let mut at = start;
    loop {
        let (i, slot) = at;
        match slot {
            0 => {}
            2 => {
                return Err(Error::Orientation(format!(
                    "crossing {i}: the under-strand runs from slot c to slot a"
                )))
            }
            1 => signs[i] = -1,
            _ => signs[i] = 1,
        }
        at = other_end(&ends, crossings, (i, (slot + 2) % 4));
        if at == start {
            break;
        }
    }
    debug_assert!(signs.iter().all(|&s| s != 0));
    Ok(signs)
}

/// Heads of the diagram's own orientation, if one is known.
pub(crate) fn heads(pd: &PdCode) -> Option<Vec<Pos>> {
    let s = signs(pd).ok()?;
    Some(heads_from_signs(pd.crossings(), &s))
}
