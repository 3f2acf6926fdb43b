//! Reidemeister-II reduction to a diagram with a single all-A circle.

use alloc::format;
use alloc::vec::Vec;

use super::{arc_ends, orient, other_end, CircleCounter, PdCode, Pos};
use crate::error::{Error, Result};

/// Repeats Reidemeister-II moves until the all-A state has one circle.
///
/// Each move takes the lowest crossing whose A-smoothed strands lie on
/// different circles and pushes one of its arcs across the other inside the
/// corner between them, choosing the clasp chirality that merges the two
/// circles. Every move adds two crossings and removes one circle, so
/// `e′ = e + 2(v − 1)`; the bracket is unchanged.
pub fn reduce_to_one_vertex(pd: &PdCode) -> Result<PdCode> {
    pd.require_connected()?;
    let keep_signs = pd.explicit_signs().is_some();
    let oriented = orient::heads(pd).is_some();
    let mut current = pd.clone();
    loop {
        let circles = CircleCounter::new(&current).count(0);
        if circles == 1 {
            break;
        }
        current = clasp(&current, circles)?;
    }
    if !keep_signs && current.explicit_signs().is_some() && !oriented {
        current = PdCode::from_normalized(current.crossings().to_vec(), None);
    }
    Ok(current)
}

fn clasp(pd: &PdCode, circles: usize) -> Result<PdCode> {
    let crossings = pd.crossings();
    let mut uf = crate::unionfind::UnionFind::new(pd.n_arcs());
    for t in crossings {
        uf.union(t[0] as usize - 1, t[1] as usize - 1);
        uf.union(t[2] as usize - 1, t[3] as usize - 1);
    }
    let i = (0..crossings.len())
        .find(|&i| {
            let t = crossings[i];
            uf.find(t[0] as usize - 1) != uf.find(t[2] as usize - 1)
        })
        .ok_or_else(|| Error::Internal(format!("{circles} circles but no joining chord")))?;

    let n = crossings.len();
    let ends = arc_ends(crossings);
    let end_b = other_end(&ends, crossings, (i, 1));
    let end_c = other_end(&ends, crossings, (i, 2));
    let [b, c] = [crossings[i][1], crossings[i][2]];
    let fresh = 2 * n as u32;
    let (b1, b2, b3) = (b, fresh + 1, fresh + 2);
    let (c1, c2, c3) = (c, fresh + 3, fresh + 4);
    let (x1, x2) = (n, n + 1);

    let heads = orient::heads(pd);
    let b_out = pd.signs().map(|s| s[i] > 0).unwrap_or(true);

    for b_over in [true, false] {
        let mut t: Vec<[u32; 4]> = crossings.to_vec();
        t[end_b.0][end_b.1 as usize] = b3;
        t[end_c.0][end_c.1 as usize] = c3;
        let (tx1, tx2) = if b_over {
            ([c1, b1, c2, b2], [c2, b3, c3, b2])
        } else {
            ([b1, c2, b2, c1], [b3, c3, b2, c2])
        };
        t.push(tx1);
        t.push(tx2);
        let slot_in = |tuple: [u32; 4], label: u32| -> u8 {
            tuple.iter().position(|&l| l == label).unwrap() as u8
        };
        // A label appears twice in the same new tuple only for b2 or c2 when
        // both ends sit on one crossing, which an RII clasp never produces.
        let candidate = match &heads {
            Some(h) => {
                let mut h: Vec<Pos> = h.clone();
                h.resize(2 * n + 4, (usize::MAX, 0));
                let at = |x: usize, tuple: [u32; 4], l: u32| (x, slot_in(tuple, l));
                // c leaves crossing i through slot 2.
                h[c1 as usize - 1] = at(x1, tx1, c1);
                h[c2 as usize - 1] = at(x2, tx2, c2);
                h[c3 as usize - 1] = end_c;
                if b_out {
                    h[b1 as usize - 1] = at(x1, tx1, b1);
                    h[b2 as usize - 1] = at(x2, tx2, b2);
                    h[b3 as usize - 1] = end_b;
                } else {
                    h[b3 as usize - 1] = at(x2, tx2, b3);
                    h[b2 as usize - 1] = at(x1, tx1, b2);
                    h[b1 as usize - 1] = (i, 1);
                }
                orient::from_heads(t, &h)
            }
            None => PdCode::from_unoriented(t),
        };
        let Ok(candidate) = candidate else { continue };
        if CircleCounter::new(&candidate).count(0) + 1 == circles {
            return Ok(candidate);
        }
    }
    Err(Error::Internal(format!(
        "no clasp at crossing {i} merges its two circles"
    )))
}
