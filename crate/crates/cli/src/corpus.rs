//! Seeded random corpora for `verify` and the acceptance suite: connected
//! diagrams drawn as braid and plat closures, and chord diagrams.

use dessin_core::chord::ChordDiagram;
use dessin_core::diagram::{braid_closure, plat_closure, CircleCounter, PdCode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Sample {
    pub name: String,
    pub pd: PdCode,
}

fn random_word(rng: &mut ChaCha8Rng, strands: u32, len: usize) -> Vec<i32> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen() {
                g
            } else {
                -g
            }
        })
        .collect()
}

fn render_word(w: &[i32]) -> String {
    w.iter()
        .map(|g| g.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// `count` connected diagrams with 3 to `max_crossings` crossings, half
/// braid closures on 2–4 strands and half plat closures on 4 or 6 strands.
/// Diagrams whose one-vertex reduction would exceed `max_reduced` crossings
/// (`n + 2(v − 1)`, `v` the all-A circle count) are skipped.
pub fn diagrams(seed: u64, count: usize, max_crossings: usize, max_reduced: usize) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let len = rng.gen_range(3..=max_crossings.max(3));
        let plat = out.len() % 2 == 1;
        let made = if plat {
            let strands = *[4u32, 6].choose(&mut rng).unwrap();
            let w = random_word(&mut rng, strands, len);
            plat_closure(strands, &w).map(|pd| (format!("plat{strands}[{}]", render_word(&w)), pd))
        } else {
            let strands = rng.gen_range(2..=4u32);
            let w = random_word(&mut rng, strands, len);
            braid_closure(strands, &w)
                .map(|pd| (format!("braid{strands}[{}]", render_word(&w)), pd))
        };
        let Ok((name, pd)) = made else { continue };
        if !pd.is_connected() || pd.n_crossings() > max_crossings {
            continue;
        }
        let v = CircleCounter::new(&pd).count(0);
        if pd.n_crossings() + 2 * (v - 1) > max_reduced {
            continue;
        }
        out.push(Sample { name, pd });
    }
    out
}

/// `count` chord diagrams with 1 to `max_m` chords.
pub fn chord_diagrams(seed: u64, count: usize, max_m: usize) -> Vec<ChordDiagram> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(1..=max_m as u32);
            let mut seq: Vec<u32> = (1..=m).flat_map(|c| [c, c]).collect();
            seq.shuffle(&mut rng);
            ChordDiagram::new(&seq).expect("every chord appears twice")
        })
        .collect()
}
