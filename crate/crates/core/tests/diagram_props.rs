//! Properties of diagrams, states and dessins over random braid and plat
//! closures with at most 10 crossings.

use dessin_core::chord::{char_poly, intersection_matrix, to_chord_diagram};
use dessin_core::dessin::{
    all_a_dessin, build_dessin, build_dessin_with_outer, quasi_tree_counts, subdessin_histogram,
    Dessin,
};
use dessin_core::diagram::{
    braid_closure, plat_closure, reduce_to_one_vertex, state_histogram_range, state_sum_bracket,
    PdCode, State,
};
use dessin_core::invariants::{
    alternating_subset_sum, bracket_via_dessin, coefficient_table, determinant, jones_from_bracket,
    Context, DetMethod,
};
use dessin_core::linalg::spanning_tree_count;
use dessin_core::poly::LaurentPoly;
use num_bigint::BigInt;
use proptest::prelude::*;

const CAP: usize = 24;

fn diagram() -> impl Strategy<Value = PdCode> {
    (
        any::<bool>(),
        0usize..3,
        prop::collection::vec((1i32..6, any::<bool>()), 1..=10),
    )
        .prop_filter_map(
            "closure is not a connected diagram",
            |(plat, size, word)| {
                let strands = if plat {
                    [4, 6, 4][size]
                } else {
                    [2, 3, 4][size]
                };
                let w: Vec<i32> = word
                    .iter()
                    .map(|&(g, neg)| {
                        let g = 1 + (g - 1) % (strands as i32 - 1);
                        if neg {
                            -g
                        } else {
                            g
                        }
                    })
                    .collect();
                let pd = if plat {
                    plat_closure(strands, &w)
                } else {
                    braid_closure(strands, &w)
                }
                .ok()?;
                pd.is_connected().then_some(pd)
            },
        )
}

fn ctx() -> Context<'static> {
    Context::default()
}

fn s(d: &Dessin) -> Vec<u64> {
    quasi_tree_counts(d, CAP).unwrap().0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn endpoint_bookkeeping(pd in diagram(), mask in any::<u64>()) {
        let n = pd.n_crossings();
        let circles = pd.smooth_state(&State::from_b_mask(n, mask)).unwrap();
        prop_assert_eq!(circles.cyclic_orders.len(), circles.count);
        prop_assert_eq!(circles.endpoint_circle.len(), 2 * n);
        let total: usize = circles.cyclic_orders.iter().map(Vec::len).sum();
        prop_assert_eq!(total, 2 * n);
        for (c, order) in circles.cyclic_orders.iter().enumerate() {
            for &x in order {
                prop_assert_eq!(circles.endpoint_circle[x], c);
            }
        }
        let mut seen: Vec<usize> = circles.cyclic_orders.concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..2 * n).collect::<Vec<_>>());
    }

    #[test]
    fn bracket_exponents_sit_on_the_lattice(pd in diagram()) {
        let n = pd.n_crossings() as i64;
        let b = state_sum_bracket(&pd, 20).unwrap();
        prop_assert!(b.terms().all(|(e, _)| (e - n).rem_euclid(2) == 0));
        let t = coefficient_table(&pd, &ctx()).unwrap();
        prop_assert!(t.exponents_fit(&b), "{} outside [{}, {}] mod 4", b, t.bottom, t.top);
    }

    #[test]
    fn state_sums_split_at_any_point(pd in diagram(), a in any::<u64>(), b in any::<u64>()) {
        let total = 1u64 << pd.n_crossings();
        let (lo, hi) = { let (x, y) = (a % (total + 1), b % (total + 1)); (x.min(y), x.max(y)) };
        let whole = state_histogram_range(&pd, 0..total);
        let mut parts = state_histogram_range(&pd, 0..lo);
        parts.merge(&state_histogram_range(&pd, lo..hi));
        parts.merge(&state_histogram_range(&pd, hi..total));
        prop_assert_eq!(parts, whole);
    }

    #[test]
    fn dessin_matches_the_state_sum(pd in diagram()) {
        prop_assert_eq!(bracket_via_dessin(&pd, &ctx()).unwrap(), state_sum_bracket(&pd, 20).unwrap());
    }

    #[test]
    fn counts_satisfy_euler_and_nullity(pd in diagram(), mask in any::<u64>()) {
        let d = all_a_dessin(&pd).unwrap();
        let c = d.sub_counts(mask & ((1 << d.n_edges()) - 1)).unwrap();
        prop_assert_eq!(c.v + c.f + 2 * c.g, c.e + 2 * c.k);
        prop_assert_eq!(c.n + c.v, c.e + c.k);
    }

    #[test]
    fn quasi_tree_conditions_are_redundant(pd in diagram()) {
        let d = all_a_dessin(&pd).unwrap();
        for mask in 0..1u64 << d.n_edges() {
            let c = d.sub_counts(mask).unwrap();
            let edges_fit = c.e + 1 == c.v + 2 * c.g;
            let connected = c.k == 1;
            let one_face = c.f == 1;
            prop_assert_eq!(connected && one_face, connected && edges_fit);
            prop_assert_eq!(connected && one_face, one_face && edges_fit);
        }
    }

    #[test]
    fn genus_zero_quasi_trees_are_spanning_trees(pd in diagram()) {
        let d = all_a_dessin(&pd).unwrap();
        let trees = spanning_tree_count(d.n_vertices(), &d.graph_edges());
        prop_assert_eq!(BigInt::from(s(&d)[0]), trees);
    }

    #[test]
    fn duality(pd in diagram()) {
        let d = all_a_dessin(&pd).unwrap();
        let dual = d.dual().unwrap();
        let mut back = s(&dual);
        back.reverse();
        prop_assert_eq!(s(&d), back);
        let b = build_dessin(&pd, &State::all_b(pd.n_crossings())).unwrap();
        prop_assert_eq!(b.counts(), dual.counts());
        let dd = dual.dual().unwrap();
        prop_assert_eq!(dd.counts(), d.counts());
        prop_assert_eq!(s(&dd), s(&d));
    }

    #[test]
    fn outer_face_choice_is_invisible(pd in diagram(), pick in any::<usize>()) {
        let (labels, faces) = pd.planar_faces();
        let face = pick % faces;
        let corner = labels.iter().position(|&l| l == face).unwrap();
        let d = all_a_dessin(&pd).unwrap();
        let other = build_dessin_with_outer(&pd, &State::all_a(pd.n_crossings()), corner).unwrap();
        prop_assert_eq!(other.counts(), d.counts());
        prop_assert_eq!(s(&other), s(&d));
    }

    #[test]
    fn mirror_inverts_a_and_keeps_the_determinant(pd in diagram()) {
        let m = pd.mirror();
        let b = state_sum_bracket(&pd, 20).unwrap();
        prop_assert_eq!(state_sum_bracket(&m, 20).unwrap(), b.substitute_power(-1));
        prop_assert_eq!(m.writhe().unwrap(), -pd.writhe().unwrap());
        let methods = [DetMethod::Quasitree, DetMethod::JonesEval];
        let x = determinant(&pd, &methods, false, &ctx()).unwrap();
        let y = determinant(&m, &methods, false, &ctx()).unwrap();
        prop_assert!(x.agree && y.agree);
        prop_assert_eq!(x.value, y.value);
    }

    #[test]
    fn reduction_keeps_the_bracket(pd in diagram()) {
        let d = all_a_dessin(&pd).unwrap();
        let (v, g) = (d.n_vertices(), d.counts().g);
        let r = reduce_to_one_vertex(&pd).unwrap();
        let rd = all_a_dessin(&r).unwrap();
        prop_assert_eq!(rd.n_vertices(), 1);
        prop_assert_eq!(r.n_crossings(), pd.n_crossings() + 2 * (v - 1));
        prop_assert_eq!(rd.counts().g, g + v - 1);
        prop_assert_eq!(bracket_via_dessin(&r, &ctx()).unwrap(), bracket_via_dessin(&pd, &ctx()).unwrap());
    }

    #[test]
    fn basepoint_does_not_change_the_char_poly(pd in diagram(), shift in any::<usize>()) {
        let r = reduce_to_one_vertex(&pd).unwrap();
        prop_assume!(r.n_crossings() <= 12);
        let cd = to_chord_diagram(&all_a_dessin(&r).unwrap()).unwrap();
        let rotated = cd.rotated(shift % cd.endpoints().len());
        prop_assert_eq!(char_poly(&intersection_matrix(&rotated)), char_poly(&intersection_matrix(&cd)));
    }

    #[test]
    fn principal_minors_are_zero_or_one(pd in diagram()) {
        let r = reduce_to_one_vertex(&pd).unwrap();
        prop_assume!(r.n_crossings() <= 12);
        let d = all_a_dessin(&r).unwrap();
        let im = intersection_matrix(&to_chord_diagram(&d).unwrap());
        for subset in 0..1u64 << im.m() {
            let minor = im.principal_minor(subset);
            if subset.count_ones() % 2 == 1 {
                prop_assert_eq!(minor, BigInt::from(0));
            } else {
                let f = to_chord_diagram(&d).unwrap().to_dessin().sub_counts(subset).unwrap().f;
                prop_assert_eq!(minor, BigInt::from((f == 1) as u8));
            }
        }
    }
}

#[test]
fn genus_zero_one_vertex_sums_vanish() {
    // Chord diagrams without interlacing pairs are the genus-0 ones.
    for seq in [
        &[1, 1][..],
        &[1, 1, 2, 2],
        &[1, 2, 2, 1],
        &[1, 2, 2, 3, 3, 1, 4, 4],
    ] {
        let d = dessin_core::chord::ChordDiagram::new(seq)
            .unwrap()
            .to_dessin();
        assert_eq!(d.counts().g, 0);
        assert_eq!(
            alternating_subset_sum(&subdessin_histogram(&d, CAP).unwrap()),
            0,
            "{seq:?}"
        );
    }
}

#[test]
fn kink_and_mirror_cancel() {
    let kink = PdCode::parse("X[1,1,2,2]").unwrap();
    let mirror = kink.mirror();
    assert_eq!(kink.writhe().unwrap(), -mirror.writhe().unwrap());
    let sum = PdCode::parse("X[1,1,2,4] X[2,3,3,4]").unwrap();
    assert_eq!(sum.components(), 1);
    assert_eq!(sum.writhe().unwrap(), 0);
    let b = state_sum_bracket(&sum, 20).unwrap();
    assert_eq!(b, LaurentPoly::one());
    assert_eq!(jones_from_bracket(&b, 0).unwrap(), LaurentPoly::one());
}
