//! The invariant suite behind `dessin verify`: every property is checked on
//! the knot table, twist knots, small pretzel links and a seeded random
//! corpus, and reported as pass/fail with the first few counterexamples.
//! Output depends only on the seed and corpus size.

use dessin_core::chord::{intersection_matrix, quasi_counts_and_det, ChordDiagram};
use dessin_core::dessin::{
    all_a_dessin, build_dessin, build_dessin_with_outer, contract_parallel, mixed_state_face_count,
    subdessin_histogram, Dessin, QuasiTreeCounts,
};
use dessin_core::diagram::{pretzel, reduce_to_one_vertex, twist, State};
use dessin_core::invariants::{
    alternating_subset_sum, bracket_from_histogram, coefficient_table_from, determinant,
    jones_at_minus_two_from, one_vertex_coefficient, pretzel_determinant, weighted_bracket,
    Context, DetMethod,
};
use dessin_core::poly::LaurentPoly;
use dessin_core::Result;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::corpus::{self, Sample};
use crate::input;

/// Counterexamples kept per property.
const KEEP: usize = 3;
/// Diagrams above this many crossings skip the per-subset face check.
const FACE_CHECK_LIMIT: usize = 10;

pub struct Property {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
    failed: usize,
}

impl Property {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: Vec::new(),
            failed: 0,
        }
    }

    /// Records one case; an `Err` counts as a failure.
    fn check(&mut self, case: &str, outcome: Result<std::result::Result<(), String>>) {
        self.checked += 1;
        let why = match outcome {
            Ok(Ok(())) => return,
            Ok(Err(why)) => why,
            Err(e) => format!("error: {e}"),
        };
        self.failed += 1;
        if self.failures.len() < KEEP {
            self.failures.push(format!("{case}: {why}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

pub struct Outcome {
    pub properties: Vec<Property>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(Property::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "passed": self.passed(),
            "properties": self.properties.iter().map(|p| json!({
                "name": p.name,
                "passed": p.passed(),
                "checked": p.checked,
                "failed": p.failed,
                "examples": p.failures,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            let verdict = if p.passed() { "PASS" } else { "FAIL" };
            out += &format!("{verdict} {} ({} cases)\n", p.name, p.checked);
            for f in &p.failures {
                out += &format!("    {f}\n");
            }
        }
        out += if self.passed() {
            "all properties hold\n"
        } else {
            "some properties failed\n"
        };
        out
    }
}

fn expect(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

/// Bundled table (or the table named by the environment), twist knots
/// and a seeded random corpus.
fn diagram_corpus(seed: u64, samples: usize) -> Vec<Sample> {
    let mut out: Vec<Sample> = match input::table_from_env() {
        Ok(t) => t
            .iter()
            .map(|(n, pd)| Sample {
                name: n.to_string(),
                pd: pd.clone(),
            })
            .collect(),
        Err(_) => Vec::new(),
    };
    for p in 1..=3 {
        for q in 1..=3 {
            out.push(Sample {
                name: format!("twist({p},{q})"),
                pd: twist(p, q).expect("twist parameters are positive"),
            });
        }
    }
    out.extend(corpus::diagrams(seed, samples, 8, 16));
    out
}

fn pretzel_cases() -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            out.push((vec![a], vec![b]));
            for c in 1..=3 {
                out.push((vec![a, b], vec![c]));
                out.push((vec![a], vec![b, c]));
            }
        }
    }
    out
}

fn quasi(d: &Dessin, ctx: &Context) -> Result<QuasiTreeCounts> {
    QuasiTreeCounts::from_histogram(&ctx.subdessins(d)?)
}

fn bracket_of(d: &Dessin, ctx: &Context) -> Result<LaurentPoly> {
    bracket_from_histogram(&ctx.subdessins(d)?)
}

pub fn run(seed: u64, samples: usize, ctx: &Context) -> Outcome {
    let corpus = diagram_corpus(seed, samples);
    let mut oracle = Property::new("bracket_matches_state_sum");
    let mut faces = Property::new("face_tracing_matches_mixed_states");
    let mut all_b = Property::new("all_b_dessin_is_dual_of_all_a");
    let mut dual_dual = Property::new("dual_of_dual_preserves_counts");
    let mut duality = Property::new("quasi_tree_duality");
    let mut outer = Property::new("outer_face_choice_invariance");
    let mut det = Property::new("determinant_routes_agree");
    let mut mirror = Property::new("mirror_inverts_bracket");
    let mut lattice = Property::new("exponent_lattice");
    let mut reduction = Property::new("one_vertex_reduction");
    let mut coeffs = Property::new("coefficient_locality_and_closed_forms");
    let mut one_vertex = Property::new("one_vertex_formulas");

    for s in &corpus {
        let pd = &s.pd;
        let case = &s.name;
        let d = match all_a_dessin(pd) {
            Ok(d) => d,
            Err(e) => {
                oracle.check(case, Err(e));
                continue;
            }
        };
        let bracket = bracket_of(&d, ctx);

        oracle.check(
            case,
            (|| {
                let b = bracket.clone()?;
                let o = ctx.state_sum_bracket(pd)?;
                Ok(expect(b == o, || format!("dessin {b} vs state sum {o}")))
            })(),
        );

        if pd.n_crossings() <= FACE_CHECK_LIMIT {
            faces.check(
                case,
                (|| {
                    for mask in 0..1u64 << d.n_edges() {
                        let f = d.sub_counts(mask)?.f;
                        let circles = mixed_state_face_count(pd, mask)?;
                        if f != circles {
                            return Ok(Err(format!(
                                "mask {mask:#b}: f = {f}, circles = {circles}"
                            )));
                        }
                    }
                    Ok(Ok(()))
                })(),
            );
        }

        all_b.check(
            case,
            (|| {
                let b = build_dessin(pd, &State::all_b(pd.n_crossings()))?.counts();
                let dual = d.dual()?.counts();
                Ok(expect(b == dual, || {
                    format!("all-B {b:?} vs dual {dual:?}")
                }))
            })(),
        );

        dual_dual.check(
            case,
            (|| {
                let dd = d.dual()?.dual()?;
                let same = dd.counts() == d.counts() && quasi(&dd, ctx)? == quasi(&d, ctx)?;
                Ok(expect(same, || "dual(dual(D)) differs from D".into()))
            })(),
        );

        duality.check(
            case,
            (|| {
                let s = quasi(&d, ctx)?.0;
                let mut t = quasi(&d.dual()?, ctx)?.0;
                t.reverse();
                Ok(expect(s == t, || {
                    format!("s(D) = {s:?}, reversed s(D*) = {t:?}")
                }))
            })(),
        );

        outer.check(
            case,
            (|| {
                let (labels, n_faces) = pd.planar_faces();
                let base = (d.counts(), quasi(&d, ctx)?);
                for face in 0..n_faces {
                    let corner = labels
                        .iter()
                        .position(|&l| l == face)
                        .expect("every face has a corner");
                    let other =
                        build_dessin_with_outer(pd, &State::all_a(pd.n_crossings()), corner)?;
                    if (other.counts(), quasi(&other, ctx)?) != base {
                        return Ok(Err(format!("outer corner {corner} changes the counts")));
                    }
                }
                Ok(Ok(()))
            })(),
        );

        det.check(
            case,
            (|| {
                let rep = determinant(pd, &DetMethod::ALL, true, ctx)?;
                let both = rep.methods.contains_key(&DetMethod::Quasitree)
                    && rep.methods.contains_key(&DetMethod::JonesEval);
                Ok(expect(rep.agree && both, || format!("{:?}", rep.methods)))
            })(),
        );

        mirror.check(
            case,
            (|| {
                let m = pd.mirror();
                let b = bracket.clone()?;
                let mb = ctx.state_sum_bracket(&m)?;
                Ok(expect(mb == b.substitute_power(-1), || {
                    format!("mirror bracket {mb}")
                }))
            })(),
        );

        let hist = ctx.subdessins(&d);
        lattice.check(
            case,
            (|| {
                let b = bracket.clone()?;
                let t = coefficient_table_from(&d, hist.as_ref().map_err(Clone::clone)?)?;
                let parity = b
                    .terms()
                    .all(|(e, _)| (e - pd.n_crossings() as i64).rem_euclid(2) == 0);
                Ok(expect(t.exponents_fit(&b) && parity, || {
                    format!("bracket {b} outside the lattice")
                }))
            })(),
        );

        coeffs.check(
            case,
            (|| {
                let t = coefficient_table_from(&d, hist.as_ref().map_err(Clone::clone)?)?;
                let v = d.n_vertices();
                let mut why = Vec::new();
                if !t.locality_holds() {
                    why.push(format!("a = {:?}, genus-restricted = {:?}", t.a, t.local));
                }
                if t.a[0] != t.a0_closed_form {
                    why.push(format!(
                        "a[0] = {} vs closed form {}",
                        t.a[0], t.a0_closed_form
                    ));
                }
                if !d.has_loop() {
                    let expected = BigInt::from(if v % 2 == 1 { 1 } else { -1 });
                    if t.a[0] != expected {
                        why.push(format!("loopless a[0] = {}", t.a[0]));
                    }
                    if t.a1_adequate.as_ref() != t.a.get(1) {
                        why.push(format!("a[1] = {:?} vs {:?}", t.a.get(1), t.a1_adequate));
                    }
                }
                Ok(expect(why.is_empty(), || why.join("; ")))
            })(),
        );

        let reduced = reduce_to_one_vertex(pd);
        reduction.check(
            case,
            (|| {
                let r = reduced.clone()?;
                let rd = all_a_dessin(&r)?;
                let (c, rc) = (d.counts(), rd.counts());
                let bookkeeping = rc.v == 1 && rc.e == c.e + 2 * (c.v - 1) && rc.g == c.g + c.v - 1;
                let same = bracket_of(&rd, ctx)? == bracket.clone()?;
                Ok(expect(bookkeeping && same, || {
                    format!("{c:?} -> {rc:?}, bracket kept: {same}")
                }))
            })(),
        );

        one_vertex.check(
            case,
            (|| {
                let rd = all_a_dessin(&reduced.clone()?)?;
                let h = ctx.subdessins(&rd)?;
                let t = coefficient_table_from(&rd, &h)?;
                for (l, a) in t.a.iter().enumerate() {
                    let f = one_vertex_coefficient(&h, l)?;
                    if &f != a {
                        return Ok(Err(format!("l = {l}: formula {f}, bracket {a}")));
                    }
                }
                let (lhs, rhs) = jones_at_minus_two_from(&h)?;
                Ok(expect(lhs == rhs.clone().into(), || {
                    format!("at -2: {lhs} vs {rhs}")
                }))
            })(),
        );
    }

    let mut weighted = Property::new("weighted_bracket_on_twist_knots");
    for p in 1..=3 {
        for q in 1..=3 {
            weighted.check(
                &format!("twist({p},{q})"),
                (|| {
                    let d = all_a_dessin(&twist(p, q)?)?;
                    let wd = contract_parallel(&d)?;
                    let w = weighted_bracket(&wd, d.n_edges() as u64)?;
                    let b = bracket_of(&d, ctx)?;
                    Ok(expect(w == b, || format!("weighted {w} vs {b}")))
                })(),
            );
        }
    }

    let mut pretzels = Property::new("pretzel_counts_and_determinant");
    for (p, q) in pretzel_cases() {
        pretzels.check(
            &format!("pretzel({p:?}|{q:?})"),
            (|| {
                let pd = pretzel(&p, &q)?;
                let c = all_a_dessin(&pd)?.counts();
                let (n, m) = (p.len() as i64, q.len() as i64);
                let (sp, sq) = (p.iter().sum::<u32>() as i64, q.iter().sum::<u32>() as i64);
                let counts_ok = c.v as i64 == n - m + sq
                    && c.e as i64 == sp + sq
                    && c.f as i64 == m - n + sp
                    && c.g == 1;
                let closed = pretzel_determinant(&p, &q)?;
                let oracle = determinant(&pd, &[DetMethod::JonesEval], false, ctx)?.value;
                Ok(expect(counts_ok && closed == oracle, || {
                    format!("counts {c:?}, closed form {closed}, state sum {oracle}")
                }))
            })(),
        );
    }

    let mut chords = Property::new("chord_diagram_coherence");
    let mut collapse = Property::new("genus_zero_alternating_sum_vanishes");
    for cd in corpus::chord_diagrams(seed ^ 0x9e37_79b9, samples.max(1), 9) {
        let case = format!("chords[{}]", cd.render());
        let d = cd.to_dessin();
        chords.check(&case, check_chords(&cd, &d));
        if d.counts().g == 0 {
            collapse.check(
                &case,
                (|| {
                    let sum = alternating_subset_sum(&subdessin_histogram(&d, ctx.scan_cap)?);
                    Ok(expect(sum == 0, || format!("sum = {sum}")))
                })(),
            );
        }
    }

    Outcome {
        properties: vec![
            oracle, faces, all_b, dual_dual, duality, outer, det, mirror, lattice, reduction,
            coeffs, one_vertex, weighted, pretzels, chords, collapse,
        ],
    }
}

fn check_chords(cd: &ChordDiagram, d: &Dessin) -> Result<std::result::Result<(), String>> {
    let (s, det) = quasi_counts_and_det(cd)?;
    let hist = subdessin_histogram(d, dessin_core::MAX_SCAN_EDGES)?;
    let scanned = QuasiTreeCounts::from_histogram(&hist)?;
    if s != scanned {
        return Ok(Err(format!("char poly {:?}, scan {:?}", s.0, scanned.0)));
    }
    if det != scanned.determinant() {
        return Ok(Err(format!(
            "|det(IM - iI)| = {det}, quasi-trees give {}",
            scanned.determinant()
        )));
    }
    let poly = dessin_core::chord::char_poly(&intersection_matrix(cd));
    for k in 1..cd.endpoints().len() {
        let rotated = dessin_core::chord::char_poly(&intersection_matrix(&cd.rotated(k)));
        if rotated != poly {
            return Ok(Err(format!("basepoint shift {k} gives {rotated}")));
        }
    }
    let im = intersection_matrix(cd);
    for subset in 0..1u64 << cd.m() {
        let minor = im.principal_minor(subset);
        let one_face = d.sub_counts(subset)?.f == 1;
        if minor != BigInt::from(one_face as u8) {
            return Ok(Err(format!(
                "subset {subset:#b}: minor {minor}, one face: {one_face}"
            )));
        }
    }
    Ok(Ok(()))
}
