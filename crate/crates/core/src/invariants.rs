//! Link invariants from sub-dessin expansions: the Kauffman bracket, the
//! Jones polynomial, the determinant by four routes, leading Jones
//! coefficients, the weighted-dessin bracket and the bracket at `A⁻⁴ = −2`.
//!
//! Exponential scans go through an [`Executor`], so a caller with threads
//! can split them; [`Sequential`] runs them inline.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::chord::{char_poly, intersection_matrix, to_chord_diagram};
use crate::dessin::{
    all_a_dessin, mask_range, subdessin_histogram_range, Dessin, QuasiTreeCounts, Scanner,
    SubdessinHistogram, WeightedDessin,
};
use crate::diagram::{
    reduce_to_one_vertex, state_histogram_range, state_mask_range, PdCode, StateHistogram,
};
use crate::error::{Error, Result};
use crate::linalg::spanning_tree_count;
use crate::poly::{binomial, GaussianInt, LaurentPoly};

/// Runs the two exponential scans.
pub trait Executor {
    fn subdessins(&self, d: &Dessin, cap: usize) -> Result<SubdessinHistogram>;
    fn states(&self, pd: &PdCode, cap: usize) -> Result<StateHistogram>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn subdessins(&self, d: &Dessin, cap: usize) -> Result<SubdessinHistogram> {
        Ok(subdessin_histogram_range(d, mask_range(d, cap)?))
    }

    fn states(&self, pd: &PdCode, cap: usize) -> Result<StateHistogram> {
        Ok(state_histogram_range(pd, state_mask_range(pd, cap)?))
    }
}

/// Scan ceilings plus the executor that runs the scans.
#[derive(Clone, Copy)]
pub struct Context<'a> {
    pub exec: &'a dyn Executor,
    pub scan_cap: usize,
    pub state_cap: usize,
}

impl Default for Context<'static> {
    fn default() -> Self {
        Self {
            exec: &Sequential,
            scan_cap: crate::DEFAULT_SCAN_CAP,
            state_cap: crate::DEFAULT_STATE_CAP,
        }
    }
}

impl Context<'_> {
    pub fn subdessins(&self, d: &Dessin) -> Result<SubdessinHistogram> {
        self.exec.subdessins(d, self.scan_cap)
    }

    pub fn state_sum_bracket(&self, pd: &PdCode) -> Result<LaurentPoly> {
        Ok(self.exec.states(pd, self.state_cap)?.bracket())
    }
}

fn delta_powers(max: usize) -> Vec<LaurentPoly> {
    let delta = LaurentPoly::delta();
    let mut out = vec![LaurentPoly::one()];
    for _ in 0..max {
        let next = out.last().unwrap() * &delta;
        out.push(next);
    }
    out
}

/// `Σ_H A^{e − 2e(H)} δ^{f(H) − 1}` over the classes accepted by `keep`.
fn partial_bracket(hist: &SubdessinHistogram, keep: impl Fn(usize) -> bool) -> Result<LaurentPoly> {
    let max_f = hist.counts.keys().map(|k| k.1 as usize).max().unwrap_or(1);
    let deltas = delta_powers(max_f.saturating_sub(1));
    let mut out = LaurentPoly::zero();
    for class in hist.classes() {
        let (c, mult) = class?;
        if !keep(c.g) {
            continue;
        }
        let exp = hist.e as i64 - 2 * c.e as i64;
        out += &deltas[c.f - 1].shift(exp).scale(&BigInt::from(mult));
    }
    Ok(out)
}

/// The bracket `⟨P⟩ = Σ_H A^{e − 2e(H)} (−A² − A⁻²)^{f(H) − 1}`.
pub fn bracket_from_histogram(hist: &SubdessinHistogram) -> Result<LaurentPoly> {
    partial_bracket(hist, |_| true)
}

pub fn bracket_via_dessin(pd: &PdCode, ctx: &Context) -> Result<LaurentPoly> {
    let d = all_a_dessin(pd)?;
    bracket_from_histogram(&ctx.subdessins(&d)?)
}

/// `(−A)^{−3w}⟨P⟩` rewritten in `q = A⁻²`.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> Result<LaurentPoly> {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let normalized = bracket.shift(-3 * writhe).scale(&BigInt::from(sign));
    let mut out = LaurentPoly::zero();
    for (e, c) in normalized.terms() {
        if e % 2 != 0 {
            return Err(Error::Internal(format!(
                "normalized bracket has odd exponent {e}"
            )));
        }
        out.add_term(-e / 2, c.clone());
    }
    Ok(out)
}

pub fn jones_polynomial(pd: &PdCode, ctx: &Context) -> Result<LaurentPoly> {
    let w = pd.writhe()?;
    jones_from_bracket(&bracket_via_dessin(pd, ctx)?, w)
}

/// `|⟨P⟩|` at `A² = −i`, which is `|J(−1)|`.
pub fn det_from_bracket(bracket: &LaurentPoly) -> Result<BigInt> {
    let minus_i = GaussianInt::new(0, -1);
    let (_, value) = bracket.factor_and_eval_a2(&minus_i)?;
    value.exact_abs().ok_or_else(|| {
        Error::Internal(format!(
            "|⟨P⟩(A² = −i)|² = {} is not a square",
            value.norm()
        ))
    })
}

/// Spanning trees of `d` minus spanning trees of its dual, for genus one.
pub fn tree_difference(d: &Dessin) -> Result<BigInt> {
    let g = d.counts().g;
    if g != 1 {
        return Err(Error::Precondition(format!(
            "the spanning-tree difference needs a genus-1 dessin, not genus {g}"
        )));
    }
    let dual = d.dual()?;
    let t = spanning_tree_count(d.n_vertices(), &d.graph_edges());
    let t_dual = spanning_tree_count(dual.n_vertices(), &dual.graph_edges());
    Ok((t - t_dual).abs())
}

/// `|det(IM − iI)|` of the all-A chord diagram, reducing to one vertex
/// first when needed.
pub fn det_charpoly(pd: &PdCode) -> Result<BigInt> {
    let d = all_a_dessin(pd)?;
    let d = if d.n_vertices() == 1 {
        d
    } else {
        all_a_dessin(&reduce_to_one_vertex(pd)?)?
    };
    let p = char_poly(&intersection_matrix(&to_chord_diagram(&d)?));
    p.eval_gaussian(&GaussianInt::i())
        .exact_abs()
        .ok_or_else(|| Error::Internal("|det(IM − iI)|² is not a square".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DetMethod {
    Quasitree,
    JonesEval,
    Charpoly,
    TreeDifference,
}

impl DetMethod {
    pub const ALL: [DetMethod; 4] = [
        DetMethod::Quasitree,
        DetMethod::JonesEval,
        DetMethod::Charpoly,
        DetMethod::TreeDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetMethod::Quasitree => "quasitree",
            DetMethod::JonesEval => "jones_eval",
            DetMethod::Charpoly => "charpoly",
            DetMethod::TreeDifference => "tree_difference",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminantReport {
    pub value: BigInt,
    pub methods: BTreeMap<DetMethod, BigInt>,
    /// Quasi-tree counts of the all-A dessin, when that route ran.
    pub quasi_trees: Option<QuasiTreeCounts>,
    pub agree: bool,
}

/// Runs the requested methods. With `skip_unmet`, methods whose
/// preconditions fail are left out instead of raising an error.
pub fn determinant(
    pd: &PdCode,
    methods: &[DetMethod],
    skip_unmet: bool,
    ctx: &Context,
) -> Result<DeterminantReport> {
    pd.require_connected()?;
    let d = all_a_dessin(pd)?;
    let mut out = BTreeMap::new();
    let mut quasi_trees = None;
    for &m in methods {
        let value = match m {
            DetMethod::Quasitree => {
                let s = QuasiTreeCounts::from_histogram(&ctx.subdessins(&d)?)?;
                let v = s.determinant();
                quasi_trees = Some(s);
                Ok(v)
            }
            DetMethod::JonesEval => det_from_bracket(&ctx.state_sum_bracket(pd)?),
            DetMethod::Charpoly => det_charpoly(pd),
            DetMethod::TreeDifference => tree_difference(&d),
        };
        match value {
            Ok(v) => {
                out.insert(m, v);
            }
            Err(Error::Precondition(_)) if skip_unmet => {}
            Err(e) => return Err(e),
        }
    }
    let mut values = out.values();
    let value = values
        .next()
        .cloned()
        .ok_or_else(|| Error::Precondition("no determinant method could run".into()))?;
    let agree = out.values().all(|v| *v == value);
    Ok(DeterminantReport {
        value,
        methods: out,
        quasi_trees,
        agree,
    })
}

/// Coefficients `a[l]` of `A^{M − 4l}` in `⟨P⟩`, `M = e + 2v − 2`, with the
/// cross-checks that the leading coefficients only see low-genus
/// sub-dessins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    /// `M = e + 2v − 2`.
    pub top: i64,
    /// `m = −e − 2f + 2`.
    pub bottom: i64,
    pub a: Vec<BigInt>,
    /// Coefficient of `A^{M − 4l}` in the sum restricted to `g(H) ≤ l`.
    pub local: Vec<BigInt>,
    /// `Σ_{g(H)=0, k(H)=v} (−1)^{v + e(H) − 1}`.
    pub a0_closed_form: BigInt,
    /// `(−1)^v (e′ − v + 1)` for loopless dessins.
    pub a1_adequate: Option<BigInt>,
}

impl CoefficientTable {
    pub fn locality_holds(&self) -> bool {
        self.a == self.local
    }

    /// Every nonzero bracket exponent is `≡ M (mod 4)` and in `[m, M]`.
    pub fn exponents_fit(&self, bracket: &LaurentPoly) -> bool {
        bracket
            .terms()
            .all(|(e, _)| e <= self.top && e >= self.bottom && (self.top - e) % 4 == 0)
    }
}

pub fn coefficient_table_from(d: &Dessin, hist: &SubdessinHistogram) -> Result<CoefficientTable> {
    let whole = hist
        .whole()
        .ok_or_else(|| Error::Precondition("histogram does not cover the full edge set".into()))?;
    let (v, e, f, g) = (
        whole.v as i64,
        whole.e as i64,
        whole.f as i64,
        whole.g as i64,
    );
    let top = e + 2 * v - 2;
    let bottom = -e - 2 * f + 2;
    let levels = ((top - bottom) / 4) as usize;
    let bracket = bracket_from_histogram(hist)?;
    let a: Vec<BigInt> = (0..=levels)
        .map(|l| bracket.coefficient_at(top - 4 * l as i64))
        .collect();

    let mut per_genus = vec![LaurentPoly::zero(); g as usize + 1];
    for (gen, slot) in per_genus.iter_mut().enumerate() {
        *slot = partial_bracket(hist, |x| x == gen)?;
    }
    let mut local = Vec::with_capacity(levels + 1);
    let mut prefix = LaurentPoly::zero();
    for l in 0..=levels {
        if let Some(p) = per_genus.get(l) {
            prefix += p;
        }
        local.push(prefix.coefficient_at(top - 4 * l as i64));
    }

    let mut a0_closed_form = BigInt::zero();
    for class in hist.classes() {
        let (c, mult) = class?;
        if c.g == 0 && c.k == c.v {
            let sign = if (v + c.e as i64 - 1).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            a0_closed_form += BigInt::from(mult) * sign;
        }
    }
    let a1_adequate = a1_adequate(d).ok();
    Ok(CoefficientTable {
        top,
        bottom,
        a,
        local,
        a0_closed_form,
        a1_adequate,
    })
}

pub fn coefficient_table(pd: &PdCode, ctx: &Context) -> Result<CoefficientTable> {
    let d = all_a_dessin(pd)?;
    coefficient_table_from(&d, &ctx.subdessins(&d)?)
}

/// `(−1)^v (e′ − v + 1)`, where `e′` counts edges up to sharing both ends.
pub fn a1_adequate(d: &Dessin) -> Result<BigInt> {
    if d.has_loop() {
        return Err(Error::Precondition(
            "the dessin has a loop, so the diagram is not A-adequate".into(),
        ));
    }
    if d.components() != 1 {
        return Err(Error::Disconnected);
    }
    let mut pairs: Vec<(usize, usize)> = d
        .graph_edges()
        .into_iter()
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let v = d.n_vertices() as i64;
    let value = BigInt::from(pairs.len() as i64 - v + 1);
    Ok(if v % 2 == 0 { value } else { -value })
}

/// `Σ_{g(H) ≤ l} (−1)^{e(H)} C(e(H) − 2g(H), l − g(H))` for a one-vertex
/// dessin's full-scan histogram.
pub fn one_vertex_coefficient(hist: &SubdessinHistogram, l: usize) -> Result<BigInt> {
    if hist.v != 1 {
        return Err(Error::Precondition(format!(
            "one-vertex formula applied to {} vertices",
            hist.v
        )));
    }
    let mut acc = BigInt::zero();
    for class in hist.classes() {
        let (c, mult) = class?;
        if c.g > l {
            continue;
        }
        let b = binomial(c.e as i64 - 2 * c.g as i64, (l - c.g) as i64) * BigInt::from(mult);
        if c.e % 2 == 0 {
            acc += b;
        } else {
            acc -= b;
        }
    }
    Ok(acc)
}

/// Both sides of `A^{−e}⟨P⟩ |_{A⁻⁴ = −2} = Σ_H (−2)^{g(H)}` for a
/// one-vertex all-A dessin.
pub fn jones_at_minus_two(pd: &PdCode, ctx: &Context) -> Result<(BigRational, BigInt)> {
    let d = all_a_dessin(pd)?;
    if d.n_vertices() != 1 {
        return Err(Error::Precondition(format!(
            "the all-A dessin has {} vertices; reduce to one vertex first",
            d.n_vertices()
        )));
    }
    let hist = ctx.subdessins(&d)?;
    jones_at_minus_two_from(&hist)
}

pub fn jones_at_minus_two_from(hist: &SubdessinHistogram) -> Result<(BigRational, BigInt)> {
    let bracket = bracket_from_histogram(hist)?;
    let lhs = bracket
        .shift(-(hist.e as i64))
        .eval_rational(-4, &BigInt::from(-2))?;
    let mut rhs = BigInt::zero();
    for class in hist.classes() {
        let (c, mult) = class?;
        rhs += num_traits::pow(BigInt::from(-2), c.g) * BigInt::from(mult);
    }
    Ok((lhs, rhs))
}

/// Divides by `(1 + u)` exactly; `p` has no negative exponents.
fn div_one_plus_u(p: &LaurentPoly) -> Result<LaurentPoly> {
    let Some(deg) = p.max_exponent() else {
        return Ok(LaurentPoly::zero());
    };
    let deg = deg as usize;
    let mut c: Vec<BigInt> = (0..=deg).map(|k| p.coefficient_at(k as i64)).collect();
    let mut q = vec![BigInt::zero(); deg];
    for k in (1..=deg).rev() {
        q[k - 1] = c[k].clone();
        let t = c[k].clone();
        c[k - 1] -= t;
        c[k] = BigInt::zero();
    }
    if !c[0].is_zero() {
        return Err(Error::Internal(format!(
            "division by (1 + u) leaves remainder {}",
            c[0]
        )));
    }
    Ok(LaurentPoly::from_terms(
        q.into_iter().enumerate().map(|(k, x)| (k as i64, x)),
    ))
}

/// `⟨P⟩ = A^e Σ_{H ⊆ D̃} u^{g(H)} (1 + u)^{−2g(H)} Π_{c ∈ H} ((−u)^{μ(c)} − 1)`
/// with `u = A⁻⁴`, cleared over `(1 + u)^{2g(D̃)}`.
pub fn weighted_bracket(wd: &WeightedDessin, e_total: u64) -> Result<LaurentPoly> {
    let d = &wd.base;
    if d.n_vertices() != 1 {
        return Err(Error::Precondition(
            "weighted dessins have one vertex".into(),
        ));
    }
    if wd.total_edges() != e_total {
        return Err(Error::Precondition(format!(
            "weights sum to {}, not {e_total}",
            wd.total_edges()
        )));
    }
    let m = d.n_edges();
    if m > crate::MAX_SCAN_EDGES {
        return Err(Error::CapExceeded {
            what: "weighted sub-dessin scan over edges",
            size: m,
            cap: crate::MAX_SCAN_EDGES,
        });
    }
    let top_genus = d.counts().g;
    let one_plus_u = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    let factors: Vec<LaurentPoly> = wd
        .weights
        .iter()
        .map(|&mu| {
            let sign = if mu % 2 == 0 { 1 } else { -1 };
            LaurentPoly::from_terms([(mu as i64, sign), (0, -1)])
        })
        .collect();
    let mut pow_cache = vec![LaurentPoly::one()];
    for _ in 0..2 * top_genus {
        let next = pow_cache.last().unwrap() * &one_plus_u;
        pow_cache.push(next);
    }
    let mut scanner = Scanner::new(d);
    let mut numerator = LaurentPoly::zero();
    for mask in 0..1u64 << m {
        let g = scanner.counts(mask)?.g;
        let mut term = LaurentPoly::monomial(1, g as i64);
        for (i, f) in factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                term = &term * f;
            }
        }
        numerator += &(&term * &pow_cache[2 * (top_genus - g)]);
    }
    let mut q = numerator;
    for _ in 0..2 * top_genus {
        q = div_one_plus_u(&q)?;
    }
    Ok(q.substitute_power(-4).shift(e_total as i64))
}

/// `|Π pᵢ Π qⱼ (Σ 1/pᵢ − Σ 1/qⱼ)|` for `K(p₁,…,p_n, −q₁,…,−q_m)`.
pub fn pretzel_determinant(p: &[u32], q: &[u32]) -> Result<BigInt> {
    if p.is_empty() || q.is_empty() {
        return Err(Error::Precondition(
            "the pretzel formula needs parameters on both sides".into(),
        ));
    }
    if p.iter().chain(q).any(|&x| x == 0) {
        return Err(Error::Precondition(
            "pretzel parameters must be positive".into(),
        ));
    }
    let prod: BigInt = p.iter().chain(q).map(|&x| BigInt::from(x)).product();
    let recip = |x: &u32| BigRational::new(BigInt::one(), BigInt::from(*x));
    let sum: BigRational =
        p.iter().map(recip).sum::<BigRational>() - q.iter().map(recip).sum::<BigRational>();
    let value = BigRational::from_integer(prod) * sum;
    if !value.is_integer() {
        return Err(Error::Internal(format!(
            "pretzel determinant {value} is not integral"
        )));
    }
    Ok(value.to_integer().abs())
}

/// `Σ_H (−1)^{e(H)}`; zero for one-vertex genus-0 dessins with an edge.
pub fn alternating_subset_sum(hist: &SubdessinHistogram) -> i64 {
    hist.counts
        .iter()
        .map(|(&(e, _, _), &c)| {
            let c = c.to_i64().unwrap_or(i64::MAX);
            if e % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .sum()
}
