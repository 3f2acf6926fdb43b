//! Argument definitions and one handler per subcommand. Handlers return a
//! [`Report`]; printing, caching and exit codes live in [`crate::run`].

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dessin_core::chord::{
    char_poly, intersection_matrix, quasi_counts_and_det, to_chord_diagram, ChordDiagram,
};
use dessin_core::dessin::{all_a_dessin, build_dessin, Dessin, QuasiTreeCounts};
use dessin_core::diagram::{pretzel, reduce_to_one_vertex, twist, PdCode, Smoothing, State};
use dessin_core::invariants::{
    bracket_from_histogram, bracket_via_dessin, coefficient_table_from, determinant,
    jones_from_bracket, one_vertex_coefficient, pretzel_determinant, tree_difference, Context,
    DetMethod,
};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::error::{CliError, CliResult, ExitCode};
use crate::input::{self, Object, Resolved};
use crate::{json as enc, Report};

/// Scan caps above this need `--allow-large-cap`.
pub const CAP_ACK_LIMIT: usize = 28;

#[derive(Parser, Debug)]
#[command(
    name = "dessin",
    version,
    about = "Exact link invariants through ribbon graphs (dessins)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Ceiling on the crossings of state sums and the edges of sub-dessin
    /// scans (defaults: 20 and 24).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Accept a --cap above 28.
    #[arg(long, global = true)]
    pub allow_large_cap: bool,
    /// Threads for the exponential scans (default: one per core).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON-lines results cache.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Plain text instead of JSON.
    #[arg(long, global = true)]
    pub plain: bool,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Input {
    /// PD code, e.g. "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]".
    #[arg(long)]
    pub pd: Option<String>,
    /// Knot-table entry, e.g. 8_21.
    #[arg(long)]
    pub name: Option<String>,
    /// Chord diagram as its endpoint sequence, e.g. "1 2 1 2".
    #[arg(long)]
    pub chords: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodArg {
    Quasitree,
    Jones,
    Charpoly,
    Treediff,
    All,
}

impl MethodArg {
    fn methods(self) -> Vec<DetMethod> {
        match self {
            MethodArg::Quasitree => vec![DetMethod::Quasitree],
            MethodArg::Jones => vec![DetMethod::JonesEval],
            MethodArg::Charpoly => vec![DetMethod::Charpoly],
            MethodArg::Treediff => vec![DetMethod::TreeDifference],
            MethodArg::All => DetMethod::ALL.to_vec(),
        }
    }

    fn name(self) -> &'static str {
        match self {
            MethodArg::Quasitree => "quasitree",
            MethodArg::Jones => "jones",
            MethodArg::Charpoly => "charpoly",
            MethodArg::Treediff => "treediff",
            MethodArg::All => "all",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Kauffman bracket by the sub-dessin expansion.
    Bracket {
        #[command(flatten)]
        input: Input,
        /// Also run the state-sum oracle and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Jones polynomial in q = A^-2.
    Jones {
        #[command(flatten)]
        input: Input,
    },
    /// Determinant by one or all routes.
    Det {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Report the time spent in each method.
        #[arg(long)]
        timings: bool,
    },
    /// Dessin of a state: counts and text form.
    Dessin {
        #[command(flatten)]
        input: Input,
        /// One letter A or B per crossing (default: all A).
        #[arg(long)]
        state: Option<String>,
        /// Also report the dual dessin.
        #[arg(long)]
        dual: bool,
    },
    /// Spanning quasi-tree counts by genus.
    Quasitrees {
        #[command(flatten)]
        input: Input,
    },
    /// Leading bracket coefficients and their closed-form checks.
    Coeffs {
        #[command(flatten)]
        input: Input,
        /// Also report the lowest coefficients (from the mirror image).
        #[arg(long)]
        lowest: bool,
    },
    /// Reidemeister-II reduction to a one-vertex all-A dessin.
    Reduce {
        #[command(flatten)]
        input: Input,
    },
    /// Intersection matrix and characteristic polynomial of the chord
    /// diagram (diagrams are reduced to one vertex first).
    Charpoly {
        #[command(flatten)]
        input: Input,
    },
    /// Pretzel link: positive parameters p, negative ones -q.
    #[command(allow_negative_numbers = true)]
    Pretzel {
        #[arg(required = true, num_args = 1..)]
        params: Vec<i64>,
        /// Closed-form determinant next to the state-sum value.
        #[arg(long)]
        det: bool,
    },
    /// (p, q)-twist knot.
    Twist {
        p: u32,
        q: u32,
        /// Determinant by every applicable route.
        #[arg(long)]
        det: bool,
    },
    /// Runs the invariant suite over the knot table and generated families.
    Verify {
        /// Seed of the random part of the corpus.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Size of the random part of the corpus.
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

/// Everything a handler needs besides its own arguments.
pub struct Env<'a> {
    pub ctx: Context<'a>,
}

impl Global {
    /// `(scan cap, state cap)`.
    pub fn caps(&self) -> CliResult<(usize, usize)> {
        match self.cap {
            None => Ok((
                dessin_core::DEFAULT_SCAN_CAP,
                dessin_core::DEFAULT_STATE_CAP,
            )),
            Some(0) => Err(CliError::usage("--cap must be at least 1")),
            Some(c) if c > dessin_core::MAX_SCAN_EDGES => Err(CliError::usage(format!(
                "--cap {c} is above the hard limit of {}",
                dessin_core::MAX_SCAN_EDGES
            ))),
            Some(c) if c > CAP_ACK_LIMIT && !self.allow_large_cap => Err(CliError::usage(format!(
                "--cap {c} means scans of up to 2^{c} subsets; pass --allow-large-cap to confirm"
            ))),
            Some(c) => Ok((c, c)),
        }
    }
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Bracket { .. } => "bracket",
            Command::Jones { .. } => "jones",
            Command::Det { .. } => "det",
            Command::Dessin { .. } => "dessin",
            Command::Quasitrees { .. } => "quasitrees",
            Command::Coeffs { .. } => "coeffs",
            Command::Reduce { .. } => "reduce",
            Command::Charpoly { .. } => "charpoly",
            Command::Pretzel { .. } => "pretzel",
            Command::Twist { .. } => "twist",
            Command::Verify { .. } => "verify",
        }
    }

    fn input(&self) -> Option<&Input> {
        match self {
            Command::Bracket { input, .. }
            | Command::Jones { input }
            | Command::Det { input, .. }
            | Command::Dessin { input, .. }
            | Command::Quasitrees { input }
            | Command::Coeffs { input, .. }
            | Command::Reduce { input }
            | Command::Charpoly { input } => Some(input),
            _ => None,
        }
    }

    /// Resolves the input and the flags that enter the cache key.
    pub fn prepare(&self) -> CliResult<Prepared> {
        let resolved = match self.input() {
            Some(i) => Some(input::resolve(
                i.pd.as_deref(),
                i.name.as_deref(),
                i.chords.as_deref(),
                input::table_from_env,
            )?),
            None => None,
        };
        let flags: Vec<(&'static str, String)> = match self {
            Command::Bracket { oracle, .. } => vec![("oracle", oracle.to_string())],
            Command::Det {
                method, timings, ..
            } => {
                vec![
                    ("method", method.name().into()),
                    ("timings", timings.to_string()),
                ]
            }
            Command::Dessin { state, dual, .. } => vec![
                ("state", state.clone().unwrap_or_default()),
                ("dual", dual.to_string()),
            ],
            Command::Coeffs { lowest, .. } => vec![("lowest", lowest.to_string())],
            Command::Pretzel { params, det } => {
                vec![("params", format!("{params:?}")), ("det", det.to_string())]
            }
            Command::Twist { p, q, det } => {
                vec![
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("det", det.to_string()),
                ]
            }
            Command::Verify { seed, samples } => {
                vec![("seed", seed.to_string()), ("samples", samples.to_string())]
            }
            _ => vec![],
        };
        Ok(Prepared { resolved, flags })
    }

    /// Whether results may be cached: timings vary between runs.
    pub fn cacheable(&self) -> bool {
        !matches!(self, Command::Det { timings: true, .. })
    }
}

pub struct Prepared {
    pub resolved: Option<Resolved>,
    pub flags: Vec<(&'static str, String)>,
}

impl Prepared {
    pub fn canonical_input(&self) -> String {
        self.resolved
            .as_ref()
            .map(Resolved::canonical)
            .unwrap_or_default()
    }
}

/// Wraps a command result in the versioned envelope.
fn envelope(command: &str, input: Option<&Resolved>, result: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), json!(crate::SCHEMA));
    doc.insert("command".into(), json!(command));
    if let Some(r) = input {
        doc.insert("input".into(), r.echo.clone());
    }
    doc.insert("result".into(), result);
    Value::Object(doc)
}

pub fn execute(cmd: &Command, prepared: &Prepared, env: &Env) -> CliResult<(Report, ExitCode)> {
    let name = cmd.name();
    let input = prepared.resolved.as_ref();
    let need = || input.expect("commands with an input resolve it in prepare");
    let (result, plain, code) = match cmd {
        Command::Bracket { oracle, .. } => with_ok(bracket(need(), *oracle, env)?),
        Command::Jones { .. } => with_ok(jones(need().diagram(name)?, env)?),
        Command::Det {
            method, timings, ..
        } => det(need(), *method, *timings, env)?,
        Command::Dessin { state, dual, .. } => with_ok(dessin(need(), state.as_deref(), *dual)?),
        Command::Quasitrees { .. } => with_ok(quasitrees(need(), env)?),
        Command::Coeffs { lowest, .. } => coeffs(need(), *lowest, env)?,
        Command::Reduce { .. } => with_ok(reduce(need().diagram(name)?)?),
        Command::Charpoly { .. } => with_ok(charpoly(need())?),
        Command::Pretzel { params, det } => pretzel_cmd(params, *det, env)?,
        Command::Twist { p, q, det } => twist_cmd(*p, *q, *det, env)?,
        Command::Verify { seed, samples } => {
            let outcome = crate::verify::run(*seed, *samples, &env.ctx);
            let code = if outcome.passed() {
                ExitCode::Ok
            } else {
                ExitCode::VerifyFailed
            };
            (outcome.to_json(), outcome.to_plain(), code)
        }
    };
    Ok((
        Report {
            json: envelope(name, input, result),
            plain,
        },
        code,
    ))
}

type Outcome = (Value, String, ExitCode);

fn with_ok((json, plain): (Value, String)) -> Outcome {
    (json, plain, ExitCode::Ok)
}

fn chord_dessin(cd: &ChordDiagram) -> Dessin {
    cd.to_dessin()
}

fn bracket(r: &Resolved, oracle: bool, env: &Env) -> CliResult<(Value, String)> {
    let b = match &r.object {
        Object::Diagram(pd) => bracket_via_dessin(pd, &env.ctx)?,
        Object::Chords(cd) => bracket_from_histogram(&env.ctx.subdessins(&chord_dessin(cd))?)?,
    };
    let mut out = json!({ "bracket": enc::poly(&b, "A") });
    let mut plain = format!("bracket: {}\n", b.render("A"));
    if oracle {
        let pd = r.diagram("bracket --oracle")?;
        let o = env.ctx.state_sum_bracket(pd)?;
        out["oracle"] = json!({ "bracket": enc::poly(&o, "A"), "agrees": o == b });
        plain += &format!("state sum agrees: {}\n", o == b);
        if o != b {
            return Err(CliError::new(
                ExitCode::Internal,
                format!("sub-dessin bracket {b} differs from the state sum {o}"),
            ));
        }
    }
    Ok((out, plain))
}

fn jones(pd: &PdCode, env: &Env) -> CliResult<(Value, String)> {
    let w = pd.writhe()?;
    let b = bracket_via_dessin(pd, &env.ctx)?;
    let j = jones_from_bracket(&b, w)?;
    Ok((
        json!({ "writhe": w, "bracket": enc::poly(&b, "A"), "jones": enc::poly(&j, "q") }),
        format!("writhe: {w}\njones: {}\n", j.render("q")),
    ))
}

fn det(r: &Resolved, method: MethodArg, timings: bool, env: &Env) -> CliResult<Outcome> {
    let skip_unmet = method == MethodArg::All;
    let mut values: BTreeMap<DetMethod, BigInt> = BTreeMap::new();
    let mut skipped: Vec<(&str, String)> = Vec::new();
    let mut times: Map<String, Value> = Map::new();
    let mut quasi: Option<QuasiTreeCounts> = None;
    for m in method.methods() {
        let start = Instant::now();
        let value: dessin_core::Result<BigInt> = match (&r.object, m) {
            (Object::Diagram(pd), _) => determinant(pd, &[m], false, &env.ctx).map(|rep| {
                if rep.quasi_trees.is_some() {
                    quasi = rep.quasi_trees.clone();
                }
                rep.value
            }),
            (Object::Chords(cd), DetMethod::Quasitree) => {
                QuasiTreeCounts::from_histogram(&env.ctx.subdessins(&chord_dessin(cd))?).map(|s| {
                    let v = s.determinant();
                    quasi = Some(s);
                    v
                })
            }
            (Object::Chords(cd), DetMethod::Charpoly) => quasi_counts_and_det(cd).map(|x| x.1),
            (Object::Chords(cd), DetMethod::TreeDifference) => tree_difference(&chord_dessin(cd)),
            (Object::Chords(_), DetMethod::JonesEval) => Err(dessin_core::Error::Precondition(
                "a chord diagram has no state sum".into(),
            )),
        };
        match value {
            Ok(v) => {
                values.insert(m, v);
                times.insert(m.name().into(), json!(start.elapsed().as_secs_f64() * 1e3));
            }
            Err(dessin_core::Error::Precondition(why)) if skip_unmet => {
                skipped.push((m.name(), why))
            }
            Err(e) => return Err(e.into()),
        }
    }
    let Some(value) = values.values().next().cloned() else {
        return Err(CliError::new(
            ExitCode::Precondition,
            "no determinant method could run",
        ));
    };
    let agree = values.values().all(|v| *v == value);
    let mut methods = Map::new();
    for (m, v) in &values {
        methods.insert(m.name().into(), enc::int(v));
    }
    let mut out = json!({
        "value": enc::int(&value),
        "methods": methods,
        "agree": agree,
        "skipped": skipped.iter().map(|(m, why)| json!({"method": m, "reason": why})).collect::<Vec<_>>(),
    });
    if let Some(s) = &quasi {
        out["quasi_trees"] = enc::quasi_trees(s);
    }
    if timings {
        out["timings_ms"] = Value::Object(times);
    }
    let mut plain = format!("determinant: {value}\n");
    for (m, v) in &values {
        plain += &format!("  {}: {v}\n", m.name());
    }
    for (m, why) in &skipped {
        plain += &format!("  {m}: skipped ({why})\n");
    }
    if let Some(s) = &quasi {
        plain += &format!("quasi-trees: {:?}\n", s.0);
    }
    plain += &format!("methods agree: {agree}\n");
    let code = if agree {
        ExitCode::Ok
    } else {
        ExitCode::Internal
    };
    Ok((out, plain, code))
}

fn parse_state(text: &str, n: usize) -> CliResult<State> {
    let choices: Vec<Smoothing> = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            'A' | 'a' => Ok(Smoothing::A),
            'B' | 'b' => Ok(Smoothing::B),
            other => Err(CliError::bad_input(format!(
                "state letter {other:?} is not A or B"
            ))),
        })
        .collect::<CliResult<_>>()?;
    if choices.len() != n {
        return Err(CliError::bad_input(format!(
            "state has {} letters for {n} crossings",
            choices.len()
        )));
    }
    Ok(State::from_smoothings(choices))
}

fn describe(d: &Dessin) -> (Value, String) {
    let c = d.counts();
    let loops = d.graph_edges().iter().filter(|(a, b)| a == b).count();
    (
        json!({ "counts": enc::counts(&c), "loops": loops, "dessin": d.render() }),
        format!(
            "v={} e={} f={} k={} g={} n={} loops={loops}\n{}\n",
            c.v,
            c.e,
            c.f,
            c.k,
            c.g,
            c.n,
            d.render()
        ),
    )
}

fn dessin(r: &Resolved, state: Option<&str>, dual: bool) -> CliResult<(Value, String)> {
    let (d, state_text) = match &r.object {
        Object::Diagram(pd) => {
            let n = pd.n_crossings();
            let s = match state {
                Some(text) => parse_state(text, n)?,
                None => State::all_a(n),
            };
            let letters: String = s
                .as_slice()
                .iter()
                .map(|x| if *x == Smoothing::A { 'A' } else { 'B' })
                .collect();
            (build_dessin(pd, &s)?, Some(letters))
        }
        Object::Chords(cd) => {
            if state.is_some() {
                return Err(CliError::bad_input(
                    "--state applies to diagrams, not chord diagrams",
                ));
            }
            (chord_dessin(cd), None)
        }
    };
    let (mut out, mut plain) = describe(&d);
    if let Some(s) = &state_text {
        out["state"] = json!(s);
        plain = format!("state: {s}\n{plain}");
    }
    if dual {
        let (dj, dp) = describe(&d.dual()?);
        out["dual"] = dj;
        plain += &format!("dual:\n{dp}");
    }
    Ok((out, plain))
}

fn dessin_of(r: &Resolved) -> CliResult<Dessin> {
    Ok(match &r.object {
        Object::Diagram(pd) => all_a_dessin(pd)?,
        Object::Chords(cd) => chord_dessin(cd),
    })
}

fn quasitrees(r: &Resolved, env: &Env) -> CliResult<(Value, String)> {
    let d = dessin_of(r)?;
    let s = QuasiTreeCounts::from_histogram(&env.ctx.subdessins(&d)?)?;
    let alt = s.alternating_sum();
    Ok((
        json!({
            "counts": enc::counts(&d.counts()),
            "quasi_trees": enc::quasi_trees(&s),
            "alternating_sum": enc::int(&alt),
            "determinant": enc::int(&s.determinant()),
        }),
        format!("quasi-trees: {:?}\ndeterminant: {}\n", s.0, s.determinant()),
    ))
}

fn coefficient_report(d: &Dessin, env: &Env) -> CliResult<(Value, String, bool)> {
    let hist = env.ctx.subdessins(d)?;
    let t = coefficient_table_from(d, &hist)?;
    let loopless = !d.has_loop();
    let a0_matches = t.a.first() == Some(&t.a0_closed_form);
    let a1_matches = t.a1_adequate.as_ref().map(|x| t.a.get(1) == Some(x));
    let mut ok = t.locality_holds() && a0_matches && a1_matches != Some(false);
    let mut out = json!({
        "M": t.top,
        "m": t.bottom,
        "a": enc::ints(&t.a),
        "genus_restricted": enc::ints(&t.local),
        "locality_holds": t.locality_holds(),
        "a0_closed_form": enc::int(&t.a0_closed_form),
        "a0_matches": a0_matches,
        "loopless": loopless,
        "a1_adequate": t.a1_adequate.as_ref().map(enc::int),
        "a1_matches": a1_matches,
    });
    let mut plain =
        format!(
        "M = {}, m = {}\na: [{}]\nlocality holds: {}\na0 closed form: {} (matches: {a0_matches})\n",
        t.top,
        t.bottom,
        t.a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        t.locality_holds(),
        t.a0_closed_form
    );
    if let (Some(x), Some(m)) = (&t.a1_adequate, a1_matches) {
        plain += &format!("a1 adequate formula: {x} (matches: {m})\n");
    }
    if d.n_vertices() == 1 {
        let formula: Vec<BigInt> = (0..t.a.len())
            .map(|l| one_vertex_coefficient(&hist, l))
            .collect::<dessin_core::Result<_>>()?;
        let matches = formula == t.a;
        ok &= matches;
        out["one_vertex_formula"] = enc::ints(&formula);
        out["one_vertex_matches"] = json!(matches);
        plain += &format!("one-vertex formula matches: {matches}\n");
    }
    Ok((out, plain, ok))
}

fn coeffs(r: &Resolved, lowest: bool, env: &Env) -> CliResult<Outcome> {
    let (mut out, mut plain, mut ok) = coefficient_report(&dessin_of(r)?, env)?;
    if lowest {
        let pd = r.diagram("coeffs --lowest")?;
        let (lj, lp, lok) = coefficient_report(&all_a_dessin(&pd.mirror())?, env)?;
        out["lowest"] = lj;
        plain += &format!("lowest (mirror image):\n{lp}");
        ok &= lok;
    }
    let code = if ok { ExitCode::Ok } else { ExitCode::Internal };
    Ok((out, plain, code))
}

fn reduce(pd: &PdCode) -> CliResult<(Value, String)> {
    let before = all_a_dessin(pd)?.counts();
    let reduced = reduce_to_one_vertex(pd)?;
    let after = all_a_dessin(&reduced)?.counts();
    Ok((
        json!({
            "pd": reduced.render(),
            "crossings": reduced.n_crossings(),
            "before": enc::counts(&before),
            "after": enc::counts(&after),
        }),
        format!("{}\n", reduced.render()),
    ))
}

fn charpoly(r: &Resolved) -> CliResult<(Value, String)> {
    let (cd, reduced) = match &r.object {
        Object::Chords(cd) => (cd.clone(), None),
        Object::Diagram(pd) => {
            let d = all_a_dessin(pd)?;
            if d.n_vertices() == 1 {
                (to_chord_diagram(&d)?, None)
            } else {
                let rpd = reduce_to_one_vertex(pd)?;
                (to_chord_diagram(&all_a_dessin(&rpd)?)?, Some(rpd))
            }
        }
    };
    let im = intersection_matrix(&cd);
    let p = char_poly(&im);
    let (s, det) = quasi_counts_and_det(&cd)?;
    let mut out = json!({
        "chords": cd.render(),
        "matrix": im.entries,
        "charpoly": p.render(),
        "quasi_trees": enc::quasi_trees(&s),
        "determinant": enc::int(&det),
    });
    if let Some(rpd) = &reduced {
        out["reduced_pd"] = json!(rpd.render());
    }
    Ok((
        out,
        format!(
            "chords: {}\ncharpoly: {}\nquasi-trees: {:?}\ndeterminant: {det}\n",
            cd.render(),
            p.render(),
            s.0
        ),
    ))
}

fn split_params(params: &[i64]) -> CliResult<(Vec<u32>, Vec<u32>)> {
    let mut p = Vec::new();
    let mut q = Vec::new();
    for &x in params {
        let mag = u32::try_from(x.unsigned_abs())
            .map_err(|_| CliError::bad_input(format!("pretzel parameter {x} is too large")))?;
        match x.signum() {
            1 => p.push(mag),
            -1 => q.push(mag),
            _ => return Err(CliError::bad_input("pretzel parameters must be nonzero")),
        }
    }
    Ok((p, q))
}

fn family_report(pd: &PdCode) -> CliResult<(Value, String)> {
    let c = all_a_dessin(pd)?.counts();
    Ok((
        json!({ "pd": pd.render(), "components": pd.components(), "counts": enc::counts(&c) }),
        format!(
            "{}\ncomponents: {}\nall-A dessin: v={} e={} f={} g={}\n",
            pd.render(),
            pd.components(),
            c.v,
            c.e,
            c.f,
            c.g
        ),
    ))
}

fn pretzel_cmd(params: &[i64], det: bool, env: &Env) -> CliResult<Outcome> {
    let (p, q) = split_params(params)?;
    let pd = pretzel(&p, &q)?;
    let (mut out, mut plain) = family_report(&pd)?;
    out["p"] = json!(p);
    out["q"] = json!(q);
    let mut code = ExitCode::Ok;
    if det {
        let oracle = determinant(&pd, &[DetMethod::JonesEval], false, &env.ctx)?.value;
        let closed = pretzel_determinant(&p, &q);
        let agree = closed.as_ref().ok().map(|c| *c == oracle);
        out["det"] = json!({
            "closed_form": closed.as_ref().ok().map(enc::int),
            "closed_form_error": closed.as_ref().err().map(|e| e.to_string()),
            "jones_eval": enc::int(&oracle),
            "agree": agree,
        });
        match &closed {
            Ok(c) => plain += &format!("closed form: {c}\njones_eval: {oracle}\n"),
            Err(e) => plain += &format!("closed form: unavailable ({e})\njones_eval: {oracle}\n"),
        }
        if agree == Some(false) {
            code = ExitCode::Internal;
        }
    }
    Ok((out, plain, code))
}

fn twist_cmd(p: u32, q: u32, det: bool, env: &Env) -> CliResult<Outcome> {
    let pd = twist(p, q)?;
    let (mut out, mut plain) = family_report(&pd)?;
    let mut code = ExitCode::Ok;
    if det {
        let rep = determinant(&pd, &DetMethod::ALL, true, &env.ctx)?;
        let mut methods = Map::new();
        for (m, v) in &rep.methods {
            methods.insert(m.name().into(), enc::int(v));
        }
        out["det"] =
            json!({ "value": enc::int(&rep.value), "methods": methods, "agree": rep.agree });
        plain += &format!("determinant: {}\nmethods agree: {}\n", rep.value, rep.agree);
        if !rep.agree {
            code = ExitCode::Internal;
        }
    }
    Ok((out, plain, code))
}
