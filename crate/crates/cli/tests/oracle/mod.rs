//! Test-side reference implementations. They read raw PD tuples, rotation
//! systems and chord sequences and share no code with `dessin-core`.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Laurent polynomial in `A` with small integer coefficients, zero terms
/// removed.
pub type Poly = BTreeMap<i64, i128>;

pub fn poly_of(core: &dessin_core::poly::LaurentPoly) -> Poly {
    use num_traits::ToPrimitive;
    core.terms()
        .map(|(e, c)| (e, c.to_i128().expect("coefficient fits in i128")))
        .collect()
}

fn add_into(p: &mut Poly, e: i64, c: i128) {
    let slot = p.entry(e).or_insert(0);
    *slot += c;
    if *slot == 0 {
        p.remove(&e);
    }
}

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, x) in p {
        for (b, y) in q {
            add_into(&mut out, a + b, x * y);
        }
    }
    out
}

/// `(−A² − A⁻²)^k` for `k = 0..=max`.
fn delta_powers(max: usize) -> Vec<Poly> {
    let delta: Poly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut out = vec![Poly::from([(0, 1)])];
    for _ in 0..max {
        let next = mul(out.last().unwrap(), &delta);
        out.push(next);
    }
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Circles of the state with B-smoothings exactly at the crossings in
/// `b_set`: A joins arcs `(a, b)` and `(c, d)`, B joins `(a, d)` and `(b, c)`.
pub fn state_circles(pd: &[[u32; 4]], b_set: u64) -> usize {
    let labels = pd.iter().flatten().max().map_or(1, |&m| m as usize + 1);
    let mut dsu = Dsu::new(labels);
    let mut used = vec![false; labels];
    for (i, &[a, b, c, d]) in pd.iter().enumerate() {
        let [a, b, c, d] = [a, b, c, d].map(|x| x as usize);
        for x in [a, b, c, d] {
            used[x] = true;
        }
        if b_set >> i & 1 == 0 {
            dsu.union(a, b);
            dsu.union(c, d);
        } else {
            dsu.union(a, d);
            dsu.union(b, c);
        }
    }
    (0..labels).filter(|&x| used[x] && dsu.find(x) == x).count()
}

/// `Σ_S A^{#A − #B} δ^{circles − 1}` over all `2^n` states.
pub fn bracket(pd: &[[u32; 4]]) -> Poly {
    let n = pd.len();
    let mut hist: BTreeMap<(i64, usize), i128> = BTreeMap::new();
    for s in 0..1u64 << n {
        let b = s.count_ones() as i64;
        *hist
            .entry((n as i64 - 2 * b, state_circles(pd, s)))
            .or_insert(0) += 1;
    }
    let deltas = delta_powers(2 * n);
    let mut out = Poly::new();
    for ((exp, circles), mult) in hist {
        for (e, c) in &deltas[circles - 1] {
            add_into(&mut out, e + exp, c * mult);
        }
    }
    out
}

/// `|⟨K⟩(e^{iπ/4})|`. Exponents of a bracket agree mod 4, so this is the
/// absolute alternating sum of its coefficients read from the top.
pub fn det_from(bracket: &Poly) -> i128 {
    let Some(&top) = bracket.keys().next_back() else {
        return 0;
    };
    bracket
        .iter()
        .map(|(e, c)| {
            assert_eq!((top - e) % 4, 0, "bracket exponents disagree mod 4");
            if (top - e) / 4 % 2 == 0 {
                *c
            } else {
                -*c
            }
        })
        .sum::<i128>()
        .abs()
}

/// A rotation system read off a dessin or a chord diagram.
#[derive(Clone, Debug)]
pub struct Ribbon {
    pub rotations: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubCounts {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub k: usize,
    pub g: usize,
}

impl Ribbon {
    pub fn of(d: &dessin_core::dessin::Dessin) -> Self {
        Self {
            rotations: d.rotations().to_vec(),
            edges: d.edges().to_vec(),
        }
    }

    /// One vertex whose rotation is the endpoint sequence; chord `c` joins
    /// its two endpoint positions.
    pub fn of_chords(sequence: &[u32]) -> Self {
        let mut first: BTreeMap<u32, usize> = BTreeMap::new();
        let mut edges = Vec::new();
        for (at, &l) in sequence.iter().enumerate() {
            match first.remove(&l) {
                Some(p) => edges.push((l, [p, at])),
                None => {
                    first.insert(l, at);
                }
            }
        }
        assert!(first.is_empty(), "every chord has two endpoints");
        edges.sort();
        Self {
            rotations: vec![(0..sequence.len()).collect()],
            edges: edges.into_iter().map(|(_, e)| e).collect(),
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.rotations.len()
    }

    /// Counts of the spanning sub-ribbon-graph keeping the edges in `mask`.
    pub fn sub_counts(&self, mask: u64) -> SubCounts {
        let h = 2 * self.edges.len();
        let mut mate = vec![usize::MAX; h];
        let mut kept = vec![false; h];
        let mut e = 0;
        for (i, &[x, y]) in self.edges.iter().enumerate() {
            mate[x] = y;
            mate[y] = x;
            if mask >> i & 1 == 1 {
                kept[x] = true;
                kept[y] = true;
                e += 1;
            }
        }
        let v = self.rotations.len();
        let mut vertex = vec![0; h];
        let mut next = vec![usize::MAX; h];
        let mut isolated = 0;
        for (vi, rot) in self.rotations.iter().enumerate() {
            let live: Vec<usize> = rot.iter().copied().filter(|&x| kept[x]).collect();
            if live.is_empty() {
                isolated += 1;
            }
            for (j, &x) in live.iter().enumerate() {
                vertex[x] = vi;
                next[x] = live[(j + 1) % live.len()];
            }
        }
        let mut seen = vec![false; h];
        let mut f = isolated;
        for start in 0..h {
            if !kept[start] || seen[start] {
                continue;
            }
            f += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = next[mate[x]];
            }
        }
        let mut dsu = Dsu::new(v);
        let mut k = v;
        for (i, &[x, y]) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 && dsu.union(vertex[x], vertex[y]) {
                k -= 1;
            }
        }
        let twice_g = 2 * k + e - v - f;
        assert_eq!(twice_g % 2, 0, "Euler characteristic parity");
        SubCounts {
            v,
            e,
            f,
            k,
            g: twice_g / 2,
        }
    }

    /// `s[j]`: connected one-face spanning sub-graphs of genus `j`.
    pub fn quasi_trees(&self) -> Vec<u64> {
        let top = self.sub_counts(full(self.edges.len())).g;
        let mut s = vec![0; top + 1];
        for mask in 0..1u64 << self.edges.len() {
            let c = self.sub_counts(mask);
            if c.f == 1 && c.k == 1 {
                s[c.g] += 1;
            }
        }
        s
    }

    /// Vertex pairs joined by at least one edge, and whether any edge is a
    /// loop.
    pub fn simple_edges(&self) -> (usize, bool) {
        let mut vertex = vec![0; 2 * self.edges.len()];
        for (vi, rot) in self.rotations.iter().enumerate() {
            for &x in rot {
                vertex[x] = vi;
            }
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut has_loop = false;
        for &[x, y] in &self.edges {
            let (a, b) = (vertex[x], vertex[y]);
            has_loop |= a == b;
            pairs.push((a.min(b), a.max(b)));
        }
        pairs.sort_unstable();
        pairs.dedup();
        (pairs.len(), has_loop)
    }
}

pub fn full(e: usize) -> u64 {
    if e == 64 {
        u64::MAX
    } else {
        (1u64 << e) - 1
    }
}

/// Interlacement matrix of an endpoint sequence with chords numbered by
/// first appearance: entry `sign(i − j)` when chords `i` and `j` interlace.
pub fn interlacement(sequence: &[u32]) -> Vec<Vec<i64>> {
    let mut order: Vec<u32> = Vec::new();
    let mut pos: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (at, &l) in sequence.iter().enumerate() {
        if !order.contains(&l) {
            order.push(l);
        }
        pos.entry(l).or_default().push(at);
    }
    let m = order.len();
    let mut out = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (p, q) = (&pos[&order[i]], &pos[&order[j]]);
            let inside = |t: usize| p[0] < t && t < p[1];
            if i != j && inside(q[0]) != inside(q[1]) {
                out[i][j] = if i > j { 1 } else { -1 };
            }
        }
    }
    out
}

/// Fraction-free elimination over `i128`.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(r) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn principal(m: &[Vec<i64>], subset: u64) -> Vec<Vec<i64>> {
    let idx: Vec<usize> = (0..m.len()).filter(|&i| subset >> i & 1 == 1).collect();
    idx.iter()
        .map(|&i| idx.iter().map(|&j| m[i][j]).collect())
        .collect()
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r = 1i128;
    for i in 0..k as i128 {
        r = r * (n as i128 - i) / (i + 1);
    }
    r
}
