//! Named complexes and seeded random families.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::complex::{combinations, Label, SimplicialComplex, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

fn out_of_range(message: impl Into<String>) -> Error {
    Error::ParameterOutOfRange(message.into())
}

fn index_complex(facets: impl IntoIterator<Item = VertexSet>) -> Result<SimplicialComplex> {
    SimplicialComplex::from_index_facets(facets.into_iter().map(|f| f.to_vec()))
}

fn check_vertices(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    Ok(())
}

/// The boundary of the `d`-simplex on `d + 1` vertices.
pub fn simplex_boundary(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(out_of_range("simplex boundary needs d >= 1"));
    }
    check_vertices(d + 1)?;
    index_complex(combinations(d + 1, d))
}

/// The full `d`-simplex on `d + 1` vertices.
pub fn simplex(d: usize) -> Result<SimplicialComplex> {
    check_vertices(d + 1)?;
    index_complex([VertexSet::full(d + 1)])
}

pub fn cycle(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(out_of_range("cycle needs n >= 3"));
    }
    check_vertices(n)?;
    index_complex((0..n).map(|i| VertexSet::from_indices([i, (i + 1) % n])))
}

pub fn path(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(out_of_range("path needs n >= 2"));
    }
    check_vertices(n)?;
    index_complex((0..n - 1).map(|i| VertexSet::from_indices([i, i + 1])))
}

pub fn complete_graph(n: usize) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(out_of_range("complete graph needs n >= 2"));
    }
    uniform_matroid(2, n)
}

/// All subsets of `[n]` of size at most `r`.
pub fn uniform_matroid(r: usize, n: usize) -> Result<SimplicialComplex> {
    if r == 0 || r > n {
        return Err(out_of_range(format!("uniform matroid needs 1 <= r <= n, got r={r}, n={n}")));
    }
    check_vertices(n)?;
    index_complex(combinations(n, r))
}

/// Boundary of the `d`-dimensional cross-polytope; vertex `i` is antipodal to `i + d`.
pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex> {
    if d == 0 {
        return Err(out_of_range("cross-polytope needs d >= 1"));
    }
    check_vertices(2 * d)?;
    let facets = (0u64..1 << d).map(|choice| VertexSet::from_indices((0..d).map(|i| i + d * ((choice >> i) & 1) as usize)));
    index_complex(facets)
}

/// Complex of forests of a multigraph; vertex `i + 1` is edge `i`.
pub fn graphic_matroid(edges: &[(usize, usize)]) -> Result<SimplicialComplex> {
    if edges.is_empty() {
        return Err(out_of_range("graphic matroid needs at least one edge"));
    }
    if let Some(&(a, _)) = edges.iter().find(|(a, b)| a == b) {
        return Err(out_of_range(format!("loop at vertex {a}")));
    }
    check_vertices(edges.len())?;
    let rank = forest_rank(edges, VertexSet::full(edges.len()));
    let bases = combinations(edges.len(), rank).filter(|s| forest_rank(edges, *s) == rank);
    index_complex(bases)
}

fn forest_rank(edges: &[(usize, usize)], selection: VertexSet) -> usize {
    let nodes = edges.iter().map(|&(a, b)| a.max(b)).max().unwrap_or(0) + 1;
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut rank = 0;
    for i in selection.iter() {
        let (a, b) = edges[i];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            rank += 1;
        }
    }
    rank
}

/// The 6-vertex triangulation of the real projective plane.
pub fn rp2_six_vertex() -> SimplicialComplex {
    SimplicialComplex::from_facets([
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 6, 2],
        [2, 3, 5],
        [3, 4, 6],
        [4, 5, 2],
        [5, 6, 3],
        [6, 2, 4],
    ])
    .expect("static facet list")
}

/// Boundary of the cyclic `d`-polytope on `n` vertices, facets by Gale evenness.
pub fn cyclic_polytope_boundary(d: usize, n: usize) -> Result<SimplicialComplex> {
    if d < 2 || n < d + 1 {
        return Err(out_of_range(format!("cyclic polytope needs d >= 2 and n >= d + 1, got d={d}, n={n}")));
    }
    check_vertices(n)?;
    index_complex(combinations(n, d).filter(|s| gale_even(*s, n)))
}

fn gale_even(s: VertexSet, n: usize) -> bool {
    let outside: Vec<usize> = (0..n).filter(|&v| !s.contains(v)).collect();
    outside.windows(2).all(|w| (w[0] + 1..w[1]).filter(|&v| s.contains(v)).count() % 2 == 0)
}

/// Cone with a new apex labelled one more than the largest integer label.
pub fn cone(complex: &SimplicialComplex) -> SimplicialComplex {
    let apex = complex
        .labels()
        .iter()
        .filter_map(|l| match l {
            Label::Int(i) => Some(*i),
            Label::Name(_) => None,
        })
        .max()
        .map_or(1, |m| m + 1);
    let facets: Vec<Vec<Label>> = complex
        .facets()
        .iter()
        .map(|f| {
            let mut labels = complex.labels_of(*f);
            labels.push(Label::Int(apex));
            labels
        })
        .collect();
    SimplicialComplex::from_facets(facets).expect("cone of a complex is a complex")
}

fn relabel(complex: &SimplicialComplex, offset: usize) -> SimplicialComplex {
    let facets: Vec<Vec<usize>> = complex.facets().iter().map(|f| f.iter().map(|v| v + offset).collect()).collect();
    SimplicialComplex::from_index_facets(facets).expect("relabelled complex")
}

/// Join after relabelling the vertices of `a` as `1..=n_a` and those of `b` after them.
pub fn join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    check_vertices(a.n() + b.n())?;
    relabel(a, 0).join(&relabel(b, a.n()))
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based SplitMix64: the value at position `pos` is
/// `mix(seed + (pos + 1) * 0x9E3779B97F4A7C15)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stream {
    pub seed: u64,
}

impl Stream {
    pub fn new(seed: u64) -> Self {
        Stream { seed }
    }

    pub fn value(&self, pos: u64) -> u64 {
        mix(self.seed.wrapping_add(pos.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
    }

    pub fn cursor(self, pos: u64) -> Cursor {
        Cursor { stream: self, pos }
    }
}

/// A position in a [`Stream`]; every draw consumes whole positions.
#[derive(Clone, Copy, Debug)]
pub struct Cursor {
    stream: Stream,
    pub pos: u64,
}

impl Cursor {
    pub fn next_u64(&mut self) -> u64 {
        let v = self.stream.value(self.pos);
        self.pos += 1;
        v
    }

    /// Uniform on `[0, bound)` by rejection of the low `2^64 mod bound` values.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

fn binom(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as u64
}

/// The `k`-subset of `rank` in the combinatorial number system.
fn unrank(mut rank: u64, k: usize) -> VertexSet {
    let mut set = VertexSet::EMPTY;
    for j in (1..=k).rev() {
        let mut c = j - 1;
        while binom(c + 1, j) <= rank {
            c += 1;
        }
        rank -= binom(c, j);
        set = set.with(c);
    }
    set
}

/// Floyd's sampling of `count` distinct values in `[0, total)`, sorted.
fn sample_distinct(cursor: &mut Cursor, total: u64, count: u64) -> Vec<u64> {
    let mut chosen = BTreeSet::new();
    for j in total - count..total {
        let t = cursor.below(j + 1);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}

/// `count` distinct `d`-subsets of `[n]`, uniformly without replacement.
pub fn random_pure(n: usize, d: usize, count: usize, seed: u64) -> Result<SimplicialComplex> {
    check_vertices(n)?;
    if d == 0 || d > n {
        return Err(out_of_range(format!("random pure complex needs 1 <= d <= n, got d={d}, n={n}")));
    }
    let total = binom(n, d);
    if count == 0 || count as u64 > total {
        return Err(out_of_range(format!("count must lie in [1, {total}], got {count}")));
    }
    let mut cursor = Stream::new(seed).cursor(0);
    let ranks = sample_distinct(&mut cursor, total, count as u64);
    index_complex(ranks.into_iter().map(|r| unrank(r, d)))
}

/// Erdős–Rényi graph on `[n]`; isolated vertices are kept as 0-faces.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<SimplicialComplex> {
    check_vertices(n)?;
    if n == 0 {
        return Err(out_of_range("random graph needs n >= 1"));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range(format!("edge probability {p} outside [0, 1]")));
    }
    let mut cursor = Stream::new(seed).cursor(0);
    let mut facets = Vec::new();
    let mut covered = VertexSet::EMPTY;
    for e in combinations(n, 2) {
        if cursor.unit() < p {
            facets.push(e);
            covered = covered.union(e);
        }
    }
    facets.extend(VertexSet::full(n).difference(covered).iter().map(VertexSet::singleton));
    index_complex(facets)
}

/// A shellable, hence CM, pure complex of `d`-subsets of `[n]` built by
/// accepting random candidates whose intersection with the complex so far
/// is pure of codimension one. Stops after `count` facets or `64 * count`
/// candidates.
pub fn random_shellable(n: usize, d: usize, count: usize, seed: u64) -> Result<SimplicialComplex> {
    check_vertices(n)?;
    if d == 0 || d > n {
        return Err(out_of_range(format!("random shellable complex needs 1 <= d <= n, got d={d}, n={n}")));
    }
    if count == 0 {
        return Err(out_of_range("count must be positive"));
    }
    let total = binom(n, d);
    let mut cursor = Stream::new(seed).cursor(0);
    let mut facets = vec![unrank(cursor.below(total), d)];
    let mut attempts = 0;
    while facets.len() < count && attempts < 64 * count {
        attempts += 1;
        let candidate = unrank(cursor.below(total), d);
        if facets.contains(&candidate) {
            continue;
        }
        let traces = crate::complex::maximal(facets.iter().map(|f| f.intersection(candidate).mask()).collect());
        if traces.iter().all(|t| t.count_ones() as usize + 1 == d) {
            facets.push(candidate);
        }
    }
    index_complex(facets)
}

/// Graphic matroid of a random graph on `[n]`; retries the draw until an edge appears.
pub fn random_graphic(n: usize, p: f64, seed: u64) -> Result<SimplicialComplex> {
    if n < 2 {
        return Err(out_of_range("random graphic matroid needs n >= 2"));
    }
    if !(0.0 < p && p <= 1.0) {
        return Err(out_of_range(format!("edge probability {p} outside (0, 1]")));
    }
    let mut cursor = Stream::new(seed).cursor(0);
    loop {
        let edges: Vec<(usize, usize)> = combinations(n, 2)
            .filter(|_| cursor.unit() < p)
            .map(|e| {
                let v = e.to_vec();
                (v[0], v[1])
            })
            .collect();
        if !edges.is_empty() {
            return graphic_matroid(&edges);
        }
    }
}

const FAMILIES: &[(&str, &[&str])] = &[
    ("simplex_boundary", &["d"]),
    ("simplex", &["d"]),
    ("cycle", &["n"]),
    ("path", &["n"]),
    ("complete_graph", &["n"]),
    ("uniform_matroid", &["r", "n"]),
    ("cross_polytope_boundary", &["d"]),
    ("cyclic_polytope_boundary", &["d", "n"]),
    ("rp2_six_vertex", &[]),
    ("random_pure", &["n", "d", "count"]),
    ("random_graph", &["n", "p"]),
    ("random_shellable", &["n", "d", "count"]),
    ("random_graphic", &["n", "p"]),
];

/// A named family with its parameters, e.g. `random_pure n=8 d=2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl FamilySpec {
    /// Parses a family name followed by positional values or `key=value` pairs.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let name = tokens.next().ok_or_else(|| out_of_range("empty family spec"))?;
        let keys = FAMILIES
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, k)| *k)
            .ok_or_else(|| out_of_range(format!("unknown family `{name}`")))?;
        let mut params = BTreeMap::new();
        let mut positional = Vec::new();
        for token in tokens {
            match token.split_once('=') {
                Some((k, v)) => {
                    if !keys.contains(&k) {
                        return Err(out_of_range(format!("family `{name}` has no parameter `{k}`")));
                    }
                    params.insert(k.to_string(), v.to_string());
                }
                None => positional.push(token),
            }
        }
        let free: Vec<&str> = keys.iter().copied().filter(|k| !params.contains_key(*k)).collect();
        let mut free = free.into_iter();
        for value in positional {
            let key = free.next().ok_or_else(|| out_of_range(format!("too many values for `{name}`")))?;
            params.insert(key.to_string(), value.to_string());
        }
        let spec = FamilySpec { name: name.to_string(), params };
        spec.sample(0, 0)?;
        Ok(spec)
    }

    pub fn is_random(&self) -> bool {
        self.name.starts_with("random_")
    }

    fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.params
            .get(key)
            .map(|v| v.parse().map_err(|_| out_of_range(format!("bad value `{v}` for `{key}`"))))
            .transpose()
    }

    fn require<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?.ok_or_else(|| out_of_range(format!("family `{}` needs `{key}`", self.name)))
    }

    /// Seed of trial `trial` under the search seed `seed`.
    pub fn trial_seed(seed: u64, trial: u64) -> u64 {
        Stream::new(seed).value(trial)
    }

    /// The complex of trial `trial`; named families ignore the seed.
    pub fn sample(&self, seed: u64, trial: u64) -> Result<SimplicialComplex> {
        let s = Self::trial_seed(seed, trial);
        match self.name.as_str() {
            "simplex_boundary" => simplex_boundary(self.require("d")?),
            "simplex" => simplex(self.require("d")?),
            "cycle" => cycle(self.require("n")?),
            "path" => path(self.require("n")?),
            "complete_graph" => complete_graph(self.require("n")?),
            "uniform_matroid" => uniform_matroid(self.require("r")?, self.require("n")?),
            "cross_polytope_boundary" => cross_polytope_boundary(self.require("d")?),
            "cyclic_polytope_boundary" => cyclic_polytope_boundary(self.require("d")?, self.require("n")?),
            "rp2_six_vertex" => Ok(rp2_six_vertex()),
            "random_pure" | "random_shellable" => {
                let (n, d): (usize, usize) = (self.require("n")?, self.require("d")?);
                let count = match self.get::<usize>("count")? {
                    Some(c) => c,
                    None => {
                        let most = binom(n, d).min(3 * n as u64).max(1);
                        1 + Stream::new(s ^ GOLDEN_GAMMA).value(0) as usize % most as usize
                    }
                };
                if self.name == "random_pure" {
                    random_pure(n, d, count, s)
                } else {
                    random_shellable(n, d, count, s)
                }
            }
            "random_graph" => random_graph(self.require("n")?, self.get("p")?.unwrap_or(0.5), s),
            "random_graphic" => random_graphic(self.require("n")?, self.get("p")?.unwrap_or(0.5), s),
            other => Err(out_of_range(format!("unknown family `{other}`"))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
