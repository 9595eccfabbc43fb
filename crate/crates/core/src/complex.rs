//! Finite abstract simplicial complexes stored by their facets.
//!
//! Vertices carry external [`Label`]s but are addressed internally by dense
//! indices `0..n`, sorted by label. A face is a [`VertexSet`] bitmask, so the
//! ambient vertex count is capped at [`MAX_VERTICES`].

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the ambient vertex count: a face must fit in one machine word.
pub const MAX_VERTICES: usize = 63;

/// Vertex counts above this make the `2^n` subset scans of the analysis
/// modules impractical. Nothing enforces it; it is the documented working range.
pub const PRACTICAL_VERTEX_LIMIT: usize = 24;

/// A set of internal vertex indices, stored as a bitmask.
///
/// Ordered by cardinality first and then lexicographically on the sorted
/// index lists, which is the canonical order used for facets and faces.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_mask(mask: u64) -> Self {
        VertexSet(mask)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        VertexSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        VertexSet(indices.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 & (1u64 << v) != 0
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub const fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | (1u64 << v))
    }

    pub const fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1u64 << v))
    }

    /// Largest index in the set.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in decreasing mask order, `self` first and the
    /// empty set last.
    pub fn subsets(self) -> SubsetIter {
        SubsetIter { set: self.0, next: Some(self.0) }
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // lowest differing index belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    /// As the sorted list of internal indices.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// Lexicographic enumeration of the `k`-subsets of `{0, .., n-1}`.
pub fn combinations(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let mut idx: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let cur = idx.as_mut()?;
        let out = VertexSet::from_indices(cur.iter().copied());
        match (0..k).rev().find(|&i| cur[i] < n - k + i) {
            Some(i) => {
                cur[i] += 1;
                for t in i + 1..k {
                    cur[t] = cur[t - 1] + 1;
                }
            }
            None => idx = None,
        }
        Some(out)
    })
}

pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

pub struct SubsetIter {
    set: u64,
    next: Option<u64>,
}

impl Iterator for SubsetIter {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let cur = self.next?;
        self.next = if cur == 0 { None } else { Some((cur - 1) & self.set) };
        Some(VertexSet(cur))
    }
}

/// External vertex name. Integers sort numerically and before names.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
}

impl Label {
    /// Reads a token as an integer label when it parses as one.
    pub fn parse(token: &str) -> Label {
        token.parse::<i64>().map(Label::Int).unwrap_or_else(|_| Label::Name(token.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
        }
    }
}

macro_rules! label_from_int {
    ($($t:ty),*) => {$(
        impl From<$t> for Label {
            fn from(v: $t) -> Label {
                Label::Int(v as i64)
            }
        }
    )*};
}
label_from_int!(i32, i64, u8, u16, u32, usize);

impl From<&str> for Label {
    fn from(s: &str) -> Label {
        Label::parse(s)
    }
}

impl From<String> for Label {
    fn from(s: String) -> Label {
        Label::parse(&s)
    }
}

/// Face counts `f_{-1}, f_0, .., f_{d-1}`; `f_{-1} = 1` counts the empty face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// Number of faces of dimension `i`, for `i >= -1`.
    pub fn get(&self, i: isize) -> u64 {
        usize::try_from(i + 1).ok().and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }

    /// `d = dim + 1`.
    pub fn d(&self) -> usize {
        self.0.len() - 1
    }
}

/// `h_0, .., h_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVector(pub Vec<i128>);

/// A simplicial complex given by its inclusion-maximal faces.
///
/// Facets are kept in canonical order and every index in `0..n` lies in some
/// facet. The complex `{∅}` has `n = 0` and the single facet `∅`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<VertexSet>,
    labels: Vec<Label>,
}

impl SimplicialComplex {
    /// Builds a complex from facet lists given by label.
    ///
    /// Labels are sorted and mapped to indices `0..n`. Duplicated and
    /// non-maximal sets are dropped.
    pub fn from_facets<I, F, L>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = L>,
        L: Into<Label>,
    {
        let raw: Vec<Vec<Label>> =
            facets.into_iter().map(|f| f.into_iter().map(Into::into).collect()).collect();
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        let labels: Vec<Label> =
            raw.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        let masks = raw
            .iter()
            .map(|f| {
                f.iter().fold(0u64, |m, l| {
                    m | (1u64 << labels.binary_search(l).expect("label collected above"))
                })
            })
            .collect();
        Ok(Self::from_masks(labels, masks))
    }

    /// Builds a complex on integer labels `1..=n` from facets given as
    /// 0-based indices.
    pub fn from_index_facets<I, F>(facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        Self::from_facets(
            facets.into_iter().map(|f| f.into_iter().map(|v| Label::Int(v as i64 + 1)).collect::<Vec<_>>()),
        )
    }

    /// The complex `{∅}`.
    pub fn irrelevant() -> Self {
        SimplicialComplex { n: 0, facets: vec![VertexSet::EMPTY], labels: Vec::new() }
    }

    /// Normalizes raw masks over `labels`: maximalizes, drops unused labels,
    /// reindexes and sorts.
    pub(crate) fn from_masks(labels: Vec<Label>, masks: Vec<u64>) -> Self {
        let support = masks.iter().fold(0u64, |a, &m| a | m);
        let kept: Vec<usize> = VertexSet(support).to_vec();
        let compress = |m: u64| -> u64 {
            kept.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | (((m >> v) & 1) << i))
        };
        let dense = kept.len() == labels.len();
        let mut facets: Vec<VertexSet> = maximal(masks)
            .into_iter()
            .map(|m| VertexSet(if dense { m } else { compress(m) }))
            .collect();
        facets.sort();
        let labels = kept.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>();
        SimplicialComplex { n: labels.len(), facets, labels }
    }

    /// Builds a complex from masks in this complex's index space, keeping
    /// the labels of the surviving vertices.
    fn derive(&self, masks: Vec<u64>) -> Self {
        Self::from_masks(self.labels.clone(), masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim + 1`, the Krull dimension of the face ring.
    pub fn d(&self) -> usize {
        self.facets.iter().map(|f| f.len()).max().unwrap_or(0)
    }

    pub fn dim(&self) -> isize {
        self.d() as isize - 1
    }

    /// Codimension `n - d` of the face ideal.
    pub fn codim(&self) -> usize {
        self.n - self.d()
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn label_of(&self, v: usize) -> &Label {
        &self.labels[v]
    }

    /// Labels of the members of `set`, in index order.
    pub fn labels_of(&self, set: VertexSet) -> Vec<Label> {
        set.iter().map(|v| self.labels[v].clone()).collect()
    }

    /// Index of the vertex carrying `label`.
    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.binary_search(label).ok()
    }

    /// Converts a list of labels into a vertex set; unknown labels yield `None`.
    pub fn set_of(&self, labels: &[Label]) -> Option<VertexSet> {
        labels.iter().try_fold(VertexSet::EMPTY, |s, l| self.index_of(l).map(|v| s.with(v)))
    }

    pub fn is_irrelevant(&self) -> bool {
        self.n == 0
    }

    /// True when the complex is a single simplex (the face ideal is zero).
    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.d();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn contains_face(&self, face: VertexSet) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    /// All faces grouped by dimension: entry `k` holds the `(k-1)`-faces, so
    /// entry 0 is `[∅]`. Each group is in canonical order.
    pub fn faces_by_dimension(&self) -> Vec<Vec<VertexSet>> {
        let mut seen: HashSet<u64> = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                seen.insert(s.mask());
            }
        }
        let mut groups = vec![Vec::new(); self.d() + 1];
        for m in seen {
            groups[m.count_ones() as usize].push(VertexSet(m));
        }
        for g in &mut groups {
            g.sort();
        }
        groups
    }

    /// All faces of dimension `k`, for `-1 <= k <= dim`.
    pub fn faces(&self, k: isize) -> Result<Vec<VertexSet>> {
        self.check_dimension(k, -1)?;
        let size = (k + 1) as usize;
        let mut out: Vec<VertexSet> = self
            .facets
            .iter()
            .flat_map(|f| f.subsets().filter(move |s| s.len() == size))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        out.sort();
        Ok(out)
    }

    fn check_dimension(&self, k: isize, min: isize) -> Result<()> {
        if k < min || k > self.dim() {
            return Err(Error::DimensionOutOfRange { requested: k, min, max: self.dim() });
        }
        Ok(())
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_dimension().iter().map(|g| g.len() as u64).collect())
    }

    /// `h_i = Σ_{j<=i} (-1)^{i-j} C(d-j, d-i) f_{j-1}`.
    pub fn h_vector(&self) -> HVector {
        h_from_f(&self.f_vector())
    }

    /// Number of top-dimensional faces, the multiplicity of the face ring.
    pub fn multiplicity(&self) -> u64 {
        let d = self.d();
        self.facets.iter().filter(|f| f.len() == d).count() as u64
    }

    /// `Σ_{i>=-1} (-1)^i f_i`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .0
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// `Σ_{i>=0} (-1)^i f_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.reduced_euler_characteristic() + 1
    }

    /// The induced subcomplex on `w`; its vertex set is exactly `w`.
    pub fn induced(&self, w: VertexSet) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::EmptySelection);
        }
        if !w.is_subset(self.vertices()) {
            return Err(Error::ParameterOutOfRange(format!("{w:?} is not a set of vertices")));
        }
        if w == self.vertices() {
            return Ok(self.clone());
        }
        Ok(self.derive(self.facets.iter().map(|f| f.intersection(w).mask()).collect()))
    }

    /// The induced subcomplex on the complement of `u`.
    pub fn delete_vertices(&self, u: VertexSet) -> Result<Self> {
        self.induced(self.vertices().difference(u))
    }

    /// Faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> Result<Self> {
        self.check_dimension(i, 0)?;
        let size = (i + 1) as usize;
        if size >= self.d() {
            return Ok(self.clone());
        }
        let mut masks = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                masks.push(f.mask());
            } else {
                masks.extend(f.subsets().filter(|s| s.len() == size).map(VertexSet::mask));
            }
        }
        Ok(self.derive(masks))
    }

    /// `lk F = {G : G ∩ F = ∅, G ∪ F ∈ Δ}`, on the vertices `v` with `F ∪ v ∈ Δ`.
    pub fn link(&self, face: VertexSet) -> Result<Self> {
        if !self.contains_face(face) {
            return Err(Error::NotAFace(face));
        }
        let masks: Vec<u64> = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face).mask())
            .collect();
        if masks.iter().all(|&m| m == 0) {
            return Ok(Self::irrelevant());
        }
        Ok(self.derive(masks))
    }

    /// Join with a complex on a disjoint label set.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        if let Some(l) = self.labels.iter().find(|l| other.labels.binary_search(l).is_ok()) {
            return Err(Error::LabelConflict(l.to_string()));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                let mut f = self.labels_of(*a);
                f.extend(other.labels_of(*b));
                facets.push(f);
            }
        }
        Self::from_facets(facets)
    }

    /// Vertices lying in every facet.
    pub fn cone_apexes(&self) -> VertexSet {
        self.facets.iter().fold(self.vertices(), |acc, f| acc.intersection(*f))
    }

    pub fn is_cone(&self) -> bool {
        !self.cone_apexes().is_empty()
    }

    /// The complex with all cone apexes removed; `{∅}` for a simplex.
    pub fn core(&self) -> Self {
        let apexes = self.cone_apexes();
        if apexes.is_empty() {
            self.clone()
        } else if apexes == self.vertices() {
            Self::irrelevant()
        } else {
            self.delete_vertices(apexes).expect("a proper subset of the vertices was removed")
        }
    }
}

/// Keeps the inclusion-maximal masks, deduplicated.
pub(crate) fn maximal(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable_by(|a, b| b.count_ones().cmp(&a.count_ones()).then(a.cmp(b)));
    masks.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !kept.iter().any(|&k| m & !k == 0) {
            kept.push(m);
        }
    }
    kept
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub(crate) fn h_from_f(f: &FVector) -> HVector {
    let d = f.d();
    let h = (0..=d)
        .map(|i| {
            let v: BigInt = (0..=i)
                .map(|j| {
                    let term = binomial(d - j, d - i) * BigInt::from(f.0[j]);
                    if (i - j) % 2 == 0 { term } else { -term }
                })
                .sum();
            v.to_i128().expect("h-vector entries are bounded by 2^(d+n) <= 2^126")
        })
        .collect();
    HVector(h)
}

impl fmt::Display for SimplicialComplex {
    /// One facet per line, labels separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for facet in &self.facets {
            let line: Vec<String> = self.labels_of(*facet).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
