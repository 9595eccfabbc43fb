//! Cohen-Macaulay tests, q-CM levels and CM-connectivity sequences.
//!
//! Two independent CM tests are provided: [`is_cm_reisner`] checks the
//! homology of every face link, [`is_cm_hochster`] checks the homology of
//! every induced subcomplex. The q-CM machinery is built on the second one,
//! read off a single [`InducedHomology`] table: for a skeleton `Skel_j(Δ)`
//! and a deletion `Δ_V`, `Skel_j(Δ_V)_W = Skel_j(Δ_W)` for every `W ⊆ V`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{combinations, SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::field::FieldSpec;
use crate::homology::{reduced_betti, InducedHomology};
use crate::resolution::{factorial, shifts, BettiTable};

/// Reisner's criterion: `H̃_i(lk F) = 0` for all faces `F` (including `∅`)
/// and all `i < dim Δ - |F|`.
pub fn is_cm_reisner(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    let dim = complex.dim();
    let faces: Vec<VertexSet> = complex.faces_by_dimension().into_iter().flatten().collect();
    faces.par_iter().all(|&face| {
        let link = complex.link(face).expect("enumerated faces are faces");
        let betti = reduced_betti(&link, field);
        let bound = dim - face.len() as isize;
        (-1..bound).all(|i| betti.get(i) == 0)
    })
}

/// Hochster's criterion: `H̃_p(Δ_W) = 0` whenever `p + (n - |W|) < d - 1`.
pub fn is_cm_hochster(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    let homology = InducedHomology::new(complex, field);
    SkeletonView::new(&homology, complex.dim()).is_cm_on(complex.vertices())
}

/// `Skel_j(Δ)` seen through the induced-homology table of `Δ`.
pub struct SkeletonView {
    j: isize,
    /// Lowest nonvanishing homology degree of `Skel_j(Δ_W)`, or `i8::MAX`.
    lowest: Vec<i8>,
    /// `dim Skel_j(Δ_W)`.
    dims: Vec<i8>,
    n: usize,
}

impl SkeletonView {
    pub fn new(homology: &InducedHomology, j: isize) -> Self {
        let n = homology.complex().n();
        let (lowest, dims) = (0u64..1 << n)
            .into_par_iter()
            .map(|m| {
                let w = VertexSet::from_mask(m);
                let low = homology.skeleton_lowest(w, j).map_or(i8::MAX, |p| p as i8);
                (low, homology.dim(w).min(j) as i8)
            })
            .unzip();
        SkeletonView { j, lowest, dims, n }
    }

    pub fn skeleton_dim(&self) -> isize {
        self.j
    }

    /// Dimension of `Skel_j(Δ_V)`.
    pub fn dim_on(&self, v: VertexSet) -> isize {
        self.dims[v.mask() as usize] as isize
    }

    /// Whether `Skel_j(Δ_V)` is CM, by Hochster's criterion on its vertex set `V`.
    pub fn is_cm_on(&self, v: VertexSet) -> bool {
        let d = self.dim_on(v) + 1;
        let size = v.len() as isize;
        v.subsets().all(|w| {
            let low = self.lowest[w.mask() as usize];
            low == i8::MAX || low as isize + (size - w.len() as isize) >= d - 1
        })
    }

    /// First deletion set `U` with `|U| = k` (lexicographic) for which
    /// `Skel_j(Δ_{[n]-U})` is not a CM complex of full dimension.
    fn first_failure(&self, k: usize) -> Option<VertexSet> {
        let all = VertexSet::full(self.n);
        let candidates: Vec<VertexSet> = combinations(self.n, k).collect();
        candidates.into_par_iter().find_first(|u| {
            let v = all.difference(*u);
            self.dim_on(v) != self.j || !self.is_cm_on(v)
        })
    }

    pub fn is_q_cm(&self, q: usize) -> QCmCheck {
        let witness = (0..q).find_map(|k| self.first_failure(k));
        QCmCheck { q, holds: witness.is_none(), witness }
    }

    /// Largest `q` such that the skeleton is q-CM; requires it to be CM.
    pub fn q_max(&self) -> Result<QMax> {
        if self.first_failure(0).is_some() {
            return Err(Error::NotCM);
        }
        for k in 1..=self.n {
            if let Some(u) = self.first_failure(k) {
                return Ok(QMax { q: k, witness: Some(u) });
            }
        }
        Ok(QMax { q: self.n + 1, witness: None })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QCmCheck {
    pub q: usize,
    pub holds: bool,
    /// Deletion set whose removal breaks the property.
    pub witness: Option<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QMax {
    pub q: usize,
    /// A deletion set of size `q` that fails; absent only for `{∅}`.
    pub witness: Option<VertexSet>,
}

/// Removing any `q - 1` or fewer vertices leaves a CM complex of the same dimension.
pub fn is_q_cm(complex: &SimplicialComplex, q: usize, field: FieldSpec) -> Result<QCmCheck> {
    if q == 0 {
        return Err(Error::ParameterOutOfRange("q must be at least 1".into()));
    }
    let homology = InducedHomology::new(complex, field);
    Ok(SkeletonView::new(&homology, complex.dim()).is_q_cm(q))
}

pub fn q_max(complex: &SimplicialComplex, field: FieldSpec) -> Result<QMax> {
    let homology = InducedHomology::new(complex, field);
    SkeletonView::new(&homology, complex.dim()).q_max()
}

/// `(q_0, .., q_{d-1})` with `q_i = q(Skel_i(Δ))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivitySequence {
    pub field: FieldSpec,
    pub q: Vec<usize>,
    /// Failing deletion set at level `q_i + 1` for each skeleton.
    pub witnesses: Vec<Option<VertexSet>>,
}

impl ConnectivitySequence {
    pub fn is_strictly_decreasing(&self) -> bool {
        self.q.windows(2).all(|w| w[0] > w[1])
    }

    /// `q(Δ) = q_{d-1}`.
    pub fn top(&self) -> usize {
        *self.q.last().expect("d >= 1")
    }
}

pub fn connectivity_sequence_with(homology: &InducedHomology) -> Result<ConnectivitySequence> {
    let complex = homology.complex();
    if complex.d() == 0 {
        return Err(Error::DegenerateComplex("the complex {∅} has no skeleta"));
    }
    if !SkeletonView::new(homology, complex.dim()).is_cm_on(complex.vertices()) {
        return Err(Error::NotCM);
    }
    let mut q = Vec::new();
    let mut witnesses = Vec::new();
    for j in 0..complex.d() as isize {
        let level = SkeletonView::new(homology, j).q_max()?;
        q.push(level.q);
        witnesses.push(level.witness);
    }
    Ok(ConnectivitySequence { field: homology.field(), q, witnesses })
}

pub fn connectivity_sequence(complex: &SimplicialComplex, field: FieldSpec) -> Result<ConnectivitySequence> {
    connectivity_sequence_with(&InducedHomology::new(complex, field))
}

/// The codimension-one skeleton is CM. Complexes of dimension `<= 0` qualify.
pub fn is_almost_cm_with(homology: &InducedHomology) -> bool {
    let complex = homology.complex();
    if complex.d() <= 1 {
        return true;
    }
    SkeletonView::new(homology, complex.dim() - 1).is_cm_on(complex.vertices())
}

pub fn is_almost_cm(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    is_almost_cm_with(&InducedHomology::new(complex, field))
}

/// Skip bookkeeping for a strictly increasing minimal-shift sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkipTable {
    pub n: usize,
    pub d: usize,
    pub m: Vec<usize>,
    /// `m'_i = m_i - i - 1`.
    pub m_prime: Vec<usize>,
    /// `t_j`: largest `i` with `m'_i < j`, or 0.
    pub t: Vec<usize>,
    /// `s_j = t_j + j + 1`, the skipped values.
    pub s: Vec<usize>,
    /// `q_j = n - s_j + 1`.
    pub q: Vec<usize>,
}

impl SkipTable {
    /// The two tables `(i, m_i, m'_i)` and `(j, t_j, s_j, q_j)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let row = |name: &str, values: Vec<String>| {
            let mut line = format!("{name:<5}");
            for v in values {
                line.push_str(&format!("{v:>4}"));
            }
            line.push('\n');
            line
        };
        out += &row("i", (1..=self.m.len()).map(|i| i.to_string()).collect());
        out += &row("m_i", self.m.iter().map(ToString::to_string).collect());
        out += &row("m'_i", self.m_prime.iter().map(ToString::to_string).collect());
        out.push('\n');
        out += &format!("{:<4}{:>5}{:>5}{:>5}\n", "j", "t_j", "s_j", "q_j");
        for j in 0..self.d {
            out += &format!("{:<4}{:>5}{:>5}{:>5}\n", j, self.t[j], self.s[j], self.q[j]);
        }
        out
    }
}

/// Skips of `m = (m_1, .., m_{n-d})`.
pub fn skips_from_m_sequence(m: &[usize], n: usize, d: usize) -> Result<SkipTable> {
    if d == 0 || m.len() + d != n {
        return Err(Error::MalformedSequence(format!("length {} does not equal n - d = {n} - {d}", m.len())));
    }
    if let Some(bad) = m.iter().find(|&&x| x < 2 || x > n) {
        return Err(Error::MalformedSequence(format!("value {bad} outside [2, {n}]")));
    }
    if m.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::MalformedSequence("sequence is not strictly increasing".into()));
    }
    let m_prime: Vec<usize> = m.iter().enumerate().map(|(i, &x)| x - (i + 1) - 1).collect();
    let t: Vec<usize> = (0..d).map(|j| m_prime.iter().rposition(|&x| x < j).map_or(0, |i| i + 1)).collect();
    let s: Vec<usize> = t.iter().enumerate().map(|(j, &tj)| tj + j + 1).collect();
    let q = s.iter().map(|&sj| n - sj + 1).collect();
    Ok(SkipTable { n, d, m: m.to_vec(), m_prime, t, s, q })
}

/// Values in `[n]` missing from the strictly increasing sequence `seq`.
pub fn skipped_values(seq: &[usize], n: usize) -> Vec<usize> {
    (1..=n).filter(|x| !seq.contains(x)).collect()
}

fn product(values: impl IntoIterator<Item = usize>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub m: Vec<usize>,
    pub q: Vec<usize>,
    /// `[n] - {m_1, .., m_{n-d}}`.
    pub skipped: Vec<usize>,
    /// `{n - q_j + 1}`, sorted.
    pub predicted: Vec<usize>,
    /// `Π m_i / (n-d)!`.
    pub shift_product: Exact,
    /// `n(n-1)..(n-d+1) / Π (n - q_j + 1)`.
    pub closed_form: Exact,
    /// Whether the skip table of `m` reproduces `q`.
    pub skip_table_agrees: bool,
    pub holds: bool,
}

pub fn verify_main_theorem_with(
    complex: &SimplicialComplex,
    table: &BettiTable,
    sequence: &ConnectivitySequence,
) -> Result<MainTheoremReport> {
    let (n, d, c) = (complex.n(), complex.d(), complex.codim());
    let m: Vec<usize> = if table.is_degenerate() { Vec::new() } else { shifts(table)?.m[..c].to_vec() };
    let skipped = skipped_values(&m, n);
    let mut predicted: Vec<usize> = sequence.q.iter().map(|&q| n - q + 1).collect();
    predicted.sort_unstable();
    let shift_product = Exact::ratio(product(m.iter().copied()), factorial(c));
    let closed_form =
        Exact::ratio(product((0..d).map(|i| n - i)), product(sequence.q.iter().map(|&q| n - q + 1)));
    let skip_table_agrees = skips_from_m_sequence(&m, n, d).map(|t| t.q == sequence.q).unwrap_or(false);
    let holds = skipped == predicted && shift_product == closed_form && skip_table_agrees;
    Ok(MainTheoremReport {
        m,
        q: sequence.q.clone(),
        skipped,
        predicted,
        shift_product,
        closed_form,
        skip_table_agrees,
        holds,
    })
}

/// Compares the skips of the minimal-shift sequence with the connectivity
/// sequence, and the two product formulas they give.
pub fn verify_main_theorem(complex: &SimplicialComplex, field: FieldSpec) -> Result<MainTheoremReport> {
    let homology = InducedHomology::new(complex, field);
    let sequence = connectivity_sequence_with(&homology)?;
    let table = BettiTable::from_homology(&homology)?;
    verify_main_theorem_with(complex, &table, &sequence)
}

#[derive(Clone, Debug, Serialize)]
pub struct QEstimateReport {
    pub facets: u64,
    /// `q_0 .. q_{d-1} / d!`.
    pub bound: Exact,
    pub slack: Exact,
    pub tight: bool,
    pub holds: bool,
}

pub fn verify_q_estimate_with(complex: &SimplicialComplex, sequence: &ConnectivitySequence) -> QEstimateReport {
    let facets = complex.multiplicity();
    let bound = Exact::ratio(product(sequence.q.iter().copied()), factorial(complex.d()));
    let slack = Exact(Exact::integer(facets).0 - &bound.0);
    let zero = Exact::integer(0);
    QEstimateReport { facets, tight: slack == zero, holds: slack >= zero, bound, slack }
}

/// `f_{d-1} >= q_0 .. q_{d-1} / d!`.
pub fn verify_q_estimate(complex: &SimplicialComplex, field: FieldSpec) -> Result<QEstimateReport> {
    Ok(verify_q_estimate_with(complex, &connectivity_sequence(complex, field)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct SkeletonPropositionReport {
    pub q: Vec<usize>,
    pub q0_equals_n: bool,
    /// Indices `i` with `q_{i-1} < q_i + 1`.
    pub violations: Vec<usize>,
    pub holds: bool,
}

pub fn verify_skeleton_proposition_with(complex: &SimplicialComplex, sequence: &ConnectivitySequence) -> SkeletonPropositionReport {
    let violations: Vec<usize> = (1..sequence.q.len()).filter(|&i| sequence.q[i - 1] < sequence.q[i] + 1).collect();
    let q0_equals_n = sequence.q.first() == Some(&complex.n());
    SkeletonPropositionReport { q: sequence.q.clone(), q0_equals_n, holds: violations.is_empty() && q0_equals_n, violations }
}

/// Each skeleton's connectivity exceeds the next one's: `q_{i-1} >= q_i + 1`.
pub fn verify_skeleton_proposition(complex: &SimplicialComplex, field: FieldSpec) -> Result<SkeletonPropositionReport> {
    Ok(verify_skeleton_proposition_with(complex, &connectivity_sequence(complex, field)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCertificate {
    /// 2-CM with `q_1 <= n - d + 1`.
    pub two_cm_small_q1: bool,
    /// `q(Δ) >= d`.
    pub d_cm: bool,
    /// `d! Π_{i=1}^{d-1} (n - i)`.
    pub lhs: BigInt,
    /// `Π_{i=1}^{d-1} q_i (n - q_i + 1)`.
    pub rhs: BigInt,
    pub inequality_holds: bool,
    /// Inequality holds whenever one of the hypotheses does.
    pub holds: bool,
}

pub fn lower_bound_certificate_with(complex: &SimplicialComplex, sequence: &ConnectivitySequence) -> LowerBoundCertificate {
    let (n, d) = (complex.n(), complex.d());
    let q = &sequence.q;
    let two_cm_small_q1 = sequence.top() >= 2 && d >= 2 && q[1] <= n - d + 1;
    let d_cm = sequence.top() >= d;
    let lhs = factorial(d) * product((1..d).map(|i| n - i));
    let rhs = product((1..d).map(|i| q[i] * (n + 1 - q[i])));
    let inequality_holds = lhs <= rhs;
    let holds = inequality_holds || !(two_cm_small_q1 || d_cm);
    LowerBoundCertificate { two_cm_small_q1, d_cm, lhs, rhs, inequality_holds, holds }
}

pub fn lower_bound_certificate(complex: &SimplicialComplex, field: FieldSpec) -> Result<LowerBoundCertificate> {
    Ok(lower_bound_certificate_with(complex, &connectivity_sequence(complex, field)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn c5() -> SimplicialComplex {
        generators::cycle(5).unwrap()
    }

    #[test]
    fn example_skip_table() {
        let t = skips_from_m_sequence(&[2, 3, 4, 6, 7, 11, 13, 16, 17, 18], 19, 9).unwrap();
        assert_eq!(t.d, 9);
        assert_eq!(t.m_prime, vec![0, 0, 0, 1, 1, 4, 5, 7, 7, 7]);
        assert_eq!(t.t, vec![0, 3, 5, 5, 5, 6, 7, 7, 10]);
        assert_eq!(t.s, vec![1, 5, 8, 9, 10, 12, 14, 15, 19]);
        assert_eq!(t.q, vec![19, 15, 12, 11, 10, 8, 6, 5, 1]);
    }

    #[test]
    fn small_skip_tables() {
        let t = skips_from_m_sequence(&[2, 3, 5], 5, 2).unwrap();
        assert_eq!((t.s.clone(), t.q.clone()), (vec![1, 4], vec![5, 2]));
        let t = skips_from_m_sequence(&[2], 3, 2).unwrap();
        assert_eq!((t.s.clone(), t.q.clone()), (vec![1, 3], vec![3, 1]));
        for bad in [&[3, 2][..], &[1, 3], &[2, 6]] {
            assert!(matches!(skips_from_m_sequence(bad, 5, 3), Err(Error::MalformedSequence(_))));
        }
        assert!(skips_from_m_sequence(&[2, 3], 4, 1).is_err());
        assert!(skips_from_m_sequence(&[2, 3], 2, 0).is_err());
    }

    #[test]
    fn cm_examples() {
        let rp2 = generators::rp2_six_vertex();
        assert!(!is_cm_reisner(&rp2, FieldSpec::F2));
        assert!(!is_cm_hochster(&rp2, FieldSpec::F2));
        assert!(is_cm_reisner(&rp2, FieldSpec::RATIONALS));
        assert!(is_cm_hochster(&rp2, FieldSpec::RATIONALS));
        let two_edges = SimplicialComplex::from_facets([[1, 2], [3, 4]]).unwrap();
        assert!(!is_cm_hochster(&two_edges, FieldSpec::RATIONALS));
        assert!(!is_cm_reisner(&two_edges, FieldSpec::RATIONALS));
        for f in [FieldSpec::RATIONALS, FieldSpec::F2, FieldSpec::F3] {
            assert!(is_cm_reisner(&c5(), f));
            assert!(is_cm_hochster(&generators::simplex_boundary(3).unwrap(), f));
        }
    }

    #[test]
    fn q_levels() {
        let points = SimplicialComplex::from_facets([[1], [2], [3], [4]]).unwrap();
        assert_eq!(q_max(&points, FieldSpec::RATIONALS).unwrap().q, 4);
        assert_eq!(q_max(&c5(), FieldSpec::RATIONALS).unwrap().q, 2);
        for n in 3..=6 {
            let k = generators::complete_graph(n).unwrap();
            assert_eq!(q_max(&k, FieldSpec::F2).unwrap().q, n - 1);
        }
        let path = generators::path(4).unwrap();
        let q = q_max(&path, FieldSpec::RATIONALS).unwrap();
        assert_eq!(q.q, 1);
        assert_eq!(q.witness.unwrap().len(), 1);
        assert!(is_q_cm(&c5(), 2, FieldSpec::RATIONALS).unwrap().holds);
        let three = is_q_cm(&c5(), 3, FieldSpec::RATIONALS).unwrap();
        assert!(!three.holds);
        assert_eq!(three.witness.unwrap().to_vec(), vec![0, 2]);
        let two_edges = SimplicialComplex::from_facets([[1, 2], [3, 4]]).unwrap();
        assert!(matches!(q_max(&two_edges, FieldSpec::RATIONALS), Err(Error::NotCM)));
    }

    #[test]
    fn connectivity_examples() {
        let f = FieldSpec::RATIONALS;
        assert_eq!(connectivity_sequence(&c5(), f).unwrap().q, vec![5, 2]);
        assert_eq!(connectivity_sequence(&generators::complete_graph(4).unwrap(), f).unwrap().q, vec![4, 3]);
        let octa = generators::cross_polytope_boundary(3).unwrap();
        assert_eq!(connectivity_sequence(&octa, f).unwrap().q, vec![6, 4, 2]);
    }

    #[test]
    fn main_theorem_examples() {
        for (c, value) in [
            (c5(), 5),
            (generators::cross_polytope_boundary(3).unwrap(), 8),
            (generators::simplex_boundary(3).unwrap(), 4),
        ] {
            let r = verify_main_theorem(&c, FieldSpec::RATIONALS).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.shift_product, Exact::integer(value));
            assert_eq!(r.closed_form, Exact::integer(value));
        }
    }

    #[test]
    fn q_estimate_tight_cases() {
        for c in [c5(), generators::complete_graph(4).unwrap(), generators::cross_polytope_boundary(3).unwrap()] {
            let r = verify_q_estimate(&c, FieldSpec::RATIONALS).unwrap();
            assert!(r.holds && r.tight, "{r:?}");
        }
    }

    #[test]
    fn almost_cm() {
        let two_triangles = SimplicialComplex::from_facets([[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(!is_almost_cm(&two_triangles, FieldSpec::RATIONALS));
        let two_edges = SimplicialComplex::from_facets([[1, 2], [3, 4]]).unwrap();
        assert!(is_almost_cm(&two_edges, FieldSpec::RATIONALS));
        assert!(is_almost_cm(&generators::cross_polytope_boundary(3).unwrap(), FieldSpec::F2));
    }

    #[test]
    fn skeleton_proposition_and_certificate() {
        let f = FieldSpec::RATIONALS;
        let octa = generators::cross_polytope_boundary(3).unwrap();
        assert!(verify_skeleton_proposition(&octa, f).unwrap().holds);
        let cert = lower_bound_certificate(&octa, f).unwrap();
        assert!(cert.two_cm_small_q1);
        assert_eq!((cert.lhs.clone(), cert.rhs.clone()), (BigInt::from(120), BigInt::from(120)));
        assert!(cert.holds);

        let cert = lower_bound_certificate(&c5(), f).unwrap();
        assert_eq!((cert.lhs.clone(), cert.rhs.clone()), (BigInt::from(8), BigInt::from(8)));
        assert!(cert.two_cm_small_q1 && cert.holds);

        let k6 = generators::complete_graph(6).unwrap();
        let cert = lower_bound_certificate(&k6, f).unwrap();
        assert!(cert.d_cm && cert.holds);

        let u36 = generators::uniform_matroid(3, 6).unwrap();
        let r = verify_skeleton_proposition(&u36, f).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn render_layout() {
        let t = skips_from_m_sequence(&[2, 3, 5], 5, 2).unwrap();
        let text = t.render();
        assert!(text.contains("m'_i"));
        assert!(text.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["1", "2", "4", "2"]));
    }
}
