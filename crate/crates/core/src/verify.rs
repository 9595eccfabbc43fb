//! Theorem suites around the multiplicity bounds
//! `Π m_i / c! <= e <= Π M_i / c!` and the search ledger.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::classify::{classify_with, matroid_check, ClassificationFlags};
use crate::cm::{
    connectivity_sequence_with, is_almost_cm_with, lower_bound_certificate_with, verify_main_theorem_with,
    verify_q_estimate_with, verify_skeleton_proposition_with, ConnectivitySequence,
};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::field::FieldSpec;
use crate::generators::FamilySpec;
use crate::homology::InducedHomology;
use crate::io::{to_text, ComplexDocument};
use crate::resolution::{
    factorial, is_pure_resolution, is_quasi_pure, multiplicity_bounds, shifts, BettiTable, BettiTableDocument,
    ShiftSequences,
};

/// First 16 hex digits of the SHA-256 of the canonical facet text.
pub fn complex_hash(complex: &SimplicialComplex) -> String {
    let digest = Sha256::digest(to_text(complex).as_bytes());
    hex::encode(&digest[..8])
}

/// One checked statement; inapplicable verdicts never fail a suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub theorem: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(theorem: &str, applicable: bool, holds: bool, detail: impl Into<String>) -> Self {
        Verdict { theorem: theorem.to_string(), applicable, holds, detail: detail.into() }
    }

    pub fn failed(&self) -> bool {
        self.applicable && !self.holds
    }
}

/// Outcome of the equality-implies-purity analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PurityVerdict {
    /// No bound is attained.
    NotApplicable,
    /// A bound is attained inside a class where purity is proven, and the resolution is pure.
    Confirmed,
    /// A bound is attained inside a proven class but the resolution is not pure or not CM.
    Violated,
    /// A bound is attained outside the proven classes; recorded only.
    ConjecturalObservation,
}

/// Everything computed once per complex and field.
pub struct Analysis {
    pub complex: SimplicialComplex,
    pub homology: InducedHomology,
    pub table: BettiTable,
    pub shifts: ShiftSequences,
    pub flags: ClassificationFlags,
    pub connectivity: Option<ConnectivitySequence>,
    pub lower: Exact,
    pub upper: Exact,
}

impl Analysis {
    pub fn new(complex: &SimplicialComplex, field: FieldSpec) -> Result<Self> {
        if complex.is_irrelevant() {
            return Err(Error::DegenerateComplex("the complex {∅} has no face ring"));
        }
        if complex.is_simplex() {
            return Err(Error::DegenerateComplex("a full simplex has the zero face ideal"));
        }
        let homology = InducedHomology::new(complex, field);
        let table = BettiTable::from_homology(&homology)?;
        let shifts = shifts(&table)?;
        let flags = classify_with(&homology);
        let connectivity = if flags.is_cm { Some(connectivity_sequence_with(&homology)?) } else { None };
        let (lower, upper) = multiplicity_bounds(&table);
        Ok(Analysis {
            complex: complex.clone(),
            homology,
            table,
            shifts,
            flags,
            connectivity,
            lower: Exact(lower),
            upper: Exact(upper),
        })
    }

    pub fn e(&self) -> u64 {
        self.complex.multiplicity()
    }

    fn e_exact(&self) -> Exact {
        Exact::integer(self.e())
    }

    pub fn upper_holds(&self) -> bool {
        self.e_exact() <= self.upper
    }

    pub fn lower_holds(&self) -> bool {
        self.e_exact() >= self.lower
    }

    pub fn upper_equality(&self) -> bool {
        self.e_exact() == self.upper
    }

    pub fn lower_equality(&self) -> bool {
        self.e_exact() == self.lower
    }

    pub fn is_pure(&self) -> bool {
        is_pure_resolution(&self.shifts)
    }

    pub fn is_quasi_pure(&self) -> bool {
        is_quasi_pure(&self.shifts)
    }

    fn bounds_detail(&self) -> String {
        format!("{} <= {} <= {}", self.lower, self.e(), self.upper)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MultiplicityReport {
    pub complex_hash: String,
    pub field: FieldSpec,
    pub n: usize,
    pub d: usize,
    pub codim: usize,
    pub e: u64,
    pub lower: Exact,
    pub upper: Exact,
    pub betti: BettiTableDocument,
    pub shifts: ShiftSequences,
    pub pure_resolution: bool,
    pub quasi_pure: bool,
    pub almost_cm: bool,
    pub flags: ClassificationFlags,
    pub connectivity: Option<ConnectivitySequence>,
    pub upper_equality: bool,
    pub lower_equality: bool,
    pub purity: PurityVerdict,
    pub purity_detail: String,
    pub verdicts: Vec<Verdict>,
}

impl MultiplicityReport {
    /// No applicable verdict fails.
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| !v.failed())
    }

    pub fn failures(&self) -> Vec<&Verdict> {
        self.verdicts.iter().filter(|v| v.failed()).collect()
    }

    pub fn verdict(&self, theorem: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.theorem == theorem)
    }
}

/// Classes in which an attained bound is known to force a pure resolution.
fn proven_purity_classes(a: &Analysis) -> Vec<&'static str> {
    let dim = a.complex.dim();
    let (upper, lower) = (a.upper_equality(), a.lower_equality());
    let mut classes = Vec::new();
    if a.flags.is_matroid {
        classes.push("matroid complex");
    }
    if dim == 1 && upper {
        classes.push("one-dimensional, upper bound");
    }
    if a.flags.is_cm && (dim == 1 || dim == 2) && lower {
        classes.push("CM of dimension one or two, lower bound");
    }
    if a.flags.is_gorenstein_star && (dim == 3 || dim == 4) {
        classes.push("Gorenstein* of dimension three or four");
    }
    if a.flags.is_cm && a.is_quasi_pure() {
        classes.push("CM with quasi-pure resolution");
    }
    if lower {
        if let Some(seq) = &a.connectivity {
            let cert = lower_bound_certificate_with(&a.complex, seq);
            if cert.two_cm_small_q1 || cert.d_cm {
                classes.push("2-CM with small q_1 or d-CM, lower bound");
            }
        }
    }
    classes
}

/// Purity analysis of an attained bound.
pub fn equality_purity_check(report: &MultiplicityReport) -> PurityVerdict {
    report.purity
}

fn purity_analysis(a: &Analysis) -> (PurityVerdict, String) {
    if !a.upper_equality() && !a.lower_equality() {
        return (PurityVerdict::NotApplicable, "no bound attained".into());
    }
    let shape = format!("pure resolution: {}, CM: {}", a.is_pure(), a.flags.is_cm);
    let classes = proven_purity_classes(a);
    if classes.is_empty() {
        return (PurityVerdict::ConjecturalObservation, shape);
    }
    let verdict = if a.is_pure() && a.flags.is_cm { PurityVerdict::Confirmed } else { PurityVerdict::Violated };
    (verdict, format!("{shape}; proven for: {}", classes.join(", ")))
}

fn product(values: impl IntoIterator<Item = usize>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, x| acc * BigInt::from(x))
}

fn general_verdicts(a: &Analysis) -> Vec<Verdict> {
    let mut out = Vec::new();
    let cm = a.flags.is_cm;
    out.push(Verdict::new("upper_bound", true, a.upper_holds(), a.bounds_detail()));
    let lower_detail = if cm { a.bounds_detail() } else { format!("informational, not CM: {}", a.bounds_detail()) };
    out.push(Verdict::new("lower_bound", cm, a.lower_holds(), lower_detail));

    let (purity, detail) = purity_analysis(a);
    let proven = matches!(purity, PurityVerdict::Confirmed | PurityVerdict::Violated);
    out.push(Verdict::new("equality_implies_purity", proven, purity != PurityVerdict::Violated, detail));

    let qp = a.is_quasi_pure();
    let attained = a.upper_equality() || a.lower_equality();
    out.push(Verdict::new(
        "quasi_pure_cm_bounds",
        cm && qp,
        a.upper_holds() && a.lower_holds() && (!attained || a.is_pure()),
        format!("quasi-pure: {qp}, CM: {cm}"),
    ));
    let almost = is_almost_cm_with(&a.homology);
    out.push(Verdict::new(
        "almost_cm_quasi_pure_upper_bound",
        almost && qp,
        a.upper_holds(),
        format!("almost CM: {almost}, quasi-pure: {qp}"),
    ));
    out.push(Verdict::new(
        "pure_cm_multiplicity",
        cm && a.is_pure(),
        a.lower_equality() && a.upper_equality(),
        format!("e = {}, bounds {} and {}", a.e(), a.lower, a.upper),
    ));

    if let Some(seq) = &a.connectivity {
        match verify_main_theorem_with(&a.complex, &a.table, seq) {
            Ok(r) => out.push(Verdict::new(
                "skips_match_connectivity",
                true,
                r.holds,
                format!("skipped {:?}, predicted {:?}, product {} vs {}", r.skipped, r.predicted, r.shift_product, r.closed_form),
            )),
            Err(e) => out.push(Verdict::new("skips_match_connectivity", true, false, e.to_string())),
        }
        let q = verify_q_estimate_with(&a.complex, seq);
        out.push(Verdict::new(
            "connectivity_facet_bound",
            true,
            q.holds,
            format!("f = {} >= {} (slack {})", q.facets, q.bound, q.slack),
        ));
        let p = verify_skeleton_proposition_with(&a.complex, seq);
        out.push(Verdict::new("skeleton_connectivity_gaps", true, p.holds, format!("q = {:?}", p.q)));
        let cert = lower_bound_certificate_with(&a.complex, seq);
        let hyp = cert.two_cm_small_q1 || cert.d_cm;
        out.push(Verdict::new(
            "lower_bound_inequality",
            hyp,
            cert.inequality_holds,
            format!("{} <= {} (2-CM small q_1: {}, d-CM: {})", cert.lhs, cert.rhs, cert.two_cm_small_q1, cert.d_cm),
        ));
        out.push(Verdict::new(
            "doubly_cm_lower_bound",
            hyp,
            a.lower_holds() && (!a.lower_equality() || a.is_pure()),
            a.bounds_detail(),
        ));
    }
    out
}

fn matroid_verdicts(a: &Analysis) -> Vec<Verdict> {
    let mut out = vec![
        Verdict::new("matroid_upper_bound", true, a.upper_holds(), a.bounds_detail()),
        Verdict::new("matroid_lower_bound", true, a.lower_holds(), a.bounds_detail()),
        Verdict::new(
            "matroid_equality_purity",
            a.upper_equality() || a.lower_equality(),
            a.is_pure(),
            format!("pure resolution: {}", a.is_pure()),
        ),
    ];
    if let Some(apex) = a.complex.cone_apexes().iter().next() {
        let same = a.complex.n() > 1 && {
            let rest = a.complex.delete_vertices(crate::complex::VertexSet::singleton(apex));
            match rest {
                Ok(rest) if !rest.is_simplex() => {
                    let h = InducedHomology::new(&rest, a.homology.field());
                    BettiTable::from_homology(&h).and_then(|t| shifts(&t)).map(|s| s == a.shifts).unwrap_or(false)
                }
                _ => false,
            }
        };
        out.push(Verdict::new("cone_shifts_unchanged", !a.complex.core().is_irrelevant(), same, format!("apex {}", a.complex.label_of(apex))));
    }
    out
}

fn dim12_verdicts(a: &Analysis) -> Vec<Verdict> {
    let dim = a.complex.dim();
    let cm = a.flags.is_cm;
    let mut out = vec![Verdict::new("low_dimension_upper_bound", true, a.upper_holds(), a.bounds_detail())];
    if dim == 1 {
        let ok = (1..=a.shifts.pd()).all(|i| {
            [a.shifts.min(i), a.shifts.max(i)].iter().all(|&s| s == i + 1 || s == i + 2)
        });
        out.push(Verdict::new("graph_quasi_pure", true, ok && a.is_quasi_pure(), format!("{:?}", a.shifts)));
        out.push(Verdict::new(
            "graph_upper_equality",
            a.upper_equality(),
            cm && a.is_pure(),
            format!("CM: {cm}, pure: {}", a.is_pure()),
        ));
    }
    out.push(Verdict::new("low_dimension_lower_bound", cm, a.lower_holds(), a.bounds_detail()));
    out.push(Verdict::new(
        "low_dimension_lower_equality",
        cm && a.lower_equality(),
        a.is_pure(),
        format!("pure: {}", a.is_pure()),
    ));
    out
}

fn gorenstein_verdicts(a: &Analysis) -> Vec<Verdict> {
    let (n, d, c) = (a.complex.n(), a.complex.d(), a.complex.codim());
    let s = &a.shifts;
    let m_at = |i: usize| if i == 0 { 0 } else { s.min(i) };
    let big_m_at = |i: usize| if i == 0 { 0 } else { s.max(i) };
    let dual = s.pd() == c && (0..=c).all(|i| big_m_at(i) + m_at(c - i) == n);
    let mut out = vec![Verdict::new("self_dual_shifts", true, dual, format!("m = {:?}, M = {:?}, n = {n}", s.m, s.big_m))];

    if let Some(seq) = &a.connectivity {
        let q = &seq.q;
        if d >= 3 {
            let ok = q[d - 1] == 2 && q[d - 2] <= 5;
            out.push(Verdict::new("top_connectivity", true, ok, format!("q = {q:?}")));
        }
        let mut skipped: Vec<usize> = (1..=n).filter(|x| !s.big_m[..c.min(s.pd())].contains(x)).collect();
        skipped.sort_unstable();
        let mut predicted: Vec<usize> = q.iter().map(|&x| x - 1).collect();
        predicted.sort_unstable();
        let mut ok = skipped == predicted;
        let mut detail = format!("M-skips {skipped:?}, q - 1 = {predicted:?}");
        if d >= 2 && ok {
            let lhs = Exact::ratio(product(s.big_m.iter().copied()), factorial(c));
            let num = BigInt::from(n) * product((2..d).map(|i| n - i));
            let rhs = Exact::ratio(num, product(q[1..d - 1].iter().map(|&x| x - 1)));
            ok &= lhs == rhs;
            detail += &format!(", product {lhs} vs {rhs}");
        }
        out.push(Verdict::new("max_shift_skips", true, ok, detail));
    }

    let dim = a.complex.dim();
    let mid = dim == 3 || dim == 4;
    out.push(Verdict::new("gorenstein_upper_bound", mid, a.upper_holds(), a.bounds_detail()));
    out.push(Verdict::new("gorenstein_lower_bound", mid, a.lower_holds(), a.bounds_detail()));
    out.push(Verdict::new(
        "gorenstein_equality_purity",
        mid && (a.upper_equality() || a.lower_equality()),
        a.is_pure(),
        format!("pure: {}", a.is_pure()),
    ));

    let large_m1 = s.pd() >= 1 && s.max(1) > d / 2;
    let codim_four = c == 4 && d <= 22;
    out.push(Verdict::new(
        "gorenstein_upper_bound_special",
        large_m1 || codim_four,
        a.upper_holds(),
        format!("M_1 >= floor(d/2) + 1: {large_m1}; n - d = 4 and d <= 22: {codim_four}"),
    ));
    out
}

/// Both bounds, the purity analysis and every suite whose hypotheses hold.
pub fn verify_conjecture(complex: &SimplicialComplex, field: FieldSpec) -> Result<MultiplicityReport> {
    let a = Analysis::new(complex, field)?;
    Ok(report_from(&a))
}

pub fn report_from(a: &Analysis) -> MultiplicityReport {
    let mut verdicts = general_verdicts(a);
    if a.flags.is_matroid {
        verdicts.extend(matroid_verdicts(a));
    }
    let dim = a.complex.dim();
    if dim == 1 || dim == 2 {
        verdicts.extend(dim12_verdicts(a));
    }
    if a.flags.is_gorenstein_star {
        verdicts.extend(gorenstein_verdicts(a));
        if (2..=4).contains(&dim) {
            verdicts.push(consistency_euler_ds(&a.complex).expect("dimension checked"));
        }
    }
    let (purity, purity_detail) = purity_analysis(a);
    MultiplicityReport {
        complex_hash: complex_hash(&a.complex),
        field: a.homology.field(),
        n: a.complex.n(),
        d: a.complex.d(),
        codim: a.complex.codim(),
        e: a.e(),
        lower: a.lower.clone(),
        upper: a.upper.clone(),
        betti: a.table.to_document(),
        shifts: a.shifts.clone(),
        pure_resolution: a.is_pure(),
        quasi_pure: a.is_quasi_pure(),
        almost_cm: is_almost_cm_with(&a.homology),
        flags: a.flags.clone(),
        connectivity: a.connectivity.clone(),
        upper_equality: a.upper_equality(),
        lower_equality: a.lower_equality(),
        purity,
        purity_detail,
        verdicts,
    }
}

/// Both bounds and the purity clause for a matroid complex.
pub fn verify_matroid_theorem(complex: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Verdict>> {
    if let Some(w) = matroid_check(complex).witness {
        return Err(Error::NotAMatroid(w));
    }
    Ok(matroid_verdicts(&Analysis::new(complex, field)?))
}

/// Bounds, quasi-purity and equality clauses for complexes of dimension one or two.
pub fn verify_dim12(complex: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Verdict>> {
    let dim = complex.dim();
    if dim != 1 && dim != 2 {
        return Err(Error::WrongDimension { found: dim, expected: vec![1, 2] });
    }
    Ok(dim12_verdicts(&Analysis::new(complex, field)?))
}

/// Self-duality, the connectivity of the top skeleta, the skips of the
/// maximal shifts, and the bounds in dimensions three and four.
pub fn verify_gorenstein(complex: &SimplicialComplex, field: FieldSpec) -> Result<Vec<Verdict>> {
    let a = Analysis::new(complex, field)?;
    if !a.flags.is_gorenstein_star {
        return Err(Error::NotGorensteinStar);
    }
    Ok(gorenstein_verdicts(&a))
}

/// Face-count identities of spheres: `f_1 = 3n - 6` in dimension 2,
/// `f_3 = f_1 - n` in dimension 3, `f_4 = 2(h_0 + h_1 + h_2)` in dimension 4.
pub fn consistency_euler_ds(complex: &SimplicialComplex) -> Result<Verdict> {
    let f = complex.f_vector();
    let n = complex.n() as i128;
    let (holds, detail) = match complex.dim() {
        2 => (f.get(1) as i128 == 3 * n - 6, format!("f_1 = {}, 3n - 6 = {}", f.get(1), 3 * n - 6)),
        3 => (f.get(3) as i128 == f.get(1) as i128 - n, format!("f_3 = {}, f_1 - n = {}", f.get(3), f.get(1) as i128 - n)),
        4 => {
            let h = complex.h_vector();
            let rhs = 2 * (h.0[0] + h.0[1] + h.0[2]);
            (f.get(4) as i128 == rhs, format!("f_4 = {}, 2(h_0 + h_1 + h_2) = {rhs}", f.get(4)))
        }
        other => return Err(Error::WrongDimension { found: other, expected: vec![2, 3, 4] }),
    };
    Ok(Verdict::new("sphere_face_counts", true, holds, detail))
}

/// Greedy shrinking: delete single vertices while `still_fails` holds, then
/// single facets, and repeat until neither step applies.
pub fn shrink(complex: &SimplicialComplex, still_fails: impl Fn(&SimplicialComplex) -> bool) -> SimplicialComplex {
    let mut current = complex.clone();
    'outer: loop {
        for v in 0..current.n() {
            if let Ok(smaller) = current.delete_vertices(crate::complex::VertexSet::singleton(v)) {
                if !smaller.is_irrelevant() && still_fails(&smaller) {
                    current = smaller;
                    continue 'outer;
                }
            }
        }
        if current.facets().len() > 1 {
            for i in 0..current.facets().len() {
                let rest: Vec<Vec<_>> = current
                    .facets()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, f)| current.labels_of(*f))
                    .collect();
                let smaller = SimplicialComplex::from_facets(rest).expect("nonempty facet list");
                if still_fails(&smaller) {
                    current = smaller;
                    continue 'outer;
                }
            }
        }
        return current;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldOutcome {
    pub field: FieldSpec,
    pub cm: bool,
    pub lower: Exact,
    pub upper: Exact,
    pub upper_tight: bool,
    pub lower_tight: bool,
    pub purity: PurityVerdict,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerRecord {
    pub family: FamilySpec,
    pub seed: u64,
    pub trial: u64,
    pub complex_hash: String,
    pub n: usize,
    pub d: usize,
    pub e: u64,
    /// `pass`, `fail`, `degenerate` or `invalid`.
    pub status: String,
    pub fields: Vec<FieldOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ComplexDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LedgerSummary {
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub degenerate: u64,
    pub invalid: u64,
    pub upper_tight: u64,
    pub lower_tight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ledger {
    pub records: Vec<LedgerRecord>,
    pub summary: LedgerSummary,
}

impl Ledger {
    /// JSON lines: one record per trial, then the summary.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out += &serde_json::to_string(r).expect("records serialize");
            out.push('\n');
        }
        out += &serde_json::to_string(&serde_json::json!({ "summary": self.summary })).expect("summary serializes");
        out.push('\n');
        out
    }

    pub fn has_failures(&self) -> bool {
        self.summary.failed > 0
    }
}

fn failing_verdicts(complex: &SimplicialComplex, field: FieldSpec) -> Option<Vec<String>> {
    let report = verify_conjecture(complex, field).ok()?;
    let failures: Vec<String> = report.failures().into_iter().map(|v| v.theorem.clone()).collect();
    (!failures.is_empty()).then_some(failures)
}

fn run_trial(family: &FamilySpec, seed: u64, trial: u64, fields: &[FieldSpec]) -> LedgerRecord {
    let mut record = LedgerRecord {
        family: family.clone(),
        seed,
        trial,
        complex_hash: String::new(),
        n: 0,
        d: 0,
        e: 0,
        status: "pass".into(),
        fields: Vec::new(),
        witness: None,
        message: None,
    };
    let complex = match family.sample(seed, trial) {
        Ok(c) => c,
        Err(e) => {
            record.status = "invalid".into();
            record.message = Some(e.to_string());
            return record;
        }
    };
    record.complex_hash = complex_hash(&complex);
    record.n = complex.n();
    record.d = complex.d();
    record.e = complex.multiplicity();
    if complex.is_simplex() {
        record.status = "degenerate".into();
        return record;
    }
    for &field in fields {
        let report = match verify_conjecture(&complex, field) {
            Ok(r) => r,
            Err(e) => {
                record.status = "invalid".into();
                record.message = Some(e.to_string());
                return record;
            }
        };
        let failures: Vec<String> = report.failures().into_iter().map(|v| v.theorem.clone()).collect();
        if !failures.is_empty() && record.witness.is_none() {
            record.status = "fail".into();
            let witness = shrink(&complex, |c| failing_verdicts(c, field).is_some());
            record.witness = Some(ComplexDocument::of(&witness));
        }
        record.fields.push(FieldOutcome {
            field,
            cm: report.flags.is_cm,
            lower: report.lower,
            upper: report.upper,
            upper_tight: report.upper_equality,
            lower_tight: report.lower_equality,
            purity: report.purity,
            failures,
        });
    }
    record
}

/// Runs every applicable verdict on `trials` sampled complexes. Records are
/// ordered by trial, so equal inputs give byte-identical ledgers.
pub fn fuzz_search(family: &FamilySpec, trials: u64, seed: u64, fields: &[FieldSpec]) -> Ledger {
    let records: Vec<LedgerRecord> = (0..trials).into_par_iter().map(|t| run_trial(family, seed, t, fields)).collect();
    let mut summary = LedgerSummary { trials, ..Default::default() };
    for r in &records {
        match r.status.as_str() {
            "pass" => summary.passed += 1,
            "fail" => summary.failed += 1,
            "degenerate" => summary.degenerate += 1,
            _ => summary.invalid += 1,
        }
        summary.upper_tight += r.fields.iter().any(|f| f.upper_tight) as u64;
        summary.lower_tight += r.fields.iter().any(|f| f.lower_tight) as u64;
    }
    Ledger { records, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    fn all_fields() -> [FieldSpec; 3] {
        [FieldSpec::RATIONALS, FieldSpec::F2, FieldSpec::F3]
    }

    #[test]
    fn pentagon_report() {
        let r = verify_conjecture(&generators::cycle(5).unwrap(), FieldSpec::RATIONALS).unwrap();
        assert_eq!((r.e, r.lower.clone(), r.upper.clone()), (5, Exact::integer(5), Exact::integer(5)));
        assert!(r.upper_equality && r.lower_equality && r.pure_resolution);
        assert_eq!(r.purity, PurityVerdict::Confirmed);
        assert!(r.all_hold(), "{:?}", r.failures());
        assert_eq!(r.connectivity.as_ref().unwrap().q, vec![5, 2]);
        assert!(r.verdict("sphere_face_counts").is_none());
    }

    #[test]
    fn disjoint_edges_report() {
        let two_edges = SimplicialComplex::from_facets([[1, 2], [3, 4]]).unwrap();
        let r = verify_conjecture(&two_edges, FieldSpec::RATIONALS).unwrap();
        assert_eq!((r.e, r.upper.clone()), (2, Exact::integer(3)));
        let lower = r.verdict("lower_bound").unwrap();
        assert!(!lower.applicable);
        assert!(r.verdict("upper_bound").unwrap().holds);
        assert!(r.all_hold());
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            verify_conjecture(&generators::simplex(3).unwrap(), FieldSpec::F2),
            Err(Error::DegenerateComplex(_))
        ));
        assert!(matches!(
            verify_conjecture(&SimplicialComplex::irrelevant(), FieldSpec::F2),
            Err(Error::DegenerateComplex(_))
        ));
    }

    #[test]
    fn equality_cases_are_pure() {
        for c in [generators::complete_graph(4).unwrap(), generators::simplex_boundary(3).unwrap()] {
            let r = verify_conjecture(&c, FieldSpec::RATIONALS).unwrap();
            assert_eq!(equality_purity_check(&r), PurityVerdict::Confirmed);
            assert!(r.all_hold());
        }
    }

    #[test]
    fn matroid_theorem() {
        let k5 = generators::uniform_matroid(2, 5).unwrap();
        assert!(verify_matroid_theorem(&k5, FieldSpec::RATIONALS).unwrap().iter().all(|v| !v.failed()));
        let c4 = generators::graphic_matroid(&[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(verify_matroid_theorem(&c4, FieldSpec::RATIONALS).unwrap().iter().all(|v| !v.failed()));
        let cone = generators::cone(&generators::uniform_matroid(2, 4).unwrap());
        let verdicts = verify_matroid_theorem(&cone, FieldSpec::RATIONALS).unwrap();
        let shifts = verdicts.iter().find(|v| v.theorem == "cone_shifts_unchanged").unwrap();
        assert!(shifts.applicable && shifts.holds);
        assert!(matches!(
            verify_matroid_theorem(&generators::cycle(5).unwrap(), FieldSpec::RATIONALS),
            Err(Error::NotAMatroid(_))
        ));
    }

    #[test]
    fn low_dimensions() {
        let tree = SimplicialComplex::from_facets([[1, 2], [1, 3], [3, 4], [3, 5]]).unwrap();
        for f in all_fields() {
            assert!(verify_dim12(&tree, f).unwrap().iter().all(|v| !v.failed()));
        }
        for n in 3..=7 {
            let r = verify_conjecture(&generators::complete_graph(n).unwrap(), FieldSpec::F2).unwrap();
            assert!(r.upper_equality);
            assert_eq!(r.e as usize, n * (n - 1) / 2);
        }
        assert!(matches!(
            verify_dim12(&generators::simplex_boundary(4).unwrap(), FieldSpec::F2),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn gorenstein_suites() {
        let octa = generators::cross_polytope_boundary(3).unwrap();
        let a = Analysis::new(&octa, FieldSpec::RATIONALS).unwrap();
        assert_eq!(a.shifts.big_m, vec![2, 4, 6]);
        let verdicts = verify_gorenstein(&octa, FieldSpec::RATIONALS).unwrap();
        assert!(verdicts.iter().all(|v| !v.failed()), "{verdicts:?}");
        let c5 = verify_gorenstein(&generators::cycle(5).unwrap(), FieldSpec::F3).unwrap();
        assert!(c5[0].holds);
        let c84 = verify_gorenstein(&generators::cyclic_polytope_boundary(4, 8).unwrap(), FieldSpec::RATIONALS).unwrap();
        let upper = c84.iter().find(|v| v.theorem == "gorenstein_upper_bound").unwrap();
        assert!(upper.applicable && upper.holds);
        assert!(matches!(
            verify_gorenstein(&generators::path(4).unwrap(), FieldSpec::RATIONALS),
            Err(Error::NotGorensteinStar)
        ));
    }

    #[test]
    fn sphere_identities() {
        for c in [
            generators::cross_polytope_boundary(3).unwrap(),
            generators::cyclic_polytope_boundary(4, 7).unwrap(),
            generators::cyclic_polytope_boundary(5, 8).unwrap(),
        ] {
            assert!(consistency_euler_ds(&c).unwrap().holds);
        }
        assert!(matches!(consistency_euler_ds(&generators::cycle(5).unwrap()), Err(Error::WrongDimension { .. })));
    }

    #[test]
    fn shrinker_reaches_a_minimal_witness() {
        // A complex "fails" while it still contains the edge {1, 2}.
        let big = generators::complete_graph(6).unwrap();
        let has_edge = |c: &SimplicialComplex| {
            c.set_of(&[1.into(), 2.into()]).is_some_and(|s| c.contains_face(s))
        };
        let small = shrink(&big, has_edge);
        assert_eq!(small.facets().len(), 1);
        assert_eq!(small.labels(), &[1.into(), 2.into()]);
    }

    #[test]
    fn search_is_deterministic() {
        let family = FamilySpec::parse("random_pure n=8 d=2").unwrap();
        let a = fuzz_search(&family, 20, 7, &[FieldSpec::RATIONALS]);
        let b = fuzz_search(&family, 20, 7, &[FieldSpec::RATIONALS]);
        assert_eq!(a.to_jsonl(), b.to_jsonl());
        assert_eq!(a.summary.failed, 0);
        assert_eq!(a.records.len(), 20);
        let single = fuzz_search(&FamilySpec::parse("simplex_boundary 3").unwrap(), 1, 0, &[FieldSpec::F2]);
        assert_eq!(single.summary.passed, 1);
    }
}
