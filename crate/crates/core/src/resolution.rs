//! Graded Betti numbers of the face ideal via Hochster's formula.
//!
//! `β_{i,j} = Σ_{|W| = j} dim H̃_{j-i-1}(Δ_W)`, summed over nonempty `W`.
//! The row `i = 0` (`β_{0,0} = 1`) is implicit.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::homology::InducedHomology;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    d: usize,
    field: FieldSpec,
    /// `rows[i - 1][j] = β_{i,j}` for `1 <= i <= pd`, `0 <= j <= n`.
    rows: Vec<Vec<u64>>,
    degenerate: bool,
}

impl BettiTable {
    pub fn from_homology(homology: &InducedHomology) -> Result<Self> {
        let complex = homology.complex();
        if complex.is_irrelevant() {
            return Err(Error::DegenerateComplex("the complex {∅} has no face ring to resolve"));
        }
        let n = complex.n();
        let mut rows = vec![vec![0u64; n + 1]; n];
        for mask in 1u64..(1u64 << n) {
            let w = VertexSet::from_mask(mask);
            let j = w.len();
            for (k, &b) in homology.betti(w).0.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                // p = k - 1, i = j - p - 1
                let i = j - k;
                debug_assert!(i >= 1, "H̃_(|W|-1) of an induced subcomplex vanishes");
                rows[i - 1][j] += b;
            }
        }
        while rows.last().is_some_and(|r| r.iter().all(|&b| b == 0)) {
            rows.pop();
        }
        Ok(BettiTable { n, d: complex.d(), field: homology.field(), rows, degenerate: complex.is_simplex() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn codim(&self) -> usize {
        self.n - self.d
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// True for the zero ideal of a full simplex: the table is empty.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Projective dimension: the last nonzero row.
    pub fn pd(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i == 0 {
            return (j == 0) as u64;
        }
        self.rows.get(i - 1).and_then(|r| r.get(j)).copied().unwrap_or(0)
    }

    /// Row `i` as `β_{i,0}, .., β_{i,n}`.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i - 1]
    }

    /// Nonzero entries `(i, j, β_{i,j})` by row, then column.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(r, row)| {
            row.iter().enumerate().filter(|(_, &b)| b != 0).map(move |(j, &b)| (r + 1, j, b))
        })
    }

    /// Coefficients of `1 + Σ_{i,j} (-1)^i β_{i,j} t^j`, the numerator of the
    /// Hilbert series over `(1 - t)^n`.
    pub fn k_polynomial(&self) -> Vec<i128> {
        let mut poly = vec![0i128; self.n + 1];
        poly[0] = 1;
        for (i, j, b) in self.entries() {
            let b = b as i128;
            poly[j] += if i % 2 == 0 { b } else { -b };
        }
        poly
    }

    /// Plain-text grid: one line per homological index `i`, one column per
    /// internal degree `j`, `.` for zero.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.rows.is_empty() {
            out.push_str("(zero ideal: empty table)\n");
            return out;
        }
        let first = self.entries().map(|(_, j, _)| j).min().unwrap_or(0);
        let width = self.entries().map(|(_, _, b)| b.to_string().len()).max().unwrap_or(1).max(4);
        let _ = write!(out, "{:>5}", "");
        for j in first..=self.n {
            let _ = write!(out, " {:>width$}", format!("j={j}"));
        }
        out.push('\n');
        for i in 1..=self.pd() {
            let _ = write!(out, "{:>5}", format!("i={i}"));
            for j in first..=self.n {
                let b = self.get(i, j);
                let cell = if b == 0 { ".".to_string() } else { b.to_string() };
                let _ = write!(out, " {cell:>width$}");
            }
            out.push('\n');
        }
        out
    }

    pub fn to_document(&self) -> BettiTableDocument {
        BettiTableDocument {
            n: self.n,
            d: self.d,
            codim: self.codim(),
            field: self.field,
            pd: self.pd(),
            degenerate: self.degenerate,
            rows: (1..=self.pd())
                .map(|i| BettiRow {
                    i,
                    entries: (0..=self.n).filter(|&j| self.get(i, j) != 0).map(|j| (j, self.get(i, j))).collect(),
                })
                .collect(),
        }
    }
}

/// Serializable form of a [`BettiTable`], nonzero entries only.
#[derive(Clone, Debug, Serialize)]
pub struct BettiTableDocument {
    pub n: usize,
    pub d: usize,
    pub codim: usize,
    pub field: FieldSpec,
    pub pd: usize,
    pub degenerate: bool,
    pub rows: Vec<BettiRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BettiRow {
    pub i: usize,
    /// `(j, β_{i,j})` pairs in increasing `j`.
    pub entries: Vec<(usize, u64)>,
}

/// Minimal shifts `m_i` and maximal shifts `M_i`, `i = 1..pd`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftSequences {
    pub m: Vec<usize>,
    #[serde(rename = "M")]
    pub big_m: Vec<usize>,
}

impl ShiftSequences {
    pub fn pd(&self) -> usize {
        self.m.len()
    }

    /// `m_i`, 1-based.
    pub fn min(&self, i: usize) -> usize {
        self.m[i - 1]
    }

    /// `M_i`, 1-based.
    pub fn max(&self, i: usize) -> usize {
        self.big_m[i - 1]
    }
}

/// Betti table of `I_Δ` over `field`. Fails for `{∅}`; a full simplex
/// yields an empty table flagged degenerate.
pub fn hochster_betti_table(complex: &SimplicialComplex, field: FieldSpec) -> Result<BettiTable> {
    if complex.is_irrelevant() {
        return Err(Error::DegenerateComplex("the complex {∅} has no face ring to resolve"));
    }
    BettiTable::from_homology(&InducedHomology::new(complex, field))
}

pub fn shifts(table: &BettiTable) -> Result<ShiftSequences> {
    if table.is_degenerate() {
        return Err(Error::DegenerateComplex("the zero ideal has no shifts"));
    }
    let (m, big_m) = table
        .rows
        .iter()
        .map(|row| {
            let lo = row.iter().position(|&b| b != 0).expect("rows up to pd are nonzero");
            let hi = row.iter().rposition(|&b| b != 0).expect("rows up to pd are nonzero");
            (lo, hi)
        })
        .unzip();
    Ok(ShiftSequences { m, big_m })
}

/// Inclusion-minimal non-faces, the supports of the minimal generators of `I_Δ`.
pub fn minimal_nonfaces(complex: &SimplicialComplex) -> Vec<VertexSet> {
    let faces: HashSet<VertexSet> = complex.faces_by_dimension().into_iter().flatten().collect();
    let mut out = Vec::new();
    // every minimal non-face N arises as (N - max N) ∪ {max N}
    for face in &faces {
        let start = face.last().map_or(0, |m| m + 1);
        for v in start..complex.n() {
            let candidate = face.with(v);
            if !faces.contains(&candidate) && candidate.iter().all(|u| faces.contains(&candidate.without(u))) {
                out.push(candidate);
            }
        }
    }
    out.sort();
    out
}

pub fn is_pure_resolution(shifts: &ShiftSequences) -> bool {
    shifts.m == shifts.big_m
}

/// `m_i >= M_{i-1}` for `2 <= i <= pd`.
pub fn is_quasi_pure(shifts: &ShiftSequences) -> bool {
    (2..=shifts.pd()).all(|i| shifts.min(i) >= shifts.max(i - 1))
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `(Π_{i<=c} m_i / c!, Π_{i<=c} M_i / c!)` with `c` the codimension; both
/// are 1 for the zero ideal.
pub fn multiplicity_bounds(table: &BettiTable) -> (BigRational, BigRational) {
    if table.is_degenerate() {
        return (BigRational::one(), BigRational::one());
    }
    let c = table.codim();
    let s = shifts(table).expect("non-degenerate table");
    let bound = |seq: &[usize]| {
        let num = seq[..c].iter().fold(BigInt::one(), |acc, &x| acc * BigInt::from(x));
        BigRational::new(num, factorial(c))
    };
    (bound(&s.m), bound(&s.big_m))
}

/// True iff `1 + Σ (-1)^i β_{i,j} t^j = (1 - t)^{n-d} Σ h_i t^i`.
pub fn k_polynomial_matches(table: &BettiTable, complex: &SimplicialComplex) -> bool {
    let h = complex.h_vector();
    let mut rhs: Vec<i128> = h.0.clone();
    for _ in 0..complex.codim() {
        let mut next = vec![0i128; rhs.len() + 1];
        for (k, &a) in rhs.iter().enumerate() {
            next[k] += a;
            next[k + 1] -= a;
        }
        rhs = next;
    }
    let lhs = table.k_polynomial();
    let len = lhs.len().max(rhs.len());
    (0..len).all(|k| lhs.get(k).copied().unwrap_or(0) == rhs.get(k).copied().unwrap_or(0))
}

pub fn k_polynomial_check(complex: &SimplicialComplex, field: FieldSpec) -> Result<bool> {
    Ok(k_polynomial_matches(&hochster_betti_table(complex, field)?, complex))
}
