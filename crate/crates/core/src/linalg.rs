//! Exact matrix rank over `Q` and `F_p`.
//!
//! Ranks are computed by sparse column reduction. Over `F_p` this is plain
//! Gaussian elimination; over `Q` it is fraction-free elimination on integer
//! columns, first in checked `i64` and, on overflow, again with big integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::FieldSpec;

/// Sparse column: `(row, value)` pairs sorted by row, no explicit zeros.
pub(crate) type Column<E> = Vec<(u32, E)>;

trait EliminationRing {
    type Elem: Clone;

    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, x: &Self::Elem) -> Option<Self::Elem>;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Option<Self::Elem>;
    fn neg(&self, x: &Self::Elem) -> Option<Self::Elem>;
    /// Multipliers `(a, b)` with `a * target - b * pivot = 0`.
    fn multipliers(&self, target: &Self::Elem, pivot: &Self::Elem) -> Option<(Self::Elem, Self::Elem)>;
    fn normalize(&self, _col: &mut Column<Self::Elem>) {}
}

struct PrimeField(u64);

impl PrimeField {
    fn inverse(&self, x: u32) -> u32 {
        // Fermat: x^(p-2)
        let p = self.0;
        let (mut base, mut exp, mut acc) = (x as u64 % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl EliminationRing for PrimeField {
    type Elem = u32;

    fn is_zero(&self, x: &u32) -> bool {
        *x == 0
    }
    fn mul(&self, a: &u32, x: &u32) -> Option<u32> {
        Some((*a as u64 * *x as u64 % self.0) as u32)
    }
    fn sub(&self, x: &u32, y: &u32) -> Option<u32> {
        Some(((*x as u64 + self.0 - *y as u64) % self.0) as u32)
    }
    fn neg(&self, x: &u32) -> Option<u32> {
        Some(((self.0 - *x as u64) % self.0) as u32)
    }
    fn multipliers(&self, target: &u32, pivot: &u32) -> Option<(u32, u32)> {
        Some((1, self.mul(target, &self.inverse(*pivot))?))
    }
}

struct CheckedIntegers;

impl EliminationRing for CheckedIntegers {
    type Elem = i64;

    fn is_zero(&self, x: &i64) -> bool {
        *x == 0
    }
    fn mul(&self, a: &i64, x: &i64) -> Option<i64> {
        a.checked_mul(*x)
    }
    fn sub(&self, x: &i64, y: &i64) -> Option<i64> {
        x.checked_sub(*y)
    }
    fn neg(&self, x: &i64) -> Option<i64> {
        x.checked_neg()
    }
    fn multipliers(&self, target: &i64, pivot: &i64) -> Option<(i64, i64)> {
        let g = target.gcd(pivot);
        Some((pivot / g, target / g))
    }
    fn normalize(&self, col: &mut Column<i64>) {
        let g = col.iter().fold(0i64, |g, (_, v)| g.gcd(v));
        if g > 1 {
            col.iter_mut().for_each(|(_, v)| *v /= g);
        }
    }
}

struct BigIntegers;

impl EliminationRing for BigIntegers {
    type Elem = BigInt;

    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn mul(&self, a: &BigInt, x: &BigInt) -> Option<BigInt> {
        Some(a * x)
    }
    fn sub(&self, x: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(x - y)
    }
    fn neg(&self, x: &BigInt) -> Option<BigInt> {
        Some(-x)
    }
    fn multipliers(&self, target: &BigInt, pivot: &BigInt) -> Option<(BigInt, BigInt)> {
        let g = target.gcd(pivot);
        Some((pivot / &g, target / &g))
    }
    fn normalize(&self, col: &mut Column<BigInt>) {
        let g = col.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
        if g.abs() > BigInt::one() {
            col.iter_mut().for_each(|(_, v)| *v = &*v / &g);
        }
    }
}

/// `a * target - b * pivot`, merged by row.
fn combine<R: EliminationRing>(
    ring: &R,
    a: &R::Elem,
    target: &Column<R::Elem>,
    b: &R::Elem,
    pivot: &Column<R::Elem>,
) -> Option<Column<R::Elem>> {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let (row, value) = match (target.get(i), pivot.get(j)) {
            (Some((rt, x)), Some((rp, y))) if rt == rp => {
                i += 1;
                j += 1;
                (*rt, ring.sub(&ring.mul(a, x)?, &ring.mul(b, y)?)?)
            }
            (Some((rt, x)), Some((rp, _))) if rt < rp => {
                i += 1;
                (*rt, ring.mul(a, x)?)
            }
            (Some((rt, x)), None) => {
                i += 1;
                (*rt, ring.mul(a, x)?)
            }
            (_, Some((rp, y))) => {
                j += 1;
                (*rp, ring.neg(&ring.mul(b, y)?)?)
            }
            (None, None) => unreachable!(),
        };
        if !ring.is_zero(&value) {
            out.push((row, value));
        }
    }
    Some(out)
}

/// Rank of the span of `columns`; `None` if the ring signals overflow.
fn reduce<R: EliminationRing>(ring: &R, columns: Vec<Column<R::Elem>>, rows: usize) -> Option<usize> {
    let mut pivot_at: Vec<u32> = vec![u32::MAX; rows];
    let mut reduced: Vec<Column<R::Elem>> = Vec::new();
    for mut col in columns {
        while let Some((low, low_value)) = col.last() {
            let slot = pivot_at[*low as usize];
            if slot == u32::MAX {
                pivot_at[*low as usize] = reduced.len() as u32;
                reduced.push(col);
                break;
            }
            let pivot = &reduced[slot as usize];
            let (a, b) = ring.multipliers(low_value, &pivot.last().expect("pivot columns are nonempty").1)?;
            col = combine(ring, &a, &col, &b, pivot)?;
            ring.normalize(&mut col);
        }
    }
    Some(reduced.len())
}

/// Rank over `field` of the matrix whose columns are given as sparse integer
/// columns with row indices below `rows`.
pub(crate) fn rank_of_columns(field: FieldSpec, columns: Vec<Column<i64>>, rows: usize) -> usize {
    match field.characteristic() {
        0 => {
            if let Some(r) = reduce(&CheckedIntegers, columns.clone(), rows) {
                return r;
            }
            let big = columns
                .into_iter()
                .map(|c| c.into_iter().map(|(r, v)| (r, BigInt::from(v))).collect())
                .collect();
            reduce(&BigIntegers, big, rows).expect("big integer elimination cannot overflow")
        }
        p => {
            let p64 = p as u64;
            let cols = columns
                .into_iter()
                .map(|c| {
                    c.into_iter()
                        .filter_map(|(r, v)| {
                            let x = v.rem_euclid(p64 as i64) as u32;
                            (x != 0).then_some((r, x))
                        })
                        .collect()
                })
                .collect();
            reduce(&PrimeField(p64), cols, rows).expect("prime field elimination cannot overflow")
        }
    }
}

/// A dense matrix over a field with integral entries.
///
/// Over `F_p` entries are stored as residues in `0..p`; over `Q` they are
/// integers (every matrix this crate builds is integral).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl FieldMatrix {
    /// Row-major `entries`; panics if the length does not match.
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        let entries = match field.characteristic() {
            0 => entries,
            p => entries.into_iter().map(|v| v.rem_euclid(p as i64)).collect(),
        };
        FieldMatrix { field, rows, cols, entries }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Self::new(field, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(field: FieldSpec, size: usize) -> Self {
        let mut m = Self::zeros(field, size, size);
        for i in 0..size {
            m.entries[i * size + i] = 1;
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rank(&self) -> usize {
        let columns = (0..self.cols)
            .map(|c| {
                (0..self.rows)
                    .filter_map(|r| {
                        let v = self.get(r, c);
                        (v != 0).then_some((r as u32, v))
                    })
                    .collect()
            })
            .collect();
        rank_of_columns(self.field, columns, self.rows)
    }
}
