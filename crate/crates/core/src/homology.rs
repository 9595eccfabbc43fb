//! Reduced simplicial homology over a field, from boundary-matrix ranks.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, VertexSet};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{rank_of_columns, Column, FieldMatrix};

/// Dimensions of `H̃_{-1}, H̃_0, .., H̃_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector(pub Vec<u64>);

impl BettiVector {
    /// `dim H̃_p`; zero outside the stored range.
    pub fn get(&self, p: isize) -> u64 {
        usize::try_from(p + 1).ok().and_then(|k| self.0.get(k)).copied().unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.0.iter().all(|&b| b == 0)
    }

    /// Lowest degree with nonzero homology.
    pub fn lowest_nonzero(&self) -> Option<isize> {
        self.0.iter().position(|&b| b != 0).map(|k| k as isize - 1)
    }

    /// `Σ_p (-1)^p b_p`, equal to the reduced Euler characteristic.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 1 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// Boundary data for all faces of a complex, indexed by face cardinality.
///
/// Group `k` lists the faces with `k` vertices in canonical order; the
/// boundary column of a face in group `k` has rows in group `k - 1`.
pub(crate) struct ChainComplex {
    groups: Vec<Vec<VertexSet>>,
    boundaries: Vec<Vec<Column<i64>>>,
}

impl ChainComplex {
    pub(crate) fn new(complex: &SimplicialComplex) -> Self {
        let groups = complex.faces_by_dimension();
        let index: Vec<HashMap<u64, u32>> = groups
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, f)| (f.mask(), i as u32)).collect())
            .collect();
        let boundaries = groups
            .iter()
            .enumerate()
            .map(|(k, g)| {
                if k == 0 {
                    return Vec::new();
                }
                g.iter()
                    .map(|face| {
                        let mut col: Column<i64> = face
                            .iter()
                            .enumerate()
                            .map(|(pos, v)| {
                                let row = index[k - 1][&face.without(v).mask()];
                                (row, if pos % 2 == 0 { 1 } else { -1 })
                            })
                            .collect();
                        col.sort_unstable_by_key(|e| e.0);
                        col
                    })
                    .collect()
            })
            .collect();
        ChainComplex { groups, boundaries }
    }

    /// Number of face-size groups, `d + 1`.
    pub(crate) fn group_count(&self) -> usize {
        self.groups.len()
    }

    /// Rank of the boundary map from `k`-vertex faces inside `w` to
    /// `(k-1)`-vertex faces, with the face count of group `k` inside `w`.
    fn restricted_rank(&self, field: FieldSpec, k: usize, w: VertexSet) -> (usize, usize) {
        let cols: Vec<Column<i64>> = self.groups[k]
            .iter()
            .zip(&self.boundaries[k])
            .filter(|(f, _)| f.is_subset(w))
            .map(|(_, c)| c.clone())
            .collect();
        let count = cols.len();
        if count == 0 {
            return (0, 0);
        }
        (rank_of_columns(field, cols, self.groups[k - 1].len()), count)
    }

    /// Face counts `f[k]` (faces with `k` vertices) and boundary ranks
    /// `r[k]` (of the map out of group `k`, `r[0] = 0`) of the induced
    /// subcomplex on `w`, written into the two slices.
    pub(crate) fn restricted_counts(&self, field: FieldSpec, w: VertexSet, f: &mut [u32], r: &mut [u32]) {
        let groups = self.group_count();
        f.iter_mut().for_each(|x| *x = 0);
        r.iter_mut().for_each(|x| *x = 0);
        f[0] = 1;
        if w.is_empty() {
            return;
        }
        if self.is_face(w) {
            // A simplex on |w| vertices: exact chain complex.
            let size = w.len();
            for k in 1..=size {
                f[k] = binom(size, k);
                r[k] = binom(size - 1, k - 1);
            }
            return;
        }
        for k in 1..groups {
            let (rank, count) = self.restricted_rank(field, k, w);
            if count == 0 {
                break;
            }
            f[k] = count as u32;
            r[k] = rank as u32;
        }
    }

    fn is_face(&self, w: VertexSet) -> bool {
        self.groups.get(w.len()).is_some_and(|g| g.binary_search(&w).is_ok())
    }
}

fn binom(n: usize, k: usize) -> u32 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64) as u32
}

fn betti_from_counts(f: &[u32], r: &[u32]) -> BettiVector {
    let groups = f.len();
    let top = (0..groups).rev().find(|&k| f[k] != 0).unwrap_or(0);
    BettiVector(
        (0..=top)
            .map(|k| {
                let next = if k + 1 < groups { r[k + 1] } else { 0 };
                (f[k] - r[k] - next) as u64
            })
            .collect(),
    )
}

/// The boundary map `∂_k` from `k`-faces to `(k-1)`-faces.
///
/// Columns follow [`SimplicialComplex::faces`]`(k)`, rows follow
/// `faces(k - 1)`; for `k = 0` the single row is the empty face. A face
/// `[v_0 < .. < v_k]` maps to `Σ_i (-1)^i [.. v̂_i ..]`.
pub fn boundary_matrix(complex: &SimplicialComplex, k: isize, field: FieldSpec) -> Result<FieldMatrix> {
    if k < 0 || k > complex.dim() {
        return Err(Error::DimensionOutOfRange { requested: k, min: 0, max: complex.dim() });
    }
    let cols = complex.faces(k)?;
    let rows = complex.faces(k - 1)?;
    let row_of: HashMap<VertexSet, usize> = rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut entries = vec![0i64; rows.len() * cols.len()];
    for (c, face) in cols.iter().enumerate() {
        for (pos, v) in face.iter().enumerate() {
            let r = row_of[&face.without(v)];
            entries[r * cols.len() + c] = if pos % 2 == 0 { 1 } else { -1 };
        }
    }
    Ok(FieldMatrix::new(field, rows.len(), cols.len(), entries))
}

/// Reduced Betti numbers `b_{-1}, .., b_dim` of the complex over `field`.
pub fn reduced_betti(complex: &SimplicialComplex, field: FieldSpec) -> BettiVector {
    let chain = ChainComplex::new(complex);
    let groups = chain.group_count();
    let (mut f, mut r) = (vec![0u32; groups], vec![0u32; groups]);
    chain.restricted_counts(field, complex.vertices(), &mut f, &mut r);
    betti_from_counts(&f, &r)
}

/// Homology of every induced subcomplex `Δ_W`, `W ⊆ [n]`, over one field.
///
/// Stores face counts and boundary ranks per subset, so that the homology of
/// any skeleton of any induced subcomplex can be read off as well:
/// `Skel_j(Δ_W)` agrees with `Δ_W` below degree `j` and has
/// `b_j = f_j - rank ∂_j`.
pub struct InducedHomology {
    complex: SimplicialComplex,
    field: FieldSpec,
    groups: usize,
    faces: Vec<u32>,
    ranks: Vec<u32>,
}

impl InducedHomology {
    /// Computes all `2^n` induced subcomplexes in parallel.
    pub fn new(complex: &SimplicialComplex, field: FieldSpec) -> Self {
        let chain = ChainComplex::new(complex);
        let groups = chain.group_count();
        let subsets = 1usize << complex.n();
        let mut faces = vec![0u32; subsets * groups];
        let mut ranks = vec![0u32; subsets * groups];
        faces
            .par_chunks_mut(groups)
            .zip(ranks.par_chunks_mut(groups))
            .enumerate()
            .for_each(|(w, (f, r))| chain.restricted_counts(field, VertexSet::from_mask(w as u64), f, r));
        InducedHomology { complex: complex.clone(), field, groups, faces, ranks }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn counts(&self, w: VertexSet) -> (&[u32], &[u32]) {
        let at = w.mask() as usize * self.groups;
        (&self.faces[at..at + self.groups], &self.ranks[at..at + self.groups])
    }

    /// Reduced Betti vector of `Δ_W`.
    pub fn betti(&self, w: VertexSet) -> BettiVector {
        let (f, r) = self.counts(w);
        betti_from_counts(f, r)
    }

    /// Dimension of `Δ_W` (`-1` for `W = ∅`).
    pub fn dim(&self, w: VertexSet) -> isize {
        let (f, _) = self.counts(w);
        (0..self.groups).rev().find(|&k| f[k] != 0).unwrap_or(0) as isize - 1
    }

    /// `dim H̃_p(Skel_j(Δ_W))`, for `j >= 0`.
    pub fn skeleton_betti(&self, w: VertexSet, j: isize, p: isize) -> u64 {
        let (f, r) = self.counts(w);
        if p < -1 || p > j || p + 1 >= self.groups as isize {
            return 0;
        }
        let k = (p + 1) as usize;
        let next = if p < j && k + 1 < self.groups { r[k + 1] } else { 0 };
        (f[k] - r[k] - next) as u64
    }

    /// Lowest degree with nonzero homology of `Skel_j(Δ_W)`.
    pub fn skeleton_lowest(&self, w: VertexSet, j: isize) -> Option<isize> {
        (-1..=j.min(self.groups as isize - 2)).find(|&p| self.skeleton_betti(w, j, p) != 0)
    }
}
