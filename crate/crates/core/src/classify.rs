use rayon::prelude::*;
use serde::Serialize;

use crate::cm::SkeletonView;
use crate::complex::{combinations, maximal, SimplicialComplex, VertexSet};
use crate::field::FieldSpec;
use crate::homology::{reduced_betti, InducedHomology};
use crate::resolution::minimal_nonfaces;

/// Outcome of the matroid test with the first impure induced subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidCheck {
    pub is_matroid: bool,
    pub witness: Option<VertexSet>,
}

fn induced_is_pure(complex: &SimplicialComplex, w: VertexSet) -> bool {
    let restricted = maximal(complex.facets().iter().map(|f| f.intersection(w).mask()).collect());
    let size = restricted[0].count_ones();
    restricted.iter().all(|m| m.count_ones() == size)
}

/// Every induced subcomplex is pure. Subsets are scanned by size, then
/// lexicographically, so the witness is the smallest impure one.
pub fn matroid_check(complex: &SimplicialComplex) -> MatroidCheck {
    let n = complex.n();
    for k in 1..=n {
        let sets: Vec<VertexSet> = combinations(n, k).collect();
        if let Some(w) = sets.into_par_iter().find_first(|&w| !induced_is_pure(complex, w)) {
            return MatroidCheck { is_matroid: false, witness: Some(w) };
        }
    }
    MatroidCheck { is_matroid: true, witness: None }
}

pub fn is_matroid(complex: &SimplicialComplex) -> bool {
    matroid_check(complex).is_matroid
}

/// Circuit elimination on the minimal nonfaces: for `N1 != N2` and
/// `v ∈ N1 ∩ N2`, `(N1 ∪ N2) - v` is not a face.
pub fn circuit_axiom_check(complex: &SimplicialComplex) -> bool {
    let circuits = minimal_nonfaces(complex);
    circuits.iter().enumerate().all(|(a, n1)| {
        circuits[a + 1..].iter().all(|n2| {
            let union = n1.union(*n2);
            n1.intersection(*n2).iter().all(|v| !complex.contains_face(union.without(v)))
        })
    })
}

/// Every face link has the homology of a sphere of dimension `dim Δ - |F|`.
pub fn is_gorenstein_star(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    if complex.is_irrelevant() {
        return false;
    }
    let dim = complex.dim();
    let faces: Vec<VertexSet> = complex.faces_by_dimension().into_iter().flatten().collect();
    faces.par_iter().all(|&face| {
        let link = complex.link(face).expect("enumerated faces are faces");
        let betti = reduced_betti(&link, field);
        let top = dim - face.len() as isize;
        (-1..=top).all(|i| betti.get(i) == u64::from(i == top)) && link.dim() == top
    })
}

/// The core, with cone points removed, is Gorenstein*.
pub fn is_gorenstein(complex: &SimplicialComplex, field: FieldSpec) -> bool {
    let core = complex.core();
    // A simplex has the irrelevant complex as its core, a 0-sphere of dimension -1.
    core.is_irrelevant() || is_gorenstein_star(&core, field)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub field: FieldSpec,
    pub is_pure: bool,
    pub is_cone: bool,
    pub is_matroid: bool,
    pub is_cm: bool,
    /// `q(Δ)`, present when the complex is CM.
    pub q_max: Option<usize>,
    pub is_2cm: bool,
    /// `q(Δ) >= d`.
    pub is_dcm: bool,
    pub is_gorenstein: bool,
    pub is_gorenstein_star: bool,
}

pub fn classify_with(homology: &InducedHomology) -> ClassificationFlags {
    let complex = homology.complex();
    let field = homology.field();
    let view = SkeletonView::new(homology, complex.dim());
    let is_cm = complex.d() > 0 && view.is_cm_on(complex.vertices());
    let q = if is_cm { view.q_max().ok().map(|q| q.q) } else { None };
    ClassificationFlags {
        field,
        is_pure: complex.is_pure(),
        is_cone: complex.is_cone(),
        is_matroid: is_matroid(complex),
        is_cm,
        q_max: q,
        is_2cm: q.is_some_and(|q| q >= 2),
        is_dcm: q.is_some_and(|q| q >= complex.d()),
        is_gorenstein: is_gorenstein(complex, field),
        is_gorenstein_star: is_gorenstein_star(complex, field),
    }
}

pub fn classify(complex: &SimplicialComplex, field: FieldSpec) -> ClassificationFlags {
    classify_with(&InducedHomology::new(complex, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn matroid_examples() {
        let c5 = generators::cycle(5).unwrap();
        let check = matroid_check(&c5);
        assert!(!check.is_matroid);
        assert_eq!(c5.labels_of(check.witness.unwrap()), vec![1.into(), 2.into(), 4.into()]);
        assert!(!circuit_axiom_check(&c5));

        let u24 = generators::uniform_matroid(2, 4).unwrap();
        assert!(is_matroid(&u24) && circuit_axiom_check(&u24));
        let tetra = generators::simplex_boundary(3).unwrap();
        assert!(is_matroid(&tetra) && circuit_axiom_check(&tetra));
        let points = SimplicialComplex::from_facets([[1], [2], [3]]).unwrap();
        assert!(is_matroid(&points) && circuit_axiom_check(&points));
        // Antipodal pairs are the blocks of a partition matroid.
        let octa = generators::cross_polytope_boundary(3).unwrap();
        assert!(is_matroid(&octa) && circuit_axiom_check(&octa));
    }

    #[test]
    fn gorenstein_examples() {
        let c5 = generators::cycle(5).unwrap();
        for f in [FieldSpec::RATIONALS, FieldSpec::F2, FieldSpec::F3] {
            assert!(is_gorenstein_star(&c5, f));
        }
        assert!(is_gorenstein_star(&generators::cross_polytope_boundary(3).unwrap(), FieldSpec::F2));
        assert!(is_gorenstein_star(&generators::simplex_boundary(4).unwrap(), FieldSpec::RATIONALS));
        assert!(is_gorenstein_star(&generators::cyclic_polytope_boundary(4, 7).unwrap(), FieldSpec::RATIONALS));
        let cone = generators::cone(&c5);
        assert!(is_gorenstein(&cone, FieldSpec::RATIONALS));
        assert!(!is_gorenstein_star(&cone, FieldSpec::RATIONALS));
        assert!(!is_gorenstein_star(&generators::path(4).unwrap(), FieldSpec::RATIONALS));
        let rp2 = generators::rp2_six_vertex();
        assert!(!is_gorenstein_star(&rp2, FieldSpec::F2));
        assert!(!is_gorenstein_star(&rp2, FieldSpec::RATIONALS));
    }

    #[test]
    fn classify_examples() {
        let octa = classify(&generators::cross_polytope_boundary(3).unwrap(), FieldSpec::RATIONALS);
        assert!(octa.is_pure && !octa.is_cone && octa.is_matroid && octa.is_gorenstein_star);
        assert_eq!(octa.q_max, Some(2));

        let u36 = classify(&generators::uniform_matroid(3, 6).unwrap(), FieldSpec::RATIONALS);
        assert!(u36.is_matroid && u36.is_cm && u36.is_2cm && u36.is_dcm);
        assert_eq!(u36.q_max, Some(4));

        let p4 = classify(&generators::path(4).unwrap(), FieldSpec::RATIONALS);
        assert!(p4.is_cm && !p4.is_2cm);
        assert_eq!(p4.q_max, Some(1));

        let two_edges = SimplicialComplex::from_facets([[1, 2], [3, 4]]).unwrap();
        let flags = classify(&two_edges, FieldSpec::RATIONALS);
        assert!(!flags.is_cm && flags.q_max.is_none() && !flags.is_matroid);
    }
}
