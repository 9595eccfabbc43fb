use facering::classify::{circuit_axiom_check, is_matroid};
use facering::cm::{connectivity_sequence, is_almost_cm, is_cm_hochster, is_cm_reisner, q_max};
use facering::complex::VertexSet;
use facering::generators;
use facering::homology::reduced_betti;
use facering::resolution::{hochster_betti_table, k_polynomial_matches, minimal_nonfaces, shifts};
use facering::{FieldSpec, ShiftSequences, SimplicialComplex};
use proptest::prelude::*;

const FIELDS: [FieldSpec; 3] = [FieldSpec::RATIONALS, FieldSpec::F2, FieldSpec::F3];

fn complex_strategy(max_n: usize) -> impl Strategy<Value = SimplicialComplex> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1u64..(1 << n), 1..8).prop_map(|masks| {
            SimplicialComplex::from_index_facets(masks.into_iter().map(|m| VertexSet::from_mask(m).to_vec())).unwrap()
        })
    })
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(FIELDS.to_vec())
}

/// Connected components of the 1-skeleton after deleting `removed`.
fn graph_connected(c: &SimplicialComplex, removed: VertexSet) -> bool {
    let alive = c.vertices().difference(removed);
    let Some(start) = alive.iter().next() else { return false };
    let edges: Vec<VertexSet> = c.faces(1).unwrap();
    let mut seen = VertexSet::singleton(start);
    loop {
        let grown = edges
            .iter()
            .filter(|e| e.is_subset(alive) && e.intersection(seen).len() == 1)
            .fold(seen, |acc, e| acc.union(*e));
        if grown == seen {
            return seen == alive;
        }
        seen = grown;
    }
}

/// Largest `q` such that deleting fewer than `q` vertices keeps a connected graph with an edge.
fn graph_q(c: &SimplicialComplex) -> usize {
    let n = c.n();
    (1..=n)
        .find(|&k| {
            (0u64..1 << n).map(VertexSet::from_mask).filter(|u| u.len() == k).any(|u| {
                let rest = c.vertices().difference(u);
                !graph_connected(c, u) || !c.faces(1).unwrap().iter().any(|e| e.is_subset(rest))
            })
        })
        .unwrap_or(n + 1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn facet_order_does_not_matter(c in complex_strategy(7), seed in any::<u64>()) {
        let mut facets: Vec<Vec<_>> = c.facets().iter().map(|f| c.labels_of(*f)).collect();
        let len = facets.len();
        for i in (1..len).rev() {
            facets.swap(i, (seed as usize).wrapping_mul(i + 7) % (i + 1));
        }
        prop_assert_eq!(SimplicialComplex::from_facets(facets).unwrap(), c);
    }

    #[test]
    fn h_vector_basics(c in complex_strategy(8)) {
        let h = c.h_vector();
        prop_assert_eq!(h.0[0], 1);
        if c.d() >= 1 {
            prop_assert_eq!(h.0[1], c.n() as i128 - c.d() as i128);
        }
        prop_assert_eq!(h.0.iter().sum::<i128>(), c.f_vector().get(c.dim()) as i128);
    }

    #[test]
    fn induced_and_skeleton_compose(c in complex_strategy(7), w in any::<u64>(), w2 in any::<u64>(), i in 0isize..4, j in 0isize..4) {
        let n = c.n();
        let w = VertexSet::from_mask(w & ((1 << n) - 1));
        prop_assume!(!w.is_empty());
        let inner = c.induced(w).unwrap();
        let w2_local = VertexSet::from_mask(w2 & ((1 << inner.n()) - 1));
        prop_assume!(!w2_local.is_empty());
        // Induced complexes are reindexed; compare through labels.
        let labels = inner.labels_of(w2_local);
        let outer = c.set_of(&labels).unwrap();
        prop_assert_eq!(inner.induced(w2_local).unwrap(), c.induced(outer).unwrap());

        let (i, j) = (i.min(c.dim()), j.min(c.dim()));
        let (hi, lo) = (i.max(j), i.min(j));
        prop_assert_eq!(c.skeleton(hi).unwrap().skeleton(lo).unwrap(), c.skeleton(lo).unwrap());
    }

    #[test]
    fn link_commutes_with_skeleton(c in complex_strategy(7), v in 0usize..7, i in 0isize..3) {
        let v = v % c.n();
        let label = c.label_of(v).clone();
        prop_assume!(i + 1 <= c.dim());
        let lhs_complex = c.skeleton(i + 1).unwrap();
        let lhs = lhs_complex.link(lhs_complex.set_of(&[label.clone()]).unwrap()).unwrap();
        let link = c.link(VertexSet::singleton(v)).unwrap();
        prop_assume!(!link.is_irrelevant() && i <= link.dim());
        prop_assert_eq!(lhs, link.skeleton(i).unwrap());
    }

    #[test]
    fn euler_poincare(c in complex_strategy(8), field in field_strategy()) {
        let betti = reduced_betti(&c, field);
        prop_assert_eq!(betti.alternating_sum(), c.reduced_euler_characteristic());
    }

    #[test]
    fn finite_fields_see_at_least_rational_homology(c in complex_strategy(7)) {
        let q = reduced_betti(&c, FieldSpec::RATIONALS);
        for f in [FieldSpec::F2, FieldSpec::F3] {
            let p = reduced_betti(&c, f);
            for k in -1..=c.dim() {
                prop_assert!(p.get(k) >= q.get(k));
            }
        }
    }

    #[test]
    fn cones_are_acyclic(c in complex_strategy(7), field in field_strategy()) {
        prop_assert!(reduced_betti(&generators::cone(&c), field).is_acyclic());
    }

    #[test]
    fn cm_criteria_agree(c in complex_strategy(8), field in field_strategy()) {
        prop_assert_eq!(is_cm_reisner(&c, field), is_cm_hochster(&c, field));
    }

    #[test]
    fn matroid_tests_agree(c in complex_strategy(7)) {
        prop_assert_eq!(is_matroid(&c), circuit_axiom_check(&c));
    }

    #[test]
    fn matroid_induced_subcomplexes_are_matroids(n in 3usize..7, r in 1usize..4, w in 1u64..128) {
        prop_assume!(r <= n);
        let u = generators::uniform_matroid(r, n).unwrap();
        let w = VertexSet::from_mask(w & ((1 << n) - 1));
        prop_assume!(!w.is_empty());
        prop_assert!(is_matroid(&u.induced(w).unwrap()));
    }

    #[test]
    fn first_syzygies_are_minimal_nonfaces(c in complex_strategy(8), field in field_strategy()) {
        prop_assume!(!c.is_simplex());
        let table = hochster_betti_table(&c, field).unwrap();
        let nonfaces = minimal_nonfaces(&c);
        for j in 0..=c.n() {
            prop_assert_eq!(table.get(1, j), nonfaces.iter().filter(|s| s.len() == j).count() as u64);
        }
    }

    #[test]
    fn k_polynomial_identity(c in complex_strategy(8), field in field_strategy()) {
        let table = hochster_betti_table(&c, field).unwrap();
        prop_assert!(k_polynomial_matches(&table, &c));
    }

    #[test]
    fn shifts_under_vertex_deletion(c in complex_strategy(7), field in field_strategy()) {
        prop_assume!(!c.is_simplex());
        let table = hochster_betti_table(&c, field).unwrap();
        let s = shifts(&table).unwrap();
        let codim = c.codim();
        let top = reduced_betti(&c, field).get(c.dim());
        prop_assert_eq!(s.max(codim) == c.n(), top != 0);

        let deletions: Vec<Option<ShiftSequences>> = (0..c.n())
            .map(|x| {
                let rest = c.delete_vertices(VertexSet::singleton(x)).ok()?;
                if rest.is_irrelevant() || rest.is_simplex() {
                    return None;
                }
                shifts(&hochster_betti_table(&rest, field).ok()?).ok()
            })
            .collect();
        for i in 1..codim {
            let big = deletions.iter().flatten().filter(|d| d.pd() >= i).map(|d| d.max(i)).max();
            let small = deletions.iter().flatten().filter(|d| d.pd() >= i).map(|d| d.min(i)).min();
            prop_assert_eq!(big, Some(s.max(i)));
            prop_assert_eq!(small, Some(s.min(i)));
        }
    }

    #[test]
    fn doubly_cm_ends_at_n(n in 4usize..8, d in 2usize..4, count in 2usize..12, seed in any::<u64>(), field in field_strategy()) {
        prop_assume!(d < n);
        let c = generators::random_shellable(n, d, count, seed).unwrap();
        prop_assume!(!c.is_simplex());
        if q_max(&c, field).unwrap().q >= 2 {
            let s = shifts(&hochster_betti_table(&c, field).unwrap()).unwrap();
            prop_assert_eq!((s.min(c.codim()), s.max(c.codim())), (c.n(), c.n()));
        }
    }

    #[test]
    fn graph_connectivity_matches_q(c in complex_strategy(7)) {
        let g = c.skeleton(1.min(c.dim())).unwrap();
        prop_assume!(g.dim() == 1 && g.is_pure());
        match q_max(&g, FieldSpec::RATIONALS) {
            Ok(q) => prop_assert_eq!(q.q, graph_q(&g)),
            Err(_) => prop_assert!(!graph_connected(&g, VertexSet::EMPTY)),
        }
    }

    #[test]
    fn almost_cm_iff_small_projective_dimension(c in complex_strategy(7), field in field_strategy()) {
        prop_assume!(!c.is_simplex() && c.is_pure());
        let table = hochster_betti_table(&c, field).unwrap();
        prop_assert_eq!(is_almost_cm(&c, field), table.pd() <= c.codim() + 1);
    }

    #[test]
    fn connectivity_of_links(n in 4usize..8, d in 2usize..4, count in 2usize..12, seed in any::<u64>(), field in field_strategy()) {
        prop_assume!(d < n);
        let c = generators::random_shellable(n, d, count, seed).unwrap();
        prop_assume!(!c.is_simplex());
        let seq = connectivity_sequence(&c, field).unwrap();
        prop_assert!(seq.is_strictly_decreasing());
        prop_assert_eq!(seq.q[0], c.n());
        for v in 0..c.n() {
            let link = c.link(VertexSet::singleton(v)).unwrap();
            let lseq = connectivity_sequence(&link, field).unwrap();
            for i in 0..lseq.q.len().min(seq.q.len() - 1) {
                prop_assert!(lseq.q[i] >= seq.q[i + 1], "link of {} has {:?}, complex {:?}", v, lseq.q, seq.q);
            }
        }
    }
}
