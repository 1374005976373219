use std::collections::BTreeSet;

use facetmatrix::catalog;
use facetmatrix::{
    are_isomorphic, canonical_form, certify, faces_of_rank, find_intersection_preserving_maps, generate_standard,
    intersection_matrix, is_intersection_preserving, reconstruct_isomorphism, surface_is_orientable,
    vertex_neighbourhood, FacetBijection, Simplex, SimplicialComplex, StandardKind, Vertex, VertexMap,
};
use proptest::prelude::*;

/// Pure complexes of the given rank on at most `n` vertices.
fn pure_complex(rank: usize, n: usize) -> impl Strategy<Value = SimplicialComplex> {
    let facet = proptest::sample::subsequence((0..n).collect::<Vec<_>>(), rank);
    proptest::collection::vec(facet, 1..8).prop_map(|fs| SimplicialComplex::from_indexed(&fs).unwrap())
}

fn relabeled(c: SimplicialComplex) -> impl Strategy<Value = (SimplicialComplex, VertexMap)> {
    let n = c.vertex_count();
    Just((0..n).collect::<Vec<_>>()).prop_shuffle().prop_map(move |perm| {
        let map = VertexMap::new(
            c.vertices()
                .iter()
                .zip(perm)
                .map(|(v, p)| (v.clone(), Vertex::new(format!("p{p}")).unwrap())),
        )
        .unwrap();
        (c.relabel(&map).unwrap(), map)
    })
}

fn complex_and_copy(rank: usize, n: usize) -> impl Strategy<Value = (SimplicialComplex, SimplicialComplex, VertexMap)> {
    pure_complex(rank, n)
        .prop_flat_map(|c| (Just(c.clone()), relabeled(c)))
        .prop_map(|(c, (d, m))| (c, d, m))
}

fn spheres_and_surfaces() -> Vec<SimplicialComplex> {
    vec![
        catalog::get("CE_5").unwrap().complex.clone(),
        catalog::get("CE_6").unwrap().complex.clone(),
        facetmatrix::build_complex(&[
            vec!["1", "2", "3"],
            vec!["1", "2", "4"],
            vec!["1", "3", "4"],
            vec!["2", "3", "4"],
        ])
        .unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn faces_cover_and_close_downwards(c in pure_complex(4, 7)) {
        let covered: BTreeSet<&Vertex> = c.facets().iter().flat_map(|f| f.vertices()).collect();
        prop_assert_eq!(covered.len(), c.vertex_count());
        for r in 2..=4 {
            let lower = faces_of_rank(&c, r - 1);
            for face in faces_of_rank(&c, r) {
                for v in face.vertices() {
                    prop_assert!(lower.contains(&Simplex::new(face.without(v)).unwrap()));
                }
            }
        }
    }

    #[test]
    fn isomorphism_search_finds_relabelings((c, d, _) in complex_and_copy(3, 7)) {
        let phi = are_isomorphic(&c, &d).unwrap().expect("relabeled copy");
        prop_assert!(phi.is_isomorphism(&c, &d));
        let back = are_isomorphic(&d, &c).unwrap().expect("symmetric");
        prop_assert!(back.is_isomorphism(&d, &c));
        prop_assert!(are_isomorphic(&c, &c).unwrap().is_some());
    }

    #[test]
    fn canonical_form_is_a_complete_invariant(a in pure_complex(3, 6), b in pure_complex(3, 6)) {
        let same = canonical_form(&a).unwrap() == canonical_form(&b).unwrap();
        prop_assert_eq!(same, are_isomorphic(&a, &b).unwrap().is_some());
    }

    #[test]
    fn canonical_form_ignores_labels((c, d, _) in complex_and_copy(4, 8)) {
        prop_assert_eq!(canonical_form(&c).unwrap(), canonical_form(&d).unwrap());
    }

    #[test]
    fn neighbourhoods_match_edges(c in pure_complex(4, 7)) {
        let edges = faces_of_rank(&c, 2);
        for v in c.vertices() {
            let link = vertex_neighbourhood(&c, v).unwrap();
            let expected: BTreeSet<&Vertex> = edges
                .iter()
                .filter(|e| e.contains(v))
                .flat_map(|e| e.vertices())
                .filter(|u| *u != v)
                .collect();
            let got: BTreeSet<&Vertex> = link.vertices().iter().collect();
            prop_assert_eq!(got, expected);
            let star = c.facets().iter().filter(|f| f.contains(v)).count();
            prop_assert_eq!(link.facet_count(), star);
        }
    }

    #[test]
    fn matrix_is_relabeling_equivariant((c, d, map) in complex_and_copy(4, 8), seed in any::<u64>()) {
        let mut order = c.facets().to_vec();
        // A deterministic shuffle driven by the seed.
        let len = order.len();
        for i in (1..len).rev() {
            order.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
        }
        let image: Vec<Simplex> = order.iter().map(|f| map.apply(f).unwrap()).collect();
        let m = intersection_matrix(&c, Some(&order)).unwrap();
        let md = intersection_matrix(&d, Some(&image)).unwrap();
        prop_assert_eq!(m.entries, md.entries);
    }

    #[test]
    fn returned_maps_preserve_intersections((c, d, map) in complex_and_copy(4, 7)) {
        for f in find_intersection_preserving_maps(&c, &d, Some(8)) {
            prop_assert!(is_intersection_preserving(&c, &d, &f).unwrap());
        }
        let induced = FacetBijection::induced_by(&c, &d, &map).unwrap();
        prop_assert!(is_intersection_preserving(&c, &d, &induced).unwrap());
    }

    #[test]
    fn orientability_ignores_labels(i in 0usize..3, seed in any::<u64>()) {
        let c = spheres_and_surfaces().swap_remove(i);
        let mut labels: Vec<usize> = (0..c.vertex_count()).collect();
        for j in (1..labels.len()).rev() {
            labels.swap(j, (seed.rotate_left(j as u32) as usize) % (j + 1));
        }
        let map = VertexMap::new(
            c.vertices().iter().zip(labels).map(|(v, l)| (v.clone(), Vertex::new(format!("q{l}")).unwrap())),
        )
        .unwrap();
        prop_assert_eq!(
            surface_is_orientable(&c).unwrap(),
            surface_is_orientable(&c.relabel(&map).unwrap()).unwrap()
        );
    }

    #[test]
    fn reconstruction_is_sound(kind in prop_oneof![
        Just(StandardKind::SimplexBoundary4),
        Just(StandardKind::CycleJoin(3, 4)),
        Just(StandardKind::CrossPolytope3),
    ], seed in any::<u64>()) {
        let t = generate_standard(kind).unwrap();
        let (u, _) = {
            let mut labels: Vec<usize> = (0..t.vertex_count()).collect();
            for j in (1..labels.len()).rev() {
                labels.swap(j, (seed.rotate_left(j as u32) as usize) % (j + 1));
            }
            let map = VertexMap::new(
                t.vertices().iter().zip(labels).map(|(v, l)| (v.clone(), Vertex::new(format!("r{l}")).unwrap())),
            )
            .unwrap();
            (t.relabel(&map).unwrap(), map)
        };
        let f = find_intersection_preserving_maps(&t, &u, Some(1)).pop().unwrap();
        let report = reconstruct_isomorphism(&t, &u, &f);
        prop_assert!(report.phi_verified);
        let phi = report.phi.unwrap();
        prop_assert!(certify(&t, &u, &phi, &f));
        let image: BTreeSet<Simplex> = t.facets().iter().map(|x| phi.apply(x).unwrap()).collect();
        let target: BTreeSet<Simplex> = u.facets().iter().cloned().collect();
        prop_assert_eq!(image, target);
    }
}
