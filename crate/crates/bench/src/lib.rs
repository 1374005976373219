//! Fixtures shared by the benchmarks.

use facetmatrix::{generate_standard, SimplicialComplex, StandardKind, VertexMap};

/// Standard triangulations used as benchmark inputs, with short names.
pub fn standard_fixtures() -> Vec<(&'static str, SimplicialComplex)> {
    [
        ("simplex_boundary", StandardKind::SimplexBoundary4),
        ("cycle_join_3_3", StandardKind::CycleJoin(3, 3)),
        ("cycle_join_5_5", StandardKind::CycleJoin(5, 5)),
        ("cross_polytope", StandardKind::CrossPolytope3),
    ]
    .into_iter()
    .map(|(name, kind)| (name, generate_standard(kind).expect("standard")))
    .collect()
}

/// A copy of `c` with every label `x` replaced by `r_x`, reversed in natural order.
pub fn reversed_copy(c: &SimplicialComplex) -> (SimplicialComplex, VertexMap) {
    let vs = c.vertices();
    let map = VertexMap::new(
        vs.iter()
            .zip(vs.iter().rev())
            .map(|(v, w)| (v.clone(), facetmatrix::Vertex::new(format!("r{}", w.as_str())).unwrap())),
    )
    .expect("injective");
    (c.relabel(&map).expect("total"), map)
}
