//! Simplicial complexes given by their facets, facet intersection matrices,
//! lineal and cyclic shells, and reconstruction of 3-manifold triangulations
//! from intersection-preserving facet maps.

pub mod canon;
pub mod catalog;
pub mod complex;
pub mod enumerate;
pub mod error;
pub mod intersection;
pub mod io;
pub mod reconstruct;
pub mod shells;
pub mod validate;

pub use canon::{canonical_form, canonical_form_bounded, CanonicalForm};
pub use complex::{
    are_isomorphic, build_complex, edge_star_facets, faces_of_rank, vertex_neighbourhood, Simplex, SimplicialComplex,
    Vertex, VertexMap, DEFAULT_VERTEX_LIMIT,
};
pub use enumerate::{enumerate_cyclic_shells, enumerate_lineal_shells, verify_classification, ClassificationReport};
pub use error::{Error, Result};
pub use intersection::{
    find_intersection_preserving_maps, intersection_matrix, is_intersection_preserving, FacetBijection,
    IntersectionMatrix,
};
pub use reconstruct::{certify, extended_image, reconstruct_isomorphism, FailureStage, ReconstructionReport};
pub use shells::{detect_shell, lift_2_shell, wheel, ShellKind, ShellWitness};
pub use validate::{
    check_pseudo_manifold, generate_standard, surface_is_orientable, surface_is_sphere, validate_triangulation,
    StandardKind, ValidationReport,
};
