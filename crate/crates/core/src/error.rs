use thiserror::Error;

/// Errors raised by the library. Validation and reconstruction never return
/// these for "negative" answers; those are reported as data.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,
    #[error("malformed vertex label {0:?}")]
    BadLabel(String),
    #[error("vertex {0} is not in the complex")]
    VertexNotFound(String),
    #[error("expected all facets of rank {expected}, found rank {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("{0} is not a face of the complex")]
    FaceNotFound(String),
    #[error("facets around {0} admit no cyclic adjacency order")]
    NotCyclic(String),
    #[error("{vertices} vertices exceeds the search bound of {limit}")]
    SizeLimit { vertices: usize, limit: usize },
    #[error("facet order is not a permutation of the facet set")]
    BadOrder,
    #[error("facet map is not a bijection: {0}")]
    NotBijective(String),
    #[error("facets have mixed ranks")]
    MixedRank,
    #[error("complex is not a shell")]
    NotAShell,
    #[error("label {0} already used in the complex")]
    LabelClash(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not a valid 3-manifold triangulation")]
    InvalidTriangulation(&'static str),
    #[error("edge {0} lies in three or more triangles")]
    NotSurfaceLike(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
