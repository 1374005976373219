//! Recognition of combinatorial closed 3-manifold triangulations, plus the
//! surface checks used on vertex links.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::complex::{
    edge_star_facets, faces_of_rank, require_rank, vertex_neighbourhood, Simplex, SimplicialComplex, Vertex,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleDegree {
    pub triangle: Simplex,
    pub count: usize,
}

/// Combinatorial description of a 2-dimensional complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceRecord {
    pub closed: bool,
    pub connected: bool,
    pub euler: i64,
    pub is_sphere: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexLinkResult {
    pub vertex: Vertex,
    #[serde(flatten)]
    pub surface: SurfaceRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeStarResult {
    pub edge: Simplex,
    pub star_size: usize,
    pub cyclic: bool,
}

/// The sub-checks of [`validate_triangulation`], in the order they run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Dimension,
    PseudoManifold,
    VertexLinks,
    EdgeStars,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dimension_ok: bool,
    pub is_pseudo_manifold: bool,
    pub bad_triangles: Vec<TriangleDegree>,
    pub vertex_link_results: Vec<VertexLinkResult>,
    pub edge_link_results: Vec<EdgeStarResult>,
    pub verdict: bool,
}

impl ValidationReport {
    pub fn failed_checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        if !self.dimension_ok {
            out.push(Check::Dimension);
            return out;
        }
        if !self.is_pseudo_manifold {
            out.push(Check::PseudoManifold);
        }
        if self.vertex_link_results.iter().any(|r| !r.surface.is_sphere) {
            out.push(Check::VertexLinks);
        }
        if self.edge_link_results.iter().any(|r| !r.cyclic) {
            out.push(Check::EdgeStars);
        }
        out
    }

    pub fn first_failure(&self) -> Option<Check> {
        self.failed_checks().into_iter().next()
    }
}

/// Triangles whose number of containing tetrahedra differs from two.
pub fn check_pseudo_manifold(c: &SimplicialComplex) -> Result<Vec<TriangleDegree>> {
    require_rank(c, 4)?;
    let mut counts: BTreeMap<Simplex, usize> = BTreeMap::new();
    for f in c.facets() {
        for v in f.vertices() {
            let tri = Simplex::new(f.without(v))?;
            *counts.entry(tri).or_default() += 1;
        }
    }
    Ok(counts
        .into_iter()
        .filter(|&(_, n)| n != 2)
        .map(|(triangle, count)| TriangleDegree { triangle, count })
        .collect())
}

/// Closed, connected, Euler characteristic, and whether that makes a 2-sphere.
pub fn surface_is_sphere(s: &SimplicialComplex) -> Result<SurfaceRecord> {
    require_rank(s, 3)?;
    let edges = edge_triangle_incidence(s);
    let closed = edges.values().all(|ts| ts.len() == 2);
    let connected = components(s.facet_count(), &edges) == 1;
    let euler = s.vertex_count() as i64 - edges.len() as i64 + s.facet_count() as i64;
    Ok(SurfaceRecord {
        closed,
        connected,
        euler,
        is_sphere: closed && connected && euler == 2,
    })
}

/// Whether the triangles admit a coherent orientation.
pub fn surface_is_orientable(s: &SimplicialComplex) -> Result<bool> {
    require_rank(s, 3)?;
    let edges = edge_triangle_incidence(s);
    if let Some((e, _)) = edges.iter().find(|(_, ts)| ts.len() > 2) {
        return Err(Error::NotSurfaceLike(e.to_string()));
    }
    // orientation[t] = ±1 relative to the sorted vertex order of triangle t.
    let mut orientation: Vec<i8> = vec![0; s.facet_count()];
    let facets = s.facets();
    for start in 0..facets.len() {
        if orientation[start] != 0 {
            continue;
        }
        orientation[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for (e, ts) in &edges {
                if !ts.contains(&t) || ts.len() < 2 {
                    continue;
                }
                let other = if ts[0] == t { ts[1] } else { ts[0] };
                // Adjacent triangles must induce opposite orientations on the shared edge.
                let want = -orientation[t] * edge_sign(&facets[t], e) * edge_sign(&facets[other], e);
                if orientation[other] == 0 {
                    orientation[other] = want;
                    queue.push_back(other);
                } else if orientation[other] != want {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Sign of edge `e` in the boundary of the sorted triangle `t`: the omitted
/// vertex at position i contributes (-1)^i.
fn edge_sign(t: &Simplex, e: &Simplex) -> i8 {
    let omitted = t
        .vertices()
        .iter()
        .position(|v| !e.contains(v))
        .expect("edge inside triangle");
    if omitted % 2 == 0 {
        1
    } else {
        -1
    }
}

fn edge_triangle_incidence(s: &SimplicialComplex) -> BTreeMap<Simplex, Vec<usize>> {
    let mut edges: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
    for (ti, t) in s.facets().iter().enumerate() {
        for v in t.vertices() {
            let e = Simplex::new(t.without(v)).expect("triangle edge");
            edges.entry(e).or_default().push(ti);
        }
    }
    edges
}

fn components(n: usize, edges: &BTreeMap<Simplex, Vec<usize>>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for ts in edges.values() {
        for w in ts.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            parent[a] = b;
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Runs every sub-check and collects the results; never fails.
pub fn validate_triangulation(c: &SimplicialComplex) -> ValidationReport {
    if require_rank(c, 4).is_err() {
        return ValidationReport {
            dimension_ok: false,
            is_pseudo_manifold: false,
            bad_triangles: Vec::new(),
            vertex_link_results: Vec::new(),
            edge_link_results: Vec::new(),
            verdict: false,
        };
    }
    let bad_triangles = check_pseudo_manifold(c).expect("rank checked");
    let vertex_link_results: Vec<VertexLinkResult> = c
        .vertices()
        .iter()
        .map(|v| {
            let link = vertex_neighbourhood(c, v).expect("vertex of c");
            VertexLinkResult {
                vertex: v.clone(),
                surface: surface_is_sphere(&link).expect("links of rank-4 complexes have rank 3"),
            }
        })
        .collect();
    let edge_link_results: Vec<EdgeStarResult> = faces_of_rank(c, 2)
        .into_iter()
        .map(|edge| {
            let star_size = c.facets_containing(&edge).count();
            let cyclic = edge_star_facets(c, &edge).is_ok();
            EdgeStarResult {
                edge,
                star_size,
                cyclic,
            }
        })
        .collect();
    let verdict = bad_triangles.is_empty()
        && vertex_link_results.iter().all(|r| r.surface.is_sphere)
        && edge_link_results.iter().all(|r| r.cyclic);
    ValidationReport {
        dimension_ok: true,
        is_pseudo_manifold: bad_triangles.is_empty(),
        bad_triangles,
        vertex_link_results,
        edge_link_results,
        verdict,
    }
}

/// Small triangulated 3-spheres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    /// Boundary of the 4-simplex: 5 tetrahedra on 5 vertices.
    SimplexBoundary4,
    /// Join of a p-cycle and a q-cycle: p·q tetrahedra on p+q vertices.
    CycleJoin(usize, usize),
    /// Boundary of the 4-dimensional cross-polytope: 16 tetrahedra on 8 vertices.
    CrossPolytope3,
}

pub fn generate_standard(kind: StandardKind) -> Result<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = match kind {
        StandardKind::SimplexBoundary4 => (0..5).map(|skip| (0..5).filter(|&i| i != skip).collect()).collect(),
        StandardKind::CycleJoin(p, q) => {
            if p < 3 || q < 3 {
                return Err(Error::BadParameter(format!("cycle_join needs p,q >= 3, got ({p},{q})")));
            }
            let mut out = Vec::with_capacity(p * q);
            for i in 0..p {
                for j in 0..q {
                    out.push(vec![i, (i + 1) % p, p + j, p + (j + 1) % q]);
                }
            }
            out
        }
        StandardKind::CrossPolytope3 => (0..16u32)
            .map(|mask| (0..4).map(|pair| 2 * pair + ((mask >> pair) & 1) as usize).collect())
            .collect(),
    };
    SimplicialComplex::from_indexed(&facets)
}
