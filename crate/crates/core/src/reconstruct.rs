//! Recovering a vertex isomorphism from an intersection-preserving facet map.
//!
//! Given `f` on facets, the extension `F(σ)` is the intersection of `f(Y)`
//! over all facets `Y ⊇ σ`. Between two closed 3-manifold triangulations
//! `F({v})` is a single vertex for every `v`, and these vertices assemble
//! into an isomorphism agreeing with `f` on every facet. The pipeline below
//! checks each intermediate claim instead of assuming it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{edge_star_facets, faces_of_rank, Simplex, SimplicialComplex, Vertex, VertexMap};
use crate::error::{Error, Result};
use crate::intersection::{is_intersection_preserving, FacetBijection};
use crate::shells::{detect_shell, wheel_core, ShellKind};
use crate::validate::validate_triangulation;

/// `F(σ)`: the common vertices of `f(Y)` over every facet `Y` containing `sigma`.
pub fn extended_image(f: &FacetBijection, sigma: &Simplex) -> Result<Vec<Vertex>> {
    let mut acc: Option<Vec<Vertex>> = None;
    for (x, fx) in f.iter() {
        if !sigma.is_subset(x) {
            continue;
        }
        acc = Some(match acc {
            None => fx.vertices().to_vec(),
            Some(prev) => prev.into_iter().filter(|v| fx.contains(v)).collect(),
        });
    }
    acc.ok_or_else(|| Error::FaceNotFound(sigma.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankBijections {
    /// Edges map to edges bijectively via the image of their stars.
    pub rank2: bool,
    /// Triangles map to triangles bijectively.
    pub rank3: bool,
    /// Facets map to facets bijectively.
    pub rank4: bool,
}

impl RankBijections {
    pub fn all(&self) -> bool {
        self.rank2 && self.rank3 && self.rank4
    }
}

/// Checks that `F` restricts to bijections on facets, triangles and edges.
///
/// Both complexes must be valid triangulations. Triangles are images of the
/// two facets through them. Edges are read off the image of their facet
/// star, which must again be a cyclic wheel whose two core vertices form the
/// image edge.
pub fn check_rank_bijections(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    f: &FacetBijection,
) -> Result<RankBijections> {
    if !validate_triangulation(a).verdict {
        return Err(Error::InvalidTriangulation("source"));
    }
    if !validate_triangulation(b).verdict {
        return Err(Error::InvalidTriangulation("target"));
    }
    let rank4 = matches!(is_intersection_preserving(a, b, f), Ok(true));

    let triangles = faces_of_rank(a, 3);
    let target_triangles = faces_of_rank(b, 3);
    let mut images = BTreeSet::new();
    let mut rank3 = rank4;
    for t in &triangles {
        let img = extended_image(f, t)?;
        match Simplex::new(img) {
            Ok(s) if s.rank() == 3 && target_triangles.contains(&s) => {
                images.insert(s);
            }
            _ => rank3 = false,
        }
    }
    rank3 = rank3 && images.len() == triangles.len() && images.len() == target_triangles.len();

    let edges = faces_of_rank(a, 2);
    let target_edges = faces_of_rank(b, 2);
    let mut edge_images = BTreeSet::new();
    let mut rank2 = rank4;
    for e in &edges {
        match edge_image(a, f, e) {
            Some(img) if target_edges.contains(&img) => {
                edge_images.insert(img);
            }
            _ => rank2 = false,
        }
    }
    rank2 = rank2 && edge_images.len() == edges.len() && edge_images.len() == target_edges.len();

    Ok(RankBijections { rank2, rank3, rank4 })
}

fn edge_image(a: &SimplicialComplex, f: &FacetBijection, e: &Simplex) -> Option<Simplex> {
    let star = edge_star_facets(a, e).ok()?;
    let image_facets: Vec<Simplex> = star.iter().map(|x| f.image(x).cloned()).collect::<Option<_>>()?;
    let image = SimplicialComplex::from_simplices(image_facets).ok()?;
    let witness = detect_shell(&image).ok()??;
    if witness.kind != ShellKind::Cyclic || witness.facet_count() != star.len() {
        return None;
    }
    let core = wheel_core(&witness.order)?;
    let img = Simplex::new(core).ok()?;
    (extended_image(f, e).ok()? == img.vertices()).then_some(img)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureStage {
    RankBijection,
    ForwardSingleton,
    InverseSingleton,
    NotIsomorphism,
    FacetMismatch,
}

/// Intermediate singleton claims checked during reconstruction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sublemma {
    /// The images of the three triangles of a facet through `v` meet in one vertex.
    FacetTriangles,
    /// The images of the two edges of a triangle through `v` meet in one vertex.
    TriangleEdges,
    /// The vertex found through each facet containing `v` is the same.
    FacetsAgree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SublemmaViolation {
    pub lemma: Sublemma,
    pub vertex: Vertex,
    pub face: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub source_valid: bool,
    pub target_valid: bool,
    pub intersection_preserving: bool,
    pub rank_bijection_ok: Option<RankBijections>,
    pub sublemma_violations: Vec<SublemmaViolation>,
    pub vertex_images: BTreeMap<Vertex, Vec<Vertex>>,
    pub inverse_images: BTreeMap<Vertex, Vec<Vertex>>,
    pub all_singletons: bool,
    pub phi: Option<VertexMap>,
    pub phi_verified: bool,
    pub failure_stage: Option<FailureStage>,
    pub offending_vertex: Option<Vertex>,
}

/// Checks the intermediate singleton claims for every vertex of `a`.
///
/// On valid inputs with an intersection-preserving map this returns nothing;
/// on other inputs it reports where the chain of claims breaks.
pub fn probe_sublemmas(a: &SimplicialComplex, f: &FacetBijection) -> Vec<SublemmaViolation> {
    let mut out = Vec::new();
    let meet = |faces: &mut dyn Iterator<Item = Simplex>| -> Option<BTreeSet<Vertex>> {
        faces
            .map(|s| {
                extended_image(f, &s)
                    .ok()
                    .map(|v| v.into_iter().collect::<BTreeSet<_>>())
            })
            .reduce(|x, y| Some(x?.intersection(&y?).cloned().collect()))?
    };
    let triangles = faces_of_rank(a, 3);
    for v in a.vertices() {
        let mut agreed: Option<BTreeSet<Vertex>> = None;
        for x in a.facets().iter().filter(|x| x.contains(v)) {
            let mut faces = x
                .vertices()
                .iter()
                .filter(|w| *w != v)
                .map(|w| Simplex::new(x.without(w)).expect("rank 3"));
            let common = meet(&mut faces);
            if common.as_ref().is_none_or(|c| c.len() != 1) {
                out.push(SublemmaViolation {
                    lemma: Sublemma::FacetTriangles,
                    vertex: v.clone(),
                    face: x.clone(),
                });
                continue;
            }
            match &agreed {
                None => agreed = common,
                Some(prev) if Some(prev) != common.as_ref() => out.push(SublemmaViolation {
                    lemma: Sublemma::FacetsAgree,
                    vertex: v.clone(),
                    face: x.clone(),
                }),
                Some(_) => {}
            }
        }
        for t in triangles.iter().filter(|t| t.contains(v)) {
            let mut faces = t
                .vertices()
                .iter()
                .filter(|w| *w != v)
                .map(|w| Simplex::new(t.without(w)).expect("rank 2"));
            if meet(&mut faces).is_none_or(|c| c.len() != 1) {
                out.push(SublemmaViolation {
                    lemma: Sublemma::TriangleEdges,
                    vertex: v.clone(),
                    face: t.clone(),
                });
            }
        }
    }
    out
}

fn vertex_images(c: &SimplicialComplex, f: &FacetBijection) -> BTreeMap<Vertex, Vec<Vertex>> {
    c.vertices()
        .iter()
        .map(|v| {
            let s = Simplex::new([v.clone()]).expect("nonempty");
            (v.clone(), extended_image(f, &s).unwrap_or_default())
        })
        .collect()
}

fn first_non_singleton(images: &BTreeMap<Vertex, Vec<Vertex>>) -> Option<Vertex> {
    images.iter().find(|(_, img)| img.len() != 1).map(|(v, _)| v.clone())
}

/// Runs the full pipeline and reports the earliest failing stage, if any.
pub fn reconstruct_isomorphism(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    f: &FacetBijection,
) -> ReconstructionReport {
    let source_valid = validate_triangulation(a).verdict;
    let target_valid = validate_triangulation(b).verdict;
    let intersection_preserving = is_intersection_preserving(a, b, f).unwrap_or(false);
    let mut report = ReconstructionReport {
        source_valid,
        target_valid,
        intersection_preserving,
        rank_bijection_ok: None,
        sublemma_violations: Vec::new(),
        vertex_images: BTreeMap::new(),
        inverse_images: BTreeMap::new(),
        all_singletons: false,
        phi: None,
        phi_verified: false,
        failure_stage: None,
        offending_vertex: None,
    };
    let fail = |mut r: ReconstructionReport, stage, vertex| {
        r.failure_stage = Some(stage);
        r.offending_vertex = vertex;
        r
    };
    if !(source_valid && target_valid && intersection_preserving) {
        return fail(report, FailureStage::RankBijection, None);
    }

    let ranks = check_rank_bijections(a, b, f).expect("inputs validated");
    report.rank_bijection_ok = Some(ranks);
    report.vertex_images = vertex_images(a, f);
    let inverse = f.inverse();
    report.inverse_images = vertex_images(b, &inverse);
    let forward_bad = first_non_singleton(&report.vertex_images);
    let inverse_bad = first_non_singleton(&report.inverse_images);
    report.all_singletons = forward_bad.is_none() && inverse_bad.is_none();
    if !ranks.all() {
        return fail(report, FailureStage::RankBijection, None);
    }

    report.sublemma_violations = probe_sublemmas(a, f);
    if let Some(v) = report.sublemma_violations.first() {
        let vertex = v.vertex.clone();
        return fail(report, FailureStage::NotIsomorphism, Some(vertex));
    }
    if let Some(v) = forward_bad {
        return fail(report, FailureStage::ForwardSingleton, Some(v));
    }
    if let Some(v) = inverse_bad {
        return fail(report, FailureStage::InverseSingleton, Some(v));
    }

    let phi = match VertexMap::new(report.vertex_images.iter().map(|(v, img)| (v.clone(), img[0].clone()))) {
        Ok(phi) => phi,
        Err(_) => return fail(report, FailureStage::NotIsomorphism, None),
    };
    // The inverse images must describe the inverse map.
    let inverse_ok = report
        .inverse_images
        .iter()
        .all(|(w, img)| phi.inverse().get(w) == Some(&img[0]));
    let is_iso = inverse_ok && phi.is_isomorphism(a, b);
    let agrees = f.iter().all(|(x, fx)| phi.apply(x).is_ok_and(|px| &px == fx));
    report.phi = Some(phi);
    if !is_iso {
        return fail(report, FailureStage::NotIsomorphism, None);
    }
    if !agrees {
        return fail(report, FailureStage::FacetMismatch, None);
    }
    report.phi_verified = true;
    report
}

/// True iff `phi` is an isomorphism `a → b` agreeing with `f` on every facet.
pub fn certify(a: &SimplicialComplex, b: &SimplicialComplex, phi: &VertexMap, f: &FacetBijection) -> bool {
    let covers = {
        let mut src = f.source_order.clone();
        src.sort();
        src.as_slice() == a.facets() && f.len() == a.facet_count()
    };
    covers && phi.is_isomorphism(a, b) && f.iter().all(|(x, fx)| phi.apply(x).is_ok_and(|px| &px == fx))
}
