//! Abstract simplicial complexes stored by their facets.
//!
//! A complex keeps only its maximal simplices. Every other face is derived on
//! demand, so memory stays linear in the input. Ranks count vertices: a
//! tetrahedron has rank 4, a triangle rank 3, an edge rank 2.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on the vertex count for the exhaustive isomorphism search
/// and for canonical forms.
pub const DEFAULT_VERTEX_LIMIT: usize = 16;

/// An opaque vertex label: nonempty, no whitespace.
///
/// Labels order "naturally": labels that parse as integers compare by value
/// and sort before every other label, so `"2" < "10" < "a"`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Vertex(String);

impl Vertex {
    pub fn new(label: impl Into<String>) -> Result<Self> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::BadLabel(label));
        }
        Ok(Vertex(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Vertex {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Vertex::new(s)
    }
}

impl From<Vertex> for String {
    fn from(v: Vertex) -> String {
        v.0
    }
}

impl Ord for Vertex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.0.parse::<u64>(), other.0.parse::<u64>()) {
            (Ok(a), Ok(b)) => a.cmp(&b).then_with(|| self.0.cmp(&other.0)),
            (Ok(_), Err(_)) => Ordering::Less,
            (Err(_), Ok(_)) => Ordering::Greater,
            (Err(_), Err(_)) => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A nonempty set of vertices, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let set: BTreeSet<Vertex> = vertices.into_iter().collect();
        if set.is_empty() {
            return Err(Error::EmptyInput);
        }
        Ok(Simplex(set.into_iter().collect()))
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let vs = labels
            .iter()
            .map(|l| Vertex::new(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Simplex::new(vs)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(v))
    }

    pub fn intersection_size(&self, other: &Simplex) -> usize {
        self.0.iter().filter(|v| other.contains(v)).count()
    }

    pub fn intersection(&self, other: &Simplex) -> Vec<Vertex> {
        self.0.iter().filter(|v| other.contains(v)).cloned().collect()
    }

    pub fn without(&self, v: &Vertex) -> Vec<Vertex> {
        self.0.iter().filter(|w| *w != v).cloned().collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.0.iter().map(|v| v.0.clone()).collect()
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = Error;
    fn try_from(vs: Vec<Vertex>) -> Result<Self> {
        Simplex::new(vs)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite abstract simplicial complex given by its facets.
///
/// Invariants: no facet is contained in another, every vertex lies in some
/// facet, and both vertices and facets are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    vertices: Vec<Vertex>,
    facets: Vec<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.facets).finish()
    }
}

/// Builds a complex from facet lists; duplicate and dominated inputs are absorbed.
pub fn build_complex<S: AsRef<str>>(facet_lists: &[Vec<S>]) -> Result<SimplicialComplex> {
    let simplices = facet_lists
        .iter()
        .map(|l| Simplex::from_labels(l))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_simplices(simplices)
}

impl SimplicialComplex {
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut candidates: Vec<Simplex> = simplices.into_iter().collect();
        if candidates.is_empty() {
            return Err(Error::EmptyInput);
        }
        // Larger simplices first, so a dominated one always meets its dominator.
        candidates.sort_by(|a, b| b.rank().cmp(&a.rank()).then_with(|| a.cmp(b)));
        candidates.dedup();
        let mut facets: Vec<Simplex> = Vec::with_capacity(candidates.len());
        for s in candidates {
            if !facets.iter().any(|f| f.rank() > s.rank() && s.is_subset(f)) {
                facets.push(s);
            }
        }
        facets.sort();
        let vertices: BTreeSet<Vertex> = facets.iter().flat_map(|f| f.0.iter().cloned()).collect();
        Ok(SimplicialComplex {
            vertices: vertices.into_iter().collect(),
            facets,
        })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Facets in the default (lexicographic) order.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn max_rank(&self) -> usize {
        self.facets.iter().map(Simplex::rank).max().unwrap_or(0)
    }

    /// The common facet rank, or `None` if ranks are mixed.
    pub fn pure_rank(&self) -> Option<usize> {
        let r = self.facets[0].rank();
        self.facets.iter().all(|f| f.rank() == r).then_some(r)
    }

    pub fn contains_vertex(&self, v: &Vertex) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    pub fn has_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn has_facet(&self, s: &Simplex) -> bool {
        self.facets.binary_search(s).is_ok()
    }

    pub fn facets_containing<'a>(&'a self, s: &'a Simplex) -> impl Iterator<Item = &'a Simplex> + 'a {
        self.facets.iter().filter(move |f| s.is_subset(f))
    }

    /// Facets as sorted vertex-index lists (indices into [`Self::vertices`]).
    pub fn indexed_facets(&self) -> Vec<Vec<usize>> {
        self.facets
            .iter()
            .map(|f| f.0.iter().map(|v| self.index_of(v).expect("facet vertex")).collect())
            .collect()
    }

    /// Builds a complex over decimal labels from index lists.
    pub fn from_indexed(facets: &[Vec<usize>]) -> Result<Self> {
        let simplices = facets
            .iter()
            .map(|f| Simplex::new(f.iter().map(|i| Vertex(i.to_string()))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_simplices(simplices)
    }

    /// Applies a relabeling to every facet.
    pub fn relabel(&self, map: &VertexMap) -> Result<Self> {
        let facets = self.facets.iter().map(|f| map.apply(f)).collect::<Result<Vec<_>>>()?;
        Self::from_simplices(facets)
    }

    /// Number of facets containing each vertex, in vertex order.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for f in self.indexed_facets() {
            for i in f {
                deg[i] += 1;
            }
        }
        deg
    }
}

/// All faces with exactly `rank` vertices.
pub fn faces_of_rank(c: &SimplicialComplex, rank: usize) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    if rank == 0 {
        return out;
    }
    for f in &c.facets {
        if f.rank() < rank {
            continue;
        }
        for combo in f.0.iter().cloned().combinations(rank) {
            out.insert(Simplex(combo));
        }
    }
    out
}

/// The link of `v` in a pure 3-dimensional complex: every tetrahedron
/// containing `v`, with `v` removed.
pub fn vertex_neighbourhood(c: &SimplicialComplex, v: &Vertex) -> Result<SimplicialComplex> {
    require_rank(c, 4)?;
    if !c.contains_vertex(v) {
        return Err(Error::VertexNotFound(v.to_string()));
    }
    let link = c
        .facets
        .iter()
        .filter(|f| f.contains(v))
        .map(|f| Simplex(f.without(v)))
        .collect::<Vec<_>>();
    SimplicialComplex::from_simplices(link)
}

pub(crate) fn require_rank(c: &SimplicialComplex, rank: usize) -> Result<()> {
    match c.facets.iter().find(|f| f.rank() != rank) {
        Some(f) => Err(Error::WrongDimension {
            expected: rank,
            found: f.rank(),
        }),
        None => Ok(()),
    }
}

/// Facets around an edge, in a cyclic order where consecutive facets
/// (including last and first) share a triangle.
///
/// The returned order starts at the smallest facet and proceeds towards the
/// smaller of its two neighbours.
pub fn edge_star_facets(c: &SimplicialComplex, e: &Simplex) -> Result<Vec<Simplex>> {
    let star: Vec<&Simplex> = c.facets_containing(e).collect();
    if star.is_empty() {
        return Err(Error::FaceNotFound(e.to_string()));
    }
    let k = star.len();
    let not_cyclic = || Error::NotCyclic(e.to_string());
    if k < 3 {
        return Err(not_cyclic());
    }
    let share = e.rank() + 1;
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..k)
                .filter(|&j| j != i && star[i].intersection_size(star[j]) >= share)
                .collect()
        })
        .collect();
    let cycle = hamiltonian_cycle(&adj).ok_or_else(not_cyclic)?;
    Ok(cycle.into_iter().map(|i| star[i].clone()).collect())
}

/// Deterministic Hamiltonian cycle through vertex 0, preferring smaller
/// neighbours first. Adjacency lists must be sorted.
fn hamiltonian_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn extend(adj: &[Vec<usize>], path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = adj.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            return adj[last].contains(&path[0]);
        }
        for &next in &adj[last] {
            if used[next] {
                continue;
            }
            // Keep the reflection canonical: the second element is smaller than the last.
            if path.len() == n - 1 && path.len() > 1 && next < path[1] {
                continue;
            }
            used[next] = true;
            path.push(next);
            if extend(adj, path, used) {
                return true;
            }
            path.pop();
            used[next] = false;
        }
        false
    }
    let n = adj.len();
    if adj.iter().any(|a| a.len() < 2) {
        return None;
    }
    let mut used = vec![false; n];
    used[0] = true;
    let mut path = vec![0];
    extend(adj, &mut path, &mut used).then_some(path)
}

/// A bijection between the vertex sets of two complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexMap {
    pairs: BTreeMap<Vertex, Vertex>,
}

impl VertexMap {
    /// Builds a map, rejecting non-injective pair lists.
    pub fn new(pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let pairs: BTreeMap<Vertex, Vertex> = pairs.into_iter().collect();
        let images: HashSet<&Vertex> = pairs.values().collect();
        if images.len() != pairs.len() {
            return Err(Error::NotBijective("two vertices share an image".into()));
        }
        Ok(VertexMap { pairs })
    }

    pub fn identity(c: &SimplicialComplex) -> Self {
        VertexMap {
            pairs: c.vertices.iter().map(|v| (v.clone(), v.clone())).collect(),
        }
    }

    pub fn get(&self, v: &Vertex) -> Option<&Vertex> {
        self.pairs.get(v)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Vertex, &Vertex)> {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn apply(&self, s: &Simplex) -> Result<Simplex> {
        let image =
            s.0.iter()
                .map(|v| {
                    self.pairs
                        .get(v)
                        .cloned()
                        .ok_or_else(|| Error::VertexNotFound(v.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
        Simplex::new(image)
    }

    pub fn inverse(&self) -> Self {
        VertexMap {
            pairs: self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> Result<Self> {
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| {
                other
                    .get(b)
                    .map(|c| (a.clone(), c.clone()))
                    .ok_or_else(|| Error::VertexNotFound(b.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        VertexMap::new(pairs)
    }

    /// True iff this map is a bijection `a.vertices → b.vertices` carrying
    /// the facet set of `a` exactly onto the facet set of `b`.
    pub fn is_isomorphism(&self, a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
        if self.pairs.len() != a.vertex_count() || a.vertex_count() != b.vertex_count() {
            return false;
        }
        if !a
            .vertices
            .iter()
            .all(|v| self.pairs.get(v).is_some_and(|w| b.contains_vertex(w)))
        {
            return false;
        }
        a.facet_count() == b.facet_count() && a.facets.iter().all(|f| self.apply(f).is_ok_and(|g| b.has_facet(&g)))
    }
}

/// Exhaustive isomorphism search with the default vertex bound.
pub fn are_isomorphic(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<Option<VertexMap>> {
    are_isomorphic_bounded(a, b, DEFAULT_VERTEX_LIMIT)
}

/// Exhaustive isomorphism search.
///
/// Vertices of `a` are assigned in label order, each to candidate vertices of
/// `b` in label order, so the first map found is the lexicographically
/// smallest one. Pruning is limited to degree equality and closing every
/// facet whose vertices are all assigned.
pub fn are_isomorphic_bounded(a: &SimplicialComplex, b: &SimplicialComplex, limit: usize) -> Result<Option<VertexMap>> {
    for c in [a, b] {
        if c.vertex_count() > limit {
            return Err(Error::SizeLimit {
                vertices: c.vertex_count(),
                limit,
            });
        }
    }
    if a.vertex_count() != b.vertex_count() || a.facet_count() != b.facet_count() {
        return Ok(None);
    }
    let ranks = |c: &SimplicialComplex| c.facets.iter().map(Simplex::rank).sorted().collect::<Vec<_>>();
    if ranks(a) != ranks(b) {
        return Ok(None);
    }
    let deg_a = a.vertex_degrees();
    let deg_b = b.vertex_degrees();
    if deg_a.iter().sorted().ne(deg_b.iter().sorted()) {
        return Ok(None);
    }

    let fa = a.indexed_facets();
    let target: HashSet<Vec<usize>> = b.indexed_facets().into_iter().collect();
    let n = a.vertex_count();
    // closing[i]: facets of `a` whose largest vertex index is i.
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in fa.iter().enumerate() {
        closing[*f.last().unwrap()].push(fi);
    }

    struct Search<'s> {
        fa: &'s [Vec<usize>],
        target: &'s HashSet<Vec<usize>>,
        closing: &'s [Vec<usize>],
        deg_a: &'s [usize],
        deg_b: &'s [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn run(&mut self, i: usize) -> bool {
            if i == self.map.len() {
                return true;
            }
            for cand in 0..self.deg_b.len() {
                if self.used[cand] || self.deg_b[cand] != self.deg_a[i] {
                    continue;
                }
                self.map[i] = cand;
                let ok = self.closing[i].iter().all(|&fi| {
                    let mut img: Vec<usize> = self.fa[fi].iter().map(|&v| self.map[v]).collect();
                    img.sort_unstable();
                    self.target.contains(&img)
                });
                if !ok {
                    continue;
                }
                self.used[cand] = true;
                if self.run(i + 1) {
                    return true;
                }
                self.used[cand] = false;
            }
            false
        }
    }

    let mut search = Search {
        fa: &fa,
        target: &target,
        closing: &closing,
        deg_a: &deg_a,
        deg_b: &deg_b,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return Ok(None);
    }
    let map = VertexMap::new(
        search
            .map
            .iter()
            .enumerate()
            .map(|(i, &j)| (a.vertices[i].clone(), b.vertices[j].clone())),
    )?;
    Ok(Some(map))
}
