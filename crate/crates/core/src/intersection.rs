//! Intersection matrices and intersection-preserving facet bijections.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex, VertexMap};
use crate::error::{Error, Result};

/// `entries[i][j] = |facet_order[i] ∩ facet_order[j]|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    pub facet_order: Vec<Simplex>,
    pub entries: Vec<Vec<usize>>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// CSV with a header row of facet indices and one row per facet.
    pub fn to_csv(&self) -> String {
        let n = self.size();
        let mut out = (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(",");
        out.push('\n');
        for row in &self.entries {
            let line = row.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            let _ = writeln!(out, "{line}");
        }
        out
    }

    /// Sorted multiset of each row.
    pub fn row_signatures(&self) -> Vec<Vec<usize>> {
        self.entries
            .iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect()
    }
}

/// Matrix under `order`, or under the default lexicographic facet order.
pub fn intersection_matrix(c: &SimplicialComplex, order: Option<&[Simplex]>) -> Result<IntersectionMatrix> {
    let facet_order: Vec<Simplex> = match order {
        None => c.facets().to_vec(),
        Some(order) => {
            let mut sorted = order.to_vec();
            sorted.sort();
            if sorted.as_slice() != c.facets() {
                return Err(Error::BadOrder);
            }
            order.to_vec()
        }
    };
    Ok(IntersectionMatrix {
        entries: raw_matrix(&facet_order),
        facet_order,
    })
}

pub(crate) fn raw_matrix(facets: &[Simplex]) -> Vec<Vec<usize>> {
    facets
        .iter()
        .map(|x| facets.iter().map(|y| x.intersection_size(y)).collect())
        .collect()
}

/// A pairing `source_order[i] ↦ target_order[assignment[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetBijection {
    pub source_order: Vec<Simplex>,
    pub target_order: Vec<Simplex>,
    pub assignment: Vec<usize>,
    pub verified: bool,
}

impl FacetBijection {
    /// Builds an unverified map from `(source, target)` index pairs into the
    /// default facet orders of `a` and `b`, as stored in map files.
    pub fn from_pairs(a: &SimplicialComplex, b: &SimplicialComplex, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = a.facet_count();
        if b.facet_count() != n || pairs.len() != n {
            return Err(Error::NotBijective(format!(
                "{} pairs between {} and {} facets",
                pairs.len(),
                n,
                b.facet_count()
            )));
        }
        let mut assignment = vec![usize::MAX; n];
        let mut hit = vec![false; n];
        for &(s, t) in pairs {
            if s >= n || t >= n || assignment[s] != usize::MAX || hit[t] {
                return Err(Error::NotBijective(format!("bad or repeated pair ({s}, {t})")));
            }
            assignment[s] = t;
            hit[t] = true;
        }
        Ok(FacetBijection {
            source_order: a.facets().to_vec(),
            target_order: b.facets().to_vec(),
            assignment,
            verified: false,
        })
    }

    /// The facet map induced by a vertex map.
    pub fn induced_by(a: &SimplicialComplex, b: &SimplicialComplex, phi: &VertexMap) -> Result<Self> {
        let pairs = a
            .facets()
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let img = phi.apply(f)?;
                let j = b
                    .facets()
                    .binary_search(&img)
                    .map_err(|_| Error::NotBijective(format!("{f} maps to non-facet {img}")))?;
                Ok((i, j))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_pairs(a, b, &pairs)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.assignment.iter().copied().enumerate().collect()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn image(&self, facet: &Simplex) -> Option<&Simplex> {
        let i = self.source_order.iter().position(|f| f == facet)?;
        Some(&self.target_order[self.assignment[i]])
    }

    /// `(X, f(X))` in source order.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Simplex)> {
        self.source_order
            .iter()
            .zip(&self.assignment)
            .map(|(s, &t)| (s, &self.target_order[t]))
    }

    pub fn inverse(&self) -> FacetBijection {
        let mut assignment = vec![0; self.assignment.len()];
        for (i, &j) in self.assignment.iter().enumerate() {
            assignment[j] = i;
        }
        FacetBijection {
            source_order: self.target_order.clone(),
            target_order: self.source_order.clone(),
            assignment,
            verified: self.verified,
        }
    }

    fn is_permutation(&self) -> bool {
        let n = self.source_order.len();
        if self.target_order.len() != n || self.assignment.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        self.assignment
            .iter()
            .all(|&j| j < n && !std::mem::replace(&mut seen[j], true))
    }
}

/// Checks `|X ∩ Y| = |f(X) ∩ f(Y)|` for all facet pairs, diagonal included.
pub fn is_intersection_preserving(a: &SimplicialComplex, b: &SimplicialComplex, m: &FacetBijection) -> Result<bool> {
    if a.facet_count() != b.facet_count() {
        return Err(Error::NotBijective(format!(
            "{} source facets against {} target facets",
            a.facet_count(),
            b.facet_count()
        )));
    }
    let covers = |order: &[Simplex], c: &SimplicialComplex| {
        let mut sorted = order.to_vec();
        sorted.sort();
        sorted.as_slice() == c.facets()
    };
    if !m.is_permutation() || !covers(&m.source_order, a) || !covers(&m.target_order, b) {
        return Err(Error::NotBijective("map does not pair the two facet sets".into()));
    }
    let images: Vec<&Simplex> = m.assignment.iter().map(|&j| &m.target_order[j]).collect();
    let n = m.source_order.len();
    for i in 0..n {
        for j in i..n {
            if m.source_order[i].intersection_size(&m.source_order[j]) != images[i].intersection_size(images[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking search for intersection-preserving maps `a → b`, returning
/// at most `limit` of them (all of them when `limit` is `None`).
///
/// Source facets are visited breadth-first along high-rank intersections so
/// every step after the first is anchored to an already assigned neighbour.
/// Candidates must share the row multiset of the source facet and agree with
/// every assigned pair. Results come out in a fixed order.
pub fn find_intersection_preserving_maps(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
    limit: Option<usize>,
) -> Vec<FacetBijection> {
    let n = a.facet_count();
    if n != b.facet_count() || limit == Some(0) {
        return Vec::new();
    }
    let ma = raw_matrix(a.facets());
    let mb = raw_matrix(b.facets());
    let sig = |m: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
        m.iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let (sa, sb) = (sig(&ma), sig(&mb));
    {
        let mut x = sa.clone();
        let mut y = sb.clone();
        x.sort();
        y.sort();
        if x != y {
            return Vec::new();
        }
    }
    let mut by_sig: HashMap<&Vec<usize>, Vec<usize>> = HashMap::new();
    for (j, s) in sb.iter().enumerate() {
        by_sig.entry(s).or_default().push(j);
    }
    let candidates: Vec<Vec<usize>> = sa.iter().map(|s| by_sig.get(s).cloned().unwrap_or_default()).collect();
    let order = visit_order(&ma);

    struct Search<'s> {
        ma: &'s [Vec<usize>],
        mb: &'s [Vec<usize>],
        candidates: &'s [Vec<usize>],
        order: &'s [usize],
        assignment: Vec<usize>,
        used: Vec<bool>,
        found: Vec<Vec<usize>>,
        limit: Option<usize>,
    }

    impl Search<'_> {
        fn full(&self) -> bool {
            self.limit.is_some_and(|l| self.found.len() >= l)
        }

        fn run(&mut self, depth: usize) {
            if depth == self.order.len() {
                self.found.push(self.assignment.clone());
                return;
            }
            let x = self.order[depth];
            for &y in &self.candidates[x] {
                if self.used[y] {
                    continue;
                }
                let consistent = self.order[..depth]
                    .iter()
                    .all(|&p| self.ma[x][p] == self.mb[y][self.assignment[p]]);
                if !consistent {
                    continue;
                }
                self.assignment[x] = y;
                self.used[y] = true;
                self.run(depth + 1);
                self.used[y] = false;
                if self.full() {
                    return;
                }
            }
        }
    }

    let mut search = Search {
        ma: &ma,
        mb: &mb,
        candidates: &candidates,
        order: &order,
        assignment: vec![usize::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
        limit,
    };
    search.run(0);
    search
        .found
        .into_iter()
        .map(|assignment| FacetBijection {
            source_order: a.facets().to_vec(),
            target_order: b.facets().to_vec(),
            assignment,
            verified: true,
        })
        .collect()
}

/// Breadth-first facet order, following the largest off-diagonal
/// intersections first; restarts at the lowest unvisited index.
fn visit_order(m: &[Vec<usize>]) -> Vec<usize> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut head = order.len();
        order.push(root);
        while head < order.len() {
            let x = order[head];
            head += 1;
            let mut next: Vec<usize> = (0..n).filter(|&y| !seen[y] && m[x][y] > 0).collect();
            next.sort_by_key(|&y| (std::cmp::Reverse(m[x][y]), y));
            for y in next {
                seen[y] = true;
                order.push(y);
            }
        }
    }
    order
}
