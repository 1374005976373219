//! Lineal and cyclic shells: pattern detection, the wheel families, and lifting.
//!
//! An n-dimensional shell has facets of rank n+1. Consecutive facets share n
//! vertices and every other pair shares n−1; a cyclic shell additionally
//! closes up, its first and last facets sharing n vertices.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::canonical_form;
use crate::catalog;
use crate::complex::{Simplex, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::intersection::raw_matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellKind {
    Lineal,
    Cyclic,
}

impl ShellKind {
    pub(crate) fn letter(self) -> char {
        match self {
            ShellKind::Lineal => 'L',
            ShellKind::Cyclic => 'C',
        }
    }

    /// Smallest facet count a shell of this kind can have.
    pub fn min_facets(self) -> usize {
        match self {
            ShellKind::Lineal => 2,
            ShellKind::Cyclic => 3,
        }
    }
}

impl fmt::Display for ShellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShellKind::Lineal => "lineal",
            ShellKind::Cyclic => "cyclic",
        })
    }
}

impl std::str::FromStr for ShellKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lineal" | "linear" => Ok(ShellKind::Lineal),
            "cyclic" => Ok(ShellKind::Cyclic),
            other => Err(Error::BadParameter(format!("unknown shell kind {other:?}"))),
        }
    }
}

/// A facet order realising a shell pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellWitness {
    pub kind: ShellKind,
    pub dim: usize,
    pub order: Vec<Simplex>,
    pub catalog_id: Option<String>,
}

impl ShellWitness {
    pub fn facet_count(&self) -> usize {
        self.order.len()
    }
}

/// Expected intersection size of facets `i < j` in a k-facet shell of dimension `dim`.
pub fn pattern_entry(kind: ShellKind, dim: usize, k: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    if i == j {
        dim + 1
    } else if j == i + 1 || (kind == ShellKind::Cyclic && i == 0 && j == k - 1) {
        dim
    } else {
        dim - 1
    }
}

/// Finds the order realising a shell pattern on an intersection matrix of
/// facets of rank `rank`. Lineal orders start at the lower-indexed end;
/// cyclic orders start at index 0 and head to its lower neighbour.
pub(crate) fn pattern_order(m: &[Vec<usize>], rank: usize) -> Option<(ShellKind, Vec<usize>)> {
    let k = m.len();
    if k < 2 || rank < 3 {
        return None;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in (i + 1)..k {
            match m[i][j] {
                x if x == rank - 1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                x if x == rank - 2 => {}
                _ => return None,
            }
        }
    }
    let ends: Vec<usize> = (0..k).filter(|&i| adj[i].len() == 1).collect();
    if adj.iter().any(|a| a.is_empty() || a.len() > 2) {
        return None;
    }
    let (kind, start) = match ends.len() {
        0 if k >= 3 => (ShellKind::Cyclic, 0),
        2 => (ShellKind::Lineal, ends[0]),
        _ => return None,
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < k {
        let next = adj[cur].iter().copied().filter(|&x| x != prev).min()?;
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    if kind == ShellKind::Cyclic && !adj[cur].contains(&start) {
        return None;
    }
    Some((kind, order))
}

/// Detects a lineal or cyclic shell and names it when it belongs to a wheel
/// family or matches a catalogued shell.
pub fn detect_shell(c: &SimplicialComplex) -> Result<Option<ShellWitness>> {
    let rank = c.pure_rank().ok_or(Error::MixedRank)?;
    let m = raw_matrix(c.facets());
    let Some((kind, idx)) = pattern_order(&m, rank) else {
        return Ok(None);
    };
    let order: Vec<Simplex> = idx.iter().map(|&i| c.facets()[i].clone()).collect();
    let dim = rank - 1;
    // Any two facets sharing all but one vertex form the 2-facet wheel.
    let catalog_id = if order.len() == 2 || wheel_core(&order).is_some() {
        Some(family_name(dim, kind, order.len()))
    } else {
        catalog_name(c, dim, kind)?
    };
    Ok(Some(ShellWitness {
        kind,
        dim,
        order,
        catalog_id,
    }))
}

fn catalog_name(c: &SimplicialComplex, dim: usize, kind: ShellKind) -> Result<Option<String>> {
    if c.vertex_count() > crate::complex::DEFAULT_VERTEX_LIMIT {
        return Ok(None);
    }
    let form = canonical_form(c)?;
    Ok(catalog::name_of(dim, kind, &form).map(str::to_owned))
}

/// `nLW_k` / `nCW_k`.
pub fn family_name(dim: usize, kind: ShellKind, k: usize) -> String {
    format!("{dim}{}W_{k}", kind.letter())
}

/// The vertices common to every facet, when they form the (n−1)-vertex core
/// of a wheel-family shell.
pub fn wheel_core(order: &[Simplex]) -> Option<Vec<Vertex>> {
    let first = order.first()?;
    let core: Vec<Vertex> = first
        .vertices()
        .iter()
        .filter(|v| order.iter().all(|f| f.contains(v)))
        .cloned()
        .collect();
    (core.len() + 2 == first.rank()).then_some(core)
}

/// The wheel shell with facets `X ∪ {v_i, v_{i+1}}` over a core `X` of
/// `dim − 1` vertices. Core vertices are labelled `x0, x1, …`, rim vertices
/// `v0, v1, …`.
pub fn wheel(dim: usize, kind: ShellKind, k: usize) -> Result<SimplicialComplex> {
    if dim < 2 || k < kind.min_facets() {
        return Err(Error::BadParameter(format!(
            "no {kind} wheel of dimension {dim} with {k} facets"
        )));
    }
    let rim = match kind {
        ShellKind::Lineal => k + 1,
        ShellKind::Cyclic => k,
    };
    let facets: Vec<Vec<String>> = (0..k)
        .map(|i| {
            (0..dim - 1)
                .map(|c| format!("x{c}"))
                .chain([format!("v{i}"), format!("v{}", (i + 1) % rim)])
                .collect()
        })
        .collect();
    crate::complex::build_complex(&facets)
}

/// Cones every facet of a 2-shell to a new apex vertex.
pub fn lift_2_shell(s: &SimplicialComplex, apex_label: &str) -> Result<SimplicialComplex> {
    let apex = Vertex::new(apex_label)?;
    match detect_shell(s)? {
        Some(w) if w.dim == 2 => {}
        _ => return Err(Error::NotAShell),
    }
    if s.contains_vertex(&apex) {
        return Err(Error::LabelClash(apex_label.to_owned()));
    }
    cone(s, &apex)
}

pub(crate) fn cone(s: &SimplicialComplex, apex: &Vertex) -> Result<SimplicialComplex> {
    let facets = s
        .facets()
        .iter()
        .map(|f| Simplex::new(f.vertices().iter().cloned().chain([apex.clone()])))
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::from_simplices(facets)
}

/// For a complex with a vertex in every facet, that vertex (the smallest
/// such) and the complex obtained by deleting it from every facet.
pub fn shadow(c: &SimplicialComplex) -> Option<(Vertex, SimplicialComplex)> {
    let apex = c
        .vertices()
        .iter()
        .find(|v| c.facets().iter().all(|f| f.contains(v)))?
        .clone();
    if c.facets().iter().any(|f| f.rank() < 2) {
        return None;
    }
    let facets = c
        .facets()
        .iter()
        .map(|f| Simplex::new(f.without(&apex)).expect("rank >= 2"));
    let flat = SimplicialComplex::from_simplices(facets).ok()?;
    Some((apex, flat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;
    use crate::validate::{generate_standard, StandardKind};

    #[test]
    fn pattern_entries() {
        assert_eq!(pattern_entry(ShellKind::Cyclic, 3, 6, 0, 5), 3);
        assert_eq!(pattern_entry(ShellKind::Lineal, 3, 6, 0, 5), 2);
        assert_eq!(pattern_entry(ShellKind::Lineal, 3, 6, 2, 2), 4);
        assert_eq!(pattern_entry(ShellKind::Lineal, 2, 6, 4, 3), 2);
    }

    #[test]
    fn wheels_detect_as_their_family() {
        for dim in [2, 3, 4] {
            for kind in [ShellKind::Lineal, ShellKind::Cyclic] {
                for k in kind.min_facets()..9 {
                    let w = wheel(dim, kind, k).unwrap();
                    let got = detect_shell(&w).unwrap().expect("shell");
                    assert_eq!((got.kind, got.dim, got.facet_count()), (kind, dim, k));
                    assert_eq!(got.catalog_id, Some(family_name(dim, kind, k)));
                }
            }
        }
    }

    #[test]
    fn simplex_boundary_is_not_a_shell() {
        let c = generate_standard(StandardKind::SimplexBoundary4).unwrap();
        assert_eq!(detect_shell(&c).unwrap(), None);
    }

    #[test]
    fn mixed_rank() {
        let c = build_complex(&[vec!["a", "b", "c"], vec!["c", "d"]]).unwrap();
        assert_eq!(detect_shell(&c), Err(Error::MixedRank));
    }

    #[test]
    fn cyclic_order_is_adjacent_all_round() {
        let w = wheel(3, ShellKind::Cyclic, 7).unwrap();
        let order = detect_shell(&w).unwrap().unwrap().order;
        for i in 0..7 {
            assert_eq!(order[i].intersection_size(&order[(i + 1) % 7]), 3);
        }
    }

    #[test]
    fn lift_errors() {
        let w = wheel(2, ShellKind::Cyclic, 5).unwrap();
        assert_eq!(lift_2_shell(&w, "v0"), Err(Error::LabelClash("v0".into())));
        let w3 = wheel(3, ShellKind::Cyclic, 5).unwrap();
        assert_eq!(lift_2_shell(&w3, "z"), Err(Error::NotAShell));
        let lifted = lift_2_shell(&w, "z").unwrap();
        let det = detect_shell(&lifted).unwrap().unwrap();
        assert_eq!((det.kind, det.dim, det.facet_count()), (ShellKind::Cyclic, 3, 5));
        assert_eq!(det.catalog_id.as_deref(), Some("3CW_5"));
    }

    #[test]
    fn shadow_undoes_lift() {
        let w = wheel(2, ShellKind::Lineal, 4).unwrap();
        let lifted = lift_2_shell(&w, "apex").unwrap();
        let (apex, flat) = shadow(&lifted).unwrap();
        assert_eq!(apex.as_str(), "apex");
        assert_eq!(flat, w);
        assert!(shadow(&generate_standard(StandardKind::SimplexBoundary4).unwrap()).is_none());
    }
}
