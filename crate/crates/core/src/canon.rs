//! Canonical forms for small complexes.
//!
//! The canonical form is the smallest sorted facet list over all vertex
//! numberings that are compatible with an invariant ordered partition of the
//! vertices. The partition comes from colour refinement on the vertex/facet
//! incidence structure; non-singleton cells are split by individualising each
//! of their vertices in turn. Because the set of explored numberings is
//! defined without reference to labels, relabelled copies reach the same
//! minimum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, DEFAULT_VERTEX_LIMIT};
use crate::error::{Error, Result};

/// Relabelling-invariant encoding: facets over vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub vertex_count: usize,
    pub facets: Vec<Vec<u16>>,
}

impl CanonicalForm {
    /// Self-delimiting big-endian byte encoding; two forms are equal iff their bytes are.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.vertex_count as u16).to_be_bytes());
        out.extend_from_slice(&(self.facets.len() as u16).to_be_bytes());
        for f in &self.facets {
            out.extend_from_slice(&(f.len() as u16).to_be_bytes());
            for &v in f {
                out.extend_from_slice(&v.to_be_bytes());
            }
        }
        out
    }

    pub fn to_complex(&self) -> SimplicialComplex {
        let facets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| v as usize).collect())
            .collect();
        SimplicialComplex::from_indexed(&facets).expect("canonical forms are nonempty")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.facets)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .facets
            .iter()
            .map(|fc| fc.iter().map(u16::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", body.join(" | "))
    }
}

pub fn canonical_form(c: &SimplicialComplex) -> Result<CanonicalForm> {
    canonical_form_bounded(c, DEFAULT_VERTEX_LIMIT)
}

pub fn canonical_form_bounded(c: &SimplicialComplex, limit: usize) -> Result<CanonicalForm> {
    if c.vertex_count() > limit {
        return Err(Error::SizeLimit {
            vertices: c.vertex_count(),
            limit,
        });
    }
    Ok(canonize(c.vertex_count(), &c.indexed_facets()).0)
}

/// Canonical form of an indexed complex together with the numbering that
/// produced it (`labeling[v]` is the canonical label of vertex `v`).
pub fn canonize(n: usize, facets: &[Vec<usize>]) -> (CanonicalForm, Vec<usize>) {
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in facets.iter().enumerate() {
        for &v in f {
            incident[v].push(fi);
        }
    }
    let mut search = Canonizer {
        facets,
        incident: &incident,
        best: None,
    };
    let colours = vec![0usize; n];
    search.descend(colours);
    let (form, labeling) = search.best.expect("at least one leaf");
    (form, labeling)
}

struct Canonizer<'a> {
    facets: &'a [Vec<usize>],
    incident: &'a [Vec<usize>],
    best: Option<(CanonicalForm, Vec<usize>)>,
}

impl Canonizer<'_> {
    fn descend(&mut self, mut colours: Vec<usize>) {
        refine(self.facets, self.incident, &mut colours);
        let n = colours.len();
        let mut counts = vec![0usize; n];
        for &c in &colours {
            counts[c] += 1;
        }
        let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
            let form = self.encode(&colours);
            if self.best.as_ref().is_none_or(|(b, _)| form < *b) {
                self.best = Some((form, colours));
            }
            return;
        };
        let members: Vec<usize> = (0..n).filter(|&v| colours[v] == cell).collect();
        for &v in &members {
            let child: Vec<usize> = colours
                .iter()
                .enumerate()
                .map(|(w, &c)| if c > cell || (c == cell && w != v) { c + 1 } else { c })
                .collect();
            self.descend(child);
        }
    }

    fn encode(&self, labeling: &[usize]) -> CanonicalForm {
        let mut facets: Vec<Vec<u16>> = self
            .facets
            .iter()
            .map(|f| {
                let mut g: Vec<u16> = f.iter().map(|&v| labeling[v] as u16).collect();
                g.sort_unstable();
                g
            })
            .collect();
        facets.sort_unstable();
        CanonicalForm {
            vertex_count: labeling.len(),
            facets,
        }
    }
}

/// Colour refinement to a stable ordered partition. Colours stay dense
/// (`0..cells`) and a cell is only ever split, never reordered relative to
/// other cells.
fn refine(facets: &[Vec<usize>], incident: &[Vec<usize>], colours: &mut Vec<usize>) {
    let n = colours.len();
    let mut cells = distinct(colours);
    loop {
        let facet_sig: Vec<Vec<usize>> = facets
            .iter()
            .map(|f| {
                let mut s: Vec<usize> = f.iter().map(|&v| colours[v]).collect();
                s.sort_unstable();
                s
            })
            .collect();
        let mut sigs: Vec<(usize, Vec<&Vec<usize>>, usize)> = (0..n)
            .map(|v| {
                let mut fs: Vec<&Vec<usize>> = incident[v].iter().map(|&fi| &facet_sig[fi]).collect();
                fs.sort_unstable();
                (colours[v], fs, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut next = vec![0usize; n];
        let mut colour = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                colour += 1;
            }
            next[sigs[i].2] = colour;
        }
        let new_cells = colour + 1;
        *colours = next;
        if new_cells == cells {
            return;
        }
        cells = new_cells;
    }
}

fn distinct(colours: &[usize]) -> usize {
    let mut c = colours.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    #[test]
    fn single_edge() {
        let c = build_complex(&[vec!["x", "y"]]).unwrap();
        let form = canonical_form(&c).unwrap();
        assert_eq!(form.facets, vec![vec![0, 1]]);
        assert_eq!(form.vertex_count, 2);
    }

    #[test]
    fn relabelling_invariance_on_a_path() {
        let a = build_complex(&[vec!["a", "b"], vec!["b", "c"], vec!["c", "d"]]).unwrap();
        let b = build_complex(&[vec!["4", "1"], vec!["1", "9"], vec!["9", "2"]]).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        let star = build_complex(&[vec!["a", "b"], vec!["a", "c"], vec!["a", "d"]]).unwrap();
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&star).unwrap());
    }

    #[test]
    fn labeling_reproduces_form() {
        let facets = vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]];
        let (form, lab) = canonize(5, &facets);
        let mut mapped: Vec<Vec<u16>> = facets
            .iter()
            .map(|f| {
                let mut g: Vec<u16> = f.iter().map(|&v| lab[v] as u16).collect();
                g.sort();
                g
            })
            .collect();
        mapped.sort();
        assert_eq!(mapped, form.facets);
    }

    #[test]
    fn byte_encoding_separates_forms() {
        let a = CanonicalForm {
            vertex_count: 3,
            facets: vec![vec![0, 1], vec![1, 2]],
        };
        let b = CanonicalForm {
            vertex_count: 3,
            facets: vec![vec![0, 1, 2]],
        };
        assert_ne!(a.to_bytes(), b.to_bytes());
        assert_eq!(a.to_bytes(), a.clone().to_bytes());
    }

    #[test]
    fn size_limit() {
        let facets: Vec<Vec<String>> = (0..17)
            .map(|i| vec![i.to_string(), ((i + 1) % 17).to_string()])
            .collect();
        let c = build_complex(&facets).unwrap();
        assert!(matches!(canonical_form(&c), Err(Error::SizeLimit { .. })));
        assert!(canonical_form_bounded(&c, 20).is_ok());
    }
}
