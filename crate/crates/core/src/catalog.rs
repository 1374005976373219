//! Named shells outside the wheel families, as fixed presentations.
//!
//! Primed labels such as `b'` are ordinary labels. Lifted entries are cones
//! over the corresponding 2-shell with apex `z`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::canon::{canonical_form, CanonicalForm};
use crate::complex::{build_complex, SimplicialComplex, Vertex, VertexMap};
use crate::error::{Error, Result};
use crate::shells::{cone, wheel, ShellKind};

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub kind: ShellKind,
    pub source: &'static str,
    #[serde(skip)]
    pub complex: SimplicialComplex,
    #[serde(skip)]
    pub canonical: CanonicalForm,
}

impl CatalogEntry {
    pub fn facet_count(&self) -> usize {
        self.complex.facet_count()
    }
}

fn fl(facets: &[&[&str]]) -> SimplicialComplex {
    let lists: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
    build_complex(&lists).expect("catalog fixture")
}

const LE_4: &[&[&str]] = &[
    &["v", "a", "b"],
    &["a", "b", "b'"],
    &["a'", "b", "b'"],
    &["v", "a'", "b'"],
];
const LE_5_EXTRA: &[&str] = &["b'", "v", "c"];
const LE_6_EXTRA: &[&str] = &["v", "d", "b"];
const CE_5_EXTRA: &[&str] = &["v", "a", "a'"];
const CE_6_EXTRA: &[&str] = &["v", "b", "c"];

const LS_5: &[&[&str]] = &[
    &["v0", "v1", "v3", "t"],
    &["v0", "v1", "t", "b"],
    &["v1", "v2", "t", "b"],
    &["v2", "v3", "t", "b"],
    &["v0", "v2", "v3", "b"],
];
const CS_6_EXTRA: &[&str] = &["v0", "v1", "v2", "v3"];

const LF_6: &[&[&str]] = &[
    &["a0", "a1", "a2", "a6"],
    &["a0", "a1", "a2", "a4"],
    &["a2", "a3", "a4", "a0"],
    &["a2", "a3", "a4", "a6"],
    &["a4", "a5", "a6", "a2"],
    &["a4", "a5", "a6", "a0"],
];
const LF_7_EXTRA: &[&str] = &["a4", "a6", "a0", "a7"];
const LF_8_EXTRA: &[&str] = &["a2", "a0", "a6", "a-1"];
const CF_8_EXTRA: &[&str] = &["a0", "a6", "a2", "a7"];

const LE3_4: &[&[&str]] = &[
    &["v", "a", "b", "z"],
    &["a", "b", "b'", "z"],
    &["b", "b'", "a'", "z"],
    &["b'", "a'", "v", "z"],
];
const LE3_5_EXTRA: &[&str] = &["b'", "v", "c", "z"];
const LE3_6_EXTRA: &[&str] = &["d", "v", "b", "z"];

fn with(base: &[&[&str]], extra: &[&[&str]]) -> SimplicialComplex {
    let all: Vec<&[&str]> = base.iter().chain(extra).copied().collect();
    fl(&all)
}

fn le(k: usize) -> SimplicialComplex {
    match k {
        4 => fl(LE_4),
        5 => with(LE_4, &[LE_5_EXTRA]),
        _ => with(LE_4, &[LE_5_EXTRA, LE_6_EXTRA]),
    }
}

fn ce(k: usize) -> SimplicialComplex {
    match k {
        5 => with(LE_4, &[CE_5_EXTRA]),
        _ => with(LE_4, &[LE_5_EXTRA, CE_6_EXTRA]),
    }
}

fn build_entries() -> Vec<CatalogEntry> {
    // Plain coning: shell detection would consult this catalogue while it is being built.
    let apex = Vertex::new("z").unwrap();
    let lift = |c: SimplicialComplex| cone(&c, &apex).expect("nonempty");
    let raw: Vec<(&'static str, usize, ShellKind, &'static str, SimplicialComplex)> = vec![
        (
            "LE_4",
            2,
            ShellKind::Lineal,
            "four triangles around a bent strip",
            le(4),
        ),
        ("LE_5", 2, ShellKind::Lineal, "LE_4 glued with {b',v,c}", le(5)),
        ("LE_6", 2, ShellKind::Lineal, "LE_5 glued with {v,d,b}", le(6)),
        ("CE_5", 2, ShellKind::Cyclic, "LE_4 closed by {v,a,a'}", ce(5)),
        ("CE_6", 2, ShellKind::Cyclic, "LE_5 closed by {v,b,c}", ce(6)),
        ("3LE_4", 3, ShellKind::Lineal, "lift of LE_4 with apex z", fl(LE3_4)),
        (
            "3LE_5",
            3,
            ShellKind::Lineal,
            "lift of LE_5 with apex z",
            with(LE3_4, &[LE3_5_EXTRA]),
        ),
        (
            "3LE_6",
            3,
            ShellKind::Lineal,
            "lift of LE_6 with apex z",
            with(LE3_4, &[LE3_5_EXTRA, LE3_6_EXTRA]),
        ),
        ("LS_5", 3, ShellKind::Lineal, "3LE_4 glued with {v,a',b',a}", fl(LS_5)),
        ("LF_6", 3, ShellKind::Lineal, "3LE_5 glued with {b',v,c,b}", fl(LF_6)),
        (
            "LF_7",
            3,
            ShellKind::Lineal,
            "LF_6 glued with {a4,a6,a0,a7}",
            with(LF_6, &[LF_7_EXTRA]),
        ),
        (
            "LF_8",
            3,
            ShellKind::Lineal,
            "LF_7 glued at its first facet with {a2,a0,a6,a-1}",
            with(LF_6, &[LF_7_EXTRA, LF_8_EXTRA]),
        ),
        ("3CE_5", 3, ShellKind::Cyclic, "lift of CE_5 with apex z", lift(ce(5))),
        ("3CE_6", 3, ShellKind::Cyclic, "lift of CE_6 with apex z", lift(ce(6))),
        (
            "CS_6",
            3,
            ShellKind::Cyclic,
            "LS_5 closed by {v0,v1,v2,v3}",
            with(LS_5, &[CS_6_EXTRA]),
        ),
        (
            "CF_8",
            3,
            ShellKind::Cyclic,
            "LF_7 closed by {a0,a6,a2,a7}",
            with(LF_6, &[LF_7_EXTRA, CF_8_EXTRA]),
        ),
    ];
    raw.into_iter()
        .map(|(name, dim, kind, source, complex)| CatalogEntry {
            name,
            dim,
            kind,
            source,
            canonical: canonical_form(&complex).expect("small fixture"),
            complex,
        })
        .collect()
}

/// Every named exceptional shell.
pub fn entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(build_entries)
}

pub fn get(name: &str) -> Option<&'static CatalogEntry> {
    entries().iter().find(|e| e.name == name)
}

/// Name of the catalogued shell of the given dimension and kind with this canonical form.
pub fn name_of(dim: usize, kind: ShellKind, form: &CanonicalForm) -> Option<&'static str> {
    entries()
        .iter()
        .find(|e| e.dim == dim && e.kind == kind && &e.canonical == form)
        .map(|e| e.name)
}

/// Resolves a catalogue name or a wheel-family name such as `3CW_6` / `2LW_4`.
pub fn lookup(name: &str) -> Result<SimplicialComplex> {
    if let Some(e) = get(name) {
        return Ok(e.complex.clone());
    }
    parse_family(name)
        .ok_or_else(|| Error::BadParameter(format!("unknown shell name {name:?}")))
        .and_then(|(dim, kind, k)| wheel(dim, kind, k))
}

fn parse_family(name: &str) -> Option<(usize, ShellKind, usize)> {
    let (head, k) = name.split_once("W_")?;
    let k: usize = k.parse().ok()?;
    let (dim, kind) = head.split_at(head.len().checked_sub(1)?);
    let kind = match kind {
        "L" => ShellKind::Lineal,
        "C" => ShellKind::Cyclic,
        _ => return None,
    };
    Some((dim.parse().ok()?, kind, k))
}

/// Alternative presentations of catalogued shells, obtained by gluing in a
/// different order: `(class name, complex)`.
pub fn alternate_presentations() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        (
            "3LE_4",
            fl(&[
                &["v0", "v1", "t", "b"],
                &["v1", "v2", "t", "b"],
                &["v2", "v3", "t", "b"],
                &["v2", "v3", "t", "v0"],
            ]),
        ),
        ("LF_7", with(LE3_4, &[LE3_5_EXTRA, LE3_6_EXTRA, &["b'", "v", "c", "b"]])),
    ]
}

/// The stated isomorphism from the `a_i` presentation of LF_7 onto its
/// presentation as 3LE_6 glued with `{b',v,c,b}`.
pub fn lf7_isomorphism() -> VertexMap {
    let pairs = [
        ("a0", "v"),
        ("a1", "c"),
        ("a2", "b'"),
        ("a3", "a'"),
        ("a4", "z"),
        ("a5", "a"),
        ("a6", "b"),
        ("a7", "d"),
    ];
    VertexMap::new(
        pairs
            .iter()
            .map(|(x, y)| (Vertex::new(*x).unwrap(), Vertex::new(*y).unwrap())),
    )
    .expect("injective")
}
