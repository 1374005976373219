//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` are expected to fail; the process
//! exits non-zero if any other criterion fails or a known failure passes.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use facetmatrix::catalog;
use facetmatrix::enumerate::{class_name, Levels};
use facetmatrix::reconstruct::extended_image;
use facetmatrix::validate::Check;
use facetmatrix::{
    are_isomorphic, build_complex, canonical_form, certify, detect_shell, enumerate_cyclic_shells,
    enumerate_lineal_shells, find_intersection_preserving_maps, generate_standard, intersection_matrix,
    reconstruct_isomorphism, surface_is_orientable, validate_triangulation, wheel, ShellKind, Simplex,
    SimplicialComplex, StandardKind, Vertex, VertexMap,
};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

/// The 3-facet book {X∪a, X∪b, X∪c} is a cyclic shell missing from the
/// published cyclic classifications in dimensions 2 and 3.
const KNOWN_FAILURES: &[u32] = &[2, 3];

type Outcome = Result<String, String>;

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{what} took {took:?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn standard_triangulations() -> Vec<(String, SimplicialComplex)> {
    let mut out = vec![(
        "boundary_4_simplex".to_owned(),
        generate_standard(StandardKind::SimplexBoundary4).unwrap(),
    )];
    for p in 3..=5 {
        for q in p..=5 {
            out.push((
                format!("cycle_join({p},{q})"),
                generate_standard(StandardKind::CycleJoin(p, q)).unwrap(),
            ));
        }
    }
    out.push((
        "cross_polytope_3".to_owned(),
        generate_standard(StandardKind::CrossPolytope3).unwrap(),
    ));
    out
}

fn random_relabeling(c: &SimplicialComplex, rng: &mut StdRng) -> VertexMap {
    let mut targets: Vec<usize> = (0..c.vertex_count()).collect();
    targets.shuffle(rng);
    VertexMap::new(
        c.vertices()
            .iter()
            .zip(targets)
            .map(|(v, t)| (v.clone(), Vertex::new(format!("w{t}")).unwrap())),
    )
    .unwrap()
}

/// Names every class; unnamed classes are an error. Returns per-k names.
fn name_levels(n: usize, kind: ShellKind, levels: &Levels) -> Result<BTreeMap<usize, Vec<String>>, String> {
    let mut out = BTreeMap::new();
    let mut unnamed = Vec::new();
    for (&k, classes) in levels {
        let mut names = Vec::new();
        for class in classes {
            match class_name(n, kind, class) {
                Some(name) => {
                    if let Some(entry) = catalog::get(&name) {
                        if are_isomorphic(&class.complex(), &entry.complex).unwrap().is_none() {
                            return Err(format!("class named {name} is not isomorphic to its fixture"));
                        }
                    }
                    names.push(name);
                }
                None => unnamed.push(format!("k={k}: {}", class.canonical)),
            }
        }
        out.insert(k, names);
    }
    if unnamed.is_empty() {
        Ok(out)
    } else {
        Err(format!("unnamed classes: {}", unnamed.join("; ")))
    }
}

fn exceptional(n: usize, kind: ShellKind, names: &BTreeMap<usize, Vec<String>>) -> Result<BTreeSet<String>, String> {
    let family = format!("{n}{}W_", if kind == ShellKind::Lineal { 'L' } else { 'C' });
    for (&k, level) in names {
        let wheel_name = format!("{family}{k}");
        if !level.contains(&wheel_name) {
            return Err(format!("{wheel_name} not enumerated"));
        }
    }
    Ok(names
        .values()
        .flatten()
        .filter(|s| !s.starts_with(&family))
        .cloned()
        .collect())
}

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let levels = enumerate_lineal_shells(3, 10).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60), "enumeration")?;
    let counts: BTreeMap<usize, usize> = levels.iter().map(|(&k, v)| (k, v.len())).collect();
    let expected: BTreeMap<usize, usize> =
        [(2, 1), (3, 1), (4, 2), (5, 3), (6, 3), (7, 2), (8, 2), (9, 1), (10, 1)].into();
    if counts != expected {
        return Err(format!("counts {counts:?}, expected {expected:?}"));
    }
    let names = name_levels(3, ShellKind::Lineal, &levels)?;
    let exc = exceptional(3, ShellKind::Lineal, &names)?;
    let want = set(&["3LE_4", "3LE_5", "3LE_6", "LS_5", "LF_6", "LF_7", "LF_8"]);
    if exc != want {
        return Err(format!("exceptional classes {exc:?}, expected {want:?}"));
    }
    Ok(format!("counts {counts:?} in {:?}", start.elapsed()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let levels = enumerate_cyclic_shells(3, 10).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(60), "enumeration")?;
    let counts: BTreeMap<usize, usize> = levels.iter().map(|(&k, v)| (k, v.len())).collect();
    let names = name_levels(3, ShellKind::Cyclic, &levels).map_err(|e| format!("{e} (counts {counts:?})"))?;
    let exc = exceptional(3, ShellKind::Cyclic, &names)?;
    let want = set(&["3CE_5", "3CE_6", "CS_6", "CF_8"]);
    if exc != want {
        return Err(format!("exceptional classes {exc:?}, expected {want:?}"));
    }
    Ok(format!("counts {counts:?} in {:?}", start.elapsed()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut exc = BTreeSet::new();
    let mut problems = Vec::new();
    for kind in [ShellKind::Lineal, ShellKind::Cyclic] {
        let levels = match kind {
            ShellKind::Lineal => enumerate_lineal_shells(2, 8),
            ShellKind::Cyclic => enumerate_cyclic_shells(2, 8),
        }
        .map_err(|e| e.to_string())?;
        match name_levels(2, kind, &levels).and_then(|names| exceptional(2, kind, &names)) {
            Ok(e) => exc.extend(e),
            Err(e) => problems.push(format!("{kind}: {e}")),
        }
    }
    within(start, Duration::from_secs(10), "enumeration")?;
    if !problems.is_empty() {
        return Err(problems.join("; "));
    }
    let want = set(&["LE_4", "LE_5", "LE_6", "CE_5", "CE_6"]);
    if exc != want {
        return Err(format!("exceptional classes {exc:?}, expected {want:?}"));
    }
    Ok(format!("{exc:?} in {:?}", start.elapsed()))
}

fn criterion_4() -> Outcome {
    for (name, k) in [("CS_6", 6), ("CF_8", 8)] {
        let exc = &catalog::get(name).unwrap().complex;
        let w = wheel(3, ShellKind::Cyclic, k).unwrap();
        let order_of = |c: &SimplicialComplex| detect_shell(c).unwrap().expect("shell").order;
        let me = intersection_matrix(exc, Some(&order_of(exc))).unwrap();
        let mw = intersection_matrix(&w, Some(&order_of(&w))).unwrap();
        if me.entries != mw.entries {
            return Err(format!(
                "{name} and 3CW_{k} have different matrices under witness orders"
            ));
        }
        if are_isomorphic(exc, &w).unwrap().is_some() {
            return Err(format!("{name} is isomorphic to 3CW_{k}"));
        }
    }
    Ok("CS_6 ~ 3CW_6 and CF_8 ~ 3CW_8 share matrices, not isomorphic".into())
}

/// Runs criterion 5 and collects the data criterion 6 inspects.
fn round_trips() -> Result<(usize, Vec<String>, Duration), String> {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut runs = 0;
    let mut uniqueness = Vec::new();
    for (name, t) in standard_triangulations() {
        for trial in 0..20 {
            let relabel = random_relabeling(&t, &mut rng);
            let u = t.relabel(&relabel).unwrap();
            let f = find_intersection_preserving_maps(&t, &u, Some(1))
                .pop()
                .ok_or_else(|| format!("{name} #{trial}: no map found"))?;
            let report = reconstruct_isomorphism(&t, &u, &f);
            let phi = match (&report.phi, report.phi_verified) {
                (Some(phi), true) => phi,
                _ => return Err(format!("{name} #{trial}: failed at {:?}", report.failure_stage)),
            };
            if !certify(&t, &u, phi, &f) {
                return Err(format!("{name} #{trial}: certificate rejected"));
            }
            let auto = phi.then(&relabel.inverse()).unwrap();
            if !auto.is_isomorphism(&t, &t) {
                return Err(format!(
                    "{name} #{trial}: phi composed with the inverse relabeling is not an automorphism"
                ));
            }
            for v in t.vertices() {
                let img = extended_image(&f, &Simplex::new([v.clone()]).unwrap()).unwrap();
                if img != [phi.get(v).unwrap().clone()] {
                    uniqueness.push(format!("{name} #{trial}: F({{{}}}) = {img:?}", v.as_str()));
                }
            }
            runs += 1;
        }
    }
    Ok((runs, uniqueness, start.elapsed()))
}

fn criterion_5(rt: &Result<(usize, Vec<String>, Duration), String>) -> Outcome {
    let (runs, _, took) = rt.as_ref().map_err(Clone::clone)?;
    if *took > Duration::from_secs(120) {
        return Err(format!("took {took:?}"));
    }
    Ok(format!("{runs}/{runs} round trips verified in {took:?}"))
}

fn criterion_6(rt: &Result<(usize, Vec<String>, Duration), String>) -> Outcome {
    let (runs, bad, _) = rt.as_ref().map_err(|e| format!("round trips did not complete: {e}"))?;
    if bad.is_empty() {
        Ok(format!("F({{v}}) = {{phi(v)}} in all {runs} runs"))
    } else {
        Err(bad.join("; "))
    }
}

/// The sub-check a non-triangulation should fail first, computed directly.
fn expected_failure(c: &SimplicialComplex) -> Check {
    if c.pure_rank() != Some(4) {
        return Check::Dimension;
    }
    let mut degree: BTreeMap<Vec<&str>, usize> = BTreeMap::new();
    for f in c.facets() {
        for skip in 0..4 {
            let tri: Vec<&str> = f
                .vertices()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, v)| v.as_str())
                .collect();
            *degree.entry(tri).or_default() += 1;
        }
    }
    if degree.values().any(|&d| d != 2) {
        Check::PseudoManifold
    } else {
        Check::VertexLinks
    }
}

fn criterion_7() -> Outcome {
    for (name, t) in standard_triangulations() {
        let r = validate_triangulation(&t);
        if !r.verdict {
            return Err(format!("{name} rejected: {:?}", r.failed_checks()));
        }
    }
    let mut negatives: Vec<(String, SimplicialComplex)> = vec![(
        "tetrahedron".into(),
        build_complex(&[vec!["a", "b", "c", "d"]]).unwrap(),
    )];
    negatives.extend(
        catalog::entries()
            .iter()
            .map(|e| (e.name.to_owned(), e.complex.clone())),
    );
    for dim in [2, 3] {
        for kind in [ShellKind::Lineal, ShellKind::Cyclic] {
            for k in kind.min_facets()..=8 {
                negatives.push((
                    facetmatrix::shells::family_name(dim, kind, k),
                    wheel(dim, kind, k).unwrap(),
                ));
            }
        }
    }
    for (name, c) in &negatives {
        let r = validate_triangulation(c);
        let want = expected_failure(c);
        if r.verdict || r.first_failure() != Some(want) {
            return Err(format!(
                "{name}: verdict {} first failure {:?}, expected {want:?}",
                r.verdict,
                r.first_failure()
            ));
        }
    }
    Ok(format!(
        "{} triangulations accepted, {} non-triangulations rejected at the right check",
        standard_triangulations().len(),
        negatives.len()
    ))
}

fn criterion_8() -> Outcome {
    for name in ["CE_5", "CE_6"] {
        if surface_is_orientable(&catalog::get(name).unwrap().complex).map_err(|e| e.to_string())? {
            return Err(format!("{name} reported orientable"));
        }
    }
    let tet = build_complex(&[
        vec!["1", "2", "3"],
        vec!["1", "2", "4"],
        vec!["1", "3", "4"],
        vec!["2", "3", "4"],
    ])
    .unwrap();
    if !surface_is_orientable(&tet).map_err(|e| e.to_string())? {
        return Err("tetrahedron boundary reported non-orientable".into());
    }
    Ok("CE_5, CE_6 non-orientable; tetrahedron boundary orientable".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut fixtures: Vec<(String, SimplicialComplex)> = catalog::entries()
        .iter()
        .map(|e| (e.name.to_owned(), e.complex.clone()))
        .collect();
    fixtures.extend(
        catalog::alternate_presentations()
            .into_iter()
            .map(|(n, c)| (format!("{n}'"), c)),
    );
    for (dim, k) in [(3, 6), (3, 8), (2, 5)] {
        fixtures.push((format!("{dim}CW_{k}"), wheel(dim, ShellKind::Cyclic, k).unwrap()));
    }
    let forms: Vec<_> = fixtures.iter().map(|(_, c)| canonical_form(c).unwrap()).collect();
    let mut pairs = 0;
    for i in 0..fixtures.len() {
        for j in 0..fixtures.len() {
            let iso = are_isomorphic(&fixtures[i].1, &fixtures[j].1).unwrap().is_some();
            if iso != (forms[i] == forms[j]) {
                return Err(format!(
                    "{} vs {}: isomorphic {iso}, forms equal {}",
                    fixtures[i].0, fixtures[j].0, !iso
                ));
            }
            pairs += 1;
        }
    }
    within(start, Duration::from_secs(60), "cross-product")?;
    Ok(format!("{pairs} pairs over {} fixtures agree", fixtures.len()))
}

fn main() {
    let rt = round_trips();
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "lineal 3-shell classification", criterion_1()),
        (2, "cyclic 3-shell classification", criterion_2()),
        (3, "2-shell classification", criterion_3()),
        (4, "matrix coincidence", criterion_4()),
        (5, "reconstruction round trip", criterion_5(&rt)),
        (6, "uniqueness of vertex images", criterion_6(&rt)),
        (7, "validation suite", criterion_7()),
        (8, "non-orientability", criterion_8()),
        (9, "oracle agreement", criterion_9()),
    ];
    let mut unexpected = Vec::new();
    for (n, what, outcome) in &results {
        let known = KNOWN_FAILURES.contains(n);
        match outcome {
            Ok(detail) => {
                println!("PASS criterion {n} ({what}): {detail}");
                if known {
                    unexpected.push(format!("criterion {n} passed but is listed as a known failure"));
                }
            }
            Err(detail) => {
                let tag = if known { " [known]" } else { "" };
                println!("FAIL criterion {n} ({what}){tag}: {detail}");
                if !known {
                    unexpected.push(format!("criterion {n} failed"));
                }
            }
        }
    }
    let passed = results.iter().filter(|r| r.2.is_ok()).count();
    println!("{passed}/{} criteria passed", results.len());
    if !unexpected.is_empty() {
        eprintln!("{}", unexpected.join("\n"));
        std::process::exit(1);
    }
}
