use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use facetmatrix::catalog;
use facetmatrix::enumerate::verify_classification;
use facetmatrix::io::{parse_any, to_json, to_text};
use facetmatrix::{
    certify, detect_shell, find_intersection_preserving_maps, generate_standard, intersection_matrix,
    reconstruct_isomorphism, validate_triangulation, Error, FacetBijection, ReconstructionReport, ShellKind,
    SimplicialComplex, StandardKind,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "facetmatrix",
    version,
    about = "Facet intersection matrices of 3-manifold triangulations"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lineal,
    Cyclic,
}

impl From<Kind> for ShellKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Lineal => ShellKind::Lineal,
            Kind::Cyclic => ShellKind::Cyclic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    SimplexBoundary,
    CycleJoin,
    CrossPolytope,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a complex triangulates a closed 3-manifold.
    Validate { file: PathBuf },
    /// Print the facet intersection matrix.
    Matrix { file: PathBuf },
    /// Search for intersection-preserving facet maps from A to B.
    Match {
        a: PathBuf,
        b: PathBuf,
        /// Maximum number of maps to report.
        #[arg(long, default_value_t = 1, conflicts_with = "all")]
        limit: usize,
        /// Report every map.
        #[arg(long)]
        all: bool,
    },
    /// Recover a vertex isomorphism from a facet map.
    Reconstruct {
        a: PathBuf,
        b: PathBuf,
        /// JSON list of [source index, target index] pairs over sorted facets.
        #[arg(long, required_unless_present = "search", conflicts_with = "search")]
        map: Option<PathBuf>,
        /// Use the first map found by the matcher.
        #[arg(long)]
        search: bool,
    },
    /// Detect a lineal or cyclic shell.
    Classify { file: PathBuf },
    /// Enumerate shells up to isomorphism.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max_facets: usize,
    },
    /// Print a named shell, or list the catalogue when no name is given.
    Catalog { name: Option<String> },
    /// Generate a standard triangulated 3-sphere.
    Gen {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value_t = 3)]
        q: usize,
    },
}

struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: 2,
            msg: msg.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::BadLabel(_) | Error::EmptyInput => 3,
            Error::BadParameter(_) | Error::BadOrder => 2,
            _ => 1,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read_complex(path: &Path) -> Result<(Option<String>, SimplicialComplex), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let named = parse_any(&text).map_err(|e| {
        let mut f = Failure::from(e);
        f.code = 3;
        f.msg = format!("{}: {}", path.display(), f.msg);
        f
    })?;
    Ok((named.name, named.complex))
}

fn read_map(path: &Path, a: &SimplicialComplex, b: &SimplicialComplex) -> Result<FacetBijection, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let pairs: Vec<(usize, usize)> = serde_json::from_str(&text).map_err(|e| Failure {
        code: 3,
        msg: format!("{}: {e}", path.display()),
    })?;
    FacetBijection::from_pairs(a, b, &pairs).map_err(|e| Failure {
        code: 3,
        msg: format!("{}: {e}", path.display()),
    })
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serialisable"));
}

fn no_csv(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::usage(format!(
            "--format csv is only available for matrix, not {command}"
        )));
    }
    Ok(())
}

fn validate(format: Format, file: &Path) -> Outcome {
    no_csv(format, "validate")?;
    let (_, c) = read_complex(file)?;
    let report = validate_triangulation(&c);
    if format == Format::Json {
        let mut v = serde_json::to_value(&report).expect("serialisable");
        v["failed_checks"] = serde_json::to_value(report.failed_checks()).expect("serialisable");
        print_json(&v);
    } else {
        println!("verdict: {}", if report.verdict { "valid" } else { "invalid" });
        for check in report.failed_checks() {
            println!("failed: {}", serde_json::to_value(check).unwrap().as_str().unwrap());
        }
        for t in &report.bad_triangles {
            println!("triangle {} lies in {} facets", t.triangle, t.count);
        }
        for r in report.vertex_link_results.iter().filter(|r| !r.surface.is_sphere) {
            let s = &r.surface;
            println!(
                "link of {}: closed {} connected {} euler {}",
                r.vertex, s.closed, s.connected, s.euler
            );
        }
        for r in report.edge_link_results.iter().filter(|r| !r.cyclic) {
            println!("star of {} ({} facets) is not a cycle", r.edge, r.star_size);
        }
    }
    Ok(report.verdict)
}

fn matrix(format: Format, file: &Path) -> Outcome {
    let (_, c) = read_complex(file)?;
    let m = intersection_matrix(&c, None)?;
    match format {
        Format::Csv => print!("{}", m.to_csv()),
        Format::Json => print_json(&serde_json::to_value(&m).expect("serialisable")),
        Format::Text => {
            for (i, f) in m.facet_order.iter().enumerate() {
                println!("{i}: {f}");
            }
            for row in &m.entries {
                println!("{}", row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            }
        }
    }
    Ok(true)
}

fn map_json(f: &FacetBijection, a: &SimplicialComplex, b: &SimplicialComplex) -> Value {
    // Indices over the sorted facet lists, as accepted by `reconstruct --map`.
    let idx = |c: &SimplicialComplex, s| c.facets().iter().position(|x| x == s).expect("facet");
    let mut pairs: Vec<(usize, usize)> = f.iter().map(|(x, y)| (idx(a, x), idx(b, y))).collect();
    pairs.sort_unstable();
    json!(pairs)
}

fn run_match(format: Format, a: &Path, b: &Path, limit: usize, all: bool) -> Outcome {
    no_csv(format, "match")?;
    let (_, ca) = read_complex(a)?;
    let (_, cb) = read_complex(b)?;
    let maps = find_intersection_preserving_maps(&ca, &cb, if all { None } else { Some(limit) });
    if format == Format::Json {
        print_json(&Value::Array(maps.iter().map(|f| map_json(f, &ca, &cb)).collect()));
    } else if maps.is_empty() {
        println!("none");
    } else {
        for (n, f) in maps.iter().enumerate() {
            if n > 0 {
                println!();
            }
            for (x, y) in f.iter() {
                println!("{x} -> {y}");
            }
        }
    }
    Ok(!maps.is_empty())
}

fn stage_name(r: &ReconstructionReport) -> String {
    r.failure_stage
        .map(|s| serde_json::to_value(s).unwrap().as_str().unwrap().to_owned())
        .unwrap_or_else(|| "none".into())
}

fn reconstruct(format: Format, a: &Path, b: &Path, map: Option<&Path>) -> Outcome {
    no_csv(format, "reconstruct")?;
    let (_, ca) = read_complex(a)?;
    let (_, cb) = read_complex(b)?;
    let f = match map {
        Some(path) => read_map(path, &ca, &cb)?,
        None => match find_intersection_preserving_maps(&ca, &cb, Some(1)).pop() {
            Some(f) => f,
            None => {
                if format == Format::Json {
                    print_json(&json!({ "map_found": false, "phi_verified": false }));
                } else {
                    println!("no intersection-preserving map");
                }
                return Ok(false);
            }
        },
    };
    let report = reconstruct_isomorphism(&ca, &cb, &f);
    let certified = report.phi.as_ref().is_some_and(|phi| certify(&ca, &cb, phi, &f));
    if format == Format::Json {
        let mut v = serde_json::to_value(&report).expect("serialisable");
        v["certified"] = json!(certified);
        v["map"] = map_json(&f, &ca, &cb);
        print_json(&v);
        return Ok(report.phi_verified);
    }
    let yes = |b: bool| if b { "ok" } else { "failed" };
    println!(
        "validation: source {}, target {}",
        yes(report.source_valid),
        yes(report.target_valid)
    );
    println!("intersection preserving: {}", yes(report.intersection_preserving));
    if let Some(r) = report.rank_bijection_ok {
        println!(
            "rank bijections: facets {}, triangles {}, edges {}",
            yes(r.rank4),
            yes(r.rank3),
            yes(r.rank2)
        );
    }
    if report.rank_bijection_ok.is_some() {
        println!("singletons: {}", if report.all_singletons { "all" } else { "not all" });
    }
    for v in &report.sublemma_violations {
        println!("violation at {} in {}: {:?}", v.vertex, v.face, v.lemma);
    }
    match &report.phi {
        Some(phi) => {
            println!("phi: {}", if report.phi_verified { "verified" } else { "rejected" });
            println!("certificate: {}", yes(certified));
            for (v, w) in phi.pairs() {
                println!("  {v}\t{w}");
            }
        }
        None => println!("phi: none"),
    }
    if !report.phi_verified {
        match &report.offending_vertex {
            Some(v) => println!("failed at {} (vertex {v})", stage_name(&report)),
            None => println!("failed at {}", stage_name(&report)),
        }
    }
    Ok(report.phi_verified)
}

fn classify(format: Format, file: &Path) -> Outcome {
    no_csv(format, "classify")?;
    let (_, c) = read_complex(file)?;
    let witness = detect_shell(&c)?;
    match (&witness, format) {
        (_, Format::Json) => print_json(&serde_json::to_value(&witness).expect("serialisable")),
        (None, _) => println!("not a shell"),
        (Some(w), _) => {
            println!(
                "{} {}-shell with {} facets: {}",
                w.kind,
                w.dim,
                w.facet_count(),
                w.catalog_id.as_deref().unwrap_or("unnamed")
            );
            for f in &w.order {
                println!("{f}");
            }
        }
    }
    Ok(witness.is_some())
}

fn enumerate(format: Format, dim: usize, kind: Kind, max_facets: usize) -> Outcome {
    no_csv(format, "enumerate")?;
    let report = verify_classification(dim, kind.into(), max_facets)?;
    if format == Format::Json {
        let levels: Vec<Value> = report
            .levels
            .iter()
            .map(|l| {
                json!({
                    "k": l.k,
                    "count": l.count,
                    "canonical_forms": l.classes.iter().map(|c| c.canonical.to_string()).collect::<Vec<_>>(),
                    "names": l.classes.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&json!({
            "n": report.n,
            "kind": report.kind,
            "max_facets": report.k_max,
            "levels": levels,
            "unnamed": report.unnamed.iter().map(|u| json!({"k": u.k, "canonical_form": u.canonical.to_string()})).collect::<Vec<_>>(),
            "missing": report.missing,
            "complete": report.ok,
        }));
    } else {
        println!("{} {}-shells up to {} facets", report.kind, report.n, report.k_max);
        for l in &report.levels {
            let names: Vec<String> = l
                .classes
                .iter()
                .map(|c| c.name.clone().unwrap_or_else(|| format!("unnamed [{}]", c.canonical)))
                .collect();
            println!("k={}: {} ({})", l.k, l.count, names.join(", "));
        }
        if !report.missing.is_empty() {
            println!("missing: {}", report.missing.join(", "));
        }
    }
    Ok(true)
}

fn show_catalog(format: Format, name: Option<&str>) -> Outcome {
    no_csv(format, "catalog")?;
    let Some(name) = name else {
        if format == Format::Json {
            print_json(&serde_json::to_value(catalog::entries()).expect("serialisable"));
        } else {
            for e in catalog::entries() {
                println!(
                    "{}\t{} {}-shell, {} facets\t{}",
                    e.name,
                    e.kind,
                    e.dim,
                    e.facet_count(),
                    e.source
                );
            }
        }
        return Ok(true);
    };
    let c = catalog::lookup(name)?;
    emit_complex(format, &c, Some(name));
    Ok(true)
}

fn emit_complex(format: Format, c: &SimplicialComplex, name: Option<&str>) {
    if format == Format::Json {
        print_json(&to_json(c, name));
    } else {
        print!("{}", to_text(c, name));
    }
}

fn gen(format: Format, construction: Construction, p: usize, q: usize) -> Outcome {
    no_csv(format, "gen")?;
    let (kind, name) = match construction {
        Construction::SimplexBoundary => (StandardKind::SimplexBoundary4, "simplex_boundary".to_owned()),
        Construction::CycleJoin => (StandardKind::CycleJoin(p, q), format!("cycle_join({p},{q})")),
        Construction::CrossPolytope => (StandardKind::CrossPolytope3, "cross_polytope_3".to_owned()),
    };
    let c = generate_standard(kind)?;
    emit_complex(format, &c, Some(&name));
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Validate { file } => validate(format, &file),
        Command::Matrix { file } => matrix(format, &file),
        Command::Match { a, b, limit, all } => run_match(format, &a, &b, limit, all),
        Command::Reconstruct { a, b, map, search: _ } => reconstruct(format, &a, &b, map.as_deref()),
        Command::Classify { file } => classify(format, &file),
        Command::Enumerate { dim, kind, max_facets } => enumerate(format, dim, kind, max_facets),
        Command::Catalog { name } => show_catalog(format, name.as_deref()),
        Command::Gen { construction, p, q } => gen(format, construction, p, q),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
