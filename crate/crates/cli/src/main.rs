//! `uqsgd`: builds face algebras and UQSGds of quiver path algebras and
//! prints one deterministic JSON report per run.
//!
//! Exit status: 0 when every check passes, 1 on a verification failure,
//! 2 on unreadable input or bad usage, 3 on input the constructions do not
//! support (non-quadratic relations, wrong quiver shape).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use uqsgd_core::coaction::{
    canonical_coaction, check_comodule_algebra, check_structure_lemmas, check_transposed,
    coaction_to_doc, parse_coaction, path_algebra_presentation, search_base_iso, verify_base_iso,
    CoactionError, CoactionSpec, Side,
};
use uqsgd_core::face::{face_idempotents, CounitalSide, FaceElement};
use uqsgd_core::linalg::Subspace;
use uqsgd_core::path_algebra::{
    parse_relations, quadratic_data, quadratic_dual, relations_to_doc, GradedAlgebra,
    HomogeneousIdeal, PathAlgebraError, PathQuotient,
};
use uqsgd_core::quiver::{parse_quiver, Quiver};
use uqsgd_core::report::{Check, Report};
use uqsgd_core::uqsgd::{
    build_uqsgd, check_quadratic_dualities, face_vectors, UqsgdError, UqsgdSide,
};
use uqsgd_core::wba::{check_axioms, from_face_algebra, GradedWba, WbaError};

const FORMAT_VERSION: u32 = 1;
const DEFAULT_MAX_DEGREE: usize = 4;

#[derive(Parser, Debug)]
#[command(
    name = "uqsgd",
    version,
    about = "Face algebras and universal quantum linear semigroupoids of quivers"
)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    #[arg(long)]
    quiver: PathBuf,
    /// Homogeneous relations generating the ideal I of kQ/I.
    #[arg(long)]
    relations: Option<PathBuf>,
    /// Coaction document for `coact`.
    #[arg(long)]
    coaction: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = SideArg::Trans)]
    side: SideArg,
    /// Truncation degree [default: 4].
    #[arg(long)]
    max_degree: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render the report as text instead of JSON.
    #[arg(long)]
    human: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Build the face algebra of a quiver and check the weak bialgebra axioms.
    Face,
    /// Check the face algebra together with its canonical coactions on the path algebra.
    Verify,
    /// Check a coaction on a path algebra (the canonical one unless --coaction is given).
    Coact,
    /// Build the UQSGd of a quadratic algebra.
    Uqsgd,
    /// Build the quadratic dual and check the duality isomorphisms.
    Dual,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Face => "face",
            Command::Verify => "verify",
            Command::Coact => "coact",
            Command::Uqsgd => "uqsgd",
            Command::Dual => "dual",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SideArg {
    Left,
    Right,
    Trans,
}

impl From<SideArg> for UqsgdSide {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Left => UqsgdSide::Left,
            SideArg::Right => UqsgdSide::Right,
            SideArg::Trans => UqsgdSide::Trans,
        }
    }
}

#[derive(Debug)]
enum Failure {
    /// Unreadable or malformed input, or bad flag combination.
    Input(String),
    /// Well-formed input outside what the constructions handle.
    Unsupported(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Unsupported(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Unsupported(m) => m,
        }
    }
}

impl From<PathAlgebraError> for Failure {
    fn from(e: PathAlgebraError) -> Self {
        match e {
            PathAlgebraError::NonQuadratic { .. } | PathAlgebraError::UnsupportedShape(_) => {
                Failure::Unsupported(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<CoactionError> for Failure {
    fn from(e: CoactionError) -> Self {
        match e {
            CoactionError::UnsupportedBase(_) => Failure::Unsupported(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// One run's output. `body` holds the command-specific fields.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Document {
    format_version: u32,
    command: &'static str,
    max_degree: usize,
    status: &'static str,
    #[serde(flatten)]
    body: serde_json::Map<String, Value>,
    reports: Vec<Report>,
}

struct Outcome {
    body: serde_json::Map<String, Value>,
    reports: Vec<Report>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok((max, outcome)) => {
            let passed = outcome.reports.iter().all(Report::passed);
            let doc = Document {
                format_version: FORMAT_VERSION,
                command: args.command.name(),
                max_degree: max,
                status: if passed { "pass" } else { "fail" },
                body: outcome.body,
                reports: outcome.reports,
            };
            let text = if args.human {
                render_human(&doc)
            } else {
                render_json(&doc)
            };
            if let Err(e) = emit(args.out.as_deref(), &text) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn render_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

fn render_human(doc: &Document) -> String {
    let mut s = format!(
        "{} (max degree {}): {}\n",
        doc.command,
        doc.max_degree,
        doc.status.to_uppercase()
    );
    for (k, v) in &doc.body {
        match v {
            Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
                s.push_str(&format!("{k}:\n"));
                for item in items {
                    s.push_str(&format!("  {}\n", item.as_str().unwrap_or_default()));
                }
            }
            _ => s.push_str(&format!("{k}: {v}\n")),
        }
    }
    for r in &doc.reports {
        s.push_str(&r.render());
    }
    s
}

fn emit(out: Option<&Path>, text: &str) -> std::io::Result<()> {
    match out {
        Some(p) => fs::write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<Arc<Quiver>, Failure> {
    parse_quiver(&read(path)?)
        .map(Arc::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_ideal(q: &Arc<Quiver>, path: Option<&Path>) -> Result<HomogeneousIdeal, Failure> {
    let Some(path) = path else {
        return Ok(HomogeneousIdeal::zero(q.clone()));
    };
    let gens = parse_relations(q, &read(path)?)?;
    Ok(HomogeneousIdeal::new(q.clone(), gens)?)
}

fn run(args: &Args) -> Result<(usize, Outcome), Failure> {
    let q = load_quiver(&args.quiver)?;
    let max = args.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
    if matches!(args.command, Command::Uqsgd | Command::Dual) {
        if max < 2 {
            return Err(Failure::Input(format!(
                "--max-degree must be at least 2, got {max}"
            )));
        }
        if args.relations.is_none() {
            return Err(Failure::Input("--relations is required".into()));
        }
    }
    if args.coaction.is_some() && args.command != Command::Coact {
        return Err(Failure::Input("--coaction only applies to `coact`".into()));
    }
    match args.command {
        Command::Face => Ok((max, run_face(&q, max))),
        Command::Verify => run_verify(&q, max).map(|o| (max, o)),
        Command::Coact => run_coact(&q, args),
        Command::Uqsgd => run_uqsgd(&q, args, max).map(|o| (max, o)),
        Command::Dual => run_dual(&q, args, max).map(|o| (max, o)),
    }
}

fn rendered(elems: &[FaceElement]) -> Value {
    elems.iter().map(ToString::to_string).collect()
}

fn subalgebra_basis(h: &GradedWba, side: CounitalSide) -> Value {
    h.counital_subalgebra(side)
        .basis()
        .iter()
        .map(|v| h.render_element(0, v))
        .collect()
}

fn run_face(q: &Arc<Quiver>, max: usize) -> Outcome {
    let h = from_face_algebra(q, max);
    let (source_idem, target_idem) = face_idempotents(q);
    let mut body = serde_json::Map::new();
    body.insert("dims".into(), json!(h.dims()));
    body.insert(
        "sourceSubalgebra".into(),
        subalgebra_basis(&h, CounitalSide::Source),
    );
    body.insert(
        "targetSubalgebra".into(),
        subalgebra_basis(&h, CounitalSide::Target),
    );
    body.insert("sourceIdempotents".into(), rendered(&source_idem));
    body.insert("targetIdempotents".into(), rendered(&target_idem));
    Outcome {
        body,
        reports: vec![check_axioms(&h)],
    }
}

fn idempotents_span_check(h: &GradedWba, q: &Arc<Quiver>) -> Report {
    let (source_idem, target_idem) = face_idempotents(q);
    let mut r = Report::new("counital subalgebras");
    for (side, idems, id) in [
        (
            CounitalSide::Source,
            &source_idem,
            "counital.source-spanned-by-idempotents",
        ),
        (
            CounitalSide::Target,
            &target_idem,
            "counital.target-spanned-by-idempotents",
        ),
    ] {
        let span = Subspace::span(h.dim(0), &face_vectors(q, idems));
        r.push(Check::single(
            id,
            &span == h.counital_subalgebra(side),
            || vec![format!("{side:?}")],
        ));
    }
    r
}

fn coaction_reports(
    c: &CoactionSpec,
    h: &GradedWba,
    q: &Arc<Quiver>,
    algebra: &GradedAlgebra,
    max: usize,
) -> Result<(Vec<Report>, Option<Vec<String>>), Failure> {
    let mut reports = vec![check_comodule_algebra(c, h, algebra, max)?];
    let iso = search_base_iso(c, h)?;
    let rendered_iso = iso
        .as_ref()
        .map(|iso| iso.iter().map(|v| h.render_element(0, v)).collect());
    match &iso {
        Some(iso) => reports.push(verify_base_iso(c, h, iso)),
        None => {
            let mut r = Report::new("base isomorphism");
            r.push(Check::single("base-iso.found", false, || {
                vec!["no bijection of primitive idempotents".into()]
            }));
            reports.push(r);
        }
    }
    reports.push(check_structure_lemmas(c, h, q, iso.as_deref())?);
    Ok((reports, rendered_iso))
}

fn run_verify(q: &Arc<Quiver>, max: usize) -> Result<Outcome, Failure> {
    let h = from_face_algebra(q, max);
    let algebra = path_algebra_presentation(q, max);
    let mut reports = vec![check_axioms(&h), idempotents_span_check(&h, q)];
    let mut body = serde_json::Map::new();
    body.insert("dims".into(), json!(h.dims()));
    let left = canonical_coaction(q, max, Side::Left);
    let right = canonical_coaction(q, max, Side::Right);
    for (c, key) in [(&left, "leftBaseIso"), (&right, "rightBaseIso")] {
        let (rs, iso) = coaction_reports(c, &h, q, &algebra, max)?;
        reports.extend(rs);
        body.insert(key.into(), json!(iso));
    }
    let mut t = Report::new("canonical coactions");
    t.push(check_transposed(&left, &right)?);
    reports.push(t);
    Ok(Outcome { body, reports })
}

fn run_coact(q: &Arc<Quiver>, args: &Args) -> Result<(usize, Outcome), Failure> {
    let ideal = load_ideal(q, args.relations.as_deref())?;
    let c = match &args.coaction {
        Some(path) => parse_coaction(q, &read(path)?)?,
        None => {
            let side = match args.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
                SideArg::Trans => {
                    return Err(Failure::Input("`coact` needs --side left or right".into()))
                }
            };
            let max = args.max_degree.unwrap_or(DEFAULT_MAX_DEGREE);
            if ideal.generators().is_empty() {
                canonical_coaction(q, max, side)
            } else {
                return Err(Failure::Input(
                    "with --relations, give the coaction on the quotient basis via --coaction"
                        .into(),
                ));
            }
        }
    };
    let max = args.max_degree.unwrap_or(c.max_degree());
    if max > c.max_degree() {
        return Err(Failure::Input(format!(
            "coaction is given up to degree {}, not {max}",
            c.max_degree()
        )));
    }
    let h = from_face_algebra(q, c.max_degree());
    let algebra = PathQuotient::new(&ideal, c.max_degree()).algebra;
    let (reports, iso) = coaction_reports(&c, &h, q, &algebra, max)?;
    let mut body = serde_json::Map::new();
    body.insert("side".into(), json!(c.side));
    body.insert("baseIso".into(), json!(iso));
    body.insert("coaction".into(), json!(coaction_to_doc(q, &c)));
    Ok((max, Outcome { body, reports }))
}

fn run_uqsgd(q: &Arc<Quiver>, args: &Args, max: usize) -> Result<Outcome, Failure> {
    let ideal = load_ideal(q, args.relations.as_deref())?;
    let side = UqsgdSide::from(args.side);
    let mut body = serde_json::Map::new();
    body.insert("side".into(), json!(side));
    match build_uqsgd(&ideal, side, max) {
        Ok(r) => {
            body.insert("generators".into(), rendered(&r.generators));
            body.insert("dims".into(), json!(r.dims()));
            body.insert("algebraDims".into(), json!(r.algebra.algebra.dims()));
            let isos: Vec<Value> = r
                .base_isos
                .iter()
                .map(|iso| {
                    iso.iter()
                        .map(|v| r.quotient.wba.render_element(0, v))
                        .collect()
                })
                .collect();
            body.insert("baseIsos".into(), Value::Array(isos));
            Ok(Outcome {
                body,
                reports: r.reports,
            })
        }
        Err(UqsgdError::Unsound(reports)) => Ok(Outcome { body, reports }),
        Err(UqsgdError::Wba(WbaError::NotBiideal(report))) => Ok(Outcome {
            body,
            reports: vec![*report],
        }),
        Err(UqsgdError::PathAlgebra(e)) => Err(e.into()),
        Err(UqsgdError::Coaction(e)) => Err(e.into()),
        Err(UqsgdError::Wba(e)) => Err(Failure::Input(e.to_string())),
    }
}

fn run_dual(q: &Arc<Quiver>, args: &Args, max: usize) -> Result<Outcome, Failure> {
    let ideal = load_ideal(q, args.relations.as_deref())?;
    let dual = quadratic_dual(&quadratic_data(&ideal)?);
    let report = match check_quadratic_dualities(&ideal, max) {
        Ok(r) => r,
        Err(UqsgdError::PathAlgebra(e)) => return Err(e.into()),
        Err(e) => return Err(Failure::Input(e.to_string())),
    };
    let mut body = serde_json::Map::new();
    body.insert("dualQuiver".into(), json!(dual.quiver.to_doc()));
    body.insert(
        "dualRelations".into(),
        json!(relations_to_doc(&dual.generators())),
    );
    body.insert(
        "dualDims".into(),
        json!((0..=max)
            .map(|d| dual.ideal().quotient_dimension(d))
            .collect::<Vec<_>>()),
    );
    Ok(Outcome {
        body,
        reports: vec![report],
    })
}
