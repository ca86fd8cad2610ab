//! Command line front end for `cocycle-core`: JSON input documents, command
//! dispatch and JSON output documents.

pub mod input;
pub mod output;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cocycle_core::cochain::{
    check_almost_integral, check_generic, validate_cocycle, vertex_angles, AlmostIntegralCocycle,
    CircleMap,
};
use cocycle_core::complex::SimplicialComplex;
use cocycle_core::derive::{level_cell_complex, sublevel_subcomplex_filtration};
use cocycle_core::oracle::{
    homology_ranks, persistent_betti_bruteforce, recover_sublevel_from_level, recovery_mismatches,
};
use cocycle_core::persist::{
    circle_level_persistence_with, level_bars, level_persistence, level_persistence_at,
    standard_bars, standard_persistence, CircleOptions, CirclePersistenceResult, LevelPoint,
};
use cocycle_core::rational::{midpoint, rem_euclid};
use cocycle_core::unroll::theta_decompose;
use cocycle_core::{Error, Rational};

use input::{format_rational, parse_rational, InputDocument};
use output::{
    bar_records, level_records, level_summary, standard_records, CheckReport, Diagnostic,
    OutputDocument,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error in {field}{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        field: String,
        line: Option<usize>,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Library(#[from] Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "E_IO",
            CliError::Parse { .. } => "E_PARSE",
            CliError::Schema(_) => "E_SCHEMA",
            CliError::Library(Error::Contradiction(_) | Error::UnderDetermined) => "E_COMPUTE",
            CliError::Library(_) => "E_INPUT",
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.code() == "E_COMPUTE" {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cocycle",
    version,
    about = "Level persistence of real and circle valued maps"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input document.
    pub file: PathBuf,
    /// Write the output document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cross-check the results with independent computations.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check genericity, the cocycle condition, almost integrality and spans.
    Validate(Common),
    /// Sublevel persistence of the 0-cochain.
    Sublevel(Common),
    /// Level persistence of the 0-cochain, at every grid point or at one level.
    Level {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        at: Option<String>,
    },
    /// Level persistence of a circle valued map given by angles or a cocycle.
    Circle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        base: Option<String>,
        /// Copies of the cover on each side of the level.
        #[arg(long)]
        max_copies: Option<usize>,
    },
    /// Level persistence of an almost integral cocycle.
    Cocycle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        max_copies: Option<usize>,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Validate(c) | Command::Sublevel(c) => c,
            Command::Level { common, .. }
            | Command::Circle { common, .. }
            | Command::Cocycle { common, .. } => common,
        }
    }
}

/// A finished run: the document and the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub doc: OutputDocument,
    pub exit_code: i32,
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    let common = command.common();
    let input = InputDocument::from_path(&common.file)?;
    let mut doc = match command {
        Command::Validate(_) => OutputDocument::new("validate"),
        Command::Sublevel(_) => OutputDocument::new("sublevel"),
        Command::Level { .. } => OutputDocument::new("level"),
        Command::Circle { .. } => OutputDocument::new("circle"),
        Command::Cocycle { .. } => OutputDocument::new("cocycle"),
    };
    doc.params
        .insert("input".to_string(), common.file.display().to_string());
    let mismatches = match command {
        Command::Validate(_) => {
            validate(&input, &mut doc)?;
            None
        }
        Command::Sublevel(_) => sublevel(&input, &mut doc, common.check)?,
        Command::Level { at, .. } => {
            let at = at
                .as_deref()
                .map(|a| parse_rational(a, "--at"))
                .transpose()?;
            level(&input, &mut doc, at, common.check)?
        }
        Command::Circle {
            theta,
            base,
            max_copies,
            ..
        } => {
            let cm = match input.circle_map()? {
                Some(cm) => cm,
                None => cocycle_angles(&input, base.as_deref(), &mut doc)?,
            };
            let theta = parse_rational(theta, "--theta")?;
            circle(&input, &cm, theta, *max_copies, &mut doc, common.check)?
        }
        Command::Cocycle {
            theta,
            base,
            max_copies,
            ..
        } => {
            let cm = cocycle_angles(&input, base.as_deref(), &mut doc)?;
            let theta = parse_rational(theta, "--theta")?;
            circle(&input, &cm, theta, *max_copies, &mut doc, common.check)?
        }
    };
    let mut exit_code = if doc.diagnostics.iter().all(|d| d.ok) {
        0
    } else {
        1
    };
    if let Some(m) = mismatches {
        if !m.is_empty() {
            exit_code = 2;
        }
        doc.check = Some(CheckReport {
            passed: m.is_empty(),
            mismatches: m,
        });
    }
    Ok(Outcome { doc, exit_code })
}

fn diag(kind: &'static str, ok: bool, vertices: Vec<String>, detail: String) -> Diagnostic {
    Diagnostic {
        kind,
        ok,
        vertices,
        detail,
    }
}

fn names(input: &InputDocument, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| input.name(v).to_string()).collect()
}

/// A level off every angle, so the decomposition only fails on wide spans.
fn span_diagnostic(input: &InputDocument, cm: &CircleMap) -> Result<Diagnostic, CliError> {
    let mut a = cm.angles().to_vec();
    a.sort_unstable();
    a.dedup();
    let theta = match a.as_slice() {
        [] => Rational::from_integer(0),
        [x] => rem_euclid(*x + cm.alpha() / Rational::from_integer(2), cm.alpha()),
        [x, y, ..] => midpoint(*x, *y),
    };
    Ok(match theta_decompose(input.complex(), cm, theta) {
        Ok(_) => diag("span", true, vec![], String::new()),
        Err(Error::SpanTooWide { simplex }) => diag(
            "span",
            false,
            names(input, input.complex().simplex(simplex)),
            "simplex spans at least alpha/2".to_string(),
        ),
        Err(e) => return Err(e.into()),
    })
}

fn validate(input: &InputDocument, doc: &mut OutputDocument) -> Result<(), CliError> {
    let complex = input.complex();
    doc.diagnostics.push(diag(
        "complex",
        true,
        vec![],
        format!(
            "{} vertices, {} simplices",
            complex.vertex_count(),
            complex.len()
        ),
    ));
    if let Some(values) = &input.cochain0 {
        let f = cocycle_core::cochain::Cochain0::new(values.clone());
        doc.diagnostics.push(match f.check_injective(complex) {
            Ok(()) => diag("genericity", true, vec![], String::new()),
            Err(Error::NonGenericMap(u, v)) => diag(
                "genericity",
                false,
                names(input, &[u, v]),
                "vertices share a value".to_string(),
            ),
            Err(e) => return Err(e.into()),
        });
    }
    if input.cocycle.is_some() {
        let c = input.cocycle1()?;
        let report = validate_cocycle(&c, complex)?;
        if report.is_cocycle() {
            doc.diagnostics
                .push(diag("cocycle", true, vec![], String::new()));
        }
        for t in &report.violations {
            doc.diagnostics.push(diag(
                "cocycle",
                false,
                names(input, t),
                "values do not sum to zero around the triangle".to_string(),
            ));
        }
        if report.is_cocycle() {
            doc.diagnostics.push(match check_generic(&c, complex)? {
                None => diag("genericity", true, vec![], String::new()),
                Some(col) => diag(
                    "genericity",
                    false,
                    names(input, &[col.center, col.first, col.second]),
                    "local values coincide in the star of the first vertex".to_string(),
                ),
            });
        }
        if let (Some(alpha), true) = (input.alpha, report.is_cocycle()) {
            let ok = check_almost_integral(&c, complex, alpha)?;
            doc.diagnostics
                .push(diag("almost_integrality", ok, vec![], String::new()));
            if ok && input.angles.is_none() {
                let z = AlmostIntegralCocycle::new(c, alpha, complex)?;
                match vertex_angles(&z, complex, input.base.unwrap_or(0)) {
                    Ok(cm) => doc.diagnostics.push(span_diagnostic(input, &cm)?),
                    Err(Error::DisconnectedWithSingleBase) => doc.diagnostics.push(diag(
                        "span",
                        false,
                        vec![],
                        "complex is disconnected".to_string(),
                    )),
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    if let Some(cm) = input.circle_map()? {
        doc.diagnostics.push(span_diagnostic(input, &cm)?);
    }
    Ok(())
}

fn sublevel(
    input: &InputDocument,
    doc: &mut OutputDocument,
    check: bool,
) -> Result<Option<Vec<String>>, CliError> {
    let complex = input.complex();
    let f = input.cochain0()?;
    let p = standard_persistence(complex, &f)?;
    doc.critical = p.critical().iter().map(format_rational).collect();
    doc.tables = standard_records(&p);
    doc.bars = bar_records(&standard_bars(&p));
    if !check {
        return Ok(None);
    }
    let stages = sublevel_subcomplex_filtration(complex, &f)?;
    let upto =
        |s: usize| -> Vec<usize> { (0..complex.len()).filter(|&x| stages[x] <= s).collect() };
    let mut bad = Vec::new();
    for r in 0..p.degrees() {
        for i in 0..p.stages() {
            for j in i..p.stages() {
                let want = persistent_betti_bruteforce(complex, &upto(i), &upto(j), r)?;
                if p.beta(r, i, j) != want {
                    bad.push(format!(
                        "beta_{r}({i},{j}) = {} but oracle gives {want}",
                        p.beta(r, i, j)
                    ));
                }
            }
        }
    }
    Ok(Some(bad))
}

fn point_checks(
    complex: &SimplicialComplex,
    f: &cocycle_core::cochain::Cochain0,
    p: &LevelPoint,
) -> Result<Vec<String>, CliError> {
    let mut bad = p.identity_violations();
    let ranks = homology_ranks(&level_cell_complex(complex, f, p.value())?)?;
    for r in 0..p.degrees() {
        let want = ranks.get(r).copied().unwrap_or(0);
        if p.l(r) != want {
            bad.push(format!(
                "l_{r} at {} = {} but oracle gives {want}",
                format_rational(&p.value()),
                p.l(r)
            ));
        }
    }
    Ok(bad)
}

fn push_point(doc: &mut OutputDocument, p: &LevelPoint) {
    doc.levels.push(level_summary(p));
    doc.tables.extend(level_records(p));
    doc.bars.extend(bar_records(&level_bars(p)));
}

fn level(
    input: &InputDocument,
    doc: &mut OutputDocument,
    at: Option<Rational>,
    check: bool,
) -> Result<Option<Vec<String>>, CliError> {
    let complex = input.complex();
    let f = input.cochain0()?;
    f.check_injective(complex)?;
    let mut bad = Vec::new();
    if let Some(s) = at {
        doc.params.insert("at".to_string(), format_rational(&s));
        let p = level_persistence_at(complex, &f, s)?;
        push_point(doc, &p);
        if check {
            bad = point_checks(complex, &f, &p)?;
        }
    } else {
        let lp = level_persistence(complex, &f)?;
        doc.critical = lp.grid().critical().iter().map(format_rational).collect();
        for p in lp.points() {
            push_point(doc, p);
            if check {
                bad.extend(point_checks(complex, &f, p)?);
            }
        }
        if check {
            let rec = recover_sublevel_from_level(&lp)?;
            let sf = standard_persistence(complex, &f)?;
            let sn = standard_persistence(complex, &f.negated())?;
            bad.extend(recovery_mismatches(&rec, &sf, &sn));
        }
    }
    Ok(check.then_some(bad))
}

fn cocycle_angles(
    input: &InputDocument,
    base: Option<&str>,
    doc: &mut OutputDocument,
) -> Result<CircleMap, CliError> {
    let c = input.cocycle1()?;
    let alpha = input.alpha()?;
    let complex = input.complex();
    let base = match base {
        Some(name) => input.vertex(name)?,
        None => input.base.unwrap_or(0),
    };
    if complex.vertex_count() > 0 {
        doc.params
            .insert("base".to_string(), input.name(base).to_string());
    }
    let z = AlmostIntegralCocycle::new(c, alpha, complex)?;
    doc.diagnostics
        .push(diag("almost_integrality", true, vec![], String::new()));
    Ok(vertex_angles(&z, complex, base)?)
}

fn same_point(a: &LevelPoint, b: &LevelPoint) -> bool {
    (0..a.degrees()).all(|r| a.l(r) == b.l(r))
        && a.nu_plus_table() == b.nu_plus_table()
        && a.nu_minus_table() == b.nu_minus_table()
        && a.omega_table() == b.omega_table()
        && (1..=a.max_up().max(b.max_up()))
            .all(|k| k > a.max_up() || k > b.max_up() || a.up_tau(k) == b.up_tau(k))
}

fn circle(
    input: &InputDocument,
    cm: &CircleMap,
    theta: Rational,
    max_copies: Option<usize>,
    doc: &mut OutputDocument,
    check: bool,
) -> Result<Option<Vec<String>>, CliError> {
    let complex = input.complex();
    let options = CircleOptions {
        budget: max_copies,
        centre: None,
    };
    let res: CirclePersistenceResult = circle_level_persistence_with(complex, cm, theta, options)?;
    let params: BTreeMap<String, String> = [
        ("theta", format_rational(&res.theta)),
        ("alpha", format_rational(&res.alpha)),
        ("max_copies", res.budget.to_string()),
        ("copies", res.copies.to_string()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    doc.params.extend(params);
    doc.critical = cm.angles().iter().map(format_rational).collect();
    push_point(doc, &res.point);
    if !check {
        return Ok(None);
    }
    let mut bad = res.point.identity_violations();
    let shifted = circle_level_persistence_with(
        complex,
        cm,
        theta,
        CircleOptions {
            budget: max_copies,
            centre: Some(res.budget + 1),
        },
    )?;
    if !same_point(&res.point, &shifted.point) {
        bad.push("numbers change when the lift window moves by one period".to_string());
    }
    let next = circle_level_persistence_with(complex, cm, theta + res.alpha, options)?;
    if !same_point(&res.point, &next.point) {
        bad.push("numbers change when theta moves by alpha".to_string());
    }
    Ok(Some(bad))
}
