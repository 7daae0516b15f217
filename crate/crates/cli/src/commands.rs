use crate::input::{load_algebra, load_module, InputDigest};
use crate::{ComputeArgs, Format, ModeArg, OperadArgs, OracleArgs, StabilityArgs, TreesArgs, VerifyArgs};
use anyhow::{Context, Result};
use enh::algdata::{AlgebraPresentation, BimodulePresentation};
use enh::coeff::CoefficientRing;
use enh::homcalc::{d_squared_check, homology_table, stability_scan, HomologyTable, TableMeta};
use enh::operadlab::{en_colimit_check, operad_verify as run_operad_verify, retract_check, theta_restriction_check, LiftBounds};
use enh::oracles::{shift_comparison, ShiftComparison};
use enh::treecomb::enumerate_trees;
use enh::twist::{assemble_cohomology_complex, assemble_homology_complex, golden_example, Mode, TwistedComplex, GOLDEN_VARIANTS};
use enh::Error;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt;
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

pub const SCHEMA_VERSION: u32 = 1;

/// Some selected check did not pass; the report has already been written.
#[derive(Debug)]
pub struct ChecksFailed(pub Vec<String>);

impl fmt::Display for ChecksFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "failed checks: {}", self.0.join(", "))
    }
}

impl std::error::Error for ChecksFailed {}

/// 1 validation, 2 internal invariant, 3 I/O or schema, 4 resource bound.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::Axiom { .. } | Error::Invalid(_) | Error::Ring(_) => 1,
                Error::Invariant(_) => 2,
                Error::Schema(_) => 3,
                Error::Resource(_) => 4,
            };
        }
        if cause.is::<std::io::Error>() || cause.is::<serde_json::Error>() {
            return 3;
        }
    }
    1
}

/// Write to `out` (through a temporary file and a rename) or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            let mut tmp = path.as_os_str().to_owned();
            tmp.push(".partial");
            let tmp = PathBuf::from(tmp);
            std::fs::write(&tmp, text).with_context(|| format!("cannot write `{}`", tmp.display()))?;
            std::fs::rename(&tmp, path).with_context(|| format!("cannot write `{}`", path.display()))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn parse_ring(s: &str) -> Result<CoefficientRing> {
    Ok(CoefficientRing::parse(s)?)
}

#[derive(Serialize)]
struct DegreeSize {
    degree: i64,
    dim: usize,
}

#[derive(Serialize)]
struct MatrixSize {
    source_degree: i64,
    target_degree: i64,
    rows: usize,
    cols: usize,
    nnz: usize,
}

#[derive(Serialize)]
struct ComplexSizes {
    mode: Mode,
    degrees: Vec<DegreeSize>,
    matrices: Vec<MatrixSize>,
}

fn complex_sizes(c: &TwistedComplex) -> ComplexSizes {
    let degrees = c.degrees().map(|d| DegreeSize { degree: d, dim: c.dim(d) }).collect();
    let matrices = c
        .steps()
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let low = c.lo + i as i64;
            let (source_degree, target_degree) = match c.mode {
                Mode::Homology => (low + 1, low),
                Mode::Cohomology => (low, low + 1),
            };
            MatrixSize { source_degree, target_degree, rows: m.rows(), cols: m.cols(), nnz: m.nnz() }
        })
        .collect();
    ComplexSizes { mode: c.mode, degrees, matrices }
}

#[derive(Serialize)]
struct Parameters {
    n: usize,
    ring: String,
    max_degree: i64,
    mode: &'static str,
}

#[derive(Serialize)]
struct Timestamp {
    started_unix_ms: u128,
    wall_clock_ms: u128,
}

#[derive(Serialize)]
struct RunManifest {
    tool: &'static str,
    version: &'static str,
    inputs: Vec<InputDigest>,
    parameters: Parameters,
    complexes: Vec<ComplexSizes>,
    timestamp: Timestamp,
}

#[derive(Serialize)]
struct ComputeOutput<'a> {
    schema_version: u32,
    tables: &'a [HomologyTable],
    manifest: &'a RunManifest,
}

pub fn compute(a: ComputeArgs) -> Result<()> {
    let started = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0);
    let clock = Instant::now();
    let ring = parse_ring(&a.input.ring)?;
    let (alg, da) = load_algebra(&a.input.algebra, ring)?;
    let (module, dm) = load_module(&a.input.module, &alg, ring)?;
    let modes: &[Mode] = match a.mode {
        ModeArg::Homology => &[Mode::Homology],
        ModeArg::Cohomology => &[Mode::Cohomology],
        ModeArg::Both => &[Mode::Homology, Mode::Cohomology],
    };
    let mut tables = Vec::new();
    let mut complexes = Vec::new();
    for &mode in modes {
        let c = match mode {
            Mode::Homology => assemble_homology_complex(&alg, &module, a.n, a.max_degree, ring)?,
            Mode::Cohomology => assemble_cohomology_complex(&alg, &module, a.n, a.max_degree, ring)?,
        };
        let meta = TableMeta {
            algebra: a.input.algebra.clone(),
            module: a.input.module.clone(),
            n: a.n,
            ring: ring.label(),
            mode,
        };
        tables.push(homology_table(&c, meta)?);
        complexes.push(complex_sizes(&c));
    }
    let manifest = RunManifest {
        tool: "enh",
        version: env!("CARGO_PKG_VERSION"),
        inputs: vec![da, dm],
        parameters: Parameters {
            n: a.n,
            ring: ring.label(),
            max_degree: a.max_degree,
            mode: match a.mode {
                ModeArg::Homology => "homology",
                ModeArg::Cohomology => "cohomology",
                ModeArg::Both => "both",
            },
        },
        complexes,
        timestamp: Timestamp { started_unix_ms: started, wall_clock_ms: clock.elapsed().as_millis() },
    };
    match a.format {
        Format::Json => {
            let doc = ComputeOutput { schema_version: SCHEMA_VERSION, tables: &tables, manifest: &manifest };
            emit(a.out.as_deref(), &to_json(&doc)?)
        }
        Format::Tsv => {
            let mut text = String::new();
            for t in &tables {
                let mode = if t.meta.mode == Mode::Homology { "homology" } else { "cohomology" };
                text.push_str(&format!("# {mode} n={} ring={}\n", t.meta.n, t.meta.ring));
                text.push_str(&t.to_tsv());
            }
            let manifest_json = serde_json::to_string(&json!({
                "schema_version": SCHEMA_VERSION,
                "manifest": &manifest,
            }))?;
            match a.out.as_deref() {
                Some(path) => {
                    let mut side = path.as_os_str().to_owned();
                    side.push(".manifest.json");
                    emit(Some(Path::new(&side)), &(manifest_json + "\n"))?;
                    emit(Some(path), &text)
                }
                None => emit(None, &format!("{text}# manifest {manifest_json}\n")),
            }
        }
    }
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    report: Value,
}

#[derive(Serialize)]
struct VerifyOutput {
    schema_version: u32,
    checks: Vec<Check>,
    passed: bool,
}

fn finish_report(checks: Vec<Check>, out: Option<&Path>) -> Result<()> {
    for c in &checks {
        eprintln!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
    }
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.to_string()).collect();
    let doc = VerifyOutput { schema_version: SCHEMA_VERSION, passed: failed.is_empty(), checks };
    emit(out, &to_json(&doc)?)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(ChecksFailed(failed).into())
    }
}

fn inputs_for(a: &VerifyArgs, what: &str) -> Result<(CoefficientRing, String, String)> {
    match (&a.algebra, &a.module) {
        (Some(alg), Some(m)) => Ok((parse_ring(&a.ring)?, alg.clone(), m.clone())),
        _ => Err(Error::Invalid(format!("--{what} needs --algebra and --module")).into()),
    }
}

pub fn verify(a: VerifyArgs) -> Result<()> {
    let with_inputs = a.algebra.is_some() && a.module.is_some();
    let none = !(a.golden_example || a.d_squared || a.axioms || a.theta_restriction || a.retract || a.cells || a.oracle);
    let mut checks = Vec::new();

    if a.axioms || (none && with_inputs) {
        let (ring, alg_src, mod_src) = inputs_for(&a, "axioms")?;
        let outcome = load_algebra(&alg_src, ring).and_then(|(alg, _)| load_module(&mod_src, &alg, ring).map(|_| ()));
        let (passed, report) = match outcome {
            Ok(()) => (true, json!({ "algebra": alg_src, "module": mod_src, "ring": ring.label() })),
            Err(e) => match e.downcast_ref::<Error>() {
                Some(err @ Error::Axiom { .. }) => (false, json!({ "counterexample": err.to_string() })),
                _ => return Err(e),
            },
        };
        checks.push(Check { name: "axioms", passed, report });
    }
    if a.golden_example || none {
        let reports = GOLDEN_VARIANTS.iter().map(|d| golden_example(*d)).collect::<enh::Result<Vec<_>>>()?;
        let passed = reports.iter().all(|r| r.matches);
        checks.push(Check { name: "golden-example", passed, report: serde_json::to_value(&reports)? });
    }
    if a.d_squared || (none && with_inputs) {
        let (ring, alg_src, mod_src) = inputs_for(&a, "d-squared")?;
        let (alg, _) = load_algebra(&alg_src, ring)?;
        let (module, _) = load_module(&mod_src, &alg, ring)?;
        let mut reports = vec![d_squared_check(&assemble_homology_complex(&alg, &module, a.n, a.max_degree, ring)?)];
        if ring.is_field() {
            reports.push(d_squared_check(&assemble_cohomology_complex(&alg, &module, a.n, a.max_degree, ring)?));
        }
        let passed = reports.iter().all(|r| r.clean);
        checks.push(Check { name: "d-squared", passed, report: serde_json::to_value(&reports)? });
    }
    if a.oracle || (none && with_inputs) {
        let (ring, alg_src, mod_src) = inputs_for(&a, "oracle")?;
        let (alg, _) = load_algebra(&alg_src, ring)?;
        let (module, _) = load_module(&mod_src, &alg, ring)?;
        let r = oracle_report(&alg, &module, ring, a.max_degree, &alg_src, &mod_src)?;
        checks.push(Check { name: "oracle", passed: r.comparison.passed, report: serde_json::to_value(&r)? });
    }
    if a.theta_restriction || none {
        let r = theta_restriction_check(a.theta_levels, a.theta_leaves)?;
        checks.push(Check { name: "theta-restriction", passed: r.passed, report: serde_json::to_value(&r)? });
    }
    if a.retract || none {
        let r = retract_check(a.arity, a.max_simplicial_degree);
        checks.push(Check { name: "retract", passed: r.passed, report: serde_json::to_value(&r)? });
    }
    if a.cells || none {
        let r = en_colimit_check(a.arity.min(3), a.max_simplicial_degree)?;
        checks.push(Check { name: "cells", passed: r.passed, report: serde_json::to_value(&r)? });
    }
    finish_report(checks, a.out.as_deref())
}

pub fn trees(a: TreesArgs) -> Result<()> {
    let trees: Vec<String> = enumerate_trees(a.n, a.leaves)?.iter().map(|t| t.to_string()).collect();
    let text = match a.format {
        Format::Tsv => trees.iter().map(|t| format!("{t}\n")).collect(),
        Format::Json => to_json(&json!({
            "schema_version": SCHEMA_VERSION,
            "n": a.n,
            "leaves": a.leaves,
            "count": trees.len(),
            "trees": trees,
        }))?,
    };
    emit(None, &text)
}

#[derive(Serialize)]
struct OracleReport {
    algebra: String,
    module: String,
    ring: String,
    #[serde(flatten)]
    comparison: ShiftComparison,
}

/// The n = 1 table in degrees 0..=max_degree against the Hochschild oracle.
fn oracle_report(
    alg: &AlgebraPresentation,
    module: &BimodulePresentation,
    ring: CoefficientRing,
    max_degree: i64,
    alg_src: &str,
    mod_src: &str,
) -> Result<OracleReport> {
    let meta = TableMeta {
        algebra: alg_src.into(),
        module: mod_src.into(),
        n: 1,
        ring: ring.label(),
        mode: Mode::Homology,
    };
    let c = assemble_homology_complex(alg, module, 1, max_degree + 1, ring)?;
    let bar = homology_table(&c, meta)?;
    let comparison = shift_comparison(&bar, alg, module, ring, max_degree)?;
    Ok(OracleReport { algebra: alg_src.into(), module: mod_src.into(), ring: ring.label(), comparison })
}

pub fn oracle(a: OracleArgs) -> Result<()> {
    let ring = parse_ring(&a.input.ring)?;
    let (alg, _) = load_algebra(&a.input.algebra, ring)?;
    let (module, _) = load_module(&a.input.module, &alg, ring)?;
    let r = oracle_report(&alg, &module, ring, a.max_degree, &a.input.algebra, &a.input.module)?;
    let check = Check { name: "oracle", passed: r.comparison.passed, report: serde_json::to_value(&r)? };
    finish_report(vec![check], a.out.as_deref())
}

pub fn operad_verify(a: OperadArgs) -> Result<()> {
    let bounds = LiftBounds { arity: a.lift_arity, degree: a.lift_degree, leaves: a.lift_leaves };
    let r = run_operad_verify(
        a.arity,
        a.max_simplicial_degree,
        a.theta_levels,
        a.theta_leaves,
        &a.levels,
        bounds,
    )?;
    let mut checks = vec![
        Check { name: "retract", passed: r.retract.passed, report: serde_json::to_value(&r.retract)? },
        Check { name: "cells", passed: r.cells.passed, report: serde_json::to_value(&r.cells)? },
        Check {
            name: "theta-restriction",
            passed: r.theta_restriction.passed,
            report: serde_json::to_value(&r.theta_restriction)?,
        },
    ];
    for l in &r.lifts {
        checks.push(Check { name: "lift", passed: l.passed, report: serde_json::to_value(l)? });
    }
    finish_report(checks, a.out.as_deref())
}

pub fn stability(a: StabilityArgs) -> Result<()> {
    let ring = parse_ring(&a.input.ring)?;
    let (alg, da) = load_algebra(&a.input.algebra, ring)?;
    let (module, dm) = load_module(&a.input.module, &alg, ring)?;
    let scan = stability_scan(&alg, &module, a.degree, a.n_max, ring)?;
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "inputs": [da, dm],
        "ring": ring.label(),
        "scan": scan,
    });
    emit(a.out.as_deref(), &to_json(&doc)?)
}
