//! Command-line orchestration: every subcommand produces a `Report`.

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::{is_semiprimary, Algebra, Element, DEFAULT_ELEMENT_BUDGET};
use crate::catalog::{module_catalog, Catalog};
use crate::error::{Error, Result};
use crate::format::{load_algebra, AlgebraSpec};
use crate::ideal::{
    check_bireflective_image, check_tor_criterion, enumerate_idempotent_ideals, enumerate_ideals, ideal_generated,
    idempotent_to_ideal, is_idempotent_ideal, tor1_self_quotient, EnumerationMode, Ideal,
};
use crate::kuhn::{idempotent_generation_check, kuhn_construction, verify_equivalence_witness, GeneratorSpec};
use crate::recollement::{
    check_quotient_equivalence, image_identification_checks, naturality_spot_checks, recollement_from_idempotent,
    verify_recollement,
};
use crate::report::{matrix_json, module_from_json, module_json, subspace_json, Check, Report};
use crate::ttf::{
    catalog_sequences, jans_bijection, ttf_from_ideal, verify_radical_functor, verify_torsion_pair, verify_ttf_closure,
    PairKind,
};

/// Random maps checked per idempotent in `verify-recollement`.
pub const SPOT_SAMPLES: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "recollement", version, about = "Idempotent ideals, TTF triples and recollements of module categories over small prime fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimension, radical, idempotents and idempotent ideals.
    Analyze(RunArgs),
    /// Idempotent ideals against brute-force TTF classes.
    JansCheck(RunArgs),
    /// Recollement axioms and the related checks for each idempotent.
    VerifyRecollement(RunArgs),
    /// Morita realization of the recollement by an idempotent of End_A(A^n).
    KuhnDemo(RunArgs),
    /// All ideals with I/I^2 and Tor_1(A/I, A/I).
    Ideals(RunArgs),
    /// Torsion pairs, closure properties and radical functors per idempotent ideal.
    Ttf(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Brute,
    Vertex,
}

impl From<Mode> for EnumerationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Brute => EnumerationMode::Brute,
            Mode::Vertex => EnumerationMode::Vertex,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Built-in name or path to a TOML algebra document.
    #[arg(long, default_value = "T2_F2")]
    pub algebra: String,
    /// Element expression such as "e11+e22", a named element, or "all-vertex-subsets".
    #[arg(long, default_value = "all-vertex-subsets")]
    pub idempotent: String,
    /// Ideal for kuhn-demo: "rad" or comma-separated generators.
    #[arg(long)]
    pub ideal: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub dim_bound: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "brute")]
    pub mode: Mode,
    /// Copies of eAe in the projective generator for kuhn-demo.
    #[arg(long, default_value_t = 1)]
    pub copies: usize,
    /// JSON module files (as in counterexamples) to check against the representation law.
    #[arg(long = "module")]
    pub modules: Vec<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "idempotent": self.idempotent,
            "ideal": self.ideal,
            "dim_bound": self.dim_bound,
            "seed": self.seed,
            "mode": match self.mode { Mode::Brute => "brute", Mode::Vertex => "vertex" },
            "copies": self.copies,
            "modules": self.modules.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        })
    }
}

fn selected_idempotents(spec: &AlgebraSpec, selector: &str) -> Result<Vec<Element>> {
    let a = &spec.algebra;
    if selector.trim() == "all-vertex-subsets" {
        match a.vertex_subset_idempotents() {
            Some(v) => Ok(v),
            None => a.enumerate_idempotents(DEFAULT_ELEMENT_BUDGET),
        }
    } else {
        let e = spec.element(selector)?;
        if !a.is_idempotent(&e) {
            return Err(Error::NotIdempotent);
        }
        Ok(vec![e])
    }
}

fn algebra_json(a: &Algebra) -> Value {
    json!({"p": a.p(), "dim": a.dim(), "basis": a.labels()})
}

fn ideal_json(i: &Ideal) -> Value {
    json!({"dim": i.dim(), "span": i.describe()})
}

/// Law checks on user-supplied module files.
fn module_file_checks(a: &Arc<Algebra>, files: &[PathBuf]) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for path in files {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let m = module_from_json(a, &v)
            .ok_or_else(|| Error::Invalid(format!("{} is not a module over this algebra", path.display())))?;
        let law = m.check_representation_law();
        out.push(Check::single(
            format!("representation law for {}", path.display()),
            "a module is a representation: (m·x)·y = m·(xy) and m·1 = m",
            law.is_ok(),
            || json!({"module": module_json(&m), "error": law.as_ref().err().map(|e| e.to_string())}),
        ));
    }
    Ok(out)
}

pub fn cmd_analyze(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("analyze", args.config());
    report.set_result("algebra", algebra_json(a));
    let w = is_semiprimary(a)?;
    let rad = Ideal::radical(a)?;
    report.set_result("radical", json!({"dim": rad.dim(), "span": rad.describe(), "nilpotency_index": w.nilpotency_index}));
    report.push(Check::single(
        "radical is nilpotent and A/rad is semisimple",
        "every finite-dimensional algebra is semiprimary",
        w.semiprimary,
        || json!({"radical_dim": w.radical_dim, "nilpotency_index": w.nilpotency_index}),
    ));
    let idems = match a.enumerate_idempotents(DEFAULT_ELEMENT_BUDGET) {
        Ok(list) => json!({"search": "exhaustive", "count": list.len(), "elements": list.iter().map(|e| a.format(e)).collect::<Vec<_>>()}),
        Err(Error::BudgetExceeded { .. }) => {
            let list = a.vertex_subset_idempotents().unwrap_or_default();
            json!({"search": "vertex subsets", "count": list.len(), "elements": list.iter().map(|e| a.format(e)).collect::<Vec<_>>()})
        }
        Err(e) => return Err(e),
    };
    report.set_result("idempotents", idems);
    let ideals = enumerate_idempotent_ideals(a, args.mode.into())?;
    report.set_result(
        "idempotent_ideals",
        json!({"count": ideals.len(), "ideals": ideals.iter().map(ideal_json).collect::<Vec<_>>()}),
    );
    report.set_result(
        "named_elements",
        Value::Object(spec.elements.iter().map(|(k, v)| (k.clone(), json!(a.format(v)))).collect()),
    );
    report.extend(module_file_checks(a, &args.modules)?);
    Ok(report)
}

pub fn cmd_jans_check(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("jans-check", args.config());
    let j = jans_bijection(a, args.dim_bound, args.mode.into())?;
    report.set_result("algebra", algebra_json(a));
    report.set_result("idempotent_ideals", json!(j.ideals.len()));
    report.set_result("ttf_classes", json!(j.classes.len()));
    report.set_result(
        "matching",
        Value::Array(
            j.ideals
                .iter()
                .zip(&j.matching)
                .zip(&j.round_trip)
                .map(|((i, m), rt)| json!({"ideal": ideal_json(i), "class": m.map(|k| j.classes[k].clone()), "round_trip": rt}))
                .collect(),
        ),
    );
    let anchor = "TTF triples in Mod A correspond bijectively to idempotent ideals of A";
    report.push(Check::single("number of idempotent ideals equals number of TTF classes", anchor, j.counts_match(), || {
        json!({"ideals": j.ideals.len(), "classes": j.classes.len()})
    }));
    report.push(Check::single("ideal to class to ideal is the identity and the matching is a bijection", anchor, j.is_bijection(), || {
        json!({"matching": j.matching, "round_trip": j.round_trip})
    }));
    Ok(report)
}

struct Catalogs {
    a: Catalog,
    sequences: Vec<crate::ttf::ShortExactSequence>,
}

fn ideal_checks(i: &Ideal, cats: &Catalogs) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    out.extend(verify_torsion_pair(i, PairKind::Lower, &cats.a)?);
    out.extend(verify_torsion_pair(i, PairKind::Upper, &cats.a)?);
    out.extend(verify_ttf_closure(&ttf_from_ideal(i.algebra(), i)?, &cats.a)?);
    out.extend(verify_radical_functor(i, &cats.sequences, &cats.a)?);
    Ok(out)
}

pub fn cmd_verify_recollement(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("verify-recollement", args.config());
    report.extend(module_file_checks(a, &args.modules)?);
    let cats = Catalogs {
        a: module_catalog(a, args.dim_bound)?,
        sequences: Vec::new(),
    };
    let cats = Catalogs {
        sequences: catalog_sequences(&cats.a)?,
        ..cats
    };
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let mut runs = Vec::new();
    for e in selected_idempotents(&spec, &args.idempotent)? {
        let prefix = format!("e={}", a.format(&e));
        let r = recollement_from_idempotent(a, &e)?;
        let cc = module_catalog(r.corner_algebra(), args.dim_bound)?;
        let cb = module_catalog(r.quotient_algebra(), args.dim_bound)?;
        let mut checks = verify_recollement(&r, &cats.a, &cc, &cb)?;
        checks.push(naturality_spot_checks(&r, &cats.a, &mut rng, SPOT_SAMPLES)?);
        checks.extend(check_quotient_equivalence(&r, &cats.a)?);
        checks.extend(image_identification_checks(&r, &cats.a)?);
        checks.extend(ideal_checks(&r.ideal, &cats)?);
        let t = tor1_self_quotient(&r.ideal)?;
        checks.push(Check::single(
            "Tor_1(A/AeA, A/AeA) = 0",
            "an ideal generated by an idempotent is idempotent, and Tor_1(A/I, A/I) is I/I^2",
            t.tor_dim == 0 && t.quotient_dim == 0,
            || json!({"quotient_dim": t.quotient_dim, "tor_dim": t.tor_dim}),
        ));
        report.extend(checks.into_iter().map(|c| c.with_prefix(&prefix)));
        runs.push(json!({
            "idempotent": a.format(&e),
            "ideal": ideal_json(&r.ideal),
            "corner_dim": r.corner_algebra().dim(),
            "quotient_dim": r.quotient_algebra().dim(),
            "catalog_sizes": {"a": cats.a.len(), "corner": cc.len(), "quotient": cb.len()},
        }));
    }
    report.set_result("algebra", algebra_json(a));
    report.set_result("recollements", Value::Array(runs));
    Ok(report)
}

fn kuhn_ideals(spec: &AlgebraSpec, args: &RunArgs) -> Result<Vec<Ideal>> {
    let a = &spec.algebra;
    if let Some(text) = &args.ideal {
        let t = text.trim();
        if t == "rad" || t == "radical" {
            return Ok(vec![Ideal::radical(a)?]);
        }
        let gens = t.split(',').map(|g| spec.element(g)).collect::<Result<Vec<_>>>()?;
        return Ok(vec![ideal_generated(a, &gens)]);
    }
    let mut out = Vec::new();
    for e in selected_idempotents(spec, &args.idempotent)? {
        let i = idempotent_to_ideal(a, &e)?;
        if !out.contains(&i) {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn cmd_kuhn_demo(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("kuhn-demo", args.config());
    let cat = module_catalog(a, args.dim_bound)?;
    let mut witnesses = Vec::new();
    for i in kuhn_ideals(&spec, args)? {
        let prefix = format!("I={}", i.describe());
        if !is_idempotent_ideal(&i) {
            let sq = crate::ideal::ideal_product(&i, &i)?;
            return Err(Error::NotIdempotentIdeal {
                quotient_dim: i.dim() - sq.dim(),
            });
        }
        let gen = idempotent_generation_check(a, &i)?;
        report.push(
            Check::single(
                "the ideal is generated by an idempotent",
                "over a semiprimary ring every idempotent ideal is generated by an idempotent",
                gen.is_some(),
                || json!({"ideal": ideal_json(&i)}),
            )
            .with_prefix(&prefix),
        );
        let Some(e) = gen else { continue };
        let w = kuhn_construction(
            a,
            &i,
            &GeneratorSpec {
                idempotent: Some(e.clone()),
                copies: args.copies,
            },
            &cat,
        )?;
        report.extend(verify_equivalence_witness(&w)?.into_iter().map(|c| c.with_prefix(&prefix)));
        let s = &w.endomorphism_ring;
        witnesses.push(json!({
            "ideal": ideal_json(&i),
            "idempotent": a.format(&e),
            "generator_dim": w.generator.dim(),
            "n": w.n,
            "surjection": matrix_json(&w.surjection),
            "section": matrix_json(&w.section),
            "endomorphism_ring_dim": s.dim(),
            "e_prime": s.format(&w.e_prime),
            "corner_dim": w.corner.algebra.dim(),
            "corner_basis": subspace_json(w.corner.subspace()),
            "ring_iso": matrix_json(&w.ring_iso),
            "certificates": w.certificates.iter().map(|c| json!({
                "module": module_json(&c.module),
                "iso": matrix_json(&c.iso),
            })).collect::<Vec<_>>(),
        }));
    }
    report.set_result("algebra", algebra_json(a));
    report.set_result("catalog_size", json!(cat.len()));
    report.set_result("witnesses", Value::Array(witnesses));
    Ok(report)
}

pub fn cmd_ideals(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("ideals", args.config());
    let all = match enumerate_ideals(a) {
        Ok(all) => all,
        Err(Error::BudgetExceeded { .. }) => enumerate_idempotent_ideals(a, EnumerationMode::Vertex)?,
        Err(e) => return Err(e),
    };
    let mut rows = Vec::new();
    for i in &all {
        let t = tor1_self_quotient(i)?;
        rows.push(json!({
            "ideal": ideal_json(i),
            "idempotent": t.quotient_dim == 0,
            "quotient_by_square_dim": t.quotient_dim,
            "tor1_dim": t.tor_dim,
        }));
    }
    report.set_result("algebra", algebra_json(a));
    report.set_result("ideals", Value::Array(rows));
    let idem = enumerate_idempotent_ideals(a, args.mode.into())?;
    report.set_result("idempotent_ideals", json!(idem.iter().map(ideal_json).collect::<Vec<_>>()));
    if enumerate_ideals(a).is_ok() {
        report.push(check_tor_criterion(a)?);
    }
    Ok(report)
}

pub fn cmd_ttf(args: &RunArgs) -> Result<Report> {
    let spec = load_algebra(&args.algebra)?;
    let a = &spec.algebra;
    let mut report = Report::new("ttf", args.config());
    let cat = module_catalog(a, args.dim_bound)?;
    let cats = Catalogs {
        sequences: catalog_sequences(&cat)?,
        a: cat,
    };
    let ideals = enumerate_idempotent_ideals(a, args.mode.into())?;
    let mut rows = Vec::new();
    for i in &ideals {
        let t = ttf_from_ideal(a, i)?;
        let count = |f: &dyn Fn(&crate::module::Module) -> bool| cats.a.modules().iter().filter(|m| f(m)).count();
        rows.push(json!({
            "ideal": ideal_json(i),
            "catalog_members": {"x": count(&|m| t.in_x(m)), "y": count(&|m| t.in_y(m)), "z": count(&|m| t.in_z(m))},
        }));
        let prefix = format!("I={}", i.describe());
        let mut checks = ideal_checks(i, &cats)?;
        checks.extend(check_bireflective_image(i, &cats.a)?);
        report.extend(checks.into_iter().map(|c| c.with_prefix(&prefix)));
    }
    report.set_result("algebra", algebra_json(a));
    report.set_result("catalog_size", json!(cats.a.len()));
    report.set_result("triples", Value::Array(rows));
    Ok(report)
}

pub fn run(cli: &Cli) -> Result<(Report, Option<PathBuf>)> {
    let (mut report, args) = match &cli.command {
        Command::Analyze(a) => (cmd_analyze(a)?, a),
        Command::JansCheck(a) => (cmd_jans_check(a)?, a),
        Command::VerifyRecollement(a) => (cmd_verify_recollement(a)?, a),
        Command::KuhnDemo(a) => (cmd_kuhn_demo(a)?, a),
        Command::Ideals(a) => (cmd_ideals(a)?, a),
        Command::Ttf(a) => (cmd_ttf(a)?, a),
    };
    report.finish();
    Ok((report, args.report.clone()))
}

/// Exit code 0 iff every check passes, 1 on a failing check, 2 on an error.
pub fn main_with<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let (report, path) = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let text = report.to_json();
    match path {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, &text) {
                eprintln!("error: cannot write {}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    for c in report.checks.iter().filter(|c| !c.passed) {
        eprintln!("FAIL {}", c.name);
    }
    eprintln!(
        "{} checks, {} passed, {} failed",
        report.summary.checks, report.summary.passed, report.summary.failed
    );
    if report.all_passed() {
        0
    } else {
        1
    }
}
