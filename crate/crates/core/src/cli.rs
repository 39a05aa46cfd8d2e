//! The `algebroid` command line: argument parsing, dispatch and reports.
//!
//! Every verb prints either a JSON document (`--json`, keys sorted) or a
//! plain-text summary. Exit codes: 0 success, 1 a check failed, 2 bad input.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::FiniteAlgebra;
use crate::algebroid::{derive_dim3_constraints, Family, VertexAlgebroid};
use crate::heisenberg::{heisenberg_check, HeisenbergError, Verdict};
use crate::leibniz::{AlphaRoots, LeibnizAlgebra, LeibnizError};
use crate::linalg::DenseVec;
use crate::scalar::Scalar;
use crate::va::{self, build_vb, induced_module, GradedDim};

#[derive(Debug, Parser)]
#[command(name = "algebroid", version, about = "Vertex algebroids over cyclic Leibniz algebras and their graded vertex algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// One of dim2_nilpotent, dim2_solvable, dim3_nilpotent, dim3_type_b, dim3_type_c, dim3_type_d.
    #[arg(long)]
    pub family: Option<String>,
    /// Family parameters as a JSON object of scalars, e.g. '{"alpha2":"2"}'.
    #[arg(long)]
    pub params: Option<String>,
    /// JSON input file; `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub cap: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a commutative algebra table and report its local profile.
    VerifyAlgebra(Options),
    /// Check the left Leibniz identity on a bracket table.
    VerifyLeibniz(Options),
    /// Classify a cyclic non-Lie Leibniz algebra of dimension 2 or 3.
    ClassifyLeibniz(Options),
    /// Emit the bundle of a family as JSON.
    Construct(Options),
    /// Run the axiom suite on a bundle.
    VerifyAxioms(Options),
    /// Compute the Lie algebroid B / A del(A).
    QuotientLieAlgebroid(Options),
    /// One-dimensional modules of B / A del(A), and the induced modules with --degree.
    Modules(Options),
    /// Build the truncated graded vertex algebra.
    BuildVa(Options),
    /// Graded dimensions of the truncated vertex algebra.
    Character(Options),
    /// Graded dimensions of a quotient by an ideal generated in degree 0.
    Quotient {
        #[command(flatten)]
        options: Options,
        /// `radical`, or a JSON list of vectors of A.
        #[arg(long, default_value = "radical")]
        ideal: String,
    },
    /// Compare the radical quotient with the Heisenberg vertex algebra.
    HeisCheck(Options),
    /// Constraints on a three-dimensional bundle; --params takes c0, c1, gamma0, gamma1.
    DeriveDim3(Options),
}

/// The outcome of one verb.
#[derive(Debug)]
pub struct Report {
    pub json: Value,
    pub text: String,
    pub passed: bool,
}

#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Parses `argv`, runs the verb and prints the report. Returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let json = options(&cli.command).json;
    match execute(&cli.command) {
        Ok(report) => {
            let out = if json || matches!(cli.command, Command::Construct(_)) {
                serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n"
            } else {
                report.text
            };
            // a closed pipe downstream is not an error of ours
            let _ = io::stdout().write_all(out.as_bytes());
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {}", e.0);
            2
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{msg}");
            1
        }
    }
}

fn options(command: &Command) -> &Options {
    match command {
        Command::VerifyAlgebra(o)
        | Command::VerifyLeibniz(o)
        | Command::ClassifyLeibniz(o)
        | Command::Construct(o)
        | Command::VerifyAxioms(o)
        | Command::QuotientLieAlgebroid(o)
        | Command::Modules(o)
        | Command::BuildVa(o)
        | Command::Character(o)
        | Command::HeisCheck(o)
        | Command::DeriveDim3(o) => o,
        Command::Quotient { options, .. } => options,
    }
}

#[derive(Debug)]
pub enum Failure {
    Input(InputError),
    /// A check that could not even produce a report, e.g. a rejected family.
    Check(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

pub fn execute(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::VerifyAlgebra(o) => verify_algebra(o),
        Command::VerifyLeibniz(o) => verify_leibniz(o),
        Command::ClassifyLeibniz(o) => classify_leibniz(o),
        Command::Construct(o) => {
            let bundle = bundle(o)?;
            let json = serde_json::to_value(&bundle).map_err(InputError::from)?;
            Ok(Report { text: String::new(), json, passed: true })
        }
        Command::VerifyAxioms(o) => verify_axioms(o),
        Command::QuotientLieAlgebroid(o) => quotient_lie_algebroid(o),
        Command::Modules(o) => modules(o),
        Command::BuildVa(o) => build_va(o, true),
        Command::Character(o) => build_va(o, false),
        Command::Quotient { options, ideal } => quotient(options, ideal),
        Command::HeisCheck(o) => heis_check(o),
        Command::DeriveDim3(o) => derive_dim3(o),
    }
}

fn read_input(o: &Options) -> Result<String, InputError> {
    match &o.input {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn params(o: &Options) -> Result<BTreeMap<String, Scalar>, InputError> {
    match &o.params {
        None => Ok(BTreeMap::new()),
        Some(text) => serde_json::from_str(text).map_err(|e| InputError(format!("--params: {e}"))),
    }
}

fn family(o: &Options) -> Result<Option<Family>, InputError> {
    match &o.family {
        None => Ok(None),
        Some(name) => Ok(Some(Family::from_params(name, &params(o)?)?)),
    }
}

/// The bundle from `--family`/`--params`, or from `--input` / standard input.
fn bundle(o: &Options) -> Result<VertexAlgebroid, InputError> {
    if let Some(f) = family(o)? {
        return Ok(f.build()?);
    }
    let parsed: VertexAlgebroid = serde_json::from_str(&read_input(o)?)?;
    Ok(parsed.validated()?)
}

fn scalar(text: &str) -> Result<Scalar, InputError> {
    text.parse::<Scalar>().map_err(|e| InputError(format!("{text:?}: {e}")))
}

fn vec_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

fn vec_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn verify_algebra(o: &Options) -> Result<Report, Failure> {
    let algebra = if o.family.is_some() {
        bundle(o)?.algebra().clone()
    } else {
        let parsed: FiniteAlgebra = serde_json::from_str(&read_input(o)?).map_err(InputError::from)?;
        match parsed.validated() {
            Ok(a) => a,
            Err(crate::algebra::AlgebraError::Shape(msg)) => return Err(InputError(msg).into()),
            Err(e) => {
                return Ok(Report {
                    json: json!({"valid": false, "failure": e.to_string()}),
                    text: format!("FAIL: {e}\n"),
                    passed: false,
                })
            }
        }
    };
    let radical = algebra.radical();
    let mut json = json!({
        "valid": true,
        "dim": algebra.dim(),
        "radical_dim": radical.len(),
        "radical": radical.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
    });
    let mut text = format!("valid commutative algebra of dimension {}\nradical dimension {}\n", algebra.dim(), radical.len());
    match algebra.local_profile() {
        Ok(p) => {
            json["local"] = json!(true);
            json["power_dims"] = json!(p.power_dims);
            json["nilpotency_index"] = json!(p.nilpotency_index);
            text += &format!("local, radical power dims {:?}\n", p.power_dims);
            for template in ["C[x]/(x^2)", "C[x]/(x^3)", "C[x,y]/(x^2,xy,y^2)"] {
                if algebra.profile_matches(template).unwrap_or(false) {
                    json["matches"] = json!(template);
                    text += &format!("matches {template}\n");
                }
            }
        }
        Err(e) => {
            json["local"] = json!(false);
            text += &format!("{e}\n");
        }
    }
    Ok(Report { json, text, passed: true })
}

fn leibniz_input(o: &Options) -> Result<LeibnizAlgebra, InputError> {
    if o.family.is_some() {
        return Ok(bundle(o)?.leibniz());
    }
    let parsed: LeibnizAlgebra = serde_json::from_str(&read_input(o)?)?;
    Ok(parsed.validated()?)
}

fn verify_leibniz(o: &Options) -> Result<Report, Failure> {
    let alg = leibniz_input(o)?;
    let check = alg.check_left_leibniz();
    let json = json!({"left_leibniz": check.holds, "is_lie": alg.is_lie(), "witness": check.witness});
    let text = match check.witness {
        None => format!("left Leibniz identity holds (Lie: {})\n", alg.is_lie()),
        Some((i, j, k)) => format!("FAIL: left Leibniz identity fails on basis triple ({i}, {j}, {k})\n"),
    };
    Ok(Report { json, text, passed: check.holds })
}

fn classify_leibniz(o: &Options) -> Result<Report, Failure> {
    let alg = leibniz_input(o)?;
    let c = match alg.classify_cyclic(o.seed) {
        Ok(c) => c,
        Err(LeibnizError::UnsupportedDimension(n)) => {
            return Err(InputError(format!("classification needs dimension 2 or 3, got {n}")).into())
        }
        Err(e) => return Err(Failure::Check(e.to_string())),
    };
    let mut json = json!({
        "tag": c.cyclic_type.tag(),
        "generator": vec_json(&c.form.generator),
        "relation": vec_json(&c.form.relation),
        "mu": c.scaling_invariant.as_ref().map(|m| m.to_string()),
    });
    let mut text = format!("type {}\ngenerator {}\nrelation {}\n", c.cyclic_type, vec_text(&c.form.generator), vec_text(&c.form.relation));
    if let Some(mu) = &c.scaling_invariant {
        text += &format!("mu = {mu}\n");
    }
    match &c.alpha {
        Some(AlphaRoots::Pair(x, y)) => {
            json["alpha"] = json!([x.to_string(), y.to_string()]);
            text += &format!("alpha in {{{x}, {y}}}\n");
        }
        Some(AlphaRoots::Irrational { discriminant }) => {
            json["alpha_discriminant"] = json!(discriminant.to_string());
            text += &format!("alpha irrational, discriminant {discriminant}\n");
        }
        None => {}
    }
    Ok(Report { json, text, passed: true })
}

fn verify_axioms(o: &Options) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let report = bundle.check_axioms();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"group": c.group.name(), "name": c.name, "passed": c.passed, "witness": c.witness}))
        .collect();
    let mut text = String::new();
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        text += &format!("{mark} [{}] {}", c.group.name(), c.name);
        if let Some(w) = &c.witness {
            text += &format!(" at {w}");
        }
        text.push('\n');
    }
    text += &format!("{} of {} checks passed\n", report.checks.len() - report.failures().len(), report.checks.len());
    Ok(Report { json: json!({"passed": report.all_passed(), "checks": checks}), text, passed: report.all_passed() })
}

fn quotient_lie_algebroid(o: &Options) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let q = bundle.lie_algebroid_quotient().map_err(|e| Failure::Check(e.to_string()))?;
    let table = |t: &Vec<Vec<DenseVec>>| -> Value {
        Value::Array(t.iter().map(|row| Value::Array(row.iter().map(|v| vec_json(v)).collect())).collect())
    };
    let checks = q.check();
    let passed = checks.iter().all(|(_, ok)| *ok);
    let json = json!({
        "dim": q.q_dim,
        "bracket": table(&q.bracket),
        "action": table(&q.action),
        "anchor": table(&q.anchor),
        "projection": q.projection.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "lift": q.lift.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "identities": checks.iter().map(|(name, ok)| json!({"name": name, "passed": ok})).collect::<Vec<_>>(),
    });
    let mut text = format!("B / A del(A) has dimension {}\n", q.q_dim);
    for (k, v) in q.lift.iter().enumerate() {
        text += &format!("q{k} lifts to {}\n", vec_text(v));
    }
    for (name, ok) in &checks {
        text += &format!("{} {name}\n", if *ok { "ok  " } else { "FAIL" });
    }
    Ok(Report { json, text, passed })
}

fn dims_json(dims: &[GradedDim]) -> Value {
    serde_json::to_value(dims).expect("dims serialize")
}

fn dims_text(dims: &[GradedDim]) -> String {
    let mut text = String::from("degree  dim  lower  certificate\n");
    for d in dims {
        let cert = serde_json::to_value(d.certificate).expect("serializes");
        text += &format!("{:>6}  {:>3}  {:>5}  {}\n", d.degree, d.dim, d.lower_bound, cert.as_str().unwrap_or(""));
    }
    text
}

fn modules(o: &Options) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let m = bundle.one_dim_modules().map_err(|e| Failure::Check(e.to_string()))?;
    let lambdas: Vec<Scalar> = match &o.lambda {
        Some(l) => vec![scalar(l)?],
        None => ["0", "1", "-2", "3/2", "i"].iter().map(|t| t.parse().expect("literal")).collect(),
    };
    let mut json = json!({
        "residue": vec_json(&m.residue),
        "radical": m.radical.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
        "radical_exponents": m.radical_exponents,
    });
    let mut text = format!("A acts through its residue {}\n", vec_text(&m.residue));
    let mut passed = true;
    let mut checked = Vec::new();
    for lambda in &lambdas {
        let check = m.verify(&m.standard(lambda));
        passed &= check.passed;
        text += &format!("lambda = {lambda}: {}\n", if check.passed { "module" } else { "FAIL" });
        for v in &check.violations {
            text += &format!("  {v}\n");
        }
        checked.push(json!({"lambda": lambda.to_string(), "passed": check.passed, "violations": check.violations}));
    }
    json["modules"] = Value::Array(checked);
    if let (Some(n), Some(lambda)) = (o.degree, lambdas.first().filter(|_| o.lambda.is_some())) {
        let g = induced_module(&bundle, lambda, n).map_err(|e| Failure::Check(e.to_string()))?;
        passed &= g.methods_agree() && g.simple.first() == Some(&1);
        json["induced"] = json!(g.induced);
        json["restricted"] = dims_json(&g.restricted);
        json["simple"] = json!(g.simple);
        json["simple_by_words"] = json!(g.simple_by_words);
        text += &format!("M(U) dims {:?}\nM_B(U):\n{}L(U) dims {:?} (by lowering words {:?})\n", g.induced, dims_text(&g.restricted), g.simple, g.simple_by_words);
    }
    Ok(Report { json, text, passed })
}

fn truncation(o: &Options) -> (usize, usize) {
    (o.degree.unwrap_or(va::DEFAULT_DEGREE), o.cap.unwrap_or(va::DEFAULT_CAP))
}

fn build_va(o: &Options, full: bool) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let (n, cap) = truncation(o);
    let vb = build_vb(&bundle, n, cap).map_err(|e| Failure::Check(e.to_string()))?;
    let mut json = json!({"degree": n, "cap": cap, "character": dims_json(vb.character())});
    let mut text = dims_text(vb.character());
    let mut passed = true;
    if full {
        let fixpoint = vb.fixpoint_holds().map_err(|e| Failure::Check(e.to_string()))?;
        passed &= fixpoint;
        let mut bases = Vec::new();
        for d in 0..=n.min(2) {
            let names: Vec<String> = vb.basis(d).iter().map(|v| vb.describe(v)).collect();
            text += &format!("basis in degree {d}: {}\n", names.join(", "));
            bases.push(names);
        }
        text += &format!("relation space closed under modes: {fixpoint}\n");
        json["fixpoint"] = json!(fixpoint);
        json["low_degree_bases"] = json!(bases);
    }
    Ok(Report { json, text, passed })
}

fn quotient(o: &Options, ideal: &str) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let (n, cap) = truncation(o);
    let generators: Vec<DenseVec> = if ideal == "radical" {
        bundle.algebra().radical()
    } else {
        serde_json::from_str(ideal).map_err(|e| InputError(format!("--ideal: {e}")))?
    };
    if generators.iter().any(|v| v.len() != bundle.a_dim()) {
        return Err(InputError(format!("ideal generators must have length {}", bundle.a_dim())).into());
    }
    let vb = build_vb(&bundle, n, cap).map_err(|e| Failure::Check(e.to_string()))?;
    let q = vb.degree0_ideal_quotient(&generators).map_err(|e| match e {
        va::VaError::NotInRadical => Failure::Input(InputError(e.to_string())),
        other => Failure::Check(other.to_string()),
    })?;
    let proper = (0..=n).any(|d| q.dim(d) < vb.dim(d)) && q.dim(0) > 0;
    let json = json!({"degree": n, "cap": cap, "character": dims_json(q.character()), "original": dims_json(vb.character())});
    let text = dims_text(q.character());
    Ok(Report { json, text, passed: proper || generators.is_empty() })
}

fn heis_check(o: &Options) -> Result<Report, Failure> {
    let bundle = bundle(o)?;
    let n = o.degree.unwrap_or(va::DEFAULT_DEGREE);
    let report = match heisenberg_check(&bundle, n) {
        Ok(r) => r,
        Err(e @ HeisenbergError::NotHeisenbergFamily(_)) => return Err(Failure::Check(e.to_string())),
        Err(e) => return Err(Failure::Check(e.to_string())),
    };
    let mut text = String::from("degree  p(n)  quotient  bijective\n");
    for d in &report.degrees {
        text += &format!("{:>6}  {:>4}  {:>8}  {}\n", d.degree, d.partitions, d.quotient_dim, d.bijective);
    }
    text += &format!("residue {}; ", report.residue);
    match &report.rescale_factor {
        Some(s) => text += &format!("b_bar = {s} b\n"),
        None => text += "no square root\n",
    }
    text += &format!("{} intertwining samples, {} failures\n", report.samples, report.failures.len());
    for f in &report.failures {
        text += &format!("  {f}\n");
    }
    if let Some(note) = &report.skipped {
        text += &format!("{note}\n");
    }
    let verdict = serde_json::to_value(report.verdict).expect("serializes");
    text += &format!("verdict: {}\n", verdict.as_str().unwrap_or(""));
    let passed = report.verdict != Verdict::Fail;
    Ok(Report { json: serde_json::to_value(&report).map_err(InputError::from)?, text, passed })
}

fn derive_dim3(o: &Options) -> Result<Report, Failure> {
    let p = params(o)?;
    if let Some(extra) = p.keys().find(|k| !["c0", "c1", "gamma0", "gamma1"].contains(&k.as_str())) {
        return Err(InputError(format!("derive-dim3 does not take {extra:?}")).into());
    }
    let get = |k: &str| p.get(k).cloned().unwrap_or_default();
    let c = derive_dim3_constraints(&get("c0"), &get("c1"), &get("gamma0"), &get("gamma1"))
        .map_err(|e| Failure::Check(e.to_string()))?;
    let chi = Scalar::default();
    let json = json!({
        "beta": c.beta.to_string(),
        "kappa": c.kappa.to_string(),
        "chi_forced_zero": c.chi_forced_zero,
        "a_times_a_at_chi_0": vec_json(&c.a_times_a(&chi)),
        "a_del_a": vec_json(&c.a_del_a()),
        "a_times_b0a": vec_json(&c.a_times_b0a()),
        "b0a_squared": vec_json(&c.b0a_squared()),
    });
    let text = format!(
        "beta = {}\nkappa = {}\nchi forced to 0: {}\na*a = {} in (1, a, b0a) at chi = 0\na.del a = {} in (del a, del b0a)\n",
        c.beta,
        c.kappa,
        c.chi_forced_zero,
        vec_text(&c.a_times_a(&chi)),
        vec_text(&c.a_del_a())
    );
    Ok(Report { json, text, passed: true })
}
