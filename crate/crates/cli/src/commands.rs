//! Command implementations. Each returns an [`Outcome`]: an exit code and a
//! report; file access goes through a loader so `selftest` can run on
//! embedded documents.

use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use wdtk_core::families::{
    check_trace_compat, default_words, specialize, sweep, theorem_c_harness, Family, MemberStatus, PseudoTrace,
    SpecializationMap,
};
use wdtk_core::report::ValidationReport;
use wdtk_core::scalars::Cyclo;
use wdtk_core::wdrep::{conductor, decompose_verified, frobenius_ss, purity_check, validate_wd, ConductorReport, Purity, WdRep};
use wdtk_core::Error;

use crate::doc::{cyclo_matrix_line, parse_points, DocError, Document};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Success = 0,
    Internal = 1,
    Invalid = 2,
    NotApplicable = 3,
    Undecidable = 4,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: Code,
    pub report: Report,
}

pub type Loader<'a> = &'a dyn Fn(&Path) -> Result<String, String>;

#[derive(Debug, Clone, Args)]
pub struct InArgs {
    /// Representation or family document (.wdt)
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Points file with [[point]] entries
    #[arg(long, value_name = "FILE")]
    pub points: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    /// Family whose traces serve as the reference
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Family compared against the reference
    #[arg(long, value_name = "FILE")]
    pub against: PathBuf,
    /// Also run the conductor harness on both families at these points
    #[arg(long, value_name = "FILE")]
    pub points: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Check every defining relation
    Validate(InArgs),
    /// Conductor (generic conductor for families)
    Conductor(InArgs),
    /// Frobenius-semisimplification
    Frobss(InArgs),
    /// Decomposition into Sp_t(chi ⊗ rho) blocks
    Decompose(InArgs),
    /// Purity verdict and weight
    Purity(InArgs),
    /// Evaluate a family at points
    Specialize(PointArgs),
    /// Purity and conductor at each point against the generic conductor
    Sweep(PointArgs),
    /// Trace compatibility of two families
    TraceCheck(TraceArgs),
    /// Run the built-in example documents
    Selftest,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate(_) => "validate",
            Command::Conductor(_) => "conductor",
            Command::Frobss(_) => "frobss",
            Command::Decompose(_) => "decompose",
            Command::Purity(_) => "purity",
            Command::Specialize(_) => "specialize",
            Command::Sweep(_) => "sweep",
            Command::TraceCheck(_) => "trace-check",
            Command::Selftest => "selftest",
        }
    }
}

fn code_of(e: &Error) -> Code {
    match e {
        Error::NotFrobeniusSemisimple => Code::NotApplicable,
        Error::Undecidable(_) => Code::Undecidable,
        Error::Internal(_) => Code::Internal,
        _ => Code::Invalid,
    }
}

fn fail(mut report: Report, code: Code, msg: impl Into<String>) -> Outcome {
    let msg = msg.into();
    report.kv("status", "error").kv("error", &msg).line(format!("error: {msg}"));
    Outcome { code, report }
}

fn from_error(report: Report, e: &Error) -> Outcome {
    fail(report, code_of(e), e.to_string())
}

fn header(name: &str) -> Report {
    let mut r = Report::default();
    r.kv("command", name);
    r
}

fn load_doc(load: Loader, path: &Path) -> Result<Document, String> {
    let text = load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Document::parse(&text).map_err(|DocError(e)| format!("{}: {e}", path.display()))
}

fn load_points(load: Loader, path: &Path, order: u32) -> Result<Vec<SpecializationMap>, String> {
    let text = load(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_points(&text, order).map_err(|DocError(e)| format!("{}: {e}", path.display()))
}

fn push_validation(r: &mut Report, v: &ValidationReport) {
    r.kv("valid", v.is_valid()).kv("violations", v.violations.len());
    for (i, x) in v.violations.iter().enumerate() {
        r.kv(format!("violation.{i}.code"), x.code)
            .kv(format!("violation.{i}.location"), &x.location)
            .kv(format!("violation.{i}.message"), &x.message);
    }
    for (i, x) in v.warnings.iter().enumerate() {
        r.kv(format!("warning.{i}.code"), x.code).kv(format!("warning.{i}.message"), &x.message);
    }
}

/// Loads, parses and validates; any failure becomes the final outcome.
fn valid_doc(r: &Report, load: Loader, path: &Path, strict: bool) -> Result<Document, Outcome> {
    let doc = load_doc(load, path).map_err(|e| fail(r.clone(), Code::Invalid, e))?;
    let v = validate_wd(&doc.family.rep, strict);
    if !v.is_valid() {
        let mut r = r.clone();
        push_validation(&mut r, &v);
        return Err(fail(r, Code::Invalid, format!("invalid representation:\n{v}")));
    }
    Ok(doc)
}

fn constant(r: &Report, doc: &Document) -> Result<WdRep<Cyclo>, Outcome> {
    doc.constant_rep().ok_or_else(|| {
        fail(
            r.clone(),
            Code::NotApplicable,
            format!(
                "the document declares variables ({}); specialize it at a point first",
                doc.domain().names.join(", ")
            ),
        )
    })
}

fn push_conductor(r: &mut Report, prefix: &str, c: &ConductorReport) {
    r.kv(format!("{prefix}tame"), c.tame_term)
        .kv(format!("{prefix}swan"), &c.swan_term)
        .kv(format!("{prefix}total"), &c.total)
        .kv(format!("{prefix}realizability_warning"), c.realizability_warning);
}

fn purity_fields(p: &Purity) -> (&'static str, String) {
    match p {
        Purity::Pure { weight } => ("pure", weight.to_string()),
        Purity::NotPure { witness } => ("not_pure", witness.clone()),
        Purity::Undecidable { reason } => ("undecidable", reason.clone()),
    }
}

pub fn run(cmd: &Command, strict: bool, load: Loader) -> Outcome {
    let r = header(cmd.name());
    let result = match cmd {
        Command::Validate(a) => validate(r, load, &a.input, strict),
        Command::Conductor(a) => cmd_conductor(r, load, &a.input, strict),
        Command::Frobss(a) => frobss(r, load, &a.input, strict),
        Command::Decompose(a) => decompose(r, load, &a.input, strict),
        Command::Purity(a) => purity(r, load, &a.input, strict),
        Command::Specialize(a) => cmd_specialize(r, load, a, strict),
        Command::Sweep(a) => cmd_sweep(r, load, a, strict),
        Command::TraceCheck(a) => trace_check(r, load, a, strict),
        Command::Selftest => Ok(crate::selftest::run_all()),
    };
    result.unwrap_or_else(|o| o)
}

fn ok(mut r: Report) -> Result<Outcome, Outcome> {
    r.kv("status", "ok");
    Ok(Outcome { code: Code::Success, report: r })
}

fn validate(mut r: Report, load: Loader, path: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let doc = load_doc(load, path).map_err(|e| fail(r.clone(), Code::Invalid, e))?;
    let rep = &doc.family.rep;
    r.kv("dim", rep.dim())
        .kv("variables", doc.domain().names.join(","))
        .kv("group_order", rep.datum().order())
        .kv("strict", strict);
    let v = validate_wd(rep, strict);
    push_validation(&mut r, &v);
    r.line(v.to_string());
    if v.is_valid() {
        ok(r)
    } else {
        Err(fail(r, Code::Invalid, "representation violates the listed relations"))
    }
}

fn cmd_conductor(mut r: Report, load: Loader, path: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let doc = valid_doc(&r, load, path, strict)?;
    let c = conductor(&doc.family.rep).map_err(|e| from_error(r.clone(), &e))?;
    let generic = !doc.is_constant();
    r.kv("generic", generic);
    push_conductor(&mut r, "", &c);
    r.kv("note", "tame term is the codimension of the inertia invariants in ker N");
    let over = if generic {
        format!(" (generic fiber over {})", doc.domain().names.join(", "))
    } else {
        String::new()
    };
    r.line(format!("{c}{over}"));
    ok(r)
}

fn frobss(mut r: Report, load: Loader, path: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let doc = valid_doc(&r, load, path, strict)?;
    let w = constant(&r, &doc)?;
    let ss = frobenius_ss(&w).map_err(|e| from_error(r.clone(), &e))?;
    let out = Document::from_rep(&ss);
    let order = doc.domain().order;
    let phi = cyclo_matrix_line(ss.phi(), order).map_err(|e| fail(r.clone(), Code::Internal, e.0))?;
    r.kv("changed", ss != w).kv("Phi", phi);
    let text = out.to_toml().map_err(|e| fail(r.clone(), Code::Internal, e.0))?;
    r.line(text.trim_end());
    ok(r)
}

fn decompose(mut r: Report, load: Loader, path: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let doc = valid_doc(&r, load, path, strict)?;
    let w = constant(&r, &doc)?;
    let (blocks, _) = decompose_verified(&w).map_err(|e| from_error(r.clone(), &e))?;
    r.kv("blocks", blocks.len()).kv("verified", true);
    for (i, b) in blocks.iter().enumerate() {
        let frob = cyclo_matrix_line(&b.rho.frobenius, w.cyclotomic_order()).map_err(|e| fail(r.clone(), Code::Internal, e.0))?;
        r.kv(format!("block.{i}.t"), b.t)
            .kv(format!("block.{i}.chi"), b.chi)
            .kv(format!("block.{i}.rho_dim"), b.rho.dim())
            .kv(format!("block.{i}.rho_frobenius"), frob)
            .kv(format!("block.{i}.weight"), b.weight());
        r.line(format!("{b}, weight {}", b.weight()));
    }
    ok(r)
}

fn purity(mut r: Report, load: Loader, path: &Path, strict: bool) -> Result<Outcome, Outcome> {
    let doc = valid_doc(&r, load, path, strict)?;
    let w = constant(&r, &doc)?;
    let p = purity_check(&w).map_err(|e| from_error(r.clone(), &e))?;
    let (verdict, detail) = purity_fields(&p);
    r.kv("verdict", verdict);
    match &p {
        Purity::Pure { .. } => r.kv("weight", detail),
        Purity::NotPure { .. } => r.kv("witness", detail),
        Purity::Undecidable { .. } => r.kv("reason", detail),
    };
    r.line(p.to_string());
    if p.is_decidable() {
        ok(r)
    } else {
        r.kv("status", "undecidable");
        Err(Outcome {
            code: Code::Undecidable,
            report: r,
        })
    }
}

fn family_and_points(r: &Report, load: Loader, a: &PointArgs, strict: bool) -> Result<(Document, Vec<SpecializationMap>), Outcome> {
    let doc = valid_doc(r, load, &a.input, strict)?;
    let points = load_points(load, &a.points, doc.domain().order).map_err(|e| fail(r.clone(), Code::Invalid, e))?;
    Ok((doc, points))
}

fn cmd_specialize(mut r: Report, load: Loader, a: &PointArgs, strict: bool) -> Result<Outcome, Outcome> {
    let (doc, points) = family_and_points(&r, load, a, strict)?;
    r.kv("points", points.len());
    for (i, p) in points.iter().enumerate() {
        let w = specialize(&doc.family, p).map_err(|e| from_error(r.clone(), &e))?;
        let out = Document::from_rep(&w);
        let order = w.cyclotomic_order();
        let mut mats = vec![(format!("point.{i}.Phi"), w.phi()), (format!("point.{i}.N_matrix"), w.n())];
        mats.extend(w.rho().iter().enumerate().skip(1).map(|(g, m)| (format!("point.{i}.rho.{g}"), m)));
        r.kv(format!("point.{i}.label"), p);
        for (key, m) in mats {
            let line = cyclo_matrix_line(m, order).map_err(|e| fail(r.clone(), Code::Internal, e.0))?;
            r.kv(key, line);
        }
        let text = out.to_toml().map_err(|e| fail(r.clone(), Code::Internal, e.0))?;
        r.line(format!("# point {p}")).line(text.trim_end());
    }
    ok(r)
}

fn cmd_sweep(mut r: Report, load: Loader, a: &PointArgs, strict: bool) -> Result<Outcome, Outcome> {
    let (doc, points) = family_and_points(&r, load, a, strict)?;
    let report = sweep(&doc.family, &points).map_err(|e| from_error(r.clone(), &e))?;
    push_conductor(&mut r, "generic.", &report.generic);
    r.line(format!("generic: {}", report.generic));
    for (i, row) in report.rows.iter().enumerate() {
        r.kv(format!("row.{i}.point"), &row.point);
        let mut text = format!("{}:", row.point);
        if let Some(p) = &row.purity {
            let (verdict, detail) = purity_fields(p);
            r.kv(format!("row.{i}.purity"), verdict);
            if p.is_pure() {
                r.kv(format!("row.{i}.weight"), &detail);
            }
            text.push_str(&format!(" {p};"));
        }
        if let Some(c) = &row.conductor {
            push_conductor(&mut r, &format!("row.{i}."), c);
            r.kv(format!("row.{i}.matches_generic"), row.matches_generic);
            text.push_str(&format!(" {c};"));
            text.push_str(if row.matches_generic { " matches generic" } else { " differs from generic" });
        }
        if let Some(e) = &row.error {
            r.kv(format!("row.{i}.error"), e);
            text.push_str(&format!(" error: {e}"));
        }
        r.line(text);
    }
    let violations = report.violations();
    r.kv("pure_rows", report.pure_rows()).kv("violations", violations.len());
    if violations.is_empty() {
        r.line(format!("{} pure points, all with the generic conductor", report.pure_rows()));
        ok(r)
    } else {
        let at: Vec<&str> = violations.iter().map(|v| v.point.as_str()).collect();
        Err(fail(r, Code::Internal, format!("pure points with a different conductor: {}", at.join("; "))))
    }
}

fn trace_check(mut r: Report, load: Loader, a: &TraceArgs, strict: bool) -> Result<Outcome, Outcome> {
    let reference = valid_doc(&r, load, &a.input, strict)?;
    let other = valid_doc(&r, load, &a.against, strict)?;
    let t = PseudoTrace::new(reference.family.clone());
    let words = default_words(t.source.rep.rho().len(), t.dim());
    let tr = check_trace_compat(&t, &other.family, &words).map_err(|e| from_error(r.clone(), &e))?;
    r.kv("words", tr.checked).kv("mismatches", tr.mismatches.len());
    for (i, (w, x, y)) in tr.mismatches.iter().enumerate() {
        r.kv(format!("mismatch.{i}.word"), format!("rho({})*Phi^{}", w.g, w.k))
            .kv(format!("mismatch.{i}.reference"), x)
            .kv(format!("mismatch.{i}.against"), y);
        r.line(format!("mismatch at rho({})*Phi^{}: {x} vs {y}", w.g, w.k));
    }
    r.line(format!("{} words checked, {} mismatches", tr.checked, tr.mismatches.len()));
    let Some(points) = &a.points else { return ok(r) };
    let order = reference.domain().order.max(other.domain().order);
    let pts = load_points(load, points, order).map_err(|e| fail(r.clone(), Code::Invalid, e))?;
    let mut members: Vec<(Family, SpecializationMap)> = Vec::new();
    let mut sources = Vec::new();
    for (name, fam) in [("in", &reference.family), ("against", &other.family)] {
        for p in &pts {
            members.push((fam.clone(), p.clone()));
            sources.push(name);
        }
    }
    let h = theorem_c_harness(&t, &members);
    for (i, m) in h.members.iter().enumerate() {
        r.kv(format!("member.{i}.source"), sources[i]).kv(format!("member.{i}.point"), &m.point);
        match &m.status {
            MemberStatus::Qualified => r.kv(format!("member.{i}.status"), "qualified"),
            MemberStatus::HypothesisFailed(why) => r
                .kv(format!("member.{i}.status"), "hypothesis_failed")
                .kv(format!("member.{i}.reason"), why),
        };
    }
    match &h.constant {
        Some(c) => r.kv("constant", c),
        None => r.kv("constant", "none"),
    };
    r.kv("harness_violations", h.violations.len());
    r.line(h.to_string());
    if h.holds() {
        ok(r)
    } else {
        Err(fail(r, Code::Internal, h.violations.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SP2: &str = "format = 1\nPhi = [[\"1\", \"0\"], [\"0\", \"1/3\"]]\nN_matrix = [[\"0\", \"0\"], [\"1\", \"0\"]]\n[scalars]\ncyclotomic_order = 1\n[local_field]\nell = 3\nf = 1\n";

    fn with(text: &'static str) -> impl Fn(&Path) -> Result<String, String> {
        move |_| Ok(text.to_string())
    }

    fn value(o: &Outcome, key: &str) -> Option<String> {
        o.report.records().iter().find(|(k, _)| k == key).map(|(_, v)| v.clone())
    }

    #[test]
    fn conductor_of_sp2() {
        let cmd = Command::Conductor(InArgs { input: "sp2.wdt".into() });
        let o = run(&cmd, false, &with(SP2));
        assert_eq!(o.code, Code::Success);
        assert_eq!(value(&o, "total").as_deref(), Some("1"));
    }

    #[test]
    fn missing_file_is_a_validation_error() {
        let cmd = Command::Validate(InArgs { input: "nope.wdt".into() });
        let o = run(&cmd, false, &|_: &Path| Err("not found".to_string()));
        assert_eq!(o.code, Code::Invalid);
    }

    #[test]
    fn decompose_rejects_unipotent_phi() {
        let text = "format = 1\nPhi = [[\"1\", \"1\"], [\"0\", \"1\"]]\nN_matrix = [[\"0\", \"0\"], [\"0\", \"0\"]]\n[scalars]\ncyclotomic_order = 1\n[local_field]\nell = 3\nf = 1\n";
        let cmd = Command::Decompose(InArgs { input: "u.wdt".into() });
        assert_eq!(run(&cmd, false, &with(text)).code, Code::NotApplicable);
    }
}
