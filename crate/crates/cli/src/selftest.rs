//! Built-in examples: every embedded document is run through its command and
//! the exit code and selected records are compared with the manifest.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::commands::{run, Code, Command, InArgs, Outcome, PointArgs, TraceArgs};
use crate::doc::Document;
use crate::report::Report;

macro_rules! embed {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../selftest/", $name)))),*]
    };
}

static FILES: &[(&str, &str)] = embed!(
    "trivial.wdt",
    "unramified_phi2.wdt",
    "bad_relation.wdt",
    "sp2.wdt",
    "sp2_zeta4_q.wdt",
    "unipotent.wdt",
    "conj_sum.wdt",
    "pure0.wdt",
    "tame_sign.wdt",
    "regular_c2.wdt",
    "wild_c3.wdt",
    "sp2_x.wdt",
    "degenerating.wdt",
    "conj_family.wdt",
    "diag_x_xq.wdt",
    "diag_x_x.wdt",
    "sp2_x_points.toml",
    "degenerating_points.toml",
    "conj_family_points.toml",
    "one_point.toml",
);

const MANIFEST: &str = include_str!("../selftest/manifest.toml");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    case: Vec<Case>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Case {
    name: String,
    command: String,
    input: String,
    points: Option<String>,
    against: Option<String>,
    #[serde(default)]
    strict: bool,
    exit: u8,
    #[serde(default)]
    expect: Vec<String>,
}

fn embedded(path: &Path) -> Result<String, String> {
    let name = path.to_str().unwrap_or_default();
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| "no such embedded file".to_string())
}

fn command_of(c: &Case) -> Result<Command, String> {
    let input = PathBuf::from(&c.input);
    let points = || c.points.clone().map(PathBuf::from).ok_or("missing points");
    Ok(match c.command.as_str() {
        "validate" => Command::Validate(InArgs { input }),
        "conductor" => Command::Conductor(InArgs { input }),
        "frobss" => Command::Frobss(InArgs { input }),
        "decompose" => Command::Decompose(InArgs { input }),
        "purity" => Command::Purity(InArgs { input }),
        "specialize" => Command::Specialize(PointArgs { input, points: points()? }),
        "sweep" => Command::Sweep(PointArgs { input, points: points()? }),
        "trace-check" => Command::TraceCheck(TraceArgs {
            input,
            against: c.against.clone().map(PathBuf::from).ok_or("missing against")?,
            points: c.points.clone().map(PathBuf::from),
        }),
        other => return Err(format!("unknown command {other}")),
    })
}

fn check_case(c: &Case) -> Result<(), String> {
    let cmd = command_of(c)?;
    let out = run(&cmd, c.strict, &embedded);
    if out.code as u8 != c.exit {
        return Err(format!("exit {} instead of {}", out.code as u8, c.exit));
    }
    let records = out.report.records();
    for e in &c.expect {
        let (k, v) = e.split_once('=').ok_or_else(|| format!("bad expectation {e}"))?;
        match records.iter().find(|(rk, _)| rk == k) {
            Some((_, rv)) if rv == v => {}
            Some((_, rv)) => return Err(format!("{k}={rv}, expected {v}")),
            None => return Err(format!("no record {k}")),
        }
    }
    Ok(())
}

fn round_trip(name: &str, text: &str) -> Result<(), String> {
    let doc = Document::parse(text).map_err(|e| e.to_string())?;
    let again = Document::parse(&doc.to_toml().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    if again != doc {
        return Err(format!("{name} changes under write and re-read"));
    }
    Ok(())
}

pub fn run_all() -> Outcome {
    let mut r = Report::default();
    r.kv("command", "selftest");
    let manifest: Manifest = match toml::from_str(MANIFEST) {
        Ok(m) => m,
        Err(e) => {
            r.kv("status", "error").kv("error", format!("manifest: {}", e.message()));
            return Outcome { code: Code::Internal, report: r };
        }
    };
    let mut results: Vec<(String, Result<(), String>)> =
        manifest.case.iter().map(|c| (c.name.clone(), check_case(c))).collect();
    for (name, text) in FILES.iter().filter(|(n, _)| n.ends_with(".wdt")) {
        results.push((format!("round-trip {name}"), round_trip(name, text)));
    }
    let failed = results.iter().filter(|(_, res)| res.is_err()).count();
    for (i, (name, res)) in results.iter().enumerate() {
        r.kv(format!("case.{i}.name"), name);
        r.kv(format!("case.{i}.result"), if res.is_ok() { "pass" } else { "fail" });
        match res {
            Ok(()) => {
                r.line(format!("pass  {name}"));
            }
            Err(e) => {
                r.kv(format!("case.{i}.detail"), e);
                r.line(format!("FAIL  {name}: {e}"));
            }
        }
    }
    r.kv("passed", results.len() - failed).kv("failed", failed);
    r.line(format!("{} passed, {failed} failed", results.len() - failed));
    let code = if failed == 0 {
        r.kv("status", "ok");
        Code::Success
    } else {
        r.kv("status", "error").kv("error", format!("{failed} selftest cases failed"));
        Code::Internal
    };
    Outcome { code, report: r }
}

#[cfg(test)]
mod tests {
    #[test]
    fn all_examples_pass() {
        let o = super::run_all();
        assert_eq!(o.code, super::Code::Success, "{}", o.report.render(crate::report::Mode::Text));
    }
}
