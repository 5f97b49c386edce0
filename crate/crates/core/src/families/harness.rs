//! Reporting harnesses: conductor constancy across trace-compatible
//! families, and additivity over sums of families at a point.

use std::fmt;

use rayon::prelude::*;

use super::trace::{compare_with_values, default_words, PseudoTrace, TraceReport, Word};
use super::{direct_sum_families, generic_conductor, specialize, Family, SpecializationMap};
use crate::error::Error;
use crate::scalars::{LaurentPoly, Rational};
use crate::wdrep::{conductor, direct_sum, purity_check, ConductorReport, Purity};

#[derive(Debug, Clone, PartialEq)]
pub enum MemberStatus {
    Qualified,
    /// Trace compatibility or purity does not hold; not a violation.
    HypothesisFailed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MemberOutcome {
    pub point: String,
    pub trace: Option<TraceReport>,
    pub purity: Option<Purity>,
    pub generic: Option<ConductorReport>,
    pub specialized: Option<ConductorReport>,
    pub status: MemberStatus,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremCReport {
    pub members: Vec<MemberOutcome>,
    /// Common conductor of the qualified members.
    pub constant: Option<Rational>,
    pub violations: Vec<String>,
}

impl TheoremCReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn qualified(&self) -> usize {
        self.members.iter().filter(|m| m.status == MemberStatus::Qualified).count()
    }
}

impl fmt::Display for TheoremCReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            match &m.status {
                MemberStatus::Qualified => {
                    let g = m.generic.as_ref().map_or("?".into(), |c| c.total.to_string());
                    let s = m.specialized.as_ref().map_or("?".into(), |c| c.total.to_string());
                    writeln!(f, "member {i} at {}: qualified, generic {g}, specialized {s}", m.point)?;
                }
                MemberStatus::HypothesisFailed(why) => writeln!(f, "member {i} at {}: hypothesis failed: {why}", m.point)?,
            }
        }
        match (&self.constant, self.violations.is_empty()) {
            (Some(c), true) => write!(f, "C = {c}"),
            (None, true) => write!(f, "no qualifying member"),
            _ => write!(f, "VIOLATION: {}", self.violations.join("; ")),
        }
    }
}

fn failed(mut m: MemberOutcome, why: impl Into<String>) -> MemberOutcome {
    m.status = MemberStatus::HypothesisFailed(why.into());
    m
}

/// Route disagreements inside purity checking are genuine faults and are
/// returned as such; every other failure disqualifies the member.
fn evaluate_member(
    t: &PseudoTrace,
    words: &[Word],
    values: &Result<Vec<LaurentPoly>, String>,
    family: &Family,
    point: &SpecializationMap,
) -> Result<MemberOutcome, String> {
    let mut m = MemberOutcome {
        point: point.to_string(),
        trace: None,
        purity: None,
        generic: None,
        specialized: None,
        status: MemberStatus::Qualified,
    };
    let values = match values {
        Ok(v) => v,
        Err(e) => return Ok(failed(m, format!("reference trace: {e}"))),
    };
    match compare_with_values(t, values, family, words) {
        Ok(r) => {
            let ok = r.all_match();
            let n = r.mismatches.len();
            m.trace = Some(r);
            if !ok {
                return Ok(failed(m, format!("trace mismatch on {n} words")));
            }
        }
        Err(e) => return Ok(failed(m, format!("trace check: {e}"))),
    }
    let w = match specialize(family, point) {
        Ok(w) => w,
        Err(e) => return Ok(failed(m, format!("specialization: {e}"))),
    };
    match purity_check(&w) {
        Ok(p) => {
            let pure = p.is_pure();
            m.purity = Some(p.clone());
            if !pure {
                return Ok(failed(m, format!("specialization is {p}")));
            }
        }
        Err(Error::Internal(e)) => return Err(e),
        Err(e) => return Ok(failed(m, format!("purity: {e}"))),
    }
    match (generic_conductor(family), conductor(&w)) {
        (Ok(g), Ok(s)) => {
            m.generic = Some(g);
            m.specialized = Some(s);
            Ok(m)
        }
        (Err(e), _) | (_, Err(e)) => Ok(failed(m, format!("conductor: {e}"))),
    }
}

/// For each member checks trace compatibility with `t` on the default word
/// battery and purity at its point; all qualified members must share one
/// generic and specialized conductor.
pub fn theorem_c_harness(t: &PseudoTrace, members: &[(Family, SpecializationMap)]) -> TheoremCReport {
    let words = default_words(t.source.rep.rho().len(), t.dim());
    let values = t.values(&words).map_err(|e| e.to_string());
    let results: Vec<Result<MemberOutcome, String>> =
        members.par_iter().map(|(f, s)| evaluate_member(t, &words, &values, f, s)).collect();
    let mut violations = Vec::new();
    let mut outcomes = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(m) => outcomes.push(m),
            Err(e) => {
                violations.push(format!("member {i}: {e}"));
                outcomes.push(MemberOutcome {
                    point: members[i].1.to_string(),
                    trace: None,
                    purity: None,
                    generic: None,
                    specialized: None,
                    status: MemberStatus::HypothesisFailed(e),
                });
            }
        }
    }
    let mut totals: Vec<(usize, &str, &Rational)> = Vec::new();
    for (i, m) in outcomes.iter().enumerate() {
        if m.status == MemberStatus::Qualified {
            if let (Some(g), Some(s)) = (&m.generic, &m.specialized) {
                totals.push((i, "generic", &g.total));
                totals.push((i, "specialized", &s.total));
            }
        }
    }
    let mut constant = totals.first().map(|v| v.2.clone());
    if let Some(c) = constant.clone() {
        for (i, kind, v) in &totals {
            if **v != c {
                violations.push(format!("member {i} has {kind} conductor {v}, expected {c}"));
            }
        }
        if !violations.is_empty() {
            constant = None;
        }
    }
    TheoremCReport {
        members: outcomes,
        constant,
        violations,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumReport {
    /// Purity of each specialized summand, or why it could not be decided.
    pub summands: Vec<Result<Purity, String>>,
    pub specialized: Option<ConductorReport>,
    pub generic: Option<ConductorReport>,
    /// `Some(true)` when every summand is pure and the conductors agree.
    pub holds: Option<bool>,
    pub diagnoses: Vec<String>,
}

impl SumReport {
    pub fn all_pure(&self) -> bool {
        self.summands.iter().all(|p| matches!(p, Ok(p) if p.is_pure()))
    }

    pub fn is_violation(&self) -> bool {
        self.holds == Some(false)
    }
}

impl fmt::Display for SumReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.summands.iter().enumerate() {
            match p {
                Ok(p) => writeln!(f, "summand {i}: {p}")?,
                Err(e) => writeln!(f, "summand {i}: {e}")?,
            }
        }
        if let (Some(s), Some(g)) = (&self.specialized, &self.generic) {
            writeln!(f, "specialized sum: {s}")?;
            writeln!(f, "generic sum: {g}")?;
        }
        for d in &self.diagnoses {
            writeln!(f, "note: {d}")?;
        }
        write!(f, "irreducibility of the summands is not checked")
    }
}

/// Checks each summand for purity at the point; when all are pure the
/// conductor of the specialized sum must equal the generic conductor of
/// the sum of the families.
pub fn sum_harness(families: &[Family], point: &SpecializationMap) -> SumReport {
    let mut report = SumReport {
        summands: Vec::new(),
        specialized: None,
        generic: None,
        holds: None,
        diagnoses: Vec::new(),
    };
    if families.is_empty() {
        report.diagnoses.push("no families given".into());
        return report;
    }
    let specialized: Vec<Result<_, String>> = families
        .par_iter()
        .map(|f| specialize(f, point).map_err(|e| e.to_string()))
        .collect();
    report.summands = specialized
        .iter()
        .map(|w| match w {
            Ok(w) => purity_check(w).map_err(|e| e.to_string()),
            Err(e) => Err(e.clone()),
        })
        .collect();
    let mut acc = None;
    for w in &specialized {
        let Ok(w) = w else { continue };
        acc = Some(match acc {
            None => Ok(w.clone()),
            Some(Ok(a)) => direct_sum(&a, w),
            Some(Err(e)) => Err(e),
        });
    }
    if specialized.iter().all(Result::is_ok) {
        match acc.expect("at least one summand").and_then(|s| conductor(&s)) {
            Ok(c) => report.specialized = Some(c),
            Err(e) => report.diagnoses.push(format!("specialized sum: {e}")),
        }
    }
    match direct_sum_families(families).and_then(|f| generic_conductor(&f)) {
        Ok(c) => report.generic = Some(c),
        Err(e) => report.diagnoses.push(format!("generic sum: {e}")),
    }
    if !report.all_pure() {
        report.diagnoses.push("some summand is not pure at the point; nothing asserted".into());
    } else if let (Some(s), Some(g)) = (&report.specialized, &report.generic) {
        report.holds = Some(s.total == g.total);
    }
    report
}
