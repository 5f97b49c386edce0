//! Families of Weil-Deligne representations over Laurent polynomial
//! domains, their specializations, and harnesses checking conductor
//! constancy across pure specializations.

pub mod battery;
mod harness;
mod trace;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

pub use harness::{sum_harness, theorem_c_harness, MemberOutcome, MemberStatus, SumReport, TheoremCReport};
pub use trace::{check_trace_compat, default_words, PseudoTrace, TraceReport, Word};

use crate::error::{Error, Result};
use crate::scalars::{lcm_order, Cyclo, EvalFailure, LaurentPoly, Matrix};
use crate::wdrep::{conductor, direct_sum, purity_check, validate_wd, ConductorReport, Purity, WdRep};

/// Variable names of a Laurent domain over Q(zeta_order).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    pub names: Vec<String>,
    pub order: u32,
}

impl Domain {
    pub fn new(names: Vec<String>, order: u32) -> Self {
        Domain { names, order: order.max(1) }
    }

    /// Union of two domains, with the index maps from each into it.
    pub fn union(&self, other: &Domain) -> (Domain, Vec<usize>, Vec<usize>) {
        let mut names = self.names.clone();
        let mut map_other = Vec::with_capacity(other.names.len());
        for n in &other.names {
            match names.iter().position(|x| x == n) {
                Some(i) => map_other.push(i),
                None => {
                    names.push(n.clone());
                    map_other.push(names.len() - 1);
                }
            }
        }
        let map_self = (0..self.names.len()).collect();
        (Domain::new(names, lcm_order(self.order, other.order)), map_self, map_other)
    }
}

/// A representation over `domain`.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    pub domain: Domain,
    pub rep: WdRep<LaurentPoly>,
}

impl Family {
    pub fn new(domain: Domain, rep: WdRep<LaurentPoly>) -> Self {
        Family { domain, rep }
    }

    /// The constant family of a representation over Q(zeta_order).
    pub fn constant(w: &WdRep<Cyclo>) -> Self {
        let rep = w
            .try_map(|c| Ok::<_, Error>(LaurentPoly::constant(c.clone())))
            .expect("constant lift cannot fail");
        Family::new(Domain::new(Vec::new(), w.cyclotomic_order()), rep)
    }

    /// The same family viewed over a larger domain; `map[i]` is the new
    /// index of variable `i`.
    pub fn lift(&self, domain: &Domain, map: &[usize]) -> Family {
        let rep = self
            .rep
            .try_map(|p| Ok::<_, Error>(p.remap_vars(map)))
            .expect("renaming cannot fail");
        Family::new(domain.clone(), rep)
    }
}

/// Values for the family variables, by name.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SpecializationMap {
    pub label: String,
    pub assignment: BTreeMap<String, Cyclo>,
}

impl SpecializationMap {
    pub fn new(label: impl Into<String>, assignment: impl IntoIterator<Item = (String, Cyclo)>) -> Self {
        SpecializationMap {
            label: label.into(),
            assignment: assignment.into_iter().collect(),
        }
    }

    /// Values in domain order; missing names stay unassigned.
    fn values(&self, domain: &Domain) -> Vec<Option<Cyclo>> {
        domain.names.iter().map(|n| self.assignment.get(n).cloned()).collect()
    }
}

impl fmt::Display for SpecializationMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.label.is_empty() {
            return write!(f, "{}", self.label);
        }
        let parts: Vec<String> = self.assignment.iter().map(|(k, v)| format!("{k}={}", v.to_expr())).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Evaluates every entry at the point. The image is again a valid
/// representation once `Phi` stays invertible.
pub fn specialize(family: &Family, s: &SpecializationMap) -> Result<WdRep<Cyclo>> {
    let values = s.values(&family.domain);
    let name = |i: usize| family.domain.names.get(i).cloned().unwrap_or_else(|| format!("#{i}"));
    let w = family.rep.try_map(|p| {
        p.eval(&values).map_err(|e| match e {
            EvalFailure::Unassigned(i) => Error::UnassignedVariable(name(i)),
            EvalFailure::ZeroAtNegativeExponent(i) => Error::ZeroAtNegativeExponent(name(i)),
        })
    })?;
    if w.phi().det()?.is_zero() {
        return Err(Error::Singular);
    }
    let report = validate_wd(&w, false);
    if !report.is_valid() {
        return Err(Error::InvalidRep(report));
    }
    Ok(w)
}

/// Conductor over the fraction field of the family's domain.
pub fn generic_conductor(family: &Family) -> Result<ConductorReport> {
    conductor(&family.rep)
}

/// Direct sum of families over the union of their domains.
pub fn direct_sum_families(families: &[Family]) -> Result<Family> {
    let mut iter = families.iter();
    let first = iter.next().ok_or_else(|| Error::DimensionMismatch("no families to sum".into()))?;
    let mut acc = first.clone();
    for f in iter {
        let (domain, ma, mb) = acc.domain.union(&f.domain);
        let a = acc.lift(&domain, &ma);
        let b = f.lift(&domain, &mb);
        acc = Family::new(domain, direct_sum(&a.rep, &b.rep)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: String,
    pub purity: Option<Purity>,
    pub conductor: Option<ConductorReport>,
    /// Total conductor equals the generic total.
    pub matches_generic: bool,
    /// Tame and Swan terms both equal the generic ones.
    pub terms_match: bool,
    pub error: Option<String>,
}

impl SweepRow {
    /// A pure point whose conductor differs from the generic one.
    pub fn is_violation(&self) -> bool {
        self.purity.as_ref().is_some_and(Purity::is_pure) && (!self.matches_generic || !self.terms_match)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub generic: ConductorReport,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn violations(&self) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.is_violation()).collect()
    }

    pub fn pure_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.purity.as_ref().is_some_and(Purity::is_pure)).count()
    }
}

fn sweep_row(family: &Family, generic: &ConductorReport, s: &SpecializationMap) -> SweepRow {
    let mut row = SweepRow {
        point: s.to_string(),
        purity: None,
        conductor: None,
        matches_generic: false,
        terms_match: false,
        error: None,
    };
    let w = match specialize(family, s) {
        Ok(w) => w,
        Err(e) => {
            row.error = Some(e.to_string());
            return row;
        }
    };
    match conductor(&w) {
        Ok(c) => {
            row.matches_generic = c.total == generic.total;
            row.terms_match = c.tame_term == generic.tame_term && c.swan_term == generic.swan_term;
            row.conductor = Some(c);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    match purity_check(&w) {
        Ok(p) => row.purity = Some(p),
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Specializes at every point (in parallel), recording purity and
/// conductor; rows come back in input order.
pub fn sweep(family: &Family, points: &[SpecializationMap]) -> Result<SweepReport> {
    let generic = generic_conductor(family)?;
    let rows = points.par_iter().map(|s| sweep_row(family, &generic, s)).collect();
    Ok(SweepReport { generic, rows })
}

/// Lifts a constant matrix to Laurent coefficients.
pub fn lift_matrix(m: &Matrix<Cyclo>) -> Matrix<LaurentPoly> {
    m.map(|c| LaurentPoly::constant(c.clone()))
}

#[cfg(test)]
mod tests;
