//! Traces on Weil-group words and trace compatibility between families.

use super::{Domain, Family};
use crate::error::{Error, Result};
use crate::scalars::{LaurentPoly, Matrix};

/// A Weil-group word `rho(g) Phi^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub g: usize,
    pub k: i64,
}

/// Every `(g, k)` with `|k| <= 2 * dim`, ordered by `k` then `g`.
pub fn default_words(group_order: usize, dim: usize) -> Vec<Word> {
    let bound = 2 * dim as i64;
    (-bound..=bound)
        .flat_map(|k| (0..group_order).map(move |g| Word { g, k }))
        .collect()
}

/// The trace function of a reference family.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoTrace {
    pub source: Family,
}

impl PseudoTrace {
    pub fn new(source: Family) -> Self {
        PseudoTrace { source }
    }

    pub fn dim(&self) -> usize {
        self.source.rep.dim()
    }

    pub fn domain(&self) -> &Domain {
        &self.source.domain
    }

    pub fn value(&self, word: Word) -> Result<LaurentPoly> {
        self.source.rep.trace_of_word(word.g, word.k)
    }

    /// Values on a list of words, sharing the powers of `Phi`.
    pub fn values(&self, words: &[Word]) -> Result<Vec<LaurentPoly>> {
        traces(&self.source, words)
    }
}

fn traces(f: &Family, words: &[Word]) -> Result<Vec<LaurentPoly>> {
    let rep = &f.rep;
    let dim = rep.dim();
    let order = rep.rho().len();
    if let Some(w) = words.iter().find(|w| w.g >= order) {
        return Err(Error::DimensionMismatch(format!("word element {} outside a group of order {order}", w.g)));
    }
    let max_pos = words.iter().map(|w| w.k.max(0)).max().unwrap_or(0) as usize;
    let max_neg = words.iter().map(|w| (-w.k).max(0)).max().unwrap_or(0) as usize;
    let mut pos = vec![Matrix::identity(dim)];
    for i in 1..=max_pos {
        pos.push(&pos[i - 1] * rep.phi());
    }
    let mut neg = vec![Matrix::identity(dim)];
    if max_neg > 0 {
        let inv = rep.phi().unit_inverse()?;
        for i in 1..=max_neg {
            neg.push(&neg[i - 1] * &inv);
        }
    }
    Ok(words
        .iter()
        .map(|w| {
            let p = if w.k >= 0 { &pos[w.k as usize] } else { &neg[w.k.unsigned_abs() as usize] };
            (&rep.rho()[w.g] * p).trace()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TraceReport {
    pub checked: usize,
    /// `(word, T(word), tr(word))` rendered over the union domain.
    pub mismatches: Vec<(Word, String, String)>,
}

impl TraceReport {
    pub fn all_match(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares `T` with the traces of `w2` on every word, after identifying
/// variables of the two domains by name.
pub fn check_trace_compat(t: &PseudoTrace, w2: &Family, words: &[Word]) -> Result<TraceReport> {
    compare_with_values(t, &t.values(words)?, w2, words)
}

/// [`check_trace_compat`] with the values of `T` on `words` precomputed.
pub(crate) fn compare_with_values(t: &PseudoTrace, values: &[LaurentPoly], w2: &Family, words: &[Word]) -> Result<TraceReport> {
    if t.dim() != w2.rep.dim() {
        return Err(Error::DimensionMismatch(format!("trace of dimension {} against a family of dimension {}", t.dim(), w2.rep.dim())));
    }
    if t.source.rep.lf() != w2.rep.lf() || t.source.rep.datum() != w2.rep.datum() {
        return Err(Error::MismatchedLocalData("trace and family have different local data".into()));
    }
    let (domain, ma, mb) = t.domain().union(&w2.domain);
    let b = traces(w2, words)?;
    let mut mismatches = Vec::new();
    for ((word, x), y) in words.iter().zip(values).zip(b) {
        let (x, y) = (x.remap_vars(&ma), y.remap_vars(&mb));
        if x != y {
            mismatches.push((*word, x.to_expr(&domain.names, domain.order)?, y.to_expr(&domain.names, domain.order)?));
        }
    }
    Ok(TraceReport {
        checked: words.len(),
        mismatches,
    })
}
