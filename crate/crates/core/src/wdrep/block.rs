//! Indecomposable blocks `Sp_t(chi ⊗ rho)` and their realization.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{direct_sum, WdRep};
use crate::error::{Error, Result};
use crate::localfield::{validate_group_rep, LocalFieldData, RamificationDatum, WeilMonomial};
use crate::report::ValidationReport;
use crate::scalars::{Cyclo, Matrix, Scalar};

/// A representation of the Weil group with finite image: inertia matrices
/// indexed by group element and a finite-order Frobenius matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRep {
    pub datum: Arc<RamificationDatum>,
    pub inertia: Vec<Matrix<Cyclo>>,
    pub frobenius: Matrix<Cyclo>,
}

impl FiniteRep {
    pub fn new(datum: Arc<RamificationDatum>, inertia: Vec<Matrix<Cyclo>>, frobenius: Matrix<Cyclo>) -> Self {
        FiniteRep { datum, inertia, frobenius }
    }

    /// Trivial representation of dimension `dim`.
    pub fn trivial(datum: Arc<RamificationDatum>, dim: usize) -> Self {
        let inertia = vec![Matrix::identity(dim); datum.order()];
        FiniteRep::new(datum, inertia, Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.frobenius.rows()
    }

    /// Bound on the multiplicative order of the Frobenius matrix checked by
    /// [`FiniteRep::validate`]: `10 * dim * N` for ambient order `N`.
    pub fn order_bound(&self) -> u32 {
        let ambient = self
            .inertia
            .iter()
            .chain([&self.frobenius])
            .map(Matrix::cyclotomic_order)
            .fold(1, crate::scalars::lcm_order);
        10 * self.dim().max(1) as u32 * ambient
    }

    /// Multiplicative order of the Frobenius matrix, if within the bound.
    pub fn frobenius_order(&self) -> Option<u32> {
        let bound = self.order_bound();
        let mut p = self.frobenius.clone();
        for k in 1..=bound {
            if p.is_identity() {
                return Some(k);
            }
            p = &p * &self.frobenius;
        }
        None
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = validate_group_rep(&self.datum, &self.inertia);
        if !r.is_valid() {
            return r;
        }
        let n = self.dim();
        if self.frobenius.cols() != n || self.inertia[0].rows() != n {
            r.push("shape", "frobenius", "Frobenius must be square of the inertia dimension");
            return r;
        }
        if self.frobenius.det().map_or(true, |d| d.is_zero()) {
            r.push("phi-invertible", "frobenius", "Frobenius matrix is singular");
            return r;
        }
        for g in 0..self.datum.order() {
            let pg = self.datum.psi(g);
            if &self.frobenius * &self.inertia[g] != &self.inertia[pg] * &self.frobenius {
                r.push("frobenius-compat", format!("inertia[{g}]"), format!("F*rho({g})*F^-1 != rho({pg})"));
            }
        }
        if r.is_valid() && self.frobenius_order().is_none() {
            r.warn(
                "frobenius-order",
                "frobenius",
                format!("no finite order found up to the bound {}", self.order_bound()),
            );
        }
        r
    }

    /// Direct sum of two representations of the same datum.
    pub fn sum(&self, other: &FiniteRep) -> Result<FiniteRep> {
        if self.datum != other.datum {
            return Err(Error::MismatchedLocalData("different ramification data".into()));
        }
        Ok(FiniteRep::new(
            self.datum.clone(),
            self.inertia.iter().zip(&other.inertia).map(|(a, b)| a.block_diag(b)).collect(),
            self.frobenius.block_diag(&other.frobenius),
        ))
    }

    /// The same inertia action with Frobenius multiplied by `c`.
    pub fn twist(&self, c: &Cyclo) -> FiniteRep {
        FiniteRep::new(self.datum.clone(), self.inertia.clone(), self.frobenius.scale(c))
    }

    /// Whether the two are isomorphic, with an intertwiner computed exactly.
    pub fn is_isomorphic(&self, other: &FiniteRep) -> Result<bool> {
        if self.dim() != other.dim() || self.datum != other.datum {
            return Ok(false);
        }
        if self.dim() == 0 {
            return Ok(true);
        }
        let gens = self.datum.generators(self.datum.gamma(0));
        let pick = |r: &FiniteRep| -> Vec<Matrix<Cyclo>> {
            gens.iter().map(|&g| r.inertia[g].clone()).chain([r.frobenius.clone()]).collect()
        };
        Ok(crate::scalars::solve_conjugation(&pick(self), &pick(other))?.is_some())
    }
}

/// `Sp_t(chi ⊗ rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpBlock {
    pub t: usize,
    pub chi: WeilMonomial,
    pub rho: FiniteRep,
}

impl SpBlock {
    pub fn new(t: usize, chi: WeilMonomial, rho: FiniteRep) -> Self {
        SpBlock { t, chi, rho }
    }

    /// `Sp_t(chi)` with trivial one-dimensional `rho` on the given datum.
    pub fn unramified(t: usize, chi: WeilMonomial, datum: Arc<RamificationDatum>) -> Self {
        SpBlock::new(t, chi, FiniteRep::trivial(datum, 1))
    }

    pub fn dim(&self) -> usize {
        self.t * self.rho.dim()
    }

    /// `weight(chi) - (t - 1)`.
    pub fn weight(&self) -> i64 {
        self.chi.weight() - (self.t as i64 - 1)
    }
}

impl std::fmt::Display for SpBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Sp_{}({} ⊗ rho[dim {}])", self.t, self.chi, self.rho.dim())
    }
}

/// The ladder `Sp_t(alpha ⊗ (inertia, frob))` over any scalar domain: basis
/// `e_i ⊗ v` ordered level by level, inertia acts on each level, Frobenius by
/// `alpha q^-i frob` on level `i`, and `N` maps level `i` to level `i + 1`.
pub fn sp_ladder<S: Scalar>(
    lf: LocalFieldData,
    datum: Arc<RamificationDatum>,
    t: usize,
    alpha: &S,
    inertia: &[Matrix<S>],
    frob: &Matrix<S>,
) -> WdRep<S> {
    let d = frob.rows();
    let levels = Matrix::diagonal((0..t).map(|i| alpha.clone() * lf.q_pow::<S>(-(i as i64))).collect());
    let shift = Matrix::from_fn(t, t, |i, j| if i == j + 1 { S::one() } else { S::zero() });
    let id_t = Matrix::identity(t);
    WdRep::new(
        lf,
        datum,
        inertia.iter().map(|g| id_t.kron(g)).collect(),
        levels.kron(frob),
        shift.kron(&Matrix::identity(d)),
    )
}

/// Realizes a block over its cyclotomic field.
pub fn build_sp(b: &SpBlock, lf: &LocalFieldData) -> Result<WdRep<Cyclo>> {
    if b.t == 0 {
        return Err(Error::InvalidBlock("t must be positive".into()));
    }
    let report = b.rho.validate();
    if !report.is_valid() {
        return Err(Error::InvalidBlock(report.to_string()));
    }
    Ok(sp_ladder(
        *lf,
        b.rho.datum.clone(),
        b.t,
        &b.chi.value(lf),
        &b.rho.inertia,
        &b.rho.frobenius,
    ))
}

/// Realizes a list of blocks as one representation.
pub fn build_blocks(blocks: &[SpBlock], lf: &LocalFieldData) -> Result<WdRep<Cyclo>> {
    let mut acc: Option<WdRep<Cyclo>> = None;
    for b in blocks {
        let w = build_sp(b, lf)?;
        acc = Some(match acc {
            None => w,
            Some(a) => direct_sum(&a, &w)?,
        });
    }
    acc.ok_or_else(|| Error::InvalidBlock("empty block list".into()))
}

/// Canonical form: blocks with equal `t` and equal q-exponent of `chi` are
/// merged, with the root-of-unity part of `chi` moved into `rho`.
fn canonical(blocks: &[SpBlock]) -> Result<BTreeMap<(usize, i64), FiniteRep>> {
    let mut out: BTreeMap<(usize, i64), FiniteRep> = BTreeMap::new();
    for b in blocks {
        let zeta = Cyclo::zeta_pow(b.chi.order(), b.chi.zeta_exponent());
        let r = b.rho.twist(&zeta);
        let key = (b.t, b.chi.q_exponent());
        let merged = match out.remove(&key) {
            None => r,
            Some(prev) => prev.sum(&r)?,
        };
        out.insert(key, merged);
    }
    Ok(out)
}

/// Whether two block lists describe isomorphic representations, compared
/// in canonical form (the split of roots of unity between `chi` and `rho`
/// and the grouping of `rho` summands are not intrinsic).
pub fn same_block_multiset(a: &[SpBlock], b: &[SpBlock]) -> Result<bool> {
    let ca = canonical(a)?;
    let cb = canonical(b)?;
    if ca.len() != cb.len() {
        return Ok(false);
    }
    for ((ka, ra), (kb, rb)) in ca.iter().zip(&cb) {
        if ka != kb || !ra.is_isomorphic(rb)? {
            return Ok(false);
        }
    }
    Ok(true)
}
