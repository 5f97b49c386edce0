//! Weil-Deligne representations `(rho, Phi, N)`: inertia acts through a
//! finite ramification datum, `Phi` is the image of a fixed Frobenius lift
//! and `N` is the monodromy operator.

mod block;
mod decompose;
mod semisimple;

use std::sync::Arc;

pub use block::{build_blocks, build_sp, same_block_multiset, sp_ladder, FiniteRep, SpBlock};
pub use decompose::{
    decompose, decompose_verified, is_isomorphic, purity_check, purity_route_a, purity_route_b, Purity,
};
pub use semisimple::{frobenius_ss, monodromy_filtration, monomial_eigenvalues, MonodromyFiltration};

use crate::error::{Error, Result};
use crate::localfield::{self, LocalFieldData, RamificationDatum, Subspace};
use crate::report::ValidationReport;
use crate::scalars::{Matrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct WdRep<S: Scalar> {
    lf: LocalFieldData,
    datum: Arc<RamificationDatum>,
    rho: Vec<Matrix<S>>,
    phi: Matrix<S>,
    n: Matrix<S>,
}

impl<S: Scalar> WdRep<S> {
    /// Assembles a representation without checking it; see [`validate_wd`].
    pub fn new(lf: LocalFieldData, datum: Arc<RamificationDatum>, rho: Vec<Matrix<S>>, phi: Matrix<S>, n: Matrix<S>) -> Self {
        WdRep { lf, datum, rho, phi, n }
    }

    /// Assembles and validates.
    pub fn validated(
        lf: LocalFieldData,
        datum: Arc<RamificationDatum>,
        rho: Vec<Matrix<S>>,
        phi: Matrix<S>,
        n: Matrix<S>,
    ) -> Result<Self> {
        let w = Self::new(lf, datum, rho, phi, n);
        let report = validate_wd(&w, false);
        if report.is_valid() {
            Ok(w)
        } else {
            Err(Error::InvalidRep(report))
        }
    }

    /// Unramified representation with the given Frobenius and monodromy.
    pub fn unramified(lf: LocalFieldData, phi: Matrix<S>, n: Matrix<S>) -> Self {
        let dim = phi.rows();
        Self::new(lf, Arc::new(RamificationDatum::trivial()), vec![Matrix::identity(dim)], phi, n)
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(lf: LocalFieldData, dim: usize) -> Self {
        Self::unramified(lf, Matrix::identity(dim), Matrix::zeros(dim, dim))
    }

    pub fn lf(&self) -> &LocalFieldData {
        &self.lf
    }

    pub fn datum(&self) -> &Arc<RamificationDatum> {
        &self.datum
    }

    pub fn rho(&self) -> &[Matrix<S>] {
        &self.rho
    }

    pub fn phi(&self) -> &Matrix<S> {
        &self.phi
    }

    pub fn n(&self) -> &Matrix<S> {
        &self.n
    }

    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    /// Least common multiple of the cyclotomic orders of all entries.
    pub fn cyclotomic_order(&self) -> u32 {
        self.rho
            .iter()
            .chain([&self.phi, &self.n])
            .map(Matrix::cyclotomic_order)
            .fold(1, crate::scalars::lcm_order)
    }

    /// Applies `f` to every entry.
    pub fn try_map<T: Scalar, E>(&self, mut f: impl FnMut(&S) -> std::result::Result<T, E>) -> std::result::Result<WdRep<T>, E> {
        Ok(WdRep {
            lf: self.lf,
            datum: self.datum.clone(),
            rho: self.rho.iter().map(|m| m.try_map(&mut f)).collect::<std::result::Result<_, _>>()?,
            phi: self.phi.try_map(&mut f)?,
            n: self.n.try_map(&mut f)?,
        })
    }

    /// `X (rho, Phi, N) X^{-1}` given `X` and its inverse.
    pub fn conjugate(&self, x: &Matrix<S>, x_inv: &Matrix<S>) -> Self {
        let c = |m: &Matrix<S>| &(x * m) * x_inv;
        WdRep {
            lf: self.lf,
            datum: self.datum.clone(),
            rho: self.rho.iter().map(c).collect(),
            phi: c(&self.phi),
            n: c(&self.n),
        }
    }

    /// Same representation with `Phi` replaced.
    pub fn with_phi(&self, phi: Matrix<S>) -> Self {
        WdRep { phi, ..self.clone() }
    }

    /// Same representation with `N` replaced.
    pub fn with_n(&self, n: Matrix<S>) -> Self {
        WdRep { n, ..self.clone() }
    }

    /// Trace of `rho(g) Phi^k`, inverting `Phi` over the domain for `k < 0`.
    pub fn trace_of_word(&self, g: usize, k: i64) -> Result<S> {
        let base = if k < 0 { self.phi.unit_inverse()? } else { self.phi.clone() };
        let p = base.pow(k.unsigned_abs() as u32);
        Ok((&self.rho[g] * &p).trace())
    }
}

/// Lists every violated invariant of `w`; with `strict` the ramification
/// datum is checked in strict mode too.
pub fn validate_wd<S: Scalar>(w: &WdRep<S>, strict: bool) -> ValidationReport {
    let mut r = localfield::validate_ramification_datum(&w.datum, &w.lf, strict);
    if !r.is_valid() {
        return r;
    }
    let n = w.dim();
    for (name, m) in [("Phi", &w.phi), ("N_matrix", &w.n)] {
        if m.rows() != n || m.cols() != n {
            r.push("shape", name, format!("expected {n}x{n}, got {}x{}", m.rows(), m.cols()));
        }
    }
    if w.rho.first().is_some_and(|m| m.rows() != n) {
        r.push("shape", "rho", format!("rho matrices must be {n}x{n}"));
    }
    if !r.is_valid() {
        return r;
    }
    r.merge(localfield::validate_group_rep(&w.datum, &w.rho));
    if !r.is_valid() {
        return r;
    }
    match w.phi.det() {
        Ok(d) if d.unit_inverse().is_some() => {}
        Ok(d) => r.push(
            "phi-invertible",
            "Phi",
            format!("det Phi = {d} is not a unit of the coefficient domain"),
        ),
        Err(e) => r.push("phi-invertible", "Phi", e.to_string()),
    }
    for g in 0..w.datum.order() {
        let pg = w.datum.psi(g);
        if &w.phi * &w.rho[g] != &w.rho[pg] * &w.phi {
            r.push(
                "frobenius-compat",
                format!("rho[{g}]"),
                format!("Phi*rho({g})*Phi^-1 != rho({pg})"),
            );
        }
    }
    if !w.n.is_nilpotent() {
        r.push("n-nilpotent", "N_matrix", format!("N^{n} != 0"));
    }
    for g in w.datum.generators(w.datum.gamma(0)) {
        if &w.rho[g] * &w.n != &w.n * &w.rho[g] {
            r.push("inertia-commutes-n", format!("rho[{g}]"), format!("rho({g})*N != N*rho({g})"));
        }
    }
    let q: S = w.lf.q_pow(1);
    if (&w.phi * &w.n).scale(&q) != &w.n * &w.phi {
        r.push(
            "monodromy-relation",
            "Phi, N_matrix",
            "Phi*N*Phi^-1 = q^-1*N fails (r(sigma) N r(sigma)^-1 = q^-v(sigma) N at sigma = Frobenius)",
        );
    }
    r
}

fn require_valid<S: Scalar>(w: &WdRep<S>) -> Result<()> {
    let r = validate_wd(w, false);
    if r.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidRep(r))
    }
}

/// Block-diagonal sum; both summands must share local field and datum.
pub fn direct_sum<S: Scalar>(a: &WdRep<S>, b: &WdRep<S>) -> Result<WdRep<S>> {
    if a.lf != b.lf {
        return Err(Error::MismatchedLocalData(format!("{} vs {}", a.lf, b.lf)));
    }
    if a.datum != b.datum {
        return Err(Error::MismatchedLocalData("different ramification data".into()));
    }
    Ok(WdRep {
        lf: a.lf,
        datum: a.datum.clone(),
        rho: a.rho.iter().zip(&b.rho).map(|(x, y)| x.block_diag(y)).collect(),
        phi: a.phi.block_diag(&b.phi),
        n: a.n.block_diag(&b.n),
    })
}

/// Multiplies `Phi` by the unit `alpha`, leaving inertia and `N` alone.
pub fn twist_unramified<S: Scalar>(a: &WdRep<S>, alpha: &S) -> Result<WdRep<S>> {
    if alpha.unit_inverse().is_none() {
        return Err(Error::NotUnit(alpha.to_string()));
    }
    Ok(a.with_phi(a.phi.scale(alpha)))
}

/// `dim V^H` via the trace of the averaging idempotent.
pub fn invariants_dim<S: Scalar>(w: &WdRep<S>, subgroup: &[usize]) -> Result<usize> {
    localfield::invariants_dim_of(&w.datum, &w.rho, subgroup)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorReport {
    /// `dim V - dim(V^{I} ∩ ker N)`.
    pub tame_term: usize,
    pub swan_term: Rational,
    pub total: Rational,
    /// Set when the Swan term is not an integer, which no Galois
    /// representation can produce.
    pub realizability_warning: bool,
}

impl ConductorReport {
    pub fn total_is_integer(&self) -> bool {
        self.total.is_integer()
    }
}

/// Conductor of a valid representation; over Laurent coefficients all
/// ranks are taken over the fraction field.
pub fn conductor<S: Scalar>(w: &WdRep<S>) -> Result<ConductorReport> {
    require_valid(w)?;
    conductor_unchecked(w)
}

pub(crate) fn conductor_unchecked<S: Scalar>(w: &WdRep<S>) -> Result<ConductorReport> {
    let modifier = Subspace::KernelOf(w.n.clone());
    let tame = localfield::tame_unchecked(&w.datum, &w.rho, Some(&modifier))?;
    let swan = localfield::swan_unchecked(&w.datum, &w.rho)?;
    let total = Rational::from_integer(tame.into()) + &swan;
    Ok(ConductorReport {
        tame_term: tame,
        realizability_warning: !swan.is_integer(),
        swan_term: swan,
        total,
    })
}

impl std::fmt::Display for ConductorReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "conductor {} (tame {} + swan {})", self.total, self.tame_term, self.swan_term)?;
        if self.realizability_warning {
            write!(f, "; warning: non-integral Swan term, not realizable by a Galois representation")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
