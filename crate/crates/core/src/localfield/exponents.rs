//! Fixed spaces of inertia subgroups and the exponents built from them.
//!
//! Invariant dimensions are read off the trace of the averaging idempotent,
//! which needs no division beyond `1/|H|` and so works over any scalar
//! domain. The Herbrand-integral route instead solves for fixed vectors
//! directly and is kept as an independent cross-check.

use num_traits::Zero;

use super::datum::validate_group_rep;
use super::herbrand::{ceil, herbrand_phi, herbrand_psi};
use super::RamificationDatum;
use crate::error::{Error, Result};
use crate::scalars::{Field, Matrix, Rational, Scalar};

/// `(1/|H|) * sum_{h in H} rho(h)`, the projection onto `V^H`.
pub fn projector<S: Scalar>(rho: &[Matrix<S>], h: &[usize]) -> Matrix<S> {
    let n = rho[0].rows();
    let sum = h.iter().fold(Matrix::zeros(n, n), |acc, &g| &acc + &rho[g]);
    sum.scale(&S::from_rational(Rational::new(1.into(), h.len().into())))
}

/// `dim V^H` as the trace of the averaging idempotent.
pub fn invariants_dim_of<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>], h: &[usize]) -> Result<usize> {
    if !d.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    trace_dim(&projector(rho, h))
}

fn trace_dim<S: Scalar>(p: &Matrix<S>) -> Result<usize> {
    let tr = p.trace();
    let c = tr
        .as_constant()
        .ok_or_else(|| Error::Internal(format!("idempotent trace {tr} is not constant")))?;
    let r = c
        .as_rational()
        .filter(|r| r.is_integer())
        .ok_or_else(|| Error::Internal(format!("idempotent trace {c} is not an integer")))?;
    usize::try_from(r.to_integer()).map_err(|_| Error::Internal("negative idempotent trace".into()))
}

/// Basis (as columns) of `V^H`, solving `(rho(h) - 1) x = 0` for generators of `H`.
pub fn fixed_space<F: Field>(d: &RamificationDatum, rho: &[Matrix<F>], h: &[usize]) -> Result<Matrix<F>> {
    if !d.is_subgroup(h) {
        return Err(Error::NotSubgroup(format!("{h:?}")));
    }
    let n = rho[0].rows();
    let gens = d.generators(h);
    if gens.is_empty() {
        return Ok(Matrix::identity(n));
    }
    let id = Matrix::identity(n);
    let mut stacked: Option<Matrix<F>> = None;
    for g in gens {
        let block = &rho[g] - &id;
        stacked = Some(match stacked {
            None => block,
            Some(s) => s.vstack(&block)?,
        });
    }
    Ok(stacked.expect("at least one generator").kernel())
}

fn check_rep<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>]) -> Result<()> {
    let report = validate_group_rep(d, rho);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidRep(report))
    }
}

/// `sum_{i >= 1} (|Gamma_i| / |Gamma_0|) * codim V^{Gamma_i}`.
pub fn swan_exponent<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>]) -> Result<Rational> {
    check_rep(d, rho)?;
    swan_unchecked(d, rho)
}

pub(crate) fn swan_unchecked<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>]) -> Result<Rational> {
    let n = rho[0].rows();
    let g0 = d.order();
    let mut acc = Rational::zero();
    for i in 1..d.depth() {
        let h = d.gamma(i);
        let codim = n - trace_dim(&projector(rho, h))?;
        acc += Rational::new((h.len() * codim).into(), g0.into());
    }
    Ok(acc)
}

/// The Swan exponent as `integral_0^inf codim V^{G^v} dv`: the upper
/// breakpoints are `phi(i)`, and on each piece the group is found by
/// pulling a sample point back through `psi`. Fixed spaces are solved for
/// directly rather than through traces.
pub fn swan_exponent_integral<F: Field>(d: &RamificationDatum, rho: &[Matrix<F>]) -> Result<Rational> {
    check_rep(d, rho)?;
    let n = rho[0].rows();
    let mut acc = Rational::zero();
    let mut prev = Rational::zero();
    for i in 1..=d.depth() {
        let v = herbrand_phi(d, &Rational::from_integer(i.into()))?;
        let mid = (&prev + &v) / Rational::from_integer(2.into());
        let u = herbrand_psi(d, &mid)?;
        let lower = usize::try_from(ceil(&u)).map_err(|_| Error::Internal("negative ramification index".into()))?;
        let codim = n - fixed_space(d, rho, d.gamma(lower))?.cols();
        acc += (&v - &prev) * Rational::from_integer(codim.into());
        prev = v;
    }
    Ok(acc)
}

/// A subspace of `V`, either spanned by columns or the kernel of a matrix.
#[derive(Debug, Clone)]
pub enum Subspace<S: Scalar> {
    Span(Matrix<S>),
    KernelOf(Matrix<S>),
}

impl<S: Scalar> Subspace<S> {
    fn is_stable(&self, g: &Matrix<S>) -> Result<bool> {
        Ok(match self {
            // g B lies in span B
            Subspace::Span(b) => b.hstack(&(g * b))?.rank() == b.rank(),
            // ker N is g-stable iff the rows of N g lie in the row space of N
            Subspace::KernelOf(m) => m.vstack(&(m * g))?.rank() == m.rank(),
        })
    }

    /// `dim(im P ∩ self)` for an idempotent `P`, over the fraction field.
    fn meet_image_dim(&self, p: &Matrix<S>, rank_p: usize) -> Result<usize> {
        Ok(match self {
            Subspace::Span(b) => rank_p + b.rank() - p.hstack(b)?.rank(),
            Subspace::KernelOf(m) => rank_p - (m * p).rank(),
        })
    }
}

/// `dim V - dim(V^{Gamma_0} ∩ modifier)`, or the codimension of
/// `V^{Gamma_0}` when no modifier is given.
pub fn tame_codim<S: Scalar>(d: &RamificationDatum, rho: &[Matrix<S>], modifier: Option<&Subspace<S>>) -> Result<usize> {
    check_rep(d, rho)?;
    tame_unchecked(d, rho, modifier)
}

pub(crate) fn tame_unchecked<S: Scalar>(
    d: &RamificationDatum,
    rho: &[Matrix<S>],
    modifier: Option<&Subspace<S>>,
) -> Result<usize> {
    let n = rho[0].rows();
    let p = projector(rho, d.gamma(0));
    let rank_p = trace_dim(&p)?;
    let fixed = match modifier {
        None => rank_p,
        Some(sub) => {
            for g in d.generators(d.gamma(0)) {
                if !sub.is_stable(&rho[g])? {
                    return Err(Error::NotStable(format!("not preserved by rho({g})")));
                }
            }
            sub.meet_image_dim(&p, rank_p)?
        }
    };
    Ok(n - fixed)
}
