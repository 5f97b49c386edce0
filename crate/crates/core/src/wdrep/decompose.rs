//! Decomposition into `Sp_t(chi ⊗ rho)` blocks, isomorphism testing and
//! the two purity routes.

use std::collections::BTreeSet;
use std::fmt;

use super::block::{build_blocks, FiniteRep, SpBlock};
use super::semisimple::{frobenius_ss, monodromy_filtration, monomial_eigenvalues, q_power, quotient_action, restrict};
use super::{validate_wd, WdRep};
use crate::error::{Error, Result};
use crate::localfield::WeilMonomial;
use crate::scalars::{is_semisimple, lcm_order, solve_conjugation, Cyclo, Field, Matrix};

/// Exponent `power` used for eigenvalue recognition: `Phi^power` commutes
/// with inertia and kills every root of unity of the ambient field.
fn recognition_power(w: &WdRep<Cyclo>) -> u32 {
    let psi_order = {
        let d = w.datum();
        (0..d.order())
            .map(|g| {
                let mut x = d.psi(g);
                let mut k = 1u32;
                while x != g {
                    x = d.psi(x);
                    k += 1;
                }
                k
            })
            .fold(1, lcm_order)
    };
    lcm_order(lcm_order(2, w.cyclotomic_order()), psi_order)
}

/// Splits a Frobenius-semisimple representation into blocks. For each `t`,
/// the bottoms of the length-`t` ladders form the Weil module
/// `(ker N ∩ im N^(t-1)) / (ker N ∩ im N^t)`; it is cut into eigenspaces of
/// `Phi^power`, whose q-exponent `c` gives `chi = q^(c + t - 1)` and whose
/// remaining action (Frobenius scaled by `q^-c`) is the finite part.
pub fn decompose(w: &WdRep<Cyclo>) -> Result<Vec<SpBlock>> {
    let report = validate_wd(w, false);
    if !report.is_valid() {
        return Err(Error::InvalidRep(report));
    }
    if !is_semisimple(w.phi()) {
        return Err(Error::NotFrobeniusSemisimple);
    }
    let n = w.dim();
    let lf = *w.lf();
    let power = recognition_power(w);
    let ker = w.n().kernel();
    let mut image = Matrix::identity(n);
    let mut bottoms = vec![ker.clone()];
    for _ in 1..=n {
        image = (w.n() * &image).column_basis();
        bottoms.push(ker.intersect_columns(&image)?);
    }
    let mut blocks = Vec::new();
    let mut covered = 0;
    for t in 1..=n {
        let (big, small) = (&bottoms[t - 1], &bottoms[t]);
        if big.cols() == small.cols() {
            continue;
        }
        let phi_q = quotient_action(w.phi(), big, small)?;
        let rho_q: Vec<Matrix<Cyclo>> = w
            .rho()
            .iter()
            .map(|r| quotient_action(r, big, small))
            .collect::<Result<_>>()?;
        let m = phi_q.rows();
        for (c, mult) in monomial_eigenvalues(&phi_q, &lf, power)? {
            let shifted = &phi_q.pow(power) - &Matrix::identity(m).scale(&q_power(&lf, c * power as i64));
            let eig = shifted.kernel();
            if eig.cols() != mult {
                return Err(Error::Internal("Phi is semisimple but an eigenspace is too small".into()));
            }
            let frob = restrict(&phi_q, &eig)?.scale(&q_power(&lf, -c));
            let inertia = rho_q.iter().map(|r| restrict(r, &eig)).collect::<Result<Vec<_>>>()?;
            let rho = FiniteRep::new(w.datum().clone(), inertia, frob);
            blocks.push(SpBlock::new(t, WeilMonomial::q_power(c + t as i64 - 1), rho));
            covered += t * mult;
        }
    }
    if covered != n {
        return Err(Error::Internal(format!("blocks cover dimension {covered} of {n}")));
    }
    Ok(blocks)
}

/// [`decompose`] together with an intertwiner from `w` to the rebuilt sum
/// of blocks; failing to find one is an internal error.
pub fn decompose_verified(w: &WdRep<Cyclo>) -> Result<(Vec<SpBlock>, Matrix<Cyclo>)> {
    let blocks = decompose(w)?;
    let rebuilt = build_blocks(&blocks, w.lf())?;
    match is_isomorphic(w, &rebuilt)? {
        Some(x) => Ok((blocks, x)),
        None => Err(Error::Internal("rebuilt blocks are not isomorphic to the input".into())),
    }
}

fn generators<F: Field>(w: &WdRep<F>) -> Vec<Matrix<F>> {
    let d = w.datum();
    d.generators(d.gamma(0))
        .into_iter()
        .map(|g| w.rho()[g].clone())
        .chain([w.phi().clone(), w.n().clone()])
        .collect()
}

/// An invertible `X` with `X a(sigma) = b(sigma) X` for inertia, `Phi` and
/// `N` simultaneously, or `None`.
pub fn is_isomorphic<F: Field>(a: &WdRep<F>, b: &WdRep<F>) -> Result<Option<Matrix<F>>> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(format!("dimensions {} and {}", a.dim(), b.dim())));
    }
    if a.lf() != b.lf() || a.datum() != b.datum() {
        return Err(Error::MismatchedLocalData("representations of different local data".into()));
    }
    // cheap invariants first
    if a.phi().charpoly() != b.phi().charpoly() {
        return Ok(None);
    }
    let mut pa = a.n().clone();
    let mut pb = b.n().clone();
    for _ in 0..a.dim() {
        if pa.rank() != pb.rank() {
            return Ok(None);
        }
        pa = &pa * a.n();
        pb = &pb * b.n();
    }
    solve_conjugation(&generators(a), &generators(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Purity {
    Pure { weight: i64 },
    NotPure { witness: String },
    Undecidable { reason: String },
}

impl Purity {
    pub fn is_pure(&self) -> bool {
        matches!(self, Purity::Pure { .. })
    }

    pub fn is_decidable(&self) -> bool {
        !matches!(self, Purity::Undecidable { .. })
    }
}

impl fmt::Display for Purity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Purity::Pure { weight } => write!(f, "pure, weight {weight}"),
            Purity::NotPure { witness } => write!(f, "not pure: {witness}"),
            Purity::Undecidable { reason } => write!(f, "undecidable: {reason}"),
        }
    }
}

fn verdict(weights: &BTreeSet<i64>, describe: impl FnOnce() -> String) -> Purity {
    match weights.len() {
        0 => Purity::Pure { weight: 0 },
        1 => Purity::Pure {
            weight: *weights.iter().next().expect("one weight"),
        },
        _ => Purity::NotPure { witness: describe() },
    }
}

fn undecidable_or(e: Error) -> Result<Purity> {
    match e {
        Error::Undecidable(reason) => Ok(Purity::Undecidable { reason }),
        other => Err(other),
    }
}

/// Route A: block weights `weight(chi) - (t - 1)` of the decomposition of
/// the Frobenius-semisimplification must all agree.
pub fn purity_route_a(w: &WdRep<Cyclo>) -> Result<Purity> {
    let ss = frobenius_ss(w)?;
    let blocks = match decompose(&ss) {
        Ok(b) => b,
        Err(e) => return undecidable_or(e),
    };
    let weights: BTreeSet<i64> = blocks.iter().map(SpBlock::weight).collect();
    Ok(verdict(&weights, || {
        let parts: Vec<String> = blocks.iter().map(|b| format!("{b} has weight {}", b.weight())).collect();
        parts.join(", ")
    }))
}

/// Route B: on `gr_i` of the monodromy filtration every Frobenius
/// eigenvalue must have weight `W + i` for one common `W`.
pub fn purity_route_b(w: &WdRep<Cyclo>) -> Result<Purity> {
    let report = validate_wd(w, false);
    if !report.is_valid() {
        return Err(Error::InvalidRep(report));
    }
    let power = recognition_power(w);
    let filt = monodromy_filtration(w.n())?;
    let mut weights = BTreeSet::new();
    let mut notes = Vec::new();
    for (i, _) in filt.graded_dims() {
        let action = quotient_action(w.phi(), &filt.level(i), &filt.level(i - 1))?;
        let eig = match monomial_eigenvalues(&action, w.lf(), power) {
            Ok(e) => e,
            Err(e) => return undecidable_or(e),
        };
        for (c, _) in eig {
            weights.insert(2 * c - i);
            notes.push(format!("gr_{i} has an eigenvalue of weight {}", 2 * c));
        }
    }
    Ok(verdict(&weights, || notes.join(", ")))
}

/// Purity by both routes; a disagreement between decidable answers is an
/// internal error.
pub fn purity_check(w: &WdRep<Cyclo>) -> Result<Purity> {
    let a = purity_route_a(w)?;
    let b = purity_route_b(w)?;
    match (&a, &b) {
        (Purity::Undecidable { .. }, _) => Ok(a),
        (_, Purity::Undecidable { .. }) => Ok(b),
        (Purity::Pure { weight: x }, Purity::Pure { weight: y }) if x == y => Ok(a),
        (Purity::NotPure { .. }, Purity::NotPure { .. }) => Ok(a),
        _ => Err(Error::Internal(format!("purity routes disagree: decomposition says {a}, filtration says {b}"))),
    }
}
