//! Frobenius-semisimplification, the monodromy filtration and exact
//! recognition of Frobenius eigenvalues of the form `zeta * q^b`.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use super::{validate_wd, WdRep};
use crate::error::{Error, Result};
use crate::localfield::LocalFieldData;
use crate::scalars::{jordan_chevalley, Cyclo, Field, Matrix, Rational, UniPoly};

/// Replaces `Phi` by its semisimple part `S` in `Phi = S U`. Inertia and `N`
/// are kept after checking that `U` commutes with both.
pub fn frobenius_ss(w: &WdRep<Cyclo>) -> Result<WdRep<Cyclo>> {
    let report = validate_wd(w, false);
    if !report.is_valid() {
        return Err(Error::InvalidRep(report));
    }
    let jc = jordan_chevalley(w.phi(), true)?;
    let u = jc.unipotent.expect("Phi is invertible");
    if u.is_identity() {
        return Ok(w.clone());
    }
    for (g, r) in w.rho().iter().enumerate() {
        if &u * r != r * &u {
            return Err(Error::Internal(format!("unipotent part of Phi does not commute with rho({g})")));
        }
    }
    if &u * w.n() != w.n() * &u {
        return Err(Error::Internal("unipotent part of Phi does not commute with N".into()));
    }
    let out = w.with_phi(jc.semisimple);
    let report = validate_wd(&out, false);
    if !report.is_valid() {
        return Err(Error::Internal(format!("semisimplification is invalid:\n{report}")));
    }
    Ok(out)
}

/// The increasing filtration `M_i = sum_{j - k = i} ker N^{j+1} ∩ im N^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyFiltration<F: Field> {
    /// `M_i` as column bases, for `i` from `-(dim - 1)` to `dim - 1`.
    pub levels: Vec<(i64, Matrix<F>)>,
}

impl<F: Field> MonodromyFiltration<F> {
    pub fn level(&self, i: i64) -> Matrix<F> {
        let dim = self.levels.first().map_or(0, |(_, m)| m.rows());
        match self.levels.iter().find(|(k, _)| *k == i) {
            Some((_, m)) => m.clone(),
            None if self.levels.first().is_some_and(|(lo, _)| i < *lo) || dim == 0 => Matrix::zeros(dim, 0),
            None => Matrix::identity(dim),
        }
    }

    /// `(i, dim gr_i)` for every nonzero graded piece.
    pub fn graded_dims(&self) -> Vec<(i64, usize)> {
        self.levels
            .iter()
            .filter_map(|(i, m)| {
                let below = self.level(i - 1).cols();
                (m.cols() > below).then_some((*i, m.cols() - below))
            })
            .collect()
    }
}

pub fn monodromy_filtration<F: Field>(n: &Matrix<F>) -> Result<MonodromyFiltration<F>> {
    if !n.is_square() {
        return Err(Error::DimensionMismatch("N must be square".into()));
    }
    if !n.is_nilpotent() {
        return Err(Error::NotNilpotent("monodromy operator".into()));
    }
    let dim = n.rows();
    if dim == 0 {
        return Ok(MonodromyFiltration { levels: Vec::new() });
    }
    let mut powers = vec![Matrix::identity(dim)];
    for k in 1..=dim {
        powers.push(&powers[k - 1] * n);
    }
    let kernels: Vec<Matrix<F>> = powers.iter().map(Matrix::kernel).collect();
    let images: Vec<Matrix<F>> = powers.iter().map(Matrix::column_basis).collect();
    let top = dim as i64 - 1;
    let mut levels = Vec::new();
    for i in -top..=top {
        let mut acc = Matrix::zeros(dim, 0);
        for k in 0..dim {
            let j = i + k as i64;
            if j < 0 || j as usize >= dim {
                continue;
            }
            let piece = kernels[j as usize + 1].intersect_columns(&images[k])?;
            acc = acc.sum_columns(&piece)?;
        }
        levels.push((i, acc));
    }
    Ok(MonodromyFiltration { levels })
}

/// Action of `a` on `big / small` (column bases, `small ⊆ big`, both
/// `a`-stable), in the basis completing `small` to `big`.
pub(crate) fn quotient_action<F: Field>(a: &Matrix<F>, big: &Matrix<F>, small: &Matrix<F>) -> Result<Matrix<F>> {
    let basis = small.extend_basis(big)?;
    let s = small.cols();
    let b = basis.cols();
    let full = basis.solve_full_column_rank(&(a * &basis))?;
    Ok(Matrix::from_fn(b - s, b - s, |i, j| full.get(s + i, s + j).clone()))
}

/// Action of `a` on the `a`-stable subspace spanned by the columns of `basis`.
pub(crate) fn restrict<F: Field>(a: &Matrix<F>, basis: &Matrix<F>) -> Result<Matrix<F>> {
    basis.solve_full_column_rank(&(a * basis))
}

fn rational_abs_bound(coeffs: &[Rational]) -> Rational {
    // Cauchy: every root has |x| <= 1 + max |c_i / c_n|
    let lead = coeffs.last().expect("nonconstant polynomial").abs();
    coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one()
}

/// The eigenvalues of `m`, when each has the form `zeta * q^c` with
/// `zeta^power = 1`, as q-exponents `c` with multiplicities (ascending).
/// Detection is exact: the characteristic polynomial of `m^power` must be
/// rational with all roots of the form `q^(power*c)`.
pub fn monomial_eigenvalues(m: &Matrix<Cyclo>, lf: &LocalFieldData, power: u32) -> Result<Vec<(i64, usize)>> {
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let cp = m.pow(power).charpoly();
    let mut rat = Vec::with_capacity(cp.len());
    for c in &cp {
        match c.as_rational() {
            Some(r) => rat.push(r.clone()),
            None => {
                return Err(Error::Undecidable(format!(
                    "characteristic polynomial of Phi^{power} is not rational, so some eigenvalue is not zeta*q^b"
                )))
            }
        }
    }
    if rat[0].is_zero() {
        return Err(Error::Undecidable("zero eigenvalue".into()));
    }
    let hi = rational_abs_bound(&rat);
    let mut reversed = rat.clone();
    reversed.reverse();
    let lo_inv = rational_abs_bound(&reversed);
    let qm = Rational::from_integer(BigInt::from(lf.q())).pow(power as i32);
    let mut c_max = 0i64;
    let mut v = qm.clone();
    while v <= hi {
        c_max += 1;
        v *= &qm;
    }
    let mut c_min = 0i64;
    let mut v = qm.clone();
    while v <= lo_inv {
        c_min -= 1;
        v *= &qm;
    }
    let poly = UniPoly::new(rat.into_iter().map(Cyclo::rational).collect());
    let mut out = Vec::new();
    let mut total = 0;
    for c in c_min..=c_max {
        let root = Cyclo::rational(Pow::pow(&qm, c as i32));
        let k = poly.root_multiplicity(&root);
        if k > 0 {
            out.push((c, k));
            total += k;
        }
    }
    if total != n {
        return Err(Error::Undecidable(format!(
            "only {total} of {n} eigenvalues of Phi have the form zeta*q^b with zeta^{power} = 1"
        )));
    }
    Ok(out)
}

/// `q^k` in the cyclotomic field.
pub(crate) fn q_power(lf: &LocalFieldData, k: i64) -> Cyclo {
    lf.q_pow::<Cyclo>(k)
}
