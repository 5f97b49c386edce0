//! Intertwiners between tuples of matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Field, Matrix};
use crate::error::{Error, Result};

/// Largest grid `(n+1)^k` searched exhaustively.
const EXHAUSTIVE_GRID_LIMIT: u64 = 4096;
/// Number of seeded combinations tried when the grid is too large.
const SEEDED_TRIALS: usize = 64;
const SEED: u64 = 0x5744_544b;

/// Basis of `{X : X * a[i] = b[i] * X for all i}`; `X` is `dim(b) x dim(a)`.
pub fn intertwiner_space<F: Field>(a: &[Matrix<F>], b: &[Matrix<F>]) -> Result<Vec<Matrix<F>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} generators against {}",
            a.len(),
            b.len()
        )));
    }
    let n1 = a.first().map_or(0, Matrix::rows);
    let n2 = b.first().map_or(0, Matrix::rows);
    if a.iter().any(|m| m.rows() != n1 || m.cols() != n1) || b.iter().any(|m| m.rows() != n2 || m.cols() != n2) {
        return Err(Error::DimensionMismatch("generators must be square of a common size".into()));
    }
    if a.is_empty() {
        return Err(Error::DimensionMismatch("no generators".into()));
    }
    // successively cut down the space, starting from all n2 x n1 matrices
    let mut basis: Vec<Matrix<F>> = (0..n2 * n1)
        .map(|u| {
            let mut e = Matrix::zeros(n2, n1);
            e.set(u / n1, u % n1, F::one());
            e
        })
        .collect();
    for (ga, gb) in a.iter().zip(b) {
        if basis.is_empty() {
            break;
        }
        let residuals: Vec<Matrix<F>> = basis.iter().map(|x| &(x * ga) - &(gb * x)).collect();
        let system = Matrix::from_fn(n2 * n1, basis.len(), |r, c| residuals[c].get(r / n1, r % n1).clone());
        let k = system.kernel();
        basis = (0..k.cols())
            .map(|j| {
                basis.iter().enumerate().fold(Matrix::zeros(n2, n1), |acc, (i, x)| {
                    let c = k.get(i, j);
                    if c.is_zero() {
                        acc
                    } else {
                        &acc + &x.scale(c)
                    }
                })
            })
            .collect();
    }
    Ok(basis)
}

fn combination<F: Field>(basis: &[Matrix<F>], coeffs: &[i64]) -> Matrix<F> {
    let n = basis[0].rows();
    basis.iter().zip(coeffs).fold(Matrix::zeros(n, basis[0].cols()), |acc, (x, &c)| {
        if c == 0 {
            acc
        } else {
            &acc + &x.scale(&F::from_int(c))
        }
    })
}

fn invertible<F: Field>(x: &Matrix<F>) -> bool {
    x.det().map(|d| !d.is_zero()).unwrap_or(false)
}

/// Finds an invertible `X` with `X * gens1[i] = gens2[i] * X` for all `i`.
///
/// The intertwiner space is computed exactly; an invertible member is then
/// searched deterministically: each basis element, then either the full grid
/// of integer combinations with coefficients in `0..=n` when that grid has at
/// most 4096 points (complete: a nonzero determinant polynomial of degree
/// `n` cannot vanish on such a grid), or otherwise 64 combinations with
/// coefficients in `[-4n, 4n]` drawn from a fixed-seed ChaCha stream. In the
/// second regime a `None` answer is wrong with probability at most `8^-64`
/// by the Schwartz-Zippel bound, and the search is reproducible.
pub fn solve_conjugation<F: Field>(gens1: &[Matrix<F>], gens2: &[Matrix<F>]) -> Result<Option<Matrix<F>>> {
    let n = gens1.first().map_or(0, Matrix::rows);
    if gens2.first().map_or(0, Matrix::rows) != n {
        return Err(Error::DimensionMismatch("representations have different dimensions".into()));
    }
    let basis = intertwiner_space(gens1, gens2)?;
    if n == 0 {
        return Ok(Some(Matrix::zeros(0, 0)));
    }
    if basis.is_empty() {
        return Ok(None);
    }
    if let Some(x) = basis.iter().find(|x| invertible(x)) {
        return Ok(Some(x.clone()));
    }
    let k = basis.len() as u32;
    let side = n as u64 + 1;
    if side.checked_pow(k).is_some_and(|g| g <= EXHAUSTIVE_GRID_LIMIT) {
        let mut coeffs = vec![0i64; basis.len()];
        loop {
            // odometer over {0..n}^k
            let mut pos = 0;
            while pos < coeffs.len() {
                coeffs[pos] += 1;
                if coeffs[pos] as u64 == side {
                    coeffs[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
            if pos == coeffs.len() {
                return Ok(None);
            }
            let x = combination(&basis, &coeffs);
            if invertible(&x) {
                return Ok(Some(x));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let bound = 4 * n as i64;
    for _ in 0..SEEDED_TRIALS {
        let coeffs: Vec<i64> = (0..basis.len()).map(|_| rng.gen_range(-bound..=bound)).collect();
        let x = combination(&basis, &coeffs);
        if invertible(&x) {
            return Ok(Some(x));
        }
    }
    Ok(None)
}
