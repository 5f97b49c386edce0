//! Jordan-Chevalley decomposition over the ground field, without computing
//! eigenvalues.
//!
//! With `p` the squarefree part of the characteristic polynomial, Newton's
//! iteration `S <- S - p(S) p'(S)^{-1}` starting from `S = A` converges to the
//! semisimple part in `O(log n)` steps. Every iterate is a polynomial in `A`
//! with coefficients in the field of `A`'s entries.

use super::{Field, Matrix, UniPoly};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct JordanChevalley<F: Field> {
    pub semisimple: Matrix<F>,
    /// `A - S`.
    pub nilpotent: Matrix<F>,
    /// `S^{-1} A`, present when `A` is invertible.
    pub unipotent: Option<Matrix<F>>,
}

/// Decomposes `m = S + N = S U`. With `invertible` set the input must be
/// nonsingular and the multiplicative part `U` is always returned.
pub fn jordan_chevalley<F: Field>(m: &Matrix<F>, invertible: bool) -> Result<JordanChevalley<F>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Jordan-Chevalley of a non-square matrix".into()));
    }
    let n = m.rows();
    let nonsingular = !m.det()?.is_zero();
    if invertible && !nonsingular {
        return Err(Error::Singular);
    }
    let p = UniPoly::new(m.charpoly()).squarefree_part();
    let dp = p.derivative();
    let mut s = m.clone();
    // quadratic convergence: nilpotency index halves each step
    for _ in 0..=(usize::BITS - n.leading_zeros()) + 1 {
        let ps = p.eval_matrix(&s);
        if ps.is_zero() {
            let nilpotent = m - &s;
            let unipotent = if nonsingular {
                Some(&s.inverse()? * m)
            } else {
                None
            };
            return Ok(JordanChevalley {
                semisimple: s,
                nilpotent,
                unipotent,
            });
        }
        let correction = &ps * &dp.eval_matrix(&s).inverse()?;
        s = &s - &correction;
    }
    Err(Error::Internal("Newton iteration for the semisimple part did not converge".into()))
}

/// Whether `m` is semisimple: the squarefree part of its characteristic
/// polynomial annihilates it.
pub fn is_semisimple<F: Field>(m: &Matrix<F>) -> bool {
    let p = UniPoly::new(m.charpoly()).squarefree_part();
    p.eval_matrix(m).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Cyclo};

    fn m(rows: &[&[i64]]) -> Matrix<Cyclo> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclo::from_int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn unipotent_input() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let jc = jordan_chevalley(&a, true).unwrap();
        assert!(jc.semisimple.is_identity());
        assert_eq!(jc.unipotent.unwrap(), a);
    }

    #[test]
    fn semisimple_input() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let jc = jordan_chevalley(&a, true).unwrap();
        assert_eq!(jc.semisimple, a);
        assert!(jc.unipotent.unwrap().is_identity());
    }

    #[test]
    fn jordan_block() {
        let a = m(&[&[2, 1], &[0, 2]]);
        let jc = jordan_chevalley(&a, true).unwrap();
        assert_eq!(jc.semisimple, m(&[&[2, 0], &[0, 2]]));
        let u = Matrix::from_rows(vec![
            vec![Cyclo::one(), Cyclo::rational(rat(1, 2))],
            vec![Cyclo::zero(), Cyclo::one()],
        ])
        .unwrap();
        assert_eq!(jc.unipotent.unwrap(), u);
    }

    #[test]
    fn singular_with_invertible_flag() {
        assert_eq!(jordan_chevalley(&m(&[&[0, 1], &[0, 0]]), true), Err(Error::Singular));
        let jc = jordan_chevalley(&m(&[&[0, 1], &[0, 0]]), false).unwrap();
        assert!(jc.semisimple.is_zero());
        assert!(jc.unipotent.is_none());
    }

    #[test]
    fn irrational_eigenvalues_stay_rational() {
        // companion of (x^2 - 2)^2 has no rational eigenvalues
        let a = m(&[&[0, 0, 0, -4], &[1, 0, 0, 0], &[0, 1, 0, 4], &[0, 0, 1, 0]]);
        let jc = jordan_chevalley(&a, true).unwrap();
        assert!(is_semisimple(&jc.semisimple));
        assert!(!is_semisimple(&a));
        assert!(jc.nilpotent.is_nilpotent());
        assert_eq!(&jc.semisimple * &jc.nilpotent, &jc.nilpotent * &jc.semisimple);
    }
}
