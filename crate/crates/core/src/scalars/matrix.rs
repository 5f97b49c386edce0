//! Dense matrices over a [`Scalar`] domain.
//!
//! Division-free routines (Bareiss rank and determinant, Berkowitz
//! characteristic polynomial) work over any integral domain, which is what
//! lets family computations run over the fraction field of a Laurent domain
//! without building rational functions. Kernels, inverses and subspace
//! operations need a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(entries: Vec<S>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Column vector.
    pub fn column(entries: Vec<S>) -> Self {
        let n = entries.len();
        Matrix {
            rows: n,
            cols: 1,
            data: entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Scalar, E>(&self, f: impl FnMut(&S) -> std::result::Result<T, E>) -> std::result::Result<Matrix<T>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<std::result::Result<_, _>>()?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            }))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|e| e.clone() * s)
    }

    pub fn try_mul(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = S::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc + a.clone() * b;
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip_with(&self, other: &Matrix<S>, what: &str, f: impl Fn(&S, &S) -> S) -> Result<Matrix<S>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot {what} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.zip_with(other, "add", |a, b| a.clone() + b)
    }

    pub fn try_sub(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        self.zip_with(other, "subtract", |a, b| a.clone() - b)
    }

    pub fn pow(&self, mut e: u32) -> Matrix<S> {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        let mut sq = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self.get(i, i))
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix<S>) -> Matrix<S> {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = self.get(i / other.rows, j / other.cols);
            if a.is_zero() {
                return S::zero();
            }
            a.clone() * other.get(i % other.rows, j % other.cols)
        })
    }

    pub fn block_diag(&self, other: &Matrix<S>) -> Matrix<S> {
        Matrix::from_fn(self.rows + other.rows, self.cols + other.cols, |i, j| {
            match (i < self.rows, j < self.cols) {
                (true, true) => self.get(i, j).clone(),
                (false, false) => other.get(i - self.rows, j - self.cols).clone(),
                _ => S::zero(),
            }
        })
    }

    pub fn hstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    pub fn vstack(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix<S> {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn cyclotomic_order(&self) -> u32 {
        self.data.iter().map(Scalar::cyclotomic_order).fold(1, super::lcm_order)
    }

    /// Fraction-free (Bareiss) elimination with full pivoting. Returns the
    /// rank over the fraction field and the signed last pivot, which is the
    /// determinant when the matrix is square of full rank.
    fn bareiss(&self) -> (usize, S) {
        let (r, c) = (self.rows, self.cols);
        let mut m: Vec<Vec<S>> = self.to_rows();
        let mut prev = S::one();
        let mut sign_negative = false;
        let mut rank = 0;
        for k in 0..r.min(c) {
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if !e.is_zero() {
                        let size = e.size_hint();
                        if best.is_none_or(|(_, _, s)| size < s) {
                            best = Some((i, j, size));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != k {
                m.swap(pi, k);
                sign_negative = !sign_negative;
            }
            if pj != k {
                for row in m.iter_mut() {
                    row.swap(pj, k);
                }
                sign_negative = !sign_negative;
            }
            let pivot = m[k][k].clone();
            for i in (k + 1)..r {
                let lead = m[i][k].clone();
                for j in (k + 1)..c {
                    let upper = m[k][j].clone();
                    let cur = std::mem::replace(&mut m[i][j], S::zero());
                    let mut num = cur * &pivot;
                    if !lead.is_zero() && !upper.is_zero() {
                        num = num - lead.clone() * &upper;
                    }
                    m[i][j] = if prev.is_one() {
                        num
                    } else {
                        num.exact_div(&prev).expect("Bareiss step divides exactly")
                    };
                }
                m[i][k] = S::zero();
            }
            prev = pivot;
            rank += 1;
        }
        let last = if sign_negative { -prev } else { prev };
        (rank, last)
    }

    /// Rank over the fraction field of the scalar domain.
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }

    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(S::one());
        }
        let (rank, last) = self.bareiss();
        Ok(if rank < self.rows { S::zero() } else { last })
    }

    /// Coefficients `[c_0, ..., c_n]` (low degree first, `c_n = 1`) of `det(x I - self)`,
    /// by Berkowitz's division-free algorithm.
    pub fn charpoly(&self) -> Vec<S> {
        assert!(self.is_square(), "characteristic polynomial of a non-square matrix");
        let mut v = berkowitz(self);
        v.reverse();
        v
    }

    /// Inverse over the domain: exists iff the determinant is a unit.
    /// Uses Cayley-Hamilton so no division beyond the unit determinant occurs.
    pub fn unit_inverse(&self) -> Result<Matrix<S>> {
        let n = self.rows;
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        if n == 0 {
            return Ok(self.clone());
        }
        let cp = self.charpoly();
        // det(x - A) has constant term (-1)^n det A
        let c0 = cp[0].clone();
        let c0_inv = c0.unit_inverse().ok_or(Error::Singular)?;
        // A^{-1} = -(A^{n-1} + c_{n-1} A^{n-2} + ... + c_1) / c_0
        let mut acc = Matrix::identity(n);
        for k in (1..n).rev() {
            acc = &(&acc * self) + &Matrix::identity(n).scale(&cp[k]);
        }
        Ok(acc.scale(&(-c0_inv)))
    }

    /// Checks `self^dim == 0`.
    pub fn is_nilpotent(&self) -> bool {
        self.is_square() && self.pow(self.rows as u32).is_zero()
    }
}

fn berkowitz<S: Scalar>(m: &Matrix<S>) -> Vec<S> {
    // returns [1, c1, ..., cn] with det(xI - M) = x^n + c1 x^{n-1} + ... + cn
    let n = m.rows;
    if n == 0 {
        return vec![S::one()];
    }
    if n == 1 {
        return vec![S::one(), -m.get(0, 0).clone()];
    }
    let a = m.get(0, 0).clone();
    let sub = Matrix::from_fn(n - 1, n - 1, |i, j| m.get(i + 1, j + 1).clone());
    let col = Matrix::from_fn(n - 1, 1, |i, _| m.get(i + 1, 0).clone());
    let row = Matrix::from_fn(1, n - 1, |_, j| m.get(0, j + 1).clone());
    let mut diags = vec![S::one(), -a];
    let mut v = col;
    for i in 0..(n - 1) {
        if i > 0 {
            v = &sub * &v;
        }
        diags.push(-(&row * &v).get(0, 0).clone());
    }
    let inner = berkowitz(&sub);
    // Toeplitz (n+1) x n lower-triangular with first column `diags`
    (0..=n)
        .map(|i| {
            (0..n).filter(|&j| j <= i).fold(S::zero(), |acc, j| {
                let t = &diags[i - j];
                if t.is_zero() || inner[j].is_zero() {
                    acc
                } else {
                    acc + t.clone() * &inner[j]
                }
            })
        })
        .collect()
}

impl<S: Field> Matrix<S> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<S>, Vec<usize>) {
        let mut m = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).filter(|&r| !m[r][col].is_zero()).min_by_key(|&r| m[r][col].size_hint()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].inv().expect("nonzero pivot is invertible");
            if !inv.is_one() {
                for v in m[row].iter_mut().skip(col) {
                    if !v.is_zero() {
                        *v = v.clone() * &inv;
                    }
                }
            }
            let pivot_row = m[row].clone();
            for (r, other) in m.iter_mut().enumerate() {
                if r == row || other[col].is_zero() {
                    continue;
                }
                let factor = other[col].clone();
                for c in col..self.cols {
                    if !pivot_row[c].is_zero() {
                        other[c] = other[c].clone() - factor.clone() * &pivot_row[c];
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (Matrix::from_rows(m).unwrap_or_else(|_| Matrix::zeros(self.rows, self.cols)), pivots)
    }

    /// Basis of the right kernel, as the columns of the returned matrix.
    pub fn kernel(&self) -> Matrix<S> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (idx, &f) in free.iter().enumerate() {
            k.set(f, idx, S::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = r.get(prow, f);
                if !v.is_zero() {
                    k.set(pc, idx, -v.clone());
                }
            }
        }
        k
    }

    /// Rank and kernel basis vectors.
    pub fn kernel_rank(&self) -> (usize, Vec<Vec<S>>) {
        let k = self.kernel();
        let vecs = (0..k.cols()).map(|j| k.col(j)).collect();
        (self.cols - k.cols(), vecs)
    }

    pub fn inverse(&self) -> Result<Matrix<S>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }

    /// A basis (as columns) of the column space.
    pub fn column_basis(&self) -> Matrix<S> {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Solves `self * X = rhs` for `X`, assuming a solution exists and `self`
    /// has full column rank.
    pub fn solve_full_column_rank(&self, rhs: &Matrix<S>) -> Result<Matrix<S>> {
        let aug = self.hstack(rhs)?;
        let (r, pivots) = aug.rref();
        if pivots.iter().take_while(|&&p| p < self.cols).count() != self.cols || pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Internal("system has no unique solution".into()));
        }
        Ok(Matrix::from_fn(self.cols, rhs.cols, |i, j| r.get(i, self.cols + j).clone()))
    }

    /// Column basis of the intersection of the column spaces of `self` and `other`.
    pub fn intersect_columns(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        if self.cols == 0 || other.cols == 0 {
            return Ok(Matrix::zeros(self.rows, 0));
        }
        let stacked = self.hstack(&other.scale(&-S::one()))?;
        let k = stacked.kernel();
        let coeffs = Matrix::from_fn(self.cols, k.cols(), |i, j| k.get(i, j).clone());
        Ok((self * &coeffs).column_basis())
    }

    /// Column basis of the sum of the column spaces.
    pub fn sum_columns(&self, other: &Matrix<S>) -> Result<Matrix<S>> {
        Ok(self.hstack(other)?.column_basis())
    }

    /// Extends the independent columns of `self` (a basis of a subspace of
    /// the column space of `ambient`) to a basis of the column space of
    /// `ambient`; the first columns of the result are those of `self`.
    pub fn extend_basis(&self, ambient: &Matrix<S>) -> Result<Matrix<S>> {
        let combined = self.hstack(ambient)?;
        let (_, pivots) = combined.rref();
        Ok(combined.select_columns(&pivots))
    }
}

impl<S: Scalar> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<'b, S: Scalar> Mul<&'b Matrix<S>> for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: &'b Matrix<S>) -> Matrix<S> {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl<'b, S: Scalar> Add<&'b Matrix<S>> for &Matrix<S> {
    type Output = Matrix<S>;
    fn add(self, rhs: &'b Matrix<S>) -> Matrix<S> {
        self.try_add(rhs).expect("matrix sum dimensions")
    }
}

impl<'b, S: Scalar> Sub<&'b Matrix<S>> for &Matrix<S> {
    type Output = Matrix<S>;
    fn sub(self, rhs: &'b Matrix<S>) -> Matrix<S> {
        self.try_sub(rhs).expect("matrix difference dimensions")
    }
}

impl<S: Scalar> Neg for &Matrix<S> {
    type Output = Matrix<S>;
    fn neg(self) -> Matrix<S> {
        self.map(|e| -e.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{Cyclo, LaurentPoly};

    fn m(rows: &[&[i64]]) -> Matrix<Cyclo> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Cyclo::from_int(v)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_rank_examples() {
        let (r, k) = Matrix::<Cyclo>::identity(3).kernel_rank();
        assert_eq!((r, k.len()), (3, 0));
        let (r, k) = Matrix::<Cyclo>::zeros(2, 2).kernel_rank();
        assert_eq!((r, k.len()), (0, 2));
        let (r, k) = m(&[&[1, 1], &[1, 1]]).kernel_rank();
        assert_eq!(r, 1);
        assert_eq!(k, vec![vec![Cyclo::from_int(-1), Cyclo::from_int(1)]]);
    }

    #[test]
    fn dimension_checked_product() {
        assert!(m(&[&[1, 2]]).try_mul(&m(&[&[1, 2]])).is_err());
    }

    #[test]
    fn bareiss_matches_field_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.rref().1.len(), 2);
        assert_eq!(a.det().unwrap(), Cyclo::zero());
        let b = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(b.det().unwrap(), Cyclo::from_int(18));
    }

    #[test]
    fn berkowitz_charpoly() {
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let a = m(&[&[2, 1], &[0, 3]]);
        assert_eq!(a.charpoly(), vec![Cyclo::from_int(6), Cyclo::from_int(-5), Cyclo::from_int(1)]);
        let b = m(&[&[1, 2, 0], &[3, 4, 5], &[0, 6, 7]]);
        let cp = b.charpoly();
        assert_eq!(cp[0], -b.det().unwrap());
        assert_eq!(cp[2], -b.trace());
    }

    #[test]
    fn laurent_rank_and_inverse() {
        let x = LaurentPoly::var(0);
        let one = LaurentPoly::constant(Cyclo::one());
        // [[1, x], [x, x^2]] has rank 1 over Q(x)
        let a = Matrix::from_rows(vec![vec![one.clone(), x.clone()], vec![x.clone(), x.clone() * &x]]).unwrap();
        assert_eq!(a.rank(), 1);
        // [[x, 1], [0, 1]] has det x, a unit
        let b = Matrix::from_rows(vec![vec![x.clone(), one.clone()], vec![LaurentPoly::zero(), one.clone()]]).unwrap();
        let inv = b.unit_inverse().unwrap();
        assert!((&b * &inv).is_identity());
        // [[x+1]] is not invertible over the Laurent ring
        let c = Matrix::from_rows(vec![vec![x + one]]).unwrap();
        assert_eq!(c.unit_inverse(), Err(Error::Singular));
    }

    #[test]
    fn inverse_and_intersection() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inverse(), Err(Error::Singular));
        let u = m(&[&[1, 0], &[0, 1], &[0, 0]]);
        let w = m(&[&[1, 0], &[1, 0], &[0, 1]]);
        let i = u.intersect_columns(&w).unwrap();
        assert_eq!(i.cols(), 1);
    }
}
