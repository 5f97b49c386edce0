//! Multivariate Laurent polynomials with cyclotomic coefficients.
//!
//! Variables are positional; names live in the family's domain descriptor.
//! Exponent vectors are stored with trailing zeros trimmed and ordered
//! lexicographically (with implicit zero padding), which is a total group
//! order on Z^n, so leading terms multiply.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use super::cyclo::{forward_binop, join_signed, Cyclo};
use super::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[i32; 4]>);

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = i32>) -> Self {
        let mut v: SmallVec<[i32; 4]> = exps.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Monomial(v)
    }

    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(index: usize, exp: i32) -> Self {
        let mut v: SmallVec<[i32; 4]> = SmallVec::from_elem(0, index + 1);
        v[index] = exp;
        Monomial::new(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, var: usize) -> i32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)))
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial::new((0..n).map(|i| self.exponent(i) - other.exponent(i)))
    }

    pub fn inv(&self) -> Monomial {
        Monomial::new(self.0.iter().map(|e| -e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Failure while evaluating at a point; carries the variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalFailure {
    Unassigned(usize),
    ZeroAtNegativeExponent(usize),
}

#[derive(Clone, PartialEq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Cyclo>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Cyclo) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Cyclo) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// The variable with the given index.
    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index, 1), Cyclo::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Cyclo)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclo)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest variable index used, plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.exponents().len()).max().unwrap_or(0)
    }

    /// Whether variable `var` occurs with a negative exponent.
    pub fn has_negative_exponent(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) < 0)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Cyclo)> {
        self.terms.iter().next_back()
    }

    pub fn trailing_term(&self) -> Option<(&Monomial, &Cyclo)> {
        self.terms.iter().next()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Cyclo)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Monomial, c: Cyclo) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn add_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let (mut big, small) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    fn sub_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    fn neg_ref(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn scale_term(&self, m: &Monomial, c: &Cyclo) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        let (dlm, dlc) = d.leading_term()?;
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if d.terms.len() == 1 {
            let inv = dlc.inv().ok()?;
            return Some(self.scale_term(&dlm.inv(), &inv));
        }
        let dlc_inv = dlc.inv().ok()?;
        let (dtm, _) = d.trailing_term()?;
        let (stm, _) = self.trailing_term()?;
        // every quotient monomial lies at or above low(self)/low(d)
        let floor = stm.div(dtm);
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((rlm, rlc)) = rem.leading_term() {
            let qm = rlm.div(dlm);
            if qm < floor {
                return None;
            }
            let qc = rlc * &dlc_inv;
            rem = rem.sub_ref(&d.scale_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Evaluates at a point; `values[i]` is the value of variable `i`.
    pub fn eval(&self, values: &[Option<Cyclo>]) -> Result<Cyclo, EvalFailure> {
        let mut acc = Cyclo::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values
                    .get(i)
                    .and_then(|v| v.as_ref())
                    .ok_or(EvalFailure::Unassigned(i))?;
                let p = v.pow(e as i64).map_err(|_| EvalFailure::ZeroAtNegativeExponent(i))?;
                t = t * p;
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Renames variable `i` to `map[i]`.
    pub fn remap_vars(&self, map: &[usize]) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let width = map.iter().copied().max().map_or(0, |x| x + 1);
            let mut exps = vec![0i32; width];
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[map[i]] += e;
            }
            (Monomial::new(exps), c.clone())
        }))
    }

    /// Renders in the expression grammar; `z` denotes zeta_ambient.
    pub fn to_expr(&self, names: &[String], ambient: u32) -> Result<String, crate::error::Error> {
        let mut pieces: Vec<(bool, String)> = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mono: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = c.embed(ambient)?;
            let nonzero = coeff.coeffs().iter().filter(|r| !num_traits::Zero::is_zero(*r)).count();
            let (neg, cbody) = if nonzero == 1 {
                let s = coeff.to_expr();
                match s.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, s),
                }
            } else {
                (false, format!("({})", coeff.to_expr()))
            };
            let body = if mono.is_empty() {
                cbody
            } else if cbody == "1" {
                mono.join("*")
            } else {
                format!("{cbody}*{}", mono.join("*"))
            };
            pieces.push((neg, body));
        }
        Ok(join_signed(&pieces))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ambient = self.cyclotomic_order();
        match self.to_expr(&[], ambient) {
            Ok(s) if ambient > 2 => write!(f, "{s} (z = zeta_{ambient})"),
            Ok(s) => write!(f, "{s}"),
            Err(_) => write!(f, "<unprintable>"),
        }
    }
}

forward_binop!(LaurentPoly, Add, add, add_ref);
forward_binop!(LaurentPoly, Sub, sub, sub_ref);
forward_binop!(LaurentPoly, Mul, mul, mul_ref);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl From<Cyclo> for LaurentPoly {
    fn from(c: Cyclo) -> Self {
        LaurentPoly::constant(c)
    }
}

impl Scalar for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(Cyclo::one())
    }
    fn from_cyclo(c: Cyclo) -> Self {
        LaurentPoly::constant(c)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div_exact(d)
    }
    fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(LaurentPoly::term(m.inv(), c.inv().ok()?))
    }
    fn as_constant(&self) -> Option<Cyclo> {
        match self.terms.len() {
            0 => Some(Cyclo::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }
    fn cyclotomic_order(&self) -> u32 {
        self.terms
            .values()
            .map(Scalar::cyclotomic_order)
            .fold(1, super::lcm_order)
    }
    fn size_hint(&self) -> usize {
        self.terms.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn x() -> LaurentPoly {
        LaurentPoly::var(0)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var(1)
    }
    fn c(n: i64) -> LaurentPoly {
        LaurentPoly::constant(Cyclo::from_int(n))
    }

    #[test]
    fn monomial_order_is_padded_lex() {
        let a = Monomial::new([1]);
        let b = Monomial::new([1, -1]);
        assert!(b < a);
        assert_eq!(Monomial::new([2, 0, 0]), Monomial::new([2]));
    }

    #[test]
    fn eval_examples() {
        let z3 = Cyclo::zeta(3);
        assert_eq!(x().eval(&[Some(z3.clone())]).unwrap(), z3);
        let xinv = x().unit_inverse().unwrap();
        assert_eq!(xinv.eval(&[Some(Cyclo::from_int(2))]).unwrap(), Cyclo::rational(rat(1, 2)));
        // x^2 y^-1 + 3 at x=2, y=4 is 4/4 + 3 = 4
        let p = x() * x() * y().unit_inverse().unwrap() + c(3);
        assert_eq!(p.eval(&[Some(Cyclo::from_int(2)), Some(Cyclo::from_int(4))]).unwrap(), Cyclo::from_int(4));
        assert_eq!(c(7).eval(&[]).unwrap(), Cyclo::from_int(7));
    }

    #[test]
    fn eval_errors() {
        assert_eq!(x().eval(&[None]), Err(EvalFailure::Unassigned(0)));
        let xinv = x().unit_inverse().unwrap();
        assert_eq!(xinv.eval(&[Some(Cyclo::zero())]), Err(EvalFailure::ZeroAtNegativeExponent(0)));
        assert_eq!(x().eval(&[Some(Cyclo::zero())]).unwrap(), Cyclo::zero());
    }

    #[test]
    fn exact_division() {
        let a = x() * x() - c(1);
        let b = x() + c(1);
        assert_eq!(a.div_exact(&b).unwrap(), x() - c(1));
        assert_eq!((x() + c(2)).div_exact(&b), None);
        let p = (x() + y() * x().unit_inverse().unwrap()) * (y() - c(3) * x());
        assert_eq!(p.div_exact(&(y() - c(3) * x())).unwrap(), x() + y() * x().unit_inverse().unwrap());
    }

    #[test]
    fn units_are_monomials() {
        assert!((c(3) * x()).unit_inverse().is_some());
        assert!((x() + c(1)).unit_inverse().is_none());
        assert!(LaurentPoly::zero().unit_inverse().is_none());
    }

    #[test]
    fn expression_rendering() {
        let names = vec!["x".to_string(), "y".to_string()];
        let p = x() * x() * y().unit_inverse().unwrap() + c(3) - LaurentPoly::constant(Cyclo::rational(rat(1, 2))) * y();
        assert_eq!(p.to_expr(&names, 1).unwrap(), "x^2*y^-1 - 1/2*y + 3");
        let q = LaurentPoly::constant(Cyclo::one() + Cyclo::zeta(4)) * x();
        assert_eq!(q.to_expr(&names, 4).unwrap(), "(1 + z)*x");
    }
}
