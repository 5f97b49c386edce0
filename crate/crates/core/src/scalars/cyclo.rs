//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! An element is stored as its coordinate vector against the power basis
//! `1, z, ..., z^(phi(N)-1)` modulo the N-th cyclotomic polynomial, so equal
//! elements of the same field have equal representations. Elements of
//! different fields are combined in Q(zeta_lcm) through the canonical
//! embeddings `zeta_n -> zeta_m^(m/n)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn euler_phi(n: u32) -> usize {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Coefficients (low degree first) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0, "cyclotomic order must be positive");
    // x^n - 1 divided by Phi_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_monic_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

#[derive(Debug)]
pub(crate) struct CycloField {
    order: u32,
    degree: usize,
    /// `x^k mod Phi_order` for `0 <= k < order`.
    powers: Vec<Vec<i64>>,
}

impl CycloField {
    fn new(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1];
            }
            if top != 0 {
                for i in 0..degree {
                    next[i] = next[i]
                        .checked_sub(top.checked_mul(phi[i]).expect("cyclotomic table overflow"))
                        .expect("cyclotomic table overflow");
                }
            }
            cur = next;
        }
        CycloField {
            order,
            degree,
            powers,
        }
    }
}

fn field(order: u32) -> Arc<CycloField> {
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    let cache = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(f) = cache.read().expect("field cache poisoned").get(&order) {
        return f.clone();
    }
    let built = Arc::new(CycloField::new(order));
    cache
        .write()
        .expect("field cache poisoned")
        .entry(order)
        .or_insert(built)
        .clone()
}

/// An element of Q(zeta_N).
#[derive(Clone)]
pub struct Cyclo {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl Cyclo {
    pub fn rational(r: Rational) -> Self {
        Cyclo {
            field: field(1),
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Zero of Q(zeta_order).
    pub fn zero_in(order: u32) -> Self {
        let f = field(order);
        let d = f.degree;
        Cyclo {
            field: f,
            coeffs: vec![Rational::zero(); d],
        }
    }

    /// `zeta_order^exp`.
    pub fn zeta_pow(order: u32, exp: i64) -> Self {
        let f = field(order);
        let k = exp.rem_euclid(order as i64) as usize;
        let coeffs = f.powers[k].iter().map(|&c| Rational::from_integer(c.into())).collect();
        Cyclo { field: f, coeffs }
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// Builds an element from coordinates against `1, z, ..., z^(phi(order)-1)`.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let f = field(order);
        if coeffs.len() != f.degree {
            return Err(Error::DimensionMismatch(format!(
                "Q(zeta_{order}) has degree {}, got {} coordinates",
                f.degree,
                coeffs.len()
            )));
        }
        Ok(Cyclo { field: f, coeffs })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The image of `self` under the canonical embedding into Q(zeta_target).
    pub fn embed(&self, target: u32) -> Result<Cyclo> {
        let from = self.order();
        if target == 0 || !target.is_multiple_of(from) {
            return Err(Error::IncompatibleOrders { from, to: target });
        }
        if target == from {
            return Ok(self.clone());
        }
        let tf = field(target);
        let step = (target / from) as usize;
        let mut out = vec![Rational::zero(); tf.degree];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = (k * step) % target as usize;
            add_scaled_row(&mut out, c, &tf.powers[p]);
        }
        Ok(Cyclo {
            field: tf,
            coeffs: out,
        })
    }

    fn lifted_pair(&self, other: &Cyclo) -> (Cyclo, Cyclo) {
        let m = self.order().lcm(&other.order());
        (
            self.embed(m).expect("lcm is a common multiple"),
            other.embed(m).expect("lcm is a common multiple"),
        )
    }

    fn scale(&self, r: &Rational) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn add_ref(&self, other: &Cyclo) -> Cyclo {
        if self.order() != other.order() {
            if let Some(r) = other.as_rational() {
                let mut out = self.clone();
                out.coeffs[0] += r;
                return out;
            }
            if let Some(r) = self.as_rational() {
                let mut out = other.clone();
                out.coeffs[0] += r;
                return out;
            }
            let (a, b) = self.lifted_pair(other);
            return a.add_ref(&b);
        }
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn neg_ref(&self) -> Cyclo {
        Cyclo {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn mul_ref(&self, other: &Cyclo) -> Cyclo {
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if self.order() != other.order() {
            let (a, b) = self.lifted_pair(other);
            return a.mul_ref(&b);
        }
        let f = &self.field;
        let d = f.degree;
        let mut conv = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = conv[..d].to_vec();
        for (k, c) in conv.iter().enumerate().skip(d) {
            if !c.is_zero() {
                add_scaled_row(&mut out, c, &f.powers[k % f.order as usize]);
            }
        }
        Cyclo {
            field: f.clone(),
            coeffs: out,
        }
    }

    pub fn inv(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Cyclo::rational(r.recip()).embed(self.order());
        }
        // solve (multiplication by self) * y = 1 over Q
        let d = self.field.degree;
        let order = self.order();
        let mut columns = Vec::with_capacity(d);
        for j in 0..d {
            let xj = Cyclo::zeta_pow(order, j as i64);
            columns.push(self.mul_ref(&xj).coeffs);
        }
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                let mut row: Vec<Rational> = (0..d).map(|j| columns[j][i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..d {
            let piv = (col..d)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or_else(|| Error::Internal("cyclotomic multiplication map is singular".into()))?;
            aug.swap(col, piv);
            let inv = aug[col][col].recip();
            for v in aug[col].iter_mut() {
                *v *= &inv;
            }
            for r in 0..d {
                if r != col && !aug[r][col].is_zero() {
                    let factor = aug[r][col].clone();
                    for c in col..=d {
                        let delta = &factor * &aug[col][c];
                        aug[r][c] -= delta;
                    }
                }
            }
        }
        let coeffs = aug.into_iter().map(|mut row| row.pop().expect("augmented column")).collect();
        Ok(Cyclo {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_div(&self, other: &Cyclo) -> Result<Cyclo> {
        Ok(self.mul_ref(&other.inv()?))
    }

    pub fn pow(&self, exp: i64) -> Result<Cyclo> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyclo::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_ref(&sq);
            }
        }
        Ok(acc)
    }

    /// Renders in the expression grammar with `z` denoting zeta of the field's own order.
    pub fn to_expr(&self) -> String {
        let mut terms: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let a = c.abs();
            let body = match k {
                0 => a.to_string(),
                _ => {
                    let zp = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if a.is_one() {
                        zp
                    } else {
                        format!("{a}*{zp}")
                    }
                }
            };
            terms.push((negative, body));
        }
        join_signed(&terms)
    }

    /// `to_expr` after embedding into Q(zeta_ambient), so `z` means zeta_ambient.
    pub fn to_expr_in(&self, ambient: u32) -> Result<String> {
        Ok(self.embed(ambient)?.to_expr())
    }

    /// Value under the embedding `zeta_N -> exp(2 pi i / N)`.
    pub fn to_complex(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let n = self.order() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

pub(crate) fn join_signed(terms: &[(bool, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.iter().enumerate() {
        match (i, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(body);
            }
            (0, false) => out.push_str(body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(body);
            }
        }
    }
    out
}

fn add_scaled_row(out: &mut [Rational], c: &Rational, row: &[i64]) {
    for (o, &p) in out.iter_mut().zip(row) {
        match p {
            0 => {}
            1 => *o += c,
            -1 => *o -= c,
            _ => *o += c * Rational::from_integer(BigInt::from(p)),
        }
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.lifted_pair(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclo {}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.to_expr(), self.order())
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order() <= 2 || self.as_rational().is_some() {
            write!(f, "{}", self.to_expr())
        } else {
            write!(f, "{} (z = zeta_{})", self.to_expr(), self.order())
        }
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident, $imp:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$imp(&rhs)
            }
        }
        impl<'a> $tr<&'a $ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                self.$imp(rhs)
            }
        }
        impl<'a, 'b> $tr<&'b $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'b $ty) -> $ty {
                self.$imp(rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

impl Cyclo {
    fn sub_ref(&self, other: &Cyclo) -> Cyclo {
        self.add_ref(&other.neg_ref())
    }
}

forward_binop!(Cyclo, Add, add, add_ref);
forward_binop!(Cyclo, Sub, sub, sub_ref);
forward_binop!(Cyclo, Mul, mul, mul_ref);

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl From<i64> for Cyclo {
    fn from(n: i64) -> Self {
        Cyclo::from_int(n)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::rational(r)
    }
}
