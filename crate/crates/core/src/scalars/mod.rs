//! Exact scalars: cyclotomic numbers, Laurent polynomials over them, and
//! dense linear algebra over either.

mod conjugation;
mod cyclo;
mod expr;
mod jordan;
mod laurent;
mod matrix;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use conjugation::{solve_conjugation, intertwiner_space};
pub use cyclo::{cyclotomic_polynomial, euler_phi, rat, Cyclo, Rational};
pub use expr::{parse_expr, ExprError};
pub use jordan::{is_semisimple, jordan_chevalley, JordanChevalley};
pub use laurent::{EvalFailure, LaurentPoly, Monomial};
pub use matrix::Matrix;
pub use poly::UniPoly;

/// A commutative integral domain of characteristic zero containing Q.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + Sub<Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + Mul<Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_cyclo(c: Cyclo) -> Self;
    fn is_zero(&self) -> bool;

    /// `self / d` when the quotient exists in the domain.
    fn exact_div(&self, d: &Self) -> Option<Self>;

    /// Inverse when `self` is a unit of the domain.
    fn unit_inverse(&self) -> Option<Self>;

    /// The value of `self` if it is a constant.
    fn as_constant(&self) -> Option<Cyclo>;

    /// Least common multiple of the cyclotomic orders of the coefficients.
    fn cyclotomic_order(&self) -> u32;

    /// Rough size used to prefer small pivots.
    fn size_hint(&self) -> usize {
        1
    }

    fn from_rational(r: Rational) -> Self {
        Self::from_cyclo(Cyclo::rational(r))
    }

    fn from_int(n: i64) -> Self {
        Self::from_cyclo(Cyclo::from_int(n))
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A scalar domain that is a field.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self>;
}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn from_cyclo(c: Cyclo) -> Self {
        c
    }
    fn is_zero(&self) -> bool {
        Cyclo::is_zero(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.checked_div(d).ok()
    }
    fn unit_inverse(&self) -> Option<Self> {
        Cyclo::inv(self).ok()
    }
    fn as_constant(&self) -> Option<Cyclo> {
        Some(self.clone())
    }
    fn cyclotomic_order(&self) -> u32 {
        if self.as_rational().is_some() {
            1
        } else {
            self.order()
        }
    }
    fn size_hint(&self) -> usize {
        if self.as_rational().is_some() {
            1
        } else {
            2
        }
    }
    fn is_one(&self) -> bool {
        Cyclo::is_one(self)
    }
}

impl Field for Cyclo {
    fn inv(&self) -> Option<Self> {
        Cyclo::inv(self).ok()
    }
}

/// Least common multiple helper for cyclotomic orders.
pub fn lcm_order(a: u32, b: u32) -> u32 {
    num_integer::Integer::lcm(&a, &b)
}
