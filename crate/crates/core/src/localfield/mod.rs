//! Residue data of the local field, finite inertia quotients with their
//! lower-numbering filtrations, the Herbrand transition and the tame and
//! Swan exponents of inertia representations.

mod datum;
mod exponents;
mod herbrand;

use std::fmt;

use num_bigint::BigInt;

pub use datum::{validate_group_rep, validate_ramification_datum, RamificationDatum};
pub use exponents::{
    fixed_space, invariants_dim_of, projector, swan_exponent, swan_exponent_integral, tame_codim, Subspace,
};
pub use herbrand::{herbrand_phi, herbrand_psi};
pub(crate) use exponents::{swan_unchecked, tame_unchecked};

use crate::error::{Error, Result};
use crate::report::ValidationReport;
use crate::scalars::{Cyclo, Rational, Scalar};

/// Residue characteristic `ell` and residue degree `f`; `q = ell^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalFieldData {
    ell: u64,
    f: u32,
    q: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl LocalFieldData {
    pub fn new(ell: u64, f: u32) -> Result<Self> {
        let report = Self::check(ell, f);
        if !report.is_valid() {
            return Err(Error::InvalidDatum(report));
        }
        let q = ell.pow(f);
        Ok(LocalFieldData { ell, f, q })
    }

    /// Reports problems with `(ell, f)` without constructing.
    pub fn check(ell: u64, f: u32) -> ValidationReport {
        let mut r = ValidationReport::new();
        if !is_prime(ell) {
            r.push("local-field", "local_field.ell", format!("{ell} is not prime"));
        }
        if f == 0 {
            r.push("local-field", "local_field.f", "residue degree must be positive");
        } else if ell.checked_pow(f).is_none_or(|q| q > u32::MAX as u64) {
            r.push("local-field", "local_field.f", format!("{ell}^{f} is too large"));
        }
        r
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.q))
    }

    /// `q^k` as a scalar; negative `k` allowed.
    pub fn q_pow<S: Scalar>(&self, k: i64) -> S {
        let base = Rational::from_integer(BigInt::from(self.q));
        let v = num_traits::pow::Pow::pow(&base, k as i32);
        S::from_rational(v)
    }
}

impl fmt::Display for LocalFieldData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ell={} f={} q={}", self.ell, self.f, self.q)
    }
}

/// The Weil number `zeta_order^zeta_exponent * q^q_exponent`, of weight
/// `2 * q_exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeilMonomial {
    order: u32,
    zeta_exponent: i64,
    q_exponent: i64,
}

impl WeilMonomial {
    pub fn new(order: u32, zeta_exponent: i64, q_exponent: i64) -> Self {
        let order = order.max(1);
        WeilMonomial {
            order,
            zeta_exponent: zeta_exponent.rem_euclid(order as i64),
            q_exponent,
        }
    }

    pub fn one() -> Self {
        Self::new(1, 0, 0)
    }

    /// `q^b`.
    pub fn q_power(b: i64) -> Self {
        Self::new(1, 0, b)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zeta_exponent(&self) -> i64 {
        self.zeta_exponent
    }

    pub fn q_exponent(&self) -> i64 {
        self.q_exponent
    }

    pub fn weight(&self) -> i64 {
        2 * self.q_exponent
    }

    pub fn value(&self, lf: &LocalFieldData) -> Cyclo {
        Cyclo::zeta_pow(self.order, self.zeta_exponent) * lf.q_pow::<Cyclo>(self.q_exponent)
    }

    pub fn mul(&self, other: &WeilMonomial) -> WeilMonomial {
        let order = crate::scalars::lcm_order(self.order, other.order);
        let a = self.zeta_exponent * (order / self.order) as i64 + other.zeta_exponent * (order / other.order) as i64;
        WeilMonomial::new(order, a, self.q_exponent + other.q_exponent)
    }

    /// The root-of-unity factor alone.
    pub fn zeta_part(&self) -> WeilMonomial {
        WeilMonomial::new(self.order, self.zeta_exponent, 0)
    }
}

impl fmt::Display for WeilMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = if self.zeta_exponent == 0 {
            None
        } else {
            Some(format!("zeta_{}^{}", self.order, self.zeta_exponent))
        };
        let q = match self.q_exponent {
            0 => None,
            1 => Some("q".to_string()),
            b => Some(format!("q^{b}")),
        };
        match (z, q) {
            (None, None) => write!(f, "1"),
            (Some(z), None) => write!(f, "{z}"),
            (None, Some(q)) => write!(f, "{q}"),
            (Some(z), Some(q)) => write!(f, "{z}*{q}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn local_field_checks() {
        let lf = LocalFieldData::new(3, 2).unwrap();
        assert_eq!(lf.q(), 9);
        assert!(LocalFieldData::new(4, 1).is_err());
        assert!(LocalFieldData::new(3, 0).is_err());
        assert_eq!(lf.q_pow::<Cyclo>(-1), Cyclo::rational(crate::scalars::rat(1, 9)));
    }

    #[test]
    fn weil_monomial_value() {
        let lf = LocalFieldData::new(5, 1).unwrap();
        let m = WeilMonomial::new(4, 5, 1);
        assert_eq!(m.zeta_exponent(), 1);
        assert_eq!(m.value(&lf), Cyclo::zeta(4) * Cyclo::from_int(5));
        assert_eq!(m.weight(), 2);
        assert_eq!(m.mul(&WeilMonomial::new(2, 1, -1)), WeilMonomial::new(4, 3, 0));
    }
}
