//! Herbrand transition between lower and upper numbering, with
//! `Gamma_t = Gamma_i` for `t` in `(i-1, i]`.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::RamificationDatum;
use crate::error::{Error, Result};
use crate::scalars::Rational;

fn slope(d: &RamificationDatum, i: usize) -> Rational {
    Rational::new(d.gamma(i).len().into(), d.order().into())
}

/// `phi(u) = integral_0^u |Gamma_t| / |Gamma_0| dt`.
pub fn herbrand_phi(d: &RamificationDatum, u: &Rational) -> Result<Rational> {
    if u.is_negative() {
        return Err(Error::InvalidDatum(negative("u", u)));
    }
    let mut acc = Rational::zero();
    let mut i = 1usize;
    loop {
        let lo = Rational::from_integer((i - 1).into());
        if &lo >= u {
            return Ok(acc);
        }
        let hi = Rational::from_integer(i.into());
        if i > d.depth() {
            // slope is constant from here on
            return Ok(acc + (u - lo) * slope(d, i));
        }
        let top = if &hi < u { hi } else { u.clone() };
        acc += (top - lo) * slope(d, i);
        i += 1;
    }
}

/// Inverse of [`herbrand_phi`].
pub fn herbrand_psi(d: &RamificationDatum, v: &Rational) -> Result<Rational> {
    if v.is_negative() {
        return Err(Error::InvalidDatum(negative("v", v)));
    }
    let mut acc_v = Rational::zero();
    let mut i = 1usize;
    loop {
        let s = slope(d, i);
        let lo = Rational::from_integer((i - 1).into());
        if i > d.depth() {
            return Ok(lo + (v - acc_v) / s);
        }
        let next = &acc_v + &s;
        if v <= &next {
            return Ok(lo + (v - acc_v) / s);
        }
        acc_v = next;
        i += 1;
    }
}

/// Smallest integer `>= r`.
pub(crate) fn ceil(r: &Rational) -> i64 {
    let (q, rem) = r.numer().div_mod_floor(r.denom());
    let q: i64 = q.try_into().expect("small rational");
    if rem.is_zero() {
        q
    } else {
        q + 1
    }
}

fn negative(name: &str, r: &Rational) -> crate::report::ValidationReport {
    let mut rep = crate::report::ValidationReport::new();
    rep.push("herbrand", name, format!("argument {r} is negative"));
    rep
}
