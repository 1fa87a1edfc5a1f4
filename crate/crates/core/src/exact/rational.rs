//! Arbitrary-precision rationals and the handful of combinatorial helpers
//! built on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator. Canonical zero is `0/1`.
pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`, reduced. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial `alpha (alpha-1) ... (alpha-n+1) / n!`.
pub fn binom_rational(alpha: &Rational, n: usize) -> Rational {
    let mut num = Rational::one();
    for k in 0..n {
        let factor = alpha - int(k as i64);
        if factor.is_zero() {
            return Rational::zero();
        }
        num *= factor;
    }
    num / Rational::from_integer(factorial(n))
}

/// Binomial with an integer top; zero when `n < 0`.
pub fn binom_int(top: i64, n: i64) -> Rational {
    if n < 0 {
        return Rational::zero();
    }
    binom_rational(&int(top), n as usize)
}

/// Falling factorial `x (x-1) ... (x-k+1)`.
pub fn falling(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (x - int(j as i64)))
}

/// Rising factorial (increasing Pochhammer) `x (x+1) ... (x+k-1)`.
pub fn rising(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, j| acc * (x + int(j as i64)))
}

/// `base^e` for a signed integer exponent; `base` must be nonzero when `e < 0`.
pub fn pow_i(base: &Rational, e: i64) -> Rational {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// The value as `i64` when it is an integer that fits.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Rational) -> i64 {
    x.floor().numer().to_i64().expect("exponent out of i64 range")
}

/// Exact `a / b` for integers when `b | a`.
pub fn exact_div(a: i64, b: i64) -> Option<i64> {
    if b != 0 && a.mod_floor(&b) == 0 {
        Some(a / b)
    } else {
        None
    }
}

/// Parses `p`, `-p`, or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

/// `p/q` text, or `p` for integers.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

pub fn sign_pow(n: i64) -> Rational {
    if n.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn abs(x: &Rational) -> Rational {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_rational(&rat(7, 3), 0), int(1));
        assert_eq!(binom_rational(&rat(-3, 2), 2), rat(15, 8));
        assert_eq!(binom_rational(&int(3), 5), int(0));
        assert_eq!(binom_rational(&int(-1), 4), int(1));
        assert_eq!(binom_int(5, -1), int(0));
    }

    #[test]
    fn canonical_form() {
        let x = rat(6, -4);
        assert_eq!(x.numer(), &BigInt::from(-3));
        assert_eq!(x.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&rat(0, 5)), "0");
        assert_eq!(format_rational(&rat(10, 2)), "5");
        assert_eq!(format_rational(&rat(-1, 24)), "-1/24");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-7", "4054513925/2048", "-1/24"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pochhammer() {
        assert_eq!(rising(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(falling(&rat(1, 2), 2), rat(-1, 4));
        assert_eq!(pow_i(&int(2), -3), rat(1, 8));
    }
}
