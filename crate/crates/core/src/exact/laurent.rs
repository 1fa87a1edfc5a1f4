//! Finite Laurent polynomials in one formal variable over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::rational::{int, pow_i, Rational};

/// Which formal variable a polynomial is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The spectral parameter `s` of the difference equation.
    S,
    /// The genus-counting parameter `epsilon`.
    Eps,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::S => f.write_str("s"),
            Var::Eps => f.write_str("eps"),
        }
    }
}

/// `sum_k coeffs[k] * var^(low + k)`.
///
/// The window is trimmed so the first and last stored coefficients are
/// nonzero; the zero polynomial has an empty window with `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    low: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, low: 0, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn monomial(var: Var, c: Rational, exp: i64) -> Self {
        Self::from_coeffs(var, exp, vec![c])
    }

    pub fn from_coeffs(var: Var, low: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = LaurentPoly { var, low, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(var: Var, terms: I) -> Self {
        let terms: Vec<(i64, Rational)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(var);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_coeffs(var, lo, coeffs)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let k = exp - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            Rational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    /// True when no negative exponent survives.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { var: self.var, low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Drops every term with exponent above `max`.
    pub fn truncate_above(&self, max: i64) -> Self {
        match self.max_exp() {
            Some(hi) if hi > max => {
                let keep = (max - self.low + 1).max(0) as usize;
                Self::from_coeffs(self.var, self.low, self.coeffs[..keep].to_vec())
            }
            _ => self.clone(),
        }
    }

    /// Evaluates at a rational point (nonzero if negative exponents occur).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        if self.low != 0 && !self.is_zero() {
            acc *= pow_i(x, self.low);
        }
        acc
    }

    /// Substitutes `var -> 1/new_var`.
    pub fn reciprocal_in(&self, new_var: Var) -> Self {
        let hi = self.max_exp().unwrap_or(0);
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(new_var, -hi, coeffs)
    }

    /// Substitutes `var -> -var`.
    pub fn negate_var(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if (self.low + k as i64) % 2 == 0 { c.clone() } else { -c })
            .collect();
        Self::from_coeffs(self.var, self.low, coeffs)
    }

    pub fn retag(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn combine(&self, other: &Self, sign: i64) -> Self {
        debug_assert_eq!(self.var, other.var, "mixing Laurent variables");
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if sign > 0 { other.clone() } else { -other };
        }
        let lo = self.low.min(other.low);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![Rational::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(other.low - lo) as usize + k];
            if sign > 0 {
                *slot += c;
            } else {
                *slot -= c;
            }
        }
        Self::from_coeffs(self.var, lo, coeffs)
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a * b;
        *self += &prod;
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{e}", self.var)?,
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, 1)
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.combine(rhs, -1)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        // In-place when the window already covers rhs.
        let hi = self.max_exp().unwrap();
        let rhi = rhs.max_exp().unwrap();
        if rhs.low >= self.low && rhi <= hi {
            let off = (rhs.low - self.low) as usize;
            for (k, c) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + k] += c;
            }
            self.normalize();
        } else {
            *self = self.combine(rhs, 1);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = self.combine(rhs, -1);
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, rhs.var, "mixing Laurent variables");
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_coeffs(self.var, self.low + rhs.low, coeffs)
    }
}

/// `c * var^exp` helper used throughout the formula code.
pub fn mono(var: Var, c: Rational, exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(var, c, exp)
}

pub fn constant_int(var: Var, c: i64) -> LaurentPoly {
    LaurentPoly::constant(var, int(c))
}
