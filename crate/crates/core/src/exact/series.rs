//! Truncated Puiseux series `z^offset * sum_{n < order} tail[n] * z^(-n)`.
//!
//! Coefficients are Laurent polynomials in a second variable. Truncation is
//! tracked explicitly: exponents below `offset - order + 1` are unknown and
//! asking for one is an error, never a zero.

use std::fmt;

use num_traits::Zero;

use super::laurent::{LaurentPoly, Var};
use super::rational::{binom_rational, int, is_integer, pow_i, to_i64, Rational};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct PuiseuxSeries {
    var: Var,
    offset: Rational,
    tail: Vec<LaurentPoly>,
}

/// Integer distance `a - b`, or an offset-grid error.
pub(crate) fn grid_distance(a: &Rational, b: &Rational) -> Result<i64> {
    let d = a - b;
    to_i64(&d).ok_or_else(|| Error::OffsetGrid(Box::new(a.clone()), Box::new(b.clone())))
}

impl PuiseuxSeries {
    pub fn new(var: Var, offset: Rational, tail: Vec<LaurentPoly>) -> Self {
        debug_assert!(tail.iter().all(|c| c.var() == var));
        PuiseuxSeries { var, offset, tail }
    }

    pub fn zero(var: Var, offset: Rational, order: usize) -> Self {
        Self::new(var, offset, vec![LaurentPoly::zero(var); order])
    }

    /// `c * z^offset`, known to `order` terms.
    pub fn monomial(c: LaurentPoly, offset: Rational, order: usize) -> Self {
        let var = c.var();
        let mut s = Self::zero(var, offset, order);
        if order > 0 {
            s.tail[0] = c;
        }
        s
    }

    pub fn from_fn(
        var: Var,
        offset: Rational,
        order: usize,
        f: impl FnMut(usize) -> LaurentPoly,
    ) -> Self {
        Self::new(var, offset, (0..order).map(f).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn order(&self) -> usize {
        self.tail.len()
    }

    /// Lowest exponent whose coefficient is known.
    pub fn floor(&self) -> Rational {
        &self.offset - int(self.order() as i64) + int(1)
    }

    pub fn tail(&self) -> &[LaurentPoly] {
        &self.tail
    }

    /// Coefficient of `z^(offset - n)`.
    pub fn tail_coeff(&self, n: usize) -> Result<&LaurentPoly> {
        self.tail.get(n).ok_or_else(|| Error::Truncation {
            requested: Box::new(&self.offset - int(n as i64)),
            floor: Box::new(self.floor()),
        })
    }

    /// Exact coefficient of `z^e`.
    pub fn coeff(&self, e: &Rational) -> Result<LaurentPoly> {
        let n = grid_distance(&self.offset, e)?;
        if n < 0 {
            return Ok(LaurentPoly::zero(self.var));
        }
        self.tail_coeff(n as usize).cloned()
    }

    /// Borrowing form of [`coeff`](Self::coeff); `None` above the offset.
    pub fn coeff_ref(&self, e: &Rational) -> Result<Option<&LaurentPoly>> {
        let n = grid_distance(&self.offset, e)?;
        if n < 0 {
            return Ok(None);
        }
        self.tail_coeff(n as usize).map(Some)
    }

    pub fn is_zero(&self) -> bool {
        self.tail.iter().all(LaurentPoly::is_zero)
    }

    /// Number of leading coefficients that vanish (equals `order` for a zero series).
    pub fn leading_zeros(&self) -> usize {
        self.tail.iter().take_while(|c| c.is_zero()).count()
    }

    /// Keeps only the first `order` terms.
    pub fn with_order(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.tail.truncate(order);
        s
    }

    /// Rewrites on a higher offset of the same grid, padding known zeros on top.
    pub fn reoffset(&self, new_offset: &Rational) -> Result<Self> {
        let pad = grid_distance(new_offset, &self.offset)?;
        if pad < 0 {
            return Err(Error::Precondition(format!(
                "cannot lower offset {} to {new_offset}",
                self.offset
            )));
        }
        let mut tail = vec![LaurentPoly::zero(self.var); pad as usize];
        tail.extend(self.tail.iter().cloned());
        Ok(Self::new(self.var, new_offset.clone(), tail))
    }

    /// Multiplication by `z^e`.
    pub fn mul_power(&self, e: &Rational) -> Self {
        Self::new(self.var, &self.offset + e, self.tail.clone())
    }

    pub fn map_coeffs(&self, var: Var, mut f: impl FnMut(usize, &LaurentPoly) -> LaurentPoly) -> Self {
        Self::new(var, self.offset.clone(), self.tail.iter().enumerate().map(|(n, c)| f(n, c)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(self.var, |_, p| p.scale(c))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.map_coeffs(self.var, |_, c| c * p)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(self.var, |_, c| -c)
    }

    fn combine(&self, other: &Self, sign: i64) -> Result<Self> {
        let d = grid_distance(&self.offset, &other.offset)?;
        let (hi, lo_off) = if d >= 0 { (&self.offset, d) } else { (&other.offset, -d) };
        let (self_pad, other_pad) = if d >= 0 { (0, lo_off) } else { (lo_off, 0) };
        // valid range is the intersection of both known windows
        let order = (self.order() as i64 + self_pad).min(other.order() as i64 + other_pad).max(0) as usize;
        let tail = (0..order)
            .map(|n| {
                let n = n as i64;
                fn pick(s: &PuiseuxSeries, n: i64, pad: i64) -> Option<&LaurentPoly> {
                    (n >= pad).then(|| &s.tail[(n - pad) as usize])
                }
                match (pick(self, n, self_pad), pick(other, n, other_pad)) {
                    (Some(a), Some(b)) => if sign > 0 { a + b } else { a - b },
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => if sign > 0 { b.clone() } else { -b },
                    (None, None) => LaurentPoly::zero(self.var),
                }
            })
            .collect();
        Ok(Self::new(self.var, hi.clone(), tail))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, -1)
    }

    /// Truncated Cauchy product; offsets add. A coefficient of the product is
    /// known when every contributing pair is known, so leading zeros of one
    /// factor extend the window contributed by the other.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (nf, ng) = (self.order(), other.order());
        let (zf, zg) = (self.leading_zeros(), other.leading_zeros());
        let order = (nf + zg).min(ng + zf);
        let mut tail = vec![LaurentPoly::zero(self.var); order];
        for (i, a) in self.tail.iter().enumerate().skip(zf) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.tail.iter().enumerate().skip(zg) {
                if i + j >= order {
                    break;
                }
                if !b.is_zero() {
                    tail[i + j].add_mul(a, b);
                }
            }
        }
        Ok(Self::new(self.var, &self.offset + &other.offset, tail))
    }

    /// Drops vanishing leading coefficients, lowering the offset; the lowest
    /// known exponent is unchanged. An identically zero series is kept as is.
    pub fn drop_leading_zeros(&self) -> Self {
        let z = self.leading_zeros();
        if z == 0 || z == self.order() {
            return self.clone();
        }
        self.drop_top(z)
    }

    /// Removes the first `k` tail coefficients, which the caller knows vanish.
    pub fn drop_top(&self, k: usize) -> Self {
        debug_assert!(self.tail[..k].iter().all(LaurentPoly::is_zero));
        Self::new(self.var, &self.offset - int(k as i64), self.tail[k..].to_vec())
    }

    /// Expansion of `f(z + c)` on the same grid and to the same order:
    /// each `z^(b-n)` becomes `z^(b-n) (1 + c/z)^(b-n)`.
    pub fn shift_z(&self, c: i64) -> Self {
        if c == 0 {
            return self.clone();
        }
        let order = self.order();
        let c = int(c);
        let mut tail = vec![LaurentPoly::zero(self.var); order];
        for (n, t) in self.tail.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let exp = &self.offset - int(n as i64);
            for k in 0..order - n {
                let w = binom_rational(&exp, k) * pow_i(&c, k as i64);
                if !w.is_zero() {
                    tail[n + k] += &t.scale(&w);
                }
            }
        }
        Self::new(self.var, self.offset.clone(), tail)
    }

    /// `z -> -z` with the branch of `(-1)^offset` fixed to `lead_sign`:
    /// the coefficient of `z^(offset-n)` picks up `lead_sign * (-1)^n`.
    pub fn reflect_z(&self, lead_sign: &Rational) -> Self {
        self.map_coeffs(self.var, |n, c| {
            if n % 2 == 0 { c.scale(lead_sign) } else { c.scale(&-lead_sign) }
        })
    }

    /// Compares two series on their common known window.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// True when every coefficient is a polynomial in the coefficient variable.
    pub fn has_polynomial_coeffs(&self) -> bool {
        self.tail.iter().all(LaurentPoly::is_polynomial)
    }

    pub fn is_integral_offset(&self) -> bool {
        is_integer(&self.offset)
    }

    pub fn one(var: Var, order: usize) -> Self {
        Self::monomial(LaurentPoly::one(var), Rational::zero(), order)
    }

    pub fn constant_one(&self) -> Self {
        Self::monomial(LaurentPoly::one(self.var), Rational::zero(), self.order())
    }
}

impl fmt::Debug for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.tail.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                f.write_str(" + ")?;
            }
            wrote = true;
            write!(f, "[{c}] z^({})", &self.offset - int(n as i64))?;
        }
        if !wrote {
            f.write_str("0")?;
        }
        write!(f, " + O(z^({}))", &self.offset - int(self.order() as i64))
    }
}

/// Convenience for tests and formulas: the series `sum_n coeffs[n] z^(offset-n)`
/// with constant coefficients.
pub fn constant_series(var: Var, offset: Rational, coeffs: &[Rational]) -> PuiseuxSeries {
    PuiseuxSeries::new(
        var,
        offset,
        coeffs.iter().map(|c| LaurentPoly::constant(var, c.clone())).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn cs(offset: Rational, coeffs: &[i64]) -> PuiseuxSeries {
        constant_series(Var::S, offset, &coeffs.iter().map(|&c| int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_product() {
        let g = cs(rat(1, 3), &[2, -1, 5, 7]);
        let one = PuiseuxSeries::one(Var::S, 10);
        assert_eq!(one.mul(&g).unwrap(), g);
    }

    #[test]
    fn difference_of_squares() {
        let f = cs(rat(-1, 2), &[1, 1, 0, 0]);
        let g = cs(rat(1, 2), &[1, -1, 0, 0]);
        let p = f.mul(&g).unwrap();
        assert_eq!(p.offset(), &int(0));
        assert_eq!(p, cs(int(0), &[1, 0, -1, 0]));
    }

    #[test]
    fn incompatible_grid() {
        let f = cs(rat(1, 2), &[1]);
        let g = cs(rat(1, 3), &[1]);
        assert_eq!(f.mul(&g).unwrap().offset(), &rat(5, 6));
        assert!(matches!(f.add(&g), Err(Error::OffsetGrid(..))));
    }

    #[test]
    fn shift_of_square_root() {
        // z^(1/2) shifted by -1: z^(1/2) (1 - 1/(2z) - 1/(8z^2) ...)
        let f = cs(rat(1, 2), &[1, 0, 0]);
        let g = f.shift_z(-1);
        assert_eq!(g.tail_coeff(0).unwrap().coeff(0), int(1));
        assert_eq!(g.tail_coeff(1).unwrap().coeff(0), rat(-1, 2));
        assert_eq!(g.tail_coeff(2).unwrap().coeff(0), rat(-1, 8));
        assert_eq!(f.shift_z(0), f);
        assert_eq!(g.shift_z(1), f);
    }

    #[test]
    fn coefficient_access() {
        let f = cs(rat(1, 2), &[1, 2]);
        assert_eq!(f.coeff(&rat(-1, 2)).unwrap().coeff(0), int(2));
        assert!(f.coeff(&rat(3, 2)).unwrap().is_zero());
        assert!(f.coeff(&rat(-3, 2)).unwrap_err().is_truncation());
        assert!(matches!(f.coeff(&int(0)), Err(Error::OffsetGrid(..))));
    }

    #[test]
    fn addition_aligns_offsets() {
        let f = cs(int(1), &[1, 1, 1]);
        let g = cs(int(0), &[1, 1, 1]);
        let h = f.add(&g).unwrap();
        assert_eq!(h.offset(), &int(1));
        // f known down to z^-1, g down to z^-2: the sum is known to z^-1
        assert_eq!(h.order(), 3);
        assert_eq!(h, cs(int(1), &[1, 2, 2]));
    }
}
