//! Two-point kernel
//! `sum_l C(m,l) Tr R_(b,l)(lambda) R_(c,m-l)(mu) / (lambda-mu)^2` minus the
//! `m = 0` correction, expanded for `|mu| < |lambda|`, and extraction of
//! invariants from its coefficients.

use num_traits::Zero;

use super::resolvent::RFamily;
use super::{degree_from_dimension, q_norm, Insertion, InvariantRecord};
use crate::error::{Error, Result};
use crate::exact::rational::{binom_int, int, to_i64, Rational};
use crate::exact::{LaurentPoly, MatSeries, Var};
use crate::tde::OrbifoldStructure;

/// Initial lambda order that keeps `lambda^(-j1-1) mu^(-j2-1)` inside the
/// window after `m` brackets with `(lambda^i .)_+`, plus a margin of two.
pub fn budget(j1: usize, j2: usize, m: usize, i: usize) -> usize {
    j1 + j2 + 3 + m * (i + 1) + 2
}

/// `sum_(r,s) [lambda^p] A_rs [mu^q] B_sr`.
fn trace_coeff(x: &MatSeries, y: &MatSeries, p: i64, q: i64) -> Result<LaurentPoly> {
    let n = x.dim();
    let (p, q) = (int(p), int(q));
    let mut acc = LaurentPoly::zero(Var::Eps);
    for r in 0..n {
        for s in 0..n {
            let Some(u) = x.get(r, s).coeff_ref(&p)? else { continue };
            if u.is_zero() {
                continue;
            }
            if let Some(v) = y.get(s, r).coeff_ref(&q)? {
                acc.add_mul(u, v);
            }
        }
    }
    Ok(acc)
}

/// Numerator of the `m = 0` correction as `(c_lambda, c_mu, c_lambda_mu)`.
fn correction(st: &OrbifoldStructure, b: usize, c: usize) -> (i64, i64, i64) {
    let (m1, l) = (st.m1, st.l);
    let (mut cl, mut cm, mut clm) = (0, 0, 0);
    if b + c == m1 {
        cl += b as i64;
        cm += c as i64;
    }
    if b == m1 && c == m1 {
        clm += m1 as i64;
    }
    if b + c == 2 * m1 + st.m2 {
        cl += (l - b) as i64;
        cm += (l - c) as i64;
    }
    (cl, cm, clm)
}

/// The kernel for one fixed repeated insertion and `m` copies of it.
pub struct TwoPointKernel {
    pub b: usize,
    pub c: usize,
    pub m: usize,
    family: RFamily,
}

impl TwoPointKernel {
    pub fn new(family: RFamily, b: usize, c: usize, m: usize) -> Result<Self> {
        family.structure.check_sector(b)?;
        family.structure.check_sector(c)?;
        Ok(TwoPointKernel { b, c, m, family })
    }

    pub fn family(&mut self) -> &mut RFamily {
        &mut self.family
    }

    /// Coefficient of `lambda^p mu^q`.
    pub fn coeff(&mut self, p: i64, q: i64) -> Result<LaurentPoly> {
        kernel_coeff(&mut self.family, self.b, self.c, self.m, p, q)
    }
}

pub fn kernel_coeff(family: &mut RFamily, b: usize, c: usize, m: usize, p: i64, q: i64) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(Var::Eps);
    for l in 0..=m {
        let x = family.matrix(b, l)?.clone();
        let y = family.matrix(c, m - l)?;
        let top = to_i64(x.offset()).expect("integral lambda offset");
        let mut part = LaurentPoly::zero(Var::Eps);
        // 1/(lambda-mu)^2 = sum_n (n+1) mu^n lambda^(-n-2)
        for n in 0..=(top - p - 2).max(-1) {
            let t = trace_coeff(&x, y, p + n + 2, q - n)?;
            if !t.is_zero() {
                part += &t.scale(&int(n + 1));
            }
        }
        acc += &part.scale(&binom_int(m as i64, l as i64));
    }
    if m == 0 {
        let (cl, cm, clm) = correction(&family.structure, b, c);
        let mut corr = Rational::zero();
        for (x, y, w) in [(1, 0, cl), (0, 1, cm), (1, 1, clm)] {
            // n + 1 copies of x^a y^b at lambda^(x-n-2) mu^(y+n)
            let n = q - y;
            if w != 0 && n >= 0 && x - n - 2 == p {
                corr += int(w * (n + 1));
            }
        }
        acc -= &LaurentPoly::constant(Var::Eps, corr);
    }
    Ok(acc)
}

/// `[eps^(2g+m)]` of the kernel at `lambda^(-j1-1) mu^(-j2-1)` divided by the
/// normalization, whether or not the degree-dimension constraint is met.
pub fn kernel_value(family: &mut RFamily, m: usize, b: Insertion, c: Insertion, g: usize) -> Result<Rational> {
    let fixed = family.fixed;
    let coeff = kernel_coeff(family, b.a, c.a, m, -(b.i as i64) - 1, -(c.i as i64) - 1)?;
    let raw = coeff.coeff((2 * g + m) as i64);
    let st = &family.structure;
    let norm = num_traits::pow(q_norm(st, fixed.a, fixed.i), m) * q_norm(st, b.a, b.i) * q_norm(st, c.a, c.i);
    Ok(raw / norm)
}

/// `<tau_i(phi_a)^m tau_j1(phi_b) tau_j2(phi_c)>_g` through the kernel.
pub fn extract_invariant(
    st: &OrbifoldStructure,
    fixed: Insertion,
    m: usize,
    b: Insertion,
    c: Insertion,
    g: usize,
) -> Result<InvariantRecord> {
    let mut ins = vec![fixed; m];
    ins.extend([b, c]);
    if degree_from_dimension(st, g, &ins).is_none() {
        return Ok(InvariantRecord::new(st, ins, g, Rational::zero()));
    }
    let order = budget(b.i, c.i, m, fixed.i);
    let mut family = RFamily::new(st, fixed, order, (2 * g + m) as i64)?;
    let value = kernel_value(&mut family, m, b, c, g).map_err(|e| match e {
        Error::Truncation { requested, floor } => Error::Precondition(format!(
            "lambda order {order} too small (exponent {requested} below floor {floor}); raise the order"
        )),
        other => other,
    })?;
    Ok(InvariantRecord::new(st, ins, g, value))
}

/// A family sized for `<tau_i(phi_a)^k>` with `2 <= k <= k_max`, `g <= g_max`.
pub fn polygon_family(st: &OrbifoldStructure, fixed: Insertion, k_max: usize, g_max: usize) -> Result<RFamily> {
    let m = k_max.saturating_sub(2);
    RFamily::new(st, fixed, budget(fixed.i, fixed.i, m, fixed.i), (2 * g_max + m) as i64)
}

/// `<tau_i(phi_a)^k>_g` for `k >= 2` from a family built by [`polygon_family`].
pub fn polygon_value(family: &mut RFamily, k: usize, g: usize) -> Result<Rational> {
    if k < 2 {
        return Err(Error::Precondition("the kernel needs at least two insertions".into()));
    }
    let fixed = family.fixed;
    kernel_value(family, k - 2, fixed, fixed, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn two_point_p21() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let t = Insertion::new(1, 1);
        let rec = extract_invariant(&st, t, 0, t, t, 0).unwrap();
        assert_eq!(rec.value, rat(1, 2));
        assert_eq!(rec.d, Some(2));
    }

    #[test]
    fn correction_touches_only_nonnegative_powers() {
        for (m1, m2) in [(2, 1), (2, 2)] {
            let st = OrbifoldStructure::new(m1, m2).unwrap();
            for b in st.sectors() {
                for c in st.sectors() {
                    let mut fam = RFamily::new(&st, Insertion::new(1, 0), 12, 4).unwrap();
                    for p in -1..=2 {
                        for q in -1..=2 {
                            if p < 0 && q < 0 {
                                continue;
                            }
                            let v = kernel_coeff(&mut fam, b, c, 0, p, q).unwrap();
                            assert!(v.is_zero(), "({m1},{m2}) b={b} c={c} p={p} q={q}: {v:?}");
                        }
                    }
                }
            }
        }
    }
}
