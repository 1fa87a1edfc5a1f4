//! Second route to `M_a`: the Gamma-ratio sums with root-of-unity sums
//! replaced by divisibility filters and each ratio by its asymptotic series.

use num_traits::Zero;
use rayon::prelude::*;

use super::structure::OrbifoldStructure;
use super::MSolution;
use crate::bernoulli::gen_bernoulli;
use crate::error::{Error, Result};
use crate::exact::rational::{binom_rational, factorial, int, is_integer, pow_i, rat, sign_pow, to_i64, Rational};
use crate::exact::{LaurentPoly, MatSeries, PuiseuxSeries, Var};

/// `Gamma(w + alpha) / Gamma(w + beta) ~ w^(alpha-beta) sum_l C(alpha-beta, l) B_l(alpha-beta+1, alpha) w^-l`,
/// to `order` terms, with constant coefficients.
pub fn gamma_ratio_expansion(alpha: &Rational, beta: &Rational, order: usize) -> PuiseuxSeries {
    let d = alpha - beta;
    let ell = &d + int(1);
    let tail = (0..order)
        .map(|k| {
            let c = binom_rational(&d, k);
            let c = if c.is_zero() { c } else { c * gen_bernoulli(k, &ell, alpha) };
            LaurentPoly::constant(Var::S, c)
        })
        .collect();
    PuiseuxSeries::new(Var::S, d, tail)
}

/// Coefficients `C(d, k) B_k(d + 1, alpha)` of the ratio above, `k < order`.
fn ratio_coeffs(d: &Rational, alpha: &Rational, order: usize) -> Vec<Rational> {
    let ell = d + int(1);
    (0..order)
        .map(|k| {
            let c = binom_rational(d, k);
            if c.is_zero() {
                c
            } else {
                c * gen_bernoulli(k, &ell, alpha)
            }
        })
        .collect()
}

/// `tilde g_a(z, i, j)`, 1-based `i`, any integer `j`.
fn g_gamma(st: &OrbifoldStructure, a: usize, i: i64, j: i64, order: usize) -> Result<PuiseuxSeries> {
    let (m1, m2) = (st.m1 as i64, st.m2 as i64);
    let a_ = a as i64;
    let half = rat(1, 2);
    let offset = int(1) - st.q(a);
    let low = a_ <= m1;
    // mu: scale of the Gamma argument; nu: the other order.
    let (mu, nu) = if low { (m1, m2) } else { (m2, m1) };
    let mut tail = vec![LaurentPoly::zero(Var::S); order];
    for k1 in 0.. {
        // t: integer exponent shift forced by the divisibility filter.
        let num = if low { m2 * k1 + i - j - a_ } else { m1 * k1 - i + j + a_ };
        let first = if num.rem_euclid(mu) == 0 { Some(num / mu) } else { None };
        // The z-exponents are -q_a - t - ell; t grows with k1, so stop when
        // even ell = 0 falls past the order.
        let t_min = num.div_euclid(mu);
        if 1 + t_min >= order as i64 {
            break;
        }
        let Some(t) = first else { continue };
        // Gamma(w + A) / Gamma(w + B) with w = z / mu.
        let args = |k2: i64| -> (Rational, Rational) {
            if low {
                ((int(j) - &half - int(m2 * (k1 - k2))) / int(m1), (int(i) - &half + int(m2 * k2)) / int(m1))
            } else {
                (
                    (int(i) - &half - int(m1 * (k1 - k2 + 1))) / int(m2),
                    (int(j) - &half + int(m1 * k2)) / int(m2) + int(1),
                )
            }
        };
        let (a0, b0) = args(0);
        let d = a0 - b0;
        if d != -st.q(a) - int(t) {
            return Err(Error::InvariantViolation(format!("gamma exponent mismatch at k1={k1}")));
        }
        // Prefactor mu * delta / (mu^e nu^k1) and w^-ell = mu^ell z^-ell; the
        // total power of mu must be an integer.
        let mu_exp = if low {
            int(1) - (rat(i - j + m2 * k1, m1) + int(1)) - &d
        } else {
            int(1) - (int(2) + rat(m1 * (k1 + 1) - i + j, m2)) - &d
        };
        if !is_integer(&mu_exp) {
            return Err(Error::InvariantViolation(format!("non-integral power of {mu} at k1={k1}")));
        }
        let mu_exp = to_i64(&mu_exp).unwrap();
        let s_exp = 1 + k1 + t;
        let n0 = 1 + t;
        if n0 < 0 {
            return Err(Error::InvariantViolation(format!("term above the leading order at k1={k1}")));
        }
        let len = order - n0 as usize;
        let mut inner = vec![Rational::zero(); len];
        for k2 in 0..=k1 {
            let w = sign_pow(k2) / Rational::from_integer(factorial(k2 as usize) * factorial((k1 - k2) as usize));
            let (alpha, beta) = args(k2);
            debug_assert_eq!(&alpha - beta, d);
            for (ell, c) in ratio_coeffs(&d, &alpha, len).into_iter().enumerate() {
                if !c.is_zero() {
                    inner[ell] += &w * c;
                }
            }
        }
        let pref = pow_i(&int(nu), -k1);
        for (ell, c) in inner.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c * &pref * pow_i(&int(mu), mu_exp + ell as i64);
            tail[n0 as usize + ell] += &LaurentPoly::monomial(Var::S, v, s_exp);
        }
    }
    Ok(PuiseuxSeries::new(Var::S, offset, tail))
}

pub fn m_entry_via_gamma(st: &OrbifoldStructure, a: usize, i: usize, j: usize, order: usize) -> Result<PuiseuxSeries> {
    if j <= st.m1 {
        g_gamma(st, a, i as i64, j as i64, order)
    } else {
        Ok(g_gamma(st, a, i as i64, j as i64 - st.l as i64, order)?.neg())
    }
}

pub fn m_matrix_via_gamma(st: &OrbifoldStructure, a: usize, order: usize) -> Result<MSolution> {
    st.check_sector(a)?;
    let l = st.l;
    let entries = (0..l * l)
        .into_par_iter()
        .map(|k| m_entry_via_gamma(st, a, k / l + 1, k % l + 1, order))
        .collect::<Result<Vec<_>>>()?;
    let m = MatSeries::from_entries(l, entries)?;
    Ok(MSolution { structure: st.clone(), a, order, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tde::closed_form::{m_entry, m_matrix};

    #[test]
    fn equal_arguments_give_one() {
        let g = gamma_ratio_expansion(&rat(3, 7), &rat(3, 7), 6);
        assert_eq!(g, PuiseuxSeries::one(Var::S, 6));
    }

    #[test]
    fn shift_by_one_is_exact() {
        // Gamma(w + 1) / Gamma(w) = w
        let g = gamma_ratio_expansion(&int(1), &int(0), 6);
        assert_eq!(g.offset(), &int(1));
        assert_eq!(g.tail()[0], LaurentPoly::constant(Var::S, int(1)));
        assert!(g.tail()[1..].iter().all(LaurentPoly::is_zero));
    }

    #[test]
    fn cocycle() {
        let (a, b, c) = (rat(1, 2), rat(-1, 2), int(0));
        let direct = gamma_ratio_expansion(&a, &b, 8);
        let split = gamma_ratio_expansion(&a, &c, 8).mul(&gamma_ratio_expansion(&c, &b, 8)).unwrap();
        assert_eq!(direct, split);
    }

    #[test]
    fn matches_closed_form_small() {
        for (m1, m2) in [(1, 1), (2, 1), (1, 2)] {
            let st = OrbifoldStructure::new(m1, m2).unwrap();
            for a in st.sectors() {
                assert_eq!(m_matrix_via_gamma(&st, a, 6).unwrap().m, m_matrix(&st, a, 6).unwrap().m, "({m1},{m2}) a={a}");
            }
        }
    }

    #[test]
    fn p1_off_diagonal_leading() {
        // P1 = s/z + ..., P2 = -s/(2 z^2) + ...; (2,1) entry is P1 + P2.
        let st = OrbifoldStructure::new(1, 1).unwrap();
        let e = m_entry_via_gamma(&st, 1, 2, 1, 3).unwrap();
        assert_eq!(e, m_entry(&st, 1, 2, 1, 3));
        assert_eq!(e.tail()[1], LaurentPoly::monomial(Var::S, int(1), 1));
        assert_eq!(e.tail()[2], LaurentPoly::monomial(Var::S, rat(-1, 2), 1));
    }
}
