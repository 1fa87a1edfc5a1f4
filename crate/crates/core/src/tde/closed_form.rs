//! Entries of `M_a(z, s)` as finite triple sums of generalized Bernoulli
//! polynomials.

use num_traits::Zero;
use rayon::prelude::*;

use super::structure::OrbifoldStructure;
use super::MSolution;
use crate::bernoulli::gen_bernoulli;
use crate::error::Result;
use crate::exact::rational::{binom_rational, factorial, int, pow_i, rat, sign_pow, Rational};
use crate::exact::{LaurentPoly, MatSeries, PuiseuxSeries, Var};

/// `sum_(l3=0..p) (-1)^l3 / (l3! (p-l3)!) B_deg(ell, x0 + step l3)`.
fn alternating_bernoulli_sum(p: i64, deg: usize, ell: &Rational, x0: &Rational, step: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for l3 in 0..=p {
        let w = sign_pow(l3) / Rational::from_integer(factorial(l3 as usize) * factorial((p - l3) as usize));
        let x = x0 + step * int(l3);
        acc += w * gen_bernoulli(deg, ell, &x);
    }
    acc
}

/// `g_a(z, i, j)` with 1-based `i` and any integer `j`, to `order` terms on
/// the grid of offset `1 - q_a`.
pub fn g_entry(st: &OrbifoldStructure, a: usize, i: i64, j: i64, order: usize) -> PuiseuxSeries {
    let (m1, m2, l) = (st.m1 as i64, st.m2 as i64, st.l as i64);
    let a_ = a as i64;
    let offset = int(1) - st.q(a);
    let half = rat(1, 2);
    // The two sector families differ only in the roles of m1, m2 and the
    // arguments entering the divisibility filter and the Bernoulli shift.
    let (mu, nu, qa, num0, x0, xstep) = if a_ <= m1 {
        // mu = m1 (z-scale), nu = m2 (divisor)
        (m1, m2, rat(a_, m1), a_ + j - i, (int(i) - &half - int(a_)) / int(m1), rat(m2, m1))
    } else {
        (m2, m1, rat(l - a_, m2), i - j - a_, (int(j) - &half + int(a_) - int(m1)) / int(m2), rat(m1, m2))
    };
    let tail = (0..order)
        .map(|n| {
            let l1 = n as i64 - 1;
            let mut coeff = LaurentPoly::zero(Var::S);
            for l2 in -1..=l1 {
                let num = mu * l2 + num0;
                if num < 0 || num % nu != 0 {
                    continue;
                }
                let p = num / nu;
                let bin = binom_rational(&(-int(l2) - &qa), (l1 - l2) as usize);
                if bin.is_zero() {
                    continue;
                }
                let ell = int(1 - l2) - &qa;
                let sum = alternating_bernoulli_sum(p, (l1 - l2) as usize, &ell, &(&x0 - int(l2)), &xstep);
                if sum.is_zero() {
                    continue;
                }
                let c = pow_i(&int(mu), l1 - l2) / pow_i(&int(nu), p) * bin * sum;
                coeff += &LaurentPoly::monomial(Var::S, c, p + l2 + 1);
            }
            coeff
        })
        .collect();
    PuiseuxSeries::new(Var::S, offset, tail)
}

/// The `(i, j)` entry of `M_a`, 1-based.
pub fn m_entry(st: &OrbifoldStructure, a: usize, i: usize, j: usize, order: usize) -> PuiseuxSeries {
    if j <= st.m1 {
        g_entry(st, a, i as i64, j as i64, order)
    } else {
        g_entry(st, a, i as i64, j as i64 - st.l as i64, order).neg()
    }
}

/// Assembles `M_a` entrywise from the closed form.
pub fn m_matrix(st: &OrbifoldStructure, a: usize, order: usize) -> Result<MSolution> {
    st.check_sector(a)?;
    let l = st.l;
    let entries: Vec<PuiseuxSeries> =
        (0..l * l).into_par_iter().map(|k| m_entry(st, a, k / l + 1, k % l + 1, order)).collect();
    let m = MatSeries::from_entries(l, entries)?;
    Ok(MSolution { structure: st.clone(), a, order, m })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficient_is_k() {
        for (m1, m2) in [(1, 1), (2, 1), (1, 2), (3, 1), (2, 2), (3, 2)] {
            let st = OrbifoldStructure::new(m1, m2).unwrap();
            for a in st.sectors() {
                let sol = m_matrix(&st, a, 2).unwrap();
                let lead = sol.m.coeff_matrix(0).unwrap();
                let k = st.k_matrix(a);
                for (c, &x) in lead.iter().zip(&k.data) {
                    assert_eq!(c, &LaurentPoly::constant(Var::S, int(x)), "({m1},{m2}) a={a}");
                }
            }
        }
    }

    #[test]
    fn p1_corner_entry() {
        // 1 + s^2/z^2 + O(z^-4)
        let st = OrbifoldStructure::new(1, 1).unwrap();
        let e = m_entry(&st, 1, 1, 1, 4);
        assert_eq!(e.offset(), &int(0));
        assert_eq!(e.tail()[0], LaurentPoly::constant(Var::S, int(1)));
        assert!(e.tail()[1].is_zero());
        assert_eq!(e.tail()[2], LaurentPoly::monomial(Var::S, int(1), 2));
        assert!(e.tail()[3].is_zero());
    }
}
