//! Single-divisibility form of `M_a` when `m1 = m2`.

use num_traits::Zero;
use rayon::prelude::*;

use super::structure::OrbifoldStructure;
use super::MSolution;
use crate::bernoulli::gen_bernoulli;
use crate::error::{Error, Result};
use crate::exact::rational::{binom_rational, int, pow_i, rat};
use crate::exact::{LaurentPoly, MatSeries, PuiseuxSeries, Var};

fn g_equal(st: &OrbifoldStructure, a: usize, i: i64, j: i64, order: usize) -> PuiseuxSeries {
    let m = st.m1 as i64;
    let a_ = a as i64;
    let offset = int(1) - st.q(a);
    let zero = || PuiseuxSeries::zero(Var::S, offset.clone(), order);
    if (i - j - a_).rem_euclid(m) != 0 {
        return zero();
    }
    let p = (i - j - a_).div_euclid(m);
    let mr = int(m);
    let d = rat(j - i, m);
    let half = rat(1, 2);
    let low = a_ <= m;
    let tail = (0..order)
        .map(|n| {
            let k1 = n as i64 - 1;
            let top = if low { k1 - p } else { k1 + p };
            let mut coeff = LaurentPoly::zero(Var::S);
            if top < 0 {
                return coeff;
            }
            for k2 in 0..=top / 2 {
                let deg = (top - 2 * k2) as usize;
                let (b1, b2, ell, x) = if low {
                    (
                        binom_rational(&(&d - int(2 * k2)), deg),
                        binom_rational(&(-&d + int(2 * k2 - 1)), k2 as usize),
                        &d - int(2 * k2 - 1),
                        (int(j) - &half) / &mr - int(k2),
                    )
                } else {
                    (
                        binom_rational(&(-&d - int(2 * k2 + 2)), deg),
                        binom_rational(&(&d + int(2 * k2 + 1)), k2 as usize),
                        -&d - int(2 * k2 + 1),
                        (int(i) - &half) / &mr - int(k2 + 1),
                    )
                };
                if b1.is_zero() || b2.is_zero() {
                    continue;
                }
                let c = pow_i(&mr, k1 - 2 * k2) * b1 * b2 * gen_bernoulli(deg, &ell, &x);
                // s^(p+1) m^-p prefactor below m1, m^p s^(1-p) above.
                let (s_exp, m_pow) = if low { (p + 1 + 2 * k2, -p) } else { (1 - p + 2 * k2, p) };
                coeff += &LaurentPoly::monomial(Var::S, c * pow_i(&mr, m_pow), s_exp);
            }
            coeff
        })
        .collect();
    PuiseuxSeries::new(Var::S, offset, tail)
}

pub fn m_entry_equal_weights(st: &OrbifoldStructure, a: usize, i: usize, j: usize, order: usize) -> PuiseuxSeries {
    if j <= st.m1 {
        g_equal(st, a, i as i64, j as i64, order)
    } else {
        g_equal(st, a, i as i64, j as i64 - st.l as i64, order).neg()
    }
}

pub fn m_matrix_equal_weights(st: &OrbifoldStructure, a: usize, order: usize) -> Result<MSolution> {
    if st.m1 != st.m2 {
        return Err(Error::Precondition(format!(
            "equal-weight form needs m1 = m2, got ({}, {})",
            st.m1, st.m2
        )));
    }
    st.check_sector(a)?;
    let l = st.l;
    let entries: Vec<PuiseuxSeries> = (0..l * l)
        .into_par_iter()
        .map(|k| m_entry_equal_weights(st, a, k / l + 1, k % l + 1, order))
        .collect();
    let m = MatSeries::from_entries(l, entries)?;
    Ok(MSolution { structure: st.clone(), a, order, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tde::closed_form::m_matrix;

    #[test]
    fn rejects_unequal_weights() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        assert!(matches!(m_matrix_equal_weights(&st, 1, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn agrees_with_general_form() {
        for m in [1, 2, 3] {
            let st = OrbifoldStructure::new(m, m).unwrap();
            for a in st.sectors() {
                let fast = m_matrix_equal_weights(&st, a, 8).unwrap();
                let general = m_matrix(&st, a, 8).unwrap();
                assert_eq!(fast.m, general.m, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn divisibility_pattern() {
        let st = OrbifoldStructure::new(2, 2).unwrap();
        let sol = m_matrix_equal_weights(&st, 1, 8).unwrap();
        for i in 1..=4i64 {
            for j in 1..=4i64 {
                let vanishes = sol.m.get(i as usize - 1, j as usize - 1).is_zero();
                assert_eq!(vanishes, (i - j - 1).rem_euclid(2) != 0, "({i},{j})");
            }
        }
    }
}
