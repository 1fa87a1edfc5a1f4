//! 1-point invariants `<tau_i(phi_a)>_g`: from the Euler-Maclaurin operator
//! applied to `M_a(lambda/eps - 1, 1/eps)_(m1+1, 1)`, and from the Bernoulli
//! closed forms.

use num_traits::{One, Zero};

use super::{degree_from_dimension, q_norm, Insertion, InvariantRecord};
use crate::bernoulli::{bernoulli_number, euler_maclaurin_coeffs, gen_bernoulli};
use crate::error::Result;
use crate::exact::rational::{binom_int, binom_rational, factorial, falling, int, pow_i, rat, sign_pow, Rational};
use crate::exact::Var;
use crate::tde::{solution, OrbifoldStructure};

/// `(1 - 2^(2g-1)) B_2g / (2^(2g-1) (2g)!)`.
pub fn degree_zero_one_point(g: usize) -> Rational {
    let two = int(2);
    let p = pow_i(&two, 2 * g as i64 - 1);
    (Rational::one() - &p) * bernoulli_number(2 * g) / (p * Rational::from_integer(factorial(2 * g)))
}

fn records(
    st: &OrbifoldStructure,
    a: usize,
    i_max: usize,
    g_max: usize,
    mut value: impl FnMut(usize, usize) -> Result<Rational>,
) -> Result<Vec<InvariantRecord>> {
    st.check_sector(a)?;
    let mut out = Vec::new();
    for i in 0..=i_max {
        for g in 0..=g_max {
            let ins = vec![Insertion::new(a, i)];
            let v = if degree_from_dimension(st, g, &ins).is_some() { value(i, g)? } else { Rational::zero() };
            out.push(InvariantRecord::new(st, ins, g, v));
        }
    }
    Ok(out)
}

/// Raw operator-route values `v[i][g]` for `i <= i_max`, `g <= g_max`,
/// without the degree-dimension filter.
pub fn one_point_operator_table(st: &OrbifoldStructure, a: usize, i_max: usize, g_max: usize) -> Result<Vec<Vec<Rational>>> {
    st.check_sector(a)?;
    let order = i_max + 4;
    let m = solution(st, a, order)?.m;
    // Entry (m1+1, 1) of M_a(z - 1, s).
    let entry = m.get(st.m1, 0).shift_z(-1);
    let q = st.q(a).clone();
    let c = euler_maclaurin_coeffs(i_max + 3);
    let mut table = Vec::with_capacity(i_max + 1);
    for i in 0..=i_max {
        // eps d/dlambda F_a at lambda^(-i-2-q): terms with n + k = i + 3.
        let mut sum = crate::exact::LaurentPoly::zero(Var::Eps);
        for (k, ck) in c.iter().enumerate().take(i + 4) {
            if ck.is_zero() {
                continue;
            }
            let n = i + 3 - k;
            let cn = entry.tail_coeff(n)?.reciprocal_in(Var::Eps).shift((n + k) as i64);
            let w = ck * falling(&(int(1) - &q - int(n as i64)), k);
            sum += &cn.scale(&w);
        }
        let norm = (int(i as i64 + 1) + &q) * q_norm(st, a, i);
        table.push((0..=g_max).map(|g| sum.coeff(2 * g as i64) / &norm).collect());
    }
    Ok(table)
}

pub fn one_point_series(st: &OrbifoldStructure, a: usize, i_max: usize, g_max: usize) -> Result<Vec<InvariantRecord>> {
    let table = one_point_operator_table(st, a, i_max, g_max)?;
    records(st, a, i_max, g_max, |i, g| Ok(table[i][g].clone()))
}

/// Closed-form value, before the degree-dimension filter.
pub fn one_point_closed_value(st: &OrbifoldStructure, a: usize, i: usize, g: usize) -> Rational {
    let (i, g) = (i as i64, g as i64);
    let (m1, m2, l) = (st.m1 as i64, st.m2 as i64, st.l as i64);
    let low = a as i64 <= m1;
    // mu: the orbifold order on this side, nu: the other one.
    let (mu, nu, r) = if low { (m1, m2, a as i64) } else { (m2, m1, l - a as i64) };
    let mut total = Rational::zero();
    if a == st.m1 && i == 2 * g - 2 && g >= 1 {
        total += degree_zero_one_point(g as usize);
    }
    // lambda^(-i-1-q) eps^(2g-2+q) forces k2 = 2g - 1 + k1 and mu (i - 2g + 1) + r = k1 l.
    let num = mu * (i - 2 * g + 1) + r;
    if num <= 0 || num % l != 0 {
        return total;
    }
    let k1 = num / l;
    let k2 = 2 * g - 1 + k1;
    let ell = -rat(nu * k1, mu);
    let mut inner = Rational::zero();
    for k3 in 0..k1 * nu {
        let j = k3 / nu;
        let x = -(int(k3) + rat(1, 2)) / int(mu);
        inner += sign_pow(j) * binom_int(k1 - 1, j) * gen_bernoulli(k2 as usize, &ell, &x);
    }
    let pref = -sign_pow(k1) * pow_i(&int(nu), -k1) / Rational::from_integer(factorial(k1 as usize))
        * pow_i(&int(mu), k2)
        * binom_rational(&(&ell - int(1)), k2 as usize);
    total + pref * inner / q_norm(st, a, i as usize)
}

/// The simplified form when `m1 = m2`; zero away from `a = m1`.
pub fn one_point_equal_weights_value(st: &OrbifoldStructure, a: usize, i: usize, g: usize) -> Rational {
    if a != st.m1 {
        return Rational::zero();
    }
    let (i, g, m) = (i as i64, g as i64, st.m1 as i64);
    let mut total = Rational::zero();
    if i == 2 * g - 2 && g >= 1 {
        total += degree_zero_one_point(g as usize);
    }
    // i = k1 + k2 - 1 with k2 = 2g - 1 + k1.
    let twice = i - 2 * g + 2;
    if twice < 2 || twice % 2 != 0 {
        return total;
    }
    let k1 = twice / 2;
    let k2 = 2 * g - 1 + k1;
    let mut inner = Rational::zero();
    for k3 in 0..m {
        let x = int(1 - k1) - (int(k3) + rat(1, 2)) / int(m);
        inner += gen_bernoulli(2 * g as usize, &int(1 - 2 * k1), &x);
    }
    let k1f = Rational::from_integer(factorial(k1 as usize));
    let pref = -sign_pow(k1) * pow_i(&int(m), k2 - k1) / (&k1f * &k1f) * sign_pow(k2)
        * Rational::from_integer(factorial((k1 + k2) as usize))
        / Rational::from_integer(factorial(2 * g as usize));
    total + pref * inner / q_norm(st, a, i as usize)
}

/// The `k1 = 0` term of the equal-weight form at genus `g`, which reproduces
/// the Bernoulli sum over `g`.
pub fn equal_weights_k1_zero_term(m: usize, g: usize) -> Rational {
    let k2 = 2 * g as i64 - 1;
    let mut inner = Rational::zero();
    for k3 in 0..m as i64 {
        let x = int(1) - (int(k3) + rat(1, 2)) / int(m as i64);
        inner += gen_bernoulli(2 * g, &int(1), &x);
    }
    -sign_pow(k2) * pow_i(&int(m as i64), k2) * Rational::from_integer(factorial(k2 as usize))
        / Rational::from_integer(factorial(2 * g))
        * inner
        / Rational::from_integer(factorial(2 * g - 1))
}

pub fn one_point_closed(st: &OrbifoldStructure, a: usize, i_max: usize, g_max: usize) -> Result<Vec<InvariantRecord>> {
    records(st, a, i_max, g_max, |i, g| {
        Ok(if st.m1 == st.m2 {
            one_point_equal_weights_value(st, a, i, g)
        } else {
            one_point_closed_value(st, a, i, g)
        })
    })
}
