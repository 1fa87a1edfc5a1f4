//! Generalized Bernoulli polynomials `B_m(l, x)`, defined by
//! `(t/(e^t - 1))^l e^(xt) = sum_m B_m(l, x) t^m / m!`, for rational `l` and `x`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::exact::rational::{factorial, int, Rational};

/// Power-series coefficients of `(t/(e^t - 1))^l`, memoized per exponent `l`.
///
/// Entries grow on demand; a longer request recomputes the whole prefix, so
/// any cached prefix is identical to a fresh computation.
#[derive(Default)]
pub struct BernoulliCache {
    table: RwLock<HashMap<Rational, Arc<Vec<Rational>>>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The number of distinct exponents currently cached.
    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coefficients `a_0..=a_m` of `(t/(e^t - 1))^l`.
    pub fn power_series(&self, ell: &Rational, m: usize) -> Arc<Vec<Rational>> {
        if let Some(v) = self.table.read().unwrap().get(ell) {
            if v.len() > m {
                return v.clone();
            }
        }
        let want = (m + 1).max(24).next_power_of_two();
        let fresh = Arc::new(power_of_todd(ell, want));
        let mut table = self.table.write().unwrap();
        let slot = table.entry(ell.clone()).or_insert_with(|| fresh.clone());
        if slot.len() < fresh.len() {
            *slot = fresh;
        }
        slot.clone()
    }

    pub fn gen_bernoulli(&self, m: usize, ell: &Rational, x: &Rational) -> Rational {
        let a = self.power_series(ell, m);
        // m! * sum_j a_j x^(m-j) / (m-j)!, evaluated Horner-style in x.
        let mut acc = Rational::zero();
        let mut inv_fact = Rational::one();
        let mut x_pow = Rational::one();
        for j in (0..=m).rev() {
            let k = m - j;
            if k > 0 {
                inv_fact /= int(k as i64);
                x_pow *= x;
            }
            if !a[j].is_zero() {
                acc += &a[j] * &x_pow * &inv_fact;
            }
        }
        acc * Rational::from_integer(factorial(m))
    }
}

fn global() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(BernoulliCache::new)
}

/// Coefficients `b_k = B_k / k!` of `t/(e^t - 1)`, `k < n`.
fn todd_coeffs(n: usize) -> Vec<Rational> {
    // (e^t - 1)/t = sum t^k/(k+1)!; invert the series.
    let e: Vec<Rational> = (0..n).map(|k| Rational::new(1.into(), factorial(k + 1))).collect();
    let mut b = vec![Rational::zero(); n];
    if n > 0 {
        b[0] = Rational::one();
    }
    for k in 1..n {
        let mut s = Rational::zero();
        for j in 1..=k {
            s += &e[j] * &b[k - j];
        }
        b[k] = -s;
    }
    b
}

/// `(t/(e^t - 1))^l` to `n` terms by the power recurrence
/// `k g_k = sum_(j=1..k) ((l+1) j - k) f_j g_(k-j)`, valid for rational `l`
/// because the base has constant term 1.
fn power_of_todd(ell: &Rational, n: usize) -> Vec<Rational> {
    let f = todd_coeffs(n);
    let lp1 = ell + int(1);
    let mut g = vec![Rational::zero(); n];
    if n > 0 {
        g[0] = Rational::one();
    }
    for k in 1..n {
        let mut s = Rational::zero();
        for j in 1..=k {
            if f[j].is_zero() {
                continue;
            }
            let w = &lp1 * int(j as i64) - int(k as i64);
            if !w.is_zero() {
                s += w * &f[j] * &g[k - j];
            }
        }
        g[k] = s / int(k as i64);
    }
    g
}

/// `B_m(l, x)`.
pub fn gen_bernoulli(m: usize, ell: &Rational, x: &Rational) -> Rational {
    global().gen_bernoulli(m, ell, x)
}

/// The Bernoulli number `B_m = B_m(1, 0)` (so `B_1 = -1/2`).
pub fn bernoulli_number(m: usize) -> Rational {
    if m >= 3 && m % 2 == 1 {
        return Rational::zero();
    }
    gen_bernoulli(m, &Rational::one(), &Rational::zero())
}

/// `c_0..=c_k` with `D/(1 - e^(-D)) = sum_k c_k D^k`.
pub fn euler_maclaurin_coeffs(k: usize) -> Vec<Rational> {
    let one = Rational::one();
    (0..=k)
        .map(|j| gen_bernoulli(j, &one, &one) / Rational::from_integer(factorial(j)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{binom_rational, rat};

    #[test]
    fn low_orders() {
        let l = rat(-7, 3);
        let x = rat(5, 4);
        assert_eq!(gen_bernoulli(0, &l, &x), int(1));
        assert_eq!(gen_bernoulli(1, &l, &x), &x - &l / int(2));
        assert_eq!(gen_bernoulli(2, &int(1), &int(0)), rat(1, 6));
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli_number(0), int(1));
        assert_eq!(bernoulli_number(1), rat(-1, 2));
        assert_eq!(bernoulli_number(3), int(0));
        assert_eq!(bernoulli_number(12), rat(-691, 2730));
        assert_eq!(bernoulli_number(20), rat(-174611, 330));
    }

    #[test]
    fn euler_maclaurin_leading() {
        let c = euler_maclaurin_coeffs(4);
        assert_eq!(c[0], int(1));
        assert_eq!(c[1], rat(1, 2));
        assert_eq!(c[2], rat(1, 12));
        assert_eq!(c[3], int(0));
    }

    /// `(1 + u)^l = sum_j C(l, j) u^j` with `u = t/(e^t - 1) - 1`.
    fn binomial_power(ell: &Rational, n: usize) -> Vec<Rational> {
        let mut u = todd_coeffs(n);
        u[0] = Rational::zero();
        let mut out = vec![Rational::zero(); n];
        out[0] = Rational::one();
        let mut u_pow = out.clone();
        for j in 1..n {
            let mut next = vec![Rational::zero(); n];
            for p in 0..n {
                for q in 1..n - p {
                    next[p + q] += &u_pow[p] * &u[q];
                }
            }
            u_pow = next;
            let w = binom_rational(ell, j);
            for k in j..n {
                out[k] += &w * &u_pow[k];
            }
        }
        out
    }

    #[test]
    fn rational_power_matches_recurrence() {
        for ell in [rat(1, 2), rat(-5, 3), int(4), int(-2), rat(7, 6)] {
            let ours = power_of_todd(&ell, 16);
            assert_eq!(ours, binomial_power(&ell, 16));
        }
    }

    #[test]
    fn cache_matches_fresh() {
        let cache = BernoulliCache::new();
        let l = rat(3, 5);
        let short = cache.power_series(&l, 5);
        let long = cache.power_series(&l, 70);
        assert_eq!(&long[..short.len()], &short[..]);
        assert_eq!(&*long, &power_of_todd(&l, long.len()));
        assert_eq!(cache.len(), 1);
    }
}
