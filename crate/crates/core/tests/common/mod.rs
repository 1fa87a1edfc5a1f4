use orbigw::exact::rational::{binom_int, factorial, int, pow_i, rat, Rational};
use orbigw::{LaurentPoly, MatSeries, PuiseuxSeries, Var};

/// The closed 2x2 solution for (1,1) assembled from alpha, P1, P2. The upper
/// right entry is P2 - P1: with alpha ~ s^2/z^2 and P1 ~ s/z only that sign
/// gives det M = 0.
pub fn p1_oracle(order: usize) -> MatSeries {
    let half = rat(1, 2);
    let fi = |n: usize| Rational::from_integer(factorial(n));
    let inner = |i: i64, j: i64| -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for l in 0..=i {
            let sign = if l % 2 == 0 { int(1) } else { int(-1) };
            acc += sign * pow_i(&(int(i - l) + &half), 2 * j) * (binom_int(2 * i, l) - binom_int(2 * i, l - 1));
        }
        acc
    };
    let mut alpha = vec![LaurentPoly::zero(Var::S); order];
    let mut p1 = alpha.clone();
    let mut p2 = alpha.clone();
    for j in 0..order as i64 {
        for i in 0..=j {
            let mut a = Rational::from_integer(0.into());
            for l in 0..=i {
                let sign = if l % 2 == 0 { int(1) } else { int(-1) };
                a += sign * pow_i(&(int(i - l) + &half), 2 * j + 1) * binom_int(2 * i + 1, l);
            }
            let a = int(2) * a / (fi(i as usize) * fi(i as usize + 1));
            let b = inner(i, j) / (fi(i as usize) * fi(i as usize));
            let c = -&half * int(2 * i + 1) * &b;
            let (n_odd, n_even) = ((2 * j + 1) as usize, (2 * j + 2) as usize);
            if n_even < order {
                alpha[n_even] += &LaurentPoly::monomial(Var::S, a, 2 * i + 2);
                p2[n_even] += &LaurentPoly::monomial(Var::S, c, 2 * i + 1);
            }
            if n_odd < order {
                p1[n_odd] += &LaurentPoly::monomial(Var::S, b, 2 * i + 1);
            }
        }
    }
    let ser = |t: Vec<LaurentPoly>| PuiseuxSeries::new(Var::S, int(0), t);
    let one = PuiseuxSeries::one(Var::S, order);
    let (al, p1, p2) = (ser(alpha), ser(p1), ser(p2));
    let entries = vec![one.add(&al).unwrap(), p2.sub(&p1).unwrap(), p1.add(&p2).unwrap(), al.neg()];
    MatSeries::from_entries(2, entries).unwrap()
}

