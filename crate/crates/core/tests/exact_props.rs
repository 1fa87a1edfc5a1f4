use num_traits::Zero;
use orbigw::bernoulli::{bernoulli_number, euler_maclaurin_coeffs, gen_bernoulli};
use orbigw::exact::rational::{binom_int, factorial, int, rat, Rational};
use orbigw::{LaurentPoly, PuiseuxSeries, Var};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    (-2i64..=2, prop::collection::vec(small_rat(), 0..4))
        .prop_map(|(low, c)| LaurentPoly::from_coeffs(Var::S, low, c))
}

/// Series on the grid `base + Z`.
fn series_on(base: Rational) -> impl Strategy<Value = PuiseuxSeries> {
    (-2i64..=2, prop::collection::vec(poly(), 1..7))
        .prop_map(move |(shift, tail)| PuiseuxSeries::new(Var::S, &base + int(shift), tail))
}

fn triple() -> impl Strategy<Value = (PuiseuxSeries, PuiseuxSeries, PuiseuxSeries)> {
    (0i64..3, 1i64..4).prop_flat_map(|(n, d)| {
        let b = rat(n, d);
        (series_on(b.clone()), series_on(b.clone()), series_on(b))
    })
}

/// Schoolbook product straight from the coefficient accessors.
fn naive_mul(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    let order = f.order().min(g.order());
    let tail = (0..order)
        .map(|n| {
            let mut acc = LaurentPoly::zero(Var::S);
            for i in 0..=n {
                acc += &(&f.tail()[i] * &g.tail()[n - i]);
            }
            acc
        })
        .collect();
    PuiseuxSeries::new(Var::S, f.offset() + g.offset(), tail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((f, g, h) in triple()) {
        let l = f.mul(&g).unwrap().mul(&h).unwrap();
        let r = f.mul(&g.mul(&h).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r).unwrap());
        let gh = g.add(&h).unwrap();
        let l = f.mul(&gh).unwrap();
        let r = f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap();
        prop_assert!(l.agrees_with(&r).unwrap());
    }

    #[test]
    fn product_matches_schoolbook((f, g, _h) in triple()) {
        let fast = f.mul(&g).unwrap();
        prop_assert!(fast.order() >= f.order().min(g.order()));
        prop_assert!(fast.agrees_with(&naive_mul(&f, &g)).unwrap());
    }

    #[test]
    fn shift_round_trip(f in series_on(rat(1, 3))) {
        prop_assert_eq!(f.shift_z(-1).shift_z(1), f.clone());
        prop_assert_eq!(f.shift_z(2).shift_z(-2), f);
    }

    #[test]
    fn coefficients_below_the_window_are_errors(f in series_on(rat(1, 2)), extra in 0i64..5) {
        let e = f.floor() - int(1 + extra);
        prop_assert!(f.coeff(&e).unwrap_err().is_truncation());
        prop_assert!(f.coeff(&f.floor()).is_ok());
    }

    #[test]
    fn bernoulli_convolution(m in 0usize..9, l1 in small_rat(), l2 in small_rat(), x in small_rat(), y in small_rat()) {
        let lhs = gen_bernoulli(m, &(&l1 + &l2), &(&x + &y));
        let mut rhs = Rational::zero();
        for j in 0..=m {
            rhs += binom_int(m as i64, j as i64) * gen_bernoulli(j, &l1, &x) * gen_bernoulli(m - j, &l2, &y);
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bernoulli_difference_identity(m in 0usize..9, k in 0usize..5, l in small_rat(), x in small_rat()) {
        prop_assume!(k <= m);
        let mut lhs = Rational::zero();
        for j in 0..=k {
            lhs += binom_int(k as i64, j as i64) * (if j % 2 == 0 { int(1) } else { int(-1) })
                * gen_bernoulli(m, &l, &(&x - int(j as i64)));
        }
        let ratio = Rational::from_integer(factorial(m)) / Rational::from_integer(factorial(m - k));
        let rhs = ratio * gen_bernoulli(m - k, &(&l - int(k as i64)), &(&x - int(k as i64)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn bernoulli_numbers_to_twenty() {
    let known = [
        (0, rat(1, 1)),
        (1, rat(-1, 2)),
        (2, rat(1, 6)),
        (4, rat(-1, 30)),
        (6, rat(1, 42)),
        (8, rat(-1, 30)),
        (10, rat(5, 66)),
        (12, rat(-691, 2730)),
        (14, rat(7, 6)),
        (16, rat(-3617, 510)),
        (18, rat(43867, 798)),
        (20, rat(-174611, 330)),
    ];
    for (m, b) in known {
        assert_eq!(bernoulli_number(m), b, "B_{m}");
    }
    for m in (3..20).step_by(2) {
        assert!(bernoulli_number(m).is_zero());
    }
}

#[test]
fn euler_maclaurin_operator_inverts_the_difference() {
    // (sum c_k D^k)(1 - e^-D) = D as power series in D.
    let k = 14;
    let c = euler_maclaurin_coeffs(k);
    let one_minus_exp: Vec<Rational> = (0..=k)
        .map(|j| {
            if j == 0 {
                Rational::zero()
            } else {
                let sign = if j % 2 == 1 { int(1) } else { int(-1) };
                sign / Rational::from_integer(factorial(j))
            }
        })
        .collect();
    for n in 0..=k {
        let mut acc = Rational::zero();
        for j in 0..=n {
            acc += &c[j] * &one_minus_exp[n - j];
        }
        assert_eq!(acc, if n == 1 { int(1) } else { int(0) }, "D^{n}");
    }
}
