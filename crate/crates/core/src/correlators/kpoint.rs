//! Direct evaluation of the k-point functions for k = 2, 3 as cyclic traces
//! of `M_a(lambda/eps, 1/eps)` over products of `lambda_i - lambda_j`,
//! expanded in the region `|lambda_1| >> |lambda_2| >> |lambda_3|`.
//!
//! Writing `M_a(lambda/eps, 1/eps) = eps^(q_a - 1) S_a(lambda)`, the
//! `eps^(sum q - k)` prefactor is factored out, so invariants of genus `g` sit
//! at `eps^(2g - 2 + k)` of the remaining expression.

use num_traits::Zero;

use super::{degree_from_dimension, q_norm, Insertion, InvariantRecord};
use crate::error::{Error, Result};
use crate::exact::rational::{floor_i64, int, Rational};
use crate::exact::{LaurentPoly, MatSeries, PuiseuxSeries, Var};
use crate::tde::{solution, OrbifoldStructure};

/// `S_a(lambda) = sum_n eps^n C_n(1/eps) lambda^(1-q_a-n)`.
pub fn s_series(st: &OrbifoldStructure, a: usize, order: usize) -> Result<MatSeries> {
    let m = solution(st, a, order)?.m;
    let offset = int(1) - st.q(a);
    Ok(m.map_entries(|e| {
        let tail = e.tail().iter().enumerate().map(|(n, c)| c.reciprocal_in(Var::Eps).shift(n as i64)).collect();
        PuiseuxSeries::new(Var::Eps, offset.clone(), tail)
    }))
}

fn at<'a>(x: &'a PuiseuxSeries, e: &Rational) -> Result<Option<&'a LaurentPoly>> {
    Ok(x.coeff_ref(e)?.filter(|c| !c.is_zero()))
}

/// `[lambda_1^p1 lambda_2^p2] Tr X(lambda_1) Y(lambda_2)`.
fn trace2(x: &MatSeries, y: &MatSeries, p1: &Rational, p2: &Rational) -> Result<LaurentPoly> {
    let n = x.dim();
    let mut acc = LaurentPoly::zero(Var::Eps);
    for r in 0..n {
        for s in 0..n {
            let Some(u) = at(x.get(r, s), p1)? else { continue };
            if let Some(v) = at(y.get(s, r), p2)? {
                acc.add_mul(u, v);
            }
        }
    }
    Ok(acc)
}

/// `Tr X Y Z` with each factor read at its own exponent.
fn trace3(x: (&MatSeries, &Rational), y: (&MatSeries, &Rational), z: (&MatSeries, &Rational)) -> Result<LaurentPoly> {
    let n = x.0.dim();
    let mut acc = LaurentPoly::zero(Var::Eps);
    for r in 0..n {
        for s in 0..n {
            let Some(u) = at(x.0.get(r, s), x.1)? else { continue };
            for t in 0..n {
                let Some(v) = at(y.0.get(s, t), y.1)? else { continue };
                if let Some(w) = at(z.0.get(t, r), z.1)? {
                    acc.add_mul(&(u * v), w);
                }
            }
        }
    }
    Ok(acc)
}

fn top(x: &MatSeries) -> &Rational {
    x.offset()
}

/// Coefficient of `prod lambda_j^(e_j)` in the k-point function with the
/// `eps` prefactor removed, as a polynomial in `eps`.
pub fn kpoint_coefficient(st: &OrbifoldStructure, sectors: &[usize], exps: &[Rational], order: usize) -> Result<LaurentPoly> {
    if sectors.len() != exps.len() {
        return Err(Error::DimensionMismatch(sectors.len(), exps.len()));
    }
    let s: Vec<MatSeries> = sectors.iter().map(|&a| s_series(st, a, order)).collect::<Result<_>>()?;
    match sectors.len() {
        2 => two_point(st, sectors, &s, exps),
        3 => three_point(&s, exps),
        k => Err(Error::Precondition(format!("direct evaluation covers k = 2, 3, not {k}"))),
    }
}

fn two_point(st: &OrbifoldStructure, sectors: &[usize], s: &[MatSeries], e: &[Rational]) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(Var::Eps);
    // S_i/C_2 has one class; the cyclic denominator is -(lambda_1 - lambda_2)^2.
    let n_max = floor_i64(&(top(&s[0]) - &e[0] - int(2)));
    for n in 0..=n_max {
        let t = trace2(&s[0], &s[1], &(&e[0] + int(n + 2)), &(&e[1] - int(n)))?;
        acc += &t.scale(&int(n + 1));
    }
    // Correction, rescaled by the eps prefactor: every term sits at eps^0.
    let (a1, a2) = (sectors[0], sectors[1]);
    let (m1, l) = (st.m1, st.l);
    let mut terms: Vec<(i64, i64, i64)> = Vec::new();
    if a1 + a2 == m1 {
        terms.extend([(1, 0, a1 as i64), (0, 1, a2 as i64)]);
    }
    if a1 == m1 && a2 == m1 {
        terms.push((1, 1, m1 as i64));
    }
    if a1 + a2 == m1 + l {
        terms.extend([(1, 0, (l - a1) as i64), (0, 1, (l - a2) as i64)]);
    }
    let (q1, q2) = (st.q(a1), st.q(a2));
    let mut corr = Rational::zero();
    for (x, y, w) in terms {
        // w lambda_1^(x-q1-n-2) lambda_2^(y-q2+n) with weight n + 1
        let n = &e[1] + q2 - int(y);
        if n >= Rational::zero() && n.is_integer() && int(x) - q1 - &n - int(2) == e[0] {
            corr += (n + int(1)) * int(w);
        }
    }
    acc -= &LaurentPoly::constant(Var::Eps, corr);
    Ok(acc)
}

fn three_point(s: &[MatSeries], e: &[Rational]) -> Result<LaurentPoly> {
    // Both cyclic classes share 1/((l1-l2)(l1-l3)(l2-l3)) up to sign:
    // F = G (Tr S1 S2 S3 - Tr S1 S3 S2), with
    // G = sum_(a,b,c) l1^(-a-c-2) l2^(a-b-1) l3^(b+c).
    let mut acc = LaurentPoly::zero(Var::Eps);
    let big_a = floor_i64(&(top(&s[0]) - &e[0] - int(2)));
    for a in 0..=big_a {
        for c in 0..=big_a - a {
            let p1 = &e[0] + int(a + c + 2);
            let b_max = floor_i64(&(top(&s[1]) - &e[1] + int(a) - int(1)));
            for b in 0..=b_max {
                let p2 = &e[1] - int(a) + int(b + 1);
                let p3 = &e[2] - int(b + c);
                let fwd = trace3((&s[0], &p1), (&s[1], &p2), (&s[2], &p3))?;
                let bwd = trace3((&s[0], &p1), (&s[2], &p3), (&s[1], &p2))?;
                acc += &fwd;
                acc -= &bwd;
            }
        }
    }
    Ok(acc)
}

/// Default lambda order for the direct route.
pub fn kpoint_budget(insertions: &[Insertion]) -> usize {
    2 * insertions.iter().map(|x| x.i).sum::<usize>() + 8
}

/// `<prod tau_i(phi_a)>_g` for two or three insertions through the direct route.
pub fn kpoint_invariant(st: &OrbifoldStructure, insertions: &[Insertion], g: usize) -> Result<InvariantRecord> {
    kpoint_invariant_with_order(st, insertions, g, kpoint_budget(insertions))
}

pub fn kpoint_invariant_with_order(
    st: &OrbifoldStructure,
    insertions: &[Insertion],
    g: usize,
    order: usize,
) -> Result<InvariantRecord> {
    for x in insertions {
        st.check_sector(x.a)?;
    }
    if degree_from_dimension(st, g, insertions).is_none() {
        return Ok(InvariantRecord::new(st, insertions.to_vec(), g, Rational::zero()));
    }
    let value = kpoint_raw(st, insertions, g, order)?;
    Ok(InvariantRecord::new(st, insertions.to_vec(), g, value))
}

/// The extracted value without the degree-dimension filter.
pub fn kpoint_raw(st: &OrbifoldStructure, insertions: &[Insertion], g: usize, order: usize) -> Result<Rational> {
    let sectors: Vec<usize> = insertions.iter().map(|x| x.a).collect();
    let exps: Vec<Rational> = insertions.iter().map(|x| -int(x.i as i64 + 1) - st.q(x.a)).collect();
    let coeff = kpoint_coefficient(st, &sectors, &exps, order)?;
    let k = insertions.len() as i64;
    let raw = coeff.coeff(2 * g as i64 - 2 + k);
    let norm = insertions.iter().fold(Rational::from_integer(1.into()), |acc, x| acc * q_norm(st, x.a, x.i));
    Ok(raw / norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn two_point_p21() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let t = Insertion::new(1, 1);
        assert_eq!(kpoint_invariant(&st, &[t, t], 0).unwrap().value, rat(1, 2));
    }

    #[test]
    fn three_point_p21() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let t = Insertion::new(1, 1);
        let rec = kpoint_invariant(&st, &[t, t, t], 1).unwrap();
        assert_eq!(rec.d, Some(1));
        assert_eq!(rec.value, rat(-1, 8));
    }

    #[test]
    fn rejects_other_k() {
        let st = OrbifoldStructure::new(1, 1).unwrap();
        assert!(kpoint_coefficient(&st, &[1; 4], &vec![int(-2); 4], 6).is_err());
    }
}
