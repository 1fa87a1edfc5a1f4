//! Verification of the difference equation, the symmetries and the algebraic
//! identities satisfied by the solutions.

use num_traits::{One, Zero};

use super::structure::{tde_residual, OrbifoldStructure};
use super::{solution, MSolution};
use crate::error::Result;
use crate::exact::rational::{int, Rational};
use crate::exact::{IntMatrix, LaurentPoly, MatSeries, PuiseuxSeries, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TdeReport {
    /// Number of leading residual coefficients that vanish in every entry.
    pub vanishing_order: usize,
    pub required: usize,
    pub pass: bool,
}

pub fn verify_tde(sol: &MSolution) -> Result<TdeReport> {
    let res = tde_residual(&sol.structure, &sol.m)?;
    let vanishing_order = if res.is_zero() { res.order() } else { res.leading_zeros() };
    let required = sol.order.saturating_sub(1);
    Ok(TdeReport { vanishing_order, required, pass: vanishing_order >= required })
}

fn identity_like(m: &MatSeries) -> MatSeries {
    let l = m.dim();
    MatSeries::from_int_matrices(Var::S, Rational::zero(), m.order(), &[IntMatrix::identity(l)])
}

/// `M_a(m2, m1) = -eta2^-1 M_(l-a)(m1, m2)^T eta2 + I delta_(a, m2)`.
pub fn transpose_image(st: &OrbifoldStructure, m_la: &MatSeries, a: usize) -> Result<MatSeries> {
    let eta = st.eta2();
    let inv = eta.signed_permutation_inverse().expect("eta2 is a signed permutation");
    let mut rhs = m_la.transpose().sandwich(&inv, &eta)?.neg();
    if a == st.m2 {
        rhs = rhs.add(&identity_like(&rhs))?;
    }
    Ok(rhs)
}

pub fn check_transpose_symmetry(st: &OrbifoldStructure, a: usize, order: usize) -> Result<bool> {
    let sw = st.swapped();
    sw.check_sector(a)?;
    let lhs = solution(&sw, a, order)?.m;
    let rhs = transpose_image(st, &solution(st, st.l - a, order)?.m, a)?;
    lhs.agrees_with(&rhs)
}

/// `M(-z, -s)` multiplied by the sign `(-1)^q`: on the tail this is
/// `-(-1)^n C_n(-s)` since `q + (1 - q) = 1`.
pub fn reflected(m: &MatSeries) -> MatSeries {
    let minus = -Rational::one();
    m.map_entries(|e| e.map_coeffs(Var::S, |_, c| c.negate_var()).reflect_z(&minus))
}

/// `M_a(m2, m1) = (-1)^q eta1^-1 M_(l-a)(-z, -s; m1, m2) eta1 + I delta_(a, m2)`.
pub fn reflection_image(st: &OrbifoldStructure, m_la: &MatSeries, a: usize) -> Result<MatSeries> {
    let eta = st.eta1();
    let inv = eta.signed_permutation_inverse().expect("eta1 is a permutation");
    let mut rhs = reflected(m_la).sandwich(&inv, &eta)?;
    if a == st.m2 {
        rhs = rhs.add(&identity_like(&rhs))?;
    }
    Ok(rhs)
}

pub fn check_reflection_symmetry(st: &OrbifoldStructure, a: usize, order: usize) -> Result<bool> {
    let sw = st.swapped();
    sw.check_sector(a)?;
    let lhs = solution(&sw, a, order)?.m;
    let rhs = reflection_image(st, &solution(st, st.l - a, order)?.m, a)?;
    lhs.agrees_with(&rhs)
}

fn constant_series(value: i64, offset: &Rational, order: usize) -> PuiseuxSeries {
    let mut s = PuiseuxSeries::zero(Var::S, offset.clone(), order);
    if value != 0 {
        s = PuiseuxSeries::monomial(LaurentPoly::constant(Var::S, int(value)), Rational::zero(), order)
            .reoffset(offset)
            .expect("constant on the grid");
    }
    s
}

/// `Tr M_a = m1 delta_(a, m1)`.
pub fn check_trace(sol: &MSolution) -> Result<bool> {
    let tr = sol.m.trace()?;
    let expect = if sol.a == sol.structure.m1 { sol.structure.m1 as i64 } else { 0 };
    tr.agrees_with(&constant_series(expect, tr.offset(), tr.order()))
}

pub fn check_det(sol: &MSolution) -> Result<bool> {
    Ok(sol.m.det()?.is_zero())
}

/// `M_a = s^(1-a) M_1^a` for `a <= m1`, `M_a = (-s)^(1-l+a) M_(l-1)^(l-a)` above.
pub fn check_power_relation(st: &OrbifoldStructure, a: usize, order: usize) -> Result<bool> {
    let m_a = solution(st, a, order)?.m;
    let (base, power, factor) = if a <= st.m1 {
        (1, a, LaurentPoly::monomial(Var::S, int(1), 1 - a as i64))
    } else {
        let e = 1 - st.l as i64 + a as i64;
        let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        (st.l - 1, st.l - a, LaurentPoly::monomial(Var::S, int(sign), e))
    };
    // Extra terms absorb the leading zeros of the power.
    let m_base = solution(st, base, order + power - 1)?.m;
    let rhs = m_base.pow(power)?.mul_poly(&factor);
    Ok(rhs.sub(&m_a)?.is_zero())
}

/// `M_a M_b = M_b M_a = 0` for all `a <= m1 < b`.
pub fn check_annihilation(st: &OrbifoldStructure, order: usize) -> Result<bool> {
    for a in 1..=st.m1 {
        for b in st.m1 + 1..st.l {
            let ma = solution(st, a, order)?.m;
            let mb = solution(st, b, order)?.m;
            if !ma.mul(&mb)?.is_zero() || !mb.mul(&ma)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every tail coefficient is a polynomial in `s`.
pub fn check_polynomial(sol: &MSolution) -> bool {
    sol.m.entries().iter().all(PuiseuxSeries::has_polynomial_coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tde::closed_form::m_matrix;

    #[test]
    fn residual_vanishes_and_detects_corruption() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let sol = m_matrix(&st, 1, 10).unwrap();
        let rep = verify_tde(&sol).unwrap();
        assert!(rep.pass, "{rep:?}");
        let bad = MSolution {
            m: sol.m.with_coefficient(1, 0, 4, LaurentPoly::monomial(Var::S, int(7), 3)),
            ..sol.clone()
        };
        let rep = verify_tde(&bad).unwrap();
        assert!(!rep.pass);
        assert!(rep.vanishing_order <= 5);
    }

    #[test]
    fn symmetries_small() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        assert!(check_transpose_symmetry(&st, 1, 6).unwrap());
        assert!(check_reflection_symmetry(&st, 1, 6).unwrap());
        let p1 = OrbifoldStructure::new(1, 1).unwrap();
        assert!(check_transpose_symmetry(&p1, 1, 6).unwrap());
        assert!(check_reflection_symmetry(&p1, 1, 6).unwrap());
    }

    #[test]
    fn reflection_detects_corruption() {
        let st = OrbifoldStructure::new(1, 1).unwrap();
        let m = solution(&st, 1, 6).unwrap().m;
        let bad = m.with_coefficient(0, 1, 3, LaurentPoly::monomial(Var::S, int(1), 1));
        let lhs = solution(&st.swapped(), 1, 6).unwrap().m;
        assert!(!lhs.agrees_with(&reflection_image(&st, &bad, 1).unwrap()).unwrap());
    }

    #[test]
    fn algebra_small() {
        let st = OrbifoldStructure::new(1, 2).unwrap();
        for a in st.sectors() {
            let sol = solution(&st, a, 6).unwrap();
            assert!(check_trace(&sol).unwrap());
            assert!(check_det(&sol).unwrap());
            assert!(check_polynomial(&sol));
            assert!(check_power_relation(&st, a, 6).unwrap());
        }
        assert!(check_annihilation(&st, 6).unwrap());
    }
}
