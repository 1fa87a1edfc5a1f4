//! Structure constants of the orbifold line with orbifold points of orders
//! `m1` and `m2`: degrees, initial matrices `K_a`, the matrix `W(z, s)` and
//! the two symmetry matrices.

use crate::error::{Error, Result};
use crate::exact::rational::{int, rat, Rational};
use crate::exact::{IntMatrix, LaurentPoly, MatSeries, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldStructure {
    pub m1: usize,
    pub m2: usize,
    pub l: usize,
    pub rho: Rational,
    q: Vec<Rational>,
}

impl OrbifoldStructure {
    pub fn new(m1: usize, m2: usize) -> Result<Self> {
        if m1 == 0 || m2 == 0 {
            return Err(Error::Precondition(format!("orders must be positive, got ({m1}, {m2})")));
        }
        let l = m1 + m2;
        let q = (0..l)
            .map(|a| if a <= m1 { rat(a as i64, m1 as i64) } else { rat((l - a) as i64, m2 as i64) })
            .collect();
        Ok(OrbifoldStructure { m1, m2, l, rho: rat((m1 * m2) as i64, l as i64), q })
    }

    /// The structure with the two orbifold points exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.m2, self.m1).expect("valid orders")
    }

    /// `"m1,m2"`; used as a cache key.
    pub fn id(&self) -> String {
        format!("{},{}", self.m1, self.m2)
    }

    /// Degree `q_a`, `0 <= a < l`.
    pub fn q(&self, a: usize) -> &Rational {
        &self.q[a]
    }

    pub fn sectors(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.l - 1
    }

    pub fn check_sector(&self, a: usize) -> Result<()> {
        if a == 0 || a >= self.l {
            return Err(Error::Precondition(format!("sector {a} outside 1..={}", self.l - 1)));
        }
        Ok(())
    }

    /// Pairing weight of sector `a`: `m1` below `m1`, `1` at `m1`, `m2` above.
    pub fn sector_weight(&self, a: usize) -> i64 {
        use std::cmp::Ordering::*;
        match a.cmp(&self.m1) {
            Less => self.m1 as i64,
            Equal => 1,
            Greater => self.m2 as i64,
        }
    }

    /// Leading coefficient `K_a` of `M_a`.
    pub fn k_matrix(&self, a: usize) -> IntMatrix {
        let (m1, l) = (self.m1, self.l);
        let mut k = IntMatrix::zeros(l);
        if a <= m1 {
            for j in 1..=a {
                k.set(j - 1, m1 - a + j - 1, 1);
            }
        } else {
            for j in 1..=l - a {
                k.set(a + j - 1, m1 + j - 1, -1);
            }
        }
        k
    }

    /// `W = z W1 + W0(s)`; returns `W1`.
    pub fn w1(&self) -> IntMatrix {
        let mut w = IntMatrix::zeros(self.l);
        w.set(0, self.m1 - 1, 1);
        w
    }

    /// The `z`-free part `W0(s) = -1/2 e_(1,m1) - s e_(1,l) + s sum_(i>=2) e_(i,i-1)`.
    pub fn w0(&self) -> Vec<LaurentPoly> {
        let l = self.l;
        let mut w = vec![LaurentPoly::zero(Var::S); l * l];
        let s = LaurentPoly::monomial(Var::S, int(1), 1);
        w[self.m1 - 1] = LaurentPoly::constant(Var::S, rat(-1, 2));
        w[l - 1] = &w[l - 1] - &s;
        for i in 1..l {
            w[i * l + i - 1] = s.clone();
        }
        w
    }

    /// `W0` with `s` specialised to a number.
    pub fn w0_at(&self, s0: &Rational) -> Vec<Rational> {
        self.w0().iter().map(|p| p.eval(s0)).collect()
    }

    /// `W(z, s)` as a matrix series of offset 1, exact to any order.
    pub fn w_series(&self, order: usize) -> MatSeries {
        let l = self.l;
        let w1 = self.w1();
        let w0 = self.w0();
        let coeffs = (0..order)
            .map(|n| match n {
                0 => w1.data.iter().map(|&x| LaurentPoly::constant(Var::S, int(x))).collect(),
                1 => w0.clone(),
                _ => vec![LaurentPoly::zero(Var::S); l * l],
            })
            .collect();
        MatSeries::from_coeff_matrices(l, Var::S, int(1), coeffs)
    }

    /// Antidiagonal `eta_1(l)`.
    pub fn eta1(&self) -> IntMatrix {
        let l = self.l;
        let mut e = IntMatrix::zeros(l);
        for i in 0..l {
            e.set(i, l - 1 - i, 1);
        }
        e
    }

    /// `eta_2(m1, m2) = sum_(i<=m1) e_(i,m2+i) - sum_(i>m1) e_(i,i-m1)`, a signed
    /// permutation.
    pub fn eta2(&self) -> IntMatrix {
        let (m1, m2, l) = (self.m1, self.m2, self.l);
        let mut e = IntMatrix::zeros(l);
        for i in 1..=m1 {
            e.set(i - 1, m2 + i - 1, 1);
        }
        for i in m1 + 1..=l {
            e.set(i - 1, i - m1 - 1, -1);
        }
        e
    }
}

/// `M(z-1, s) W(z, s) - W(z, s) M(z, s)`.
pub fn tde_residual(st: &OrbifoldStructure, m: &MatSeries) -> Result<MatSeries> {
    let w1: Vec<LaurentPoly> = st.w1().data.iter().map(|&x| LaurentPoly::constant(m.var(), int(x))).collect();
    let w0 = st.w0();
    let one = int(1);
    let shifted = m.shift_z(-1);
    // z (A W1 - W1 A) + (A W0 - W0 A), computed on the common order.
    let lead = shifted.mul_const_right(&w1).sub(&m.mul_const_left(&w1))?.mul_power(&one);
    let rest = shifted.mul_const_right(&w0).sub(&m.mul_const_left(&w0))?;
    // `lead` has one more leading slot than `rest`; align `rest` under it.
    let rest = rest.map_entries(|e| e.reoffset(&(e.offset() + &one)).expect("integer shift"));
    let order = m.order();
    lead.with_order(order).add(&rest.with_order(order))
}

/// Whether every entry of a constant coefficient matrix vanishes.
pub fn is_zero_matrix(c: &[LaurentPoly]) -> bool {
    c.iter().all(LaurentPoly::is_zero)
}
