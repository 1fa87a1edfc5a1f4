//! Order-by-order linear solve of the difference equation at a numeric `s`.
//!
//! Unknown coefficient matrices `M_n` of `M = z^(1-q_a) sum_n M_n z^-n` are
//! fixed by the coefficients of `M(z-1) W(z) - W(z) M(z)` plus `M_0 = K_a`;
//! the first `order` of them are read off once the joint system pins them.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::structure::OrbifoldStructure;
use crate::error::{Error, Result};
use crate::exact::rational::{binom_rational, int, sign_pow, Rational};
use crate::exact::{LaurentPoly, MatSeries, Var};

type Row = BTreeMap<usize, Rational>;

/// Sparse Gauss-Jordan elimination over the rationals. The right-hand side
/// sits in column `rhs`.
struct SparseSystem {
    rhs: usize,
    pivots: BTreeMap<usize, Row>,
}

impl SparseSystem {
    fn new(rhs: usize) -> Self {
        SparseSystem { rhs, pivots: BTreeMap::new() }
    }

    fn reduce(&self, mut row: Row) -> Row {
        loop {
            let hit = row.keys().find(|&&v| v != self.rhs && self.pivots.contains_key(&v)).copied();
            let Some(v) = hit else { return row };
            let f = row.remove(&v).unwrap();
            for (&c, x) in &self.pivots[&v] {
                if c == v {
                    continue;
                }
                let e = row.entry(c).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    row.remove(&c);
                }
            }
        }
    }

    fn insert(&mut self, row: Row) -> Result<()> {
        let row = self.reduce(row);
        let Some((&v, _)) = row.iter().find(|(&c, _)| c != self.rhs) else {
            return match row.get(&self.rhs) {
                Some(x) if !x.is_zero() => Err(Error::Inconsistent),
                _ => Ok(()),
            };
        };
        let inv = row[&v].recip();
        let row: Row = row.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        // Keep the system fully reduced.
        for other in self.pivots.values_mut() {
            let Some(f) = other.remove(&v) else { continue };
            for (&c, x) in &row {
                if c == v {
                    continue;
                }
                let e = other.entry(c).or_insert_with(Rational::zero);
                *e -= &f * x;
                if e.is_zero() {
                    other.remove(&c);
                }
            }
        }
        self.pivots.insert(v, row);
        Ok(())
    }

    /// The value of `v` when the system determines it uniquely.
    fn pinned(&self, v: usize) -> Option<Rational> {
        let row = self.pivots.get(&v)?;
        if row.keys().any(|&c| c != v && c != self.rhs) {
            return None;
        }
        Some(row.get(&self.rhs).cloned().unwrap_or_else(Rational::zero))
    }
}

/// One attempt with `total` unknown coefficient matrices.
fn solve_with(st: &OrbifoldStructure, a: usize, order: usize, total: usize, s0: &Rational) -> Result<MatSeries> {
    let l = st.l;
    let beta = int(1) - st.q(a);
    let var = |n: usize, i: usize, j: usize| n * l * l + i * l + j;
    let rhs = total * l * l;
    let w1 = st.w1();
    let w0 = st.w0_at(s0);
    let w1_at = |i: usize, j: usize| int(w1.get(i, j));
    let w0_at = |i: usize, j: usize| w0[i * l + j].clone();
    // shift[n][k] = C(beta - n, k) (-1)^k
    let shift: Vec<Vec<Rational>> = (0..total)
        .map(|n| (0..=total).map(|k| binom_rational(&(&beta - int(n as i64)), k) * sign_pow(k as i64)).collect())
        .collect();

    let mut sys = SparseSystem::new(rhs);
    let k = st.k_matrix(a);
    for i in 0..l {
        for j in 0..l {
            let mut row = Row::new();
            row.insert(var(0, i, j), Rational::one());
            if k.get(i, j) != 0 {
                row.insert(rhs, int(k.get(i, j)));
            }
            sys.insert(row)?;
        }
    }
    // Coefficient of z^(beta + 1 - p) in M(z-1) W - W M, entry (r, c).
    for p in 0..total {
        for r in 0..l {
            for c in 0..l {
                let mut row = Row::new();
                let mut add = |v: usize, x: Rational| {
                    if x.is_zero() {
                        return;
                    }
                    let e = row.entry(v).or_insert_with(Rational::zero);
                    *e += x;
                };
                for n in 0..=p {
                    let kk = p - n;
                    for t in 0..l {
                        let w = w1_at(t, c);
                        if !w.is_zero() {
                            add(var(n, r, t), &shift[n][kk] * w);
                        }
                    }
                }
                if p >= 1 {
                    for n in 0..p {
                        let kk = p - 1 - n;
                        for t in 0..l {
                            let w = w0_at(t, c);
                            if !w.is_zero() {
                                add(var(n, r, t), &shift[n][kk] * w);
                            }
                        }
                    }
                }
                for t in 0..l {
                    let w = w1_at(r, t);
                    if !w.is_zero() {
                        add(var(p, t, c), -w);
                    }
                    if p >= 1 {
                        let w = w0_at(r, t);
                        if !w.is_zero() {
                            add(var(p - 1, t, c), -w);
                        }
                    }
                }
                row.retain(|_, x| !x.is_zero());
                if !row.is_empty() {
                    sys.insert(row)?;
                }
            }
        }
    }
    let mut coeffs = Vec::with_capacity(order);
    for n in 0..order {
        let mut cm = Vec::with_capacity(l * l);
        for i in 0..l {
            for j in 0..l {
                let x = sys.pinned(var(n, i, j)).ok_or(Error::InsufficientBuffer { order, buffer: total - order })?;
                cm.push(LaurentPoly::constant(Var::S, x));
            }
        }
        coeffs.push(cm);
    }
    Ok(MatSeries::from_coeff_matrices(l, Var::S, beta, coeffs))
}

/// `M_a` at `s = s0` to `order` terms, with the buffer starting at `2 m1`
/// extra orders and doubling while the system leaves unknowns free.
pub fn solve_tde_linear(st: &OrbifoldStructure, a: usize, order: usize, s0: &Rational) -> Result<MatSeries> {
    st.check_sector(a)?;
    if s0.is_zero() {
        return Err(Error::Precondition("s0 must be nonzero".into()));
    }
    let mut buffer = 2 * st.m1;
    loop {
        match solve_with(st, a, order, order + buffer, s0) {
            Err(Error::InsufficientBuffer { .. }) if buffer < 64 * st.l => buffer *= 2,
            other => return other,
        }
    }
}

/// A closed-form solution with `s` specialised, for comparison with the solver.
pub fn specialize(m: &MatSeries, s0: &Rational) -> MatSeries {
    m.map_entries(|e| e.map_coeffs(Var::S, |_, c| LaurentPoly::constant(Var::S, c.eval(s0))))
}
