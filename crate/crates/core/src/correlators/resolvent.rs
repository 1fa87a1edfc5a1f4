//! Series `R_(a,K)(lambda; eps)` with coefficients polynomial in `eps`:
//! `R_(a,{}) = eps^(1-q_a) lambda^(q_a) M_a(lambda/eps, 1/eps)` and
//! `R_(a,K) = sum_(I+J = K-{k1}) [(lambda^(i_k1) R_(a_k1,I))_+, R_(a,J)]`.

use std::collections::HashMap;

use super::Insertion;
use crate::error::{Error, Result};
use crate::exact::rational::{binom_int, int, to_i64};
use crate::exact::{LaurentPoly, MatSeries, PuiseuxSeries, Var};
use crate::tde::{solution, OrbifoldStructure};

/// An `l x l` Laurent series in `1/lambda` over `Q[eps]`, tagged with the
/// sector and the insertions that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSeries {
    pub structure: OrbifoldStructure,
    pub sector: usize,
    pub applied: Vec<Insertion>,
    pub series: MatSeries,
}

fn truncate_eps(m: &MatSeries, eps_max: i64) -> MatSeries {
    m.map_entries(|e| e.map_coeffs(Var::Eps, |_, c| c.truncate_above(eps_max)))
}

/// `R_(a,{})` to `lambda_order` terms, dropping powers of `eps` above `eps_max`.
pub fn r_base(st: &OrbifoldStructure, a: usize, lambda_order: usize, eps_max: i64) -> Result<RSeries> {
    let sol = solution(st, a, lambda_order)?;
    let negative = std::cell::Cell::new(None);
    // C_n(s) z^(1-q-n) with z = lambda/eps, s = 1/eps becomes
    // eps^n C_n(1/eps) lambda^(1-n) after the prefactor.
    let series = sol.m.map_entries(|e| {
        let tail = e
            .tail()
            .iter()
            .enumerate()
            .map(|(n, c)| {
                let p = c.reciprocal_in(Var::Eps).shift(n as i64);
                if p.min_exp().is_some_and(|m| m < 0) && negative.get().is_none() {
                    negative.set(Some(n));
                }
                p.truncate_above(eps_max)
            })
            .collect();
        PuiseuxSeries::new(Var::Eps, int(1), tail)
    });
    if let Some(n) = negative.get() {
        return Err(Error::InvariantViolation(format!(
            "negative power of eps in R_({a},{{}}) at lambda^{}",
            1 - n as i64
        )));
    }
    Ok(RSeries { structure: st.clone(), sector: a, applied: Vec::new(), series })
}

/// `(lambda^shift X)_+`, padded with known zeros to `pad` terms.
pub fn polynomial_part(x: &MatSeries, shift: i64, pad: usize) -> Result<MatSeries> {
    let top = to_i64(x.offset()).ok_or_else(|| Error::Precondition("non-integral lambda offset".into()))? + shift;
    if top < 0 {
        return Ok(MatSeries::zero(x.dim(), Var::Eps, int(0), pad));
    }
    let keep = top as usize + 1;
    if x.order() < keep {
        return Err(Error::Truncation { requested: Box::new(int(-shift)), floor: Box::new(x.entries()[0].floor()) });
    }
    let len = pad.max(keep);
    let entries = x
        .entries()
        .iter()
        .map(|e| {
            let mut tail = e.tail()[..keep].to_vec();
            tail.resize(len, LaurentPoly::zero(Var::Eps));
            PuiseuxSeries::new(Var::Eps, int(top), tail)
        })
        .collect();
    MatSeries::from_entries(x.dim(), entries)
}

/// `[(lambda^i X)_+, Y]` with the `eps` cut applied and vanishing top terms removed.
fn bracket(x: &MatSeries, i: usize, y: &MatSeries, eps_max: i64) -> Result<MatSeries> {
    let top = to_i64(x.offset()).unwrap_or(0) + i as i64;
    let p = polynomial_part(x, i as i64, y.order() + top.max(0) as usize + 1)?;
    let c = truncate_eps(&p.mul(y)?, eps_max).sub(&truncate_eps(&y.mul(&p)?, eps_max))?;
    Ok(c.drop_leading_zeros())
}

/// `R^(a,i)_(b,m)` for one repeated insertion `(a, i)`, via
/// `R_(b,m) = sum_l C(m-1, l) [(lambda^i R_(a,l))_+, R_(b,m-1-l)]`.
pub struct RFamily {
    pub structure: OrbifoldStructure,
    pub fixed: Insertion,
    pub order: usize,
    pub eps_max: i64,
    table: HashMap<(usize, usize), MatSeries>,
}

impl RFamily {
    pub fn new(st: &OrbifoldStructure, fixed: Insertion, order: usize, eps_max: i64) -> Result<Self> {
        st.check_sector(fixed.a)?;
        Ok(RFamily { structure: st.clone(), fixed, order, eps_max, table: HashMap::new() })
    }

    fn ensure(&mut self, b: usize, m: usize) -> Result<()> {
        if self.table.contains_key(&(b, m)) {
            return Ok(());
        }
        let value = if m == 0 {
            r_base(&self.structure, b, self.order, self.eps_max)?.series
        } else {
            let a = self.fixed.a;
            for l in 0..m {
                self.ensure(a, l)?;
                self.ensure(b, m - 1 - l)?;
            }
            let mut acc: Option<MatSeries> = None;
            for l in 0..m {
                let term = bracket(&self.table[&(a, l)], self.fixed.i, &self.table[&(b, m - 1 - l)], self.eps_max)?;
                let c = binom_int(m as i64 - 1, l as i64);
                let term = if c == int(1) { term } else { term.scale(&c) };
                acc = Some(match acc {
                    Some(s) => s.add(&term)?,
                    None => term,
                });
            }
            acc.expect("m >= 1").drop_leading_zeros()
        };
        self.table.insert((b, m), value);
        Ok(())
    }

    pub fn matrix(&mut self, b: usize, m: usize) -> Result<&MatSeries> {
        self.structure.check_sector(b)?;
        self.ensure(b, m)?;
        Ok(&self.table[&(b, m)])
    }

    pub fn series(&mut self, b: usize, m: usize) -> Result<RSeries> {
        let fixed = self.fixed;
        let series = self.matrix(b, m)?.clone();
        Ok(RSeries { structure: self.structure.clone(), sector: b, applied: vec![fixed; m], series })
    }
}

/// `R^b_(b,K)` for distinct labels: `K` is a bit mask over `labels`.
pub fn r_subset(
    st: &OrbifoldStructure,
    labels: &[Insertion],
    b: usize,
    mask: u64,
    order: usize,
    eps_max: i64,
) -> Result<RSeries> {
    fn go(
        st: &OrbifoldStructure,
        labels: &[Insertion],
        b: usize,
        mask: u64,
        order: usize,
        eps_max: i64,
        memo: &mut HashMap<(usize, u64), MatSeries>,
    ) -> Result<MatSeries> {
        if let Some(hit) = memo.get(&(b, mask)) {
            return Ok(hit.clone());
        }
        let value = if mask == 0 {
            r_base(st, b, order, eps_max)?.series
        } else {
            let k1 = mask.trailing_zeros() as usize;
            let rest = mask & !(1 << k1);
            let head = labels[k1];
            let mut acc: Option<MatSeries> = None;
            // Every split rest = I + J, enumerating the submasks I of rest.
            let mut sub = rest;
            loop {
                let x = go(st, labels, head.a, sub, order, eps_max, memo)?;
                let y = go(st, labels, b, rest & !sub, order, eps_max, memo)?;
                let term = bracket(&x, head.i, &y, eps_max)?;
                acc = Some(match acc {
                    Some(s) => s.add(&term)?,
                    None => term,
                });
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            acc.expect("nonempty").drop_leading_zeros()
        };
        memo.insert((b, mask), value.clone());
        Ok(value)
    }
    if labels.len() > 63 || mask >> labels.len() != 0 {
        return Err(Error::Precondition("subset mask outside the label list".into()));
    }
    let mut memo = HashMap::new();
    let series = go(st, labels, b, mask, order, eps_max, &mut memo)?;
    let applied = (0..labels.len()).filter(|&k| mask >> k & 1 == 1).map(|k| labels[k]).collect();
    Ok(RSeries { structure: st.clone(), sector: b, applied, series })
}

/// Trace of every coefficient matrix vanishes.
pub fn is_traceless(m: &MatSeries) -> Result<bool> {
    Ok(m.trace()?.tail().iter().all(LaurentPoly::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_leading_term_is_k() {
        for (m1, m2) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
            let st = OrbifoldStructure::new(m1, m2).unwrap();
            for a in st.sectors() {
                let r = r_base(&st, a, 6, 20).unwrap().series;
                assert_eq!(r.offset(), &int(1));
                let lead = r.coeff_matrix(0).unwrap();
                let k = st.k_matrix(a);
                for (c, &x) in lead.iter().zip(&k.data) {
                    assert_eq!(c, &LaurentPoly::constant(Var::Eps, int(x)));
                }
            }
        }
    }

    #[test]
    fn polynomial_part_needs_constant_term() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let r = r_base(&st, 1, 2, 10).unwrap().series;
        assert!(polynomial_part(&r, 0, 4).is_ok());
        assert!(polynomial_part(&r, 1, 4).unwrap_err().is_truncation());
    }

    #[test]
    fn subset_form_matches_multiplicity_form() {
        let st = OrbifoldStructure::new(2, 1).unwrap();
        let fixed = Insertion::new(1, 1);
        let mut fam = RFamily::new(&st, fixed, 12, 8).unwrap();
        for m in 0..=3usize {
            let labels = vec![fixed; m];
            for b in st.sectors() {
                let sub = r_subset(&st, &labels, b, (1u64 << m) - 1, 12, 8).unwrap();
                assert_eq!(&sub.series, fam.matrix(b, m).unwrap(), "b={b} m={m}");
            }
        }
    }

    #[test]
    fn brackets_are_traceless() {
        let st = OrbifoldStructure::new(3, 1).unwrap();
        let mut fam = RFamily::new(&st, Insertion::new(2, 1), 10, 6).unwrap();
        for m in 1..=2 {
            assert!(is_traceless(fam.matrix(1, m).unwrap()).unwrap());
        }
    }
}
