//! Grids of `<tau_i(phi_a)^k>_g` over `k` and `g`, computed with one resolvent
//! family per grid.

use rayon::prelude::*;

use super::kernel::{budget, polygon_value};
use super::one_point::one_point_operator_table;
use super::resolvent::RFamily;
use super::{degree_from_dimension, Insertion};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::tde::OrbifoldStructure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellValue {
    Value(Rational),
    /// The lambda order did not reach this cell.
    Trunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub k: usize,
    pub g: usize,
    pub d: Option<u64>,
    pub value: CellValue,
}

#[derive(Clone, Debug)]
pub struct TableRequest {
    pub structure: OrbifoldStructure,
    pub fixed: Insertion,
    pub ks: Vec<usize>,
    pub gs: Vec<usize>,
    /// Overrides the default lambda order.
    pub order: Option<usize>,
}

impl TableRequest {
    pub fn default_order(&self) -> usize {
        let k_max = self.ks.iter().copied().max().unwrap_or(2);
        let i = self.fixed.i;
        budget(i, i, k_max.saturating_sub(2), i)
    }
}

fn trunc_or<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Truncation { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Every requested cell; cells the order cannot reach come back as `Trunc`.
pub fn compute_table(req: &TableRequest) -> Result<Vec<Cell>> {
    let st = &req.structure;
    let fixed = req.fixed;
    st.check_sector(fixed.a)?;
    let order = req.order.unwrap_or_else(|| req.default_order());
    let g_max = req.gs.iter().copied().max().unwrap_or(0);
    let k_max = req.ks.iter().copied().max().unwrap_or(1);
    let dim = |k: usize, g: usize| degree_from_dimension(st, g, &vec![fixed; k]);

    let one = if req.ks.contains(&1) {
        // The operator route needs i + 4 terms of M_a.
        if order < fixed.i + 4 {
            None
        } else {
            trunc_or(one_point_operator_table(st, fixed.a, fixed.i, g_max))?
        }
    } else {
        None
    };
    let mut family = RFamily::new(st, fixed, order, (2 * g_max + k_max.saturating_sub(2)) as i64)?;
    // Build the recursion levels in order; a truncated level stops the chain.
    let mut reached = 1;
    for m in 0..k_max.saturating_sub(1) {
        if trunc_or(family.matrix(fixed.a, m).map(|_| ()))?.is_none() {
            break;
        }
        reached = m + 2;
    }
    let mut jobs = Vec::new();
    for &k in &req.ks {
        for &g in &req.gs {
            jobs.push((k, g));
        }
    }
    let family = std::sync::Mutex::new(family);
    let cells = jobs
        .into_par_iter()
        .map(|(k, g)| -> Result<Cell> {
            let d = dim(k, g);
            let value = if d.is_none() {
                CellValue::Value(Rational::default())
            } else if k == 1 {
                match &one {
                    Some(t) => CellValue::Value(t[fixed.i][g].clone()),
                    None => CellValue::Trunc,
                }
            } else if k > reached {
                CellValue::Trunc
            } else {
                let mut fam = family.lock().unwrap();
                match trunc_or(polygon_value(&mut fam, k, g))? {
                    Some(v) => CellValue::Value(v),
                    None => CellValue::Trunc,
                }
            };
            Ok(Cell { k, g, d, value })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(cells)
}
