//! Formal solutions `M_a(z, s)` of the topological difference equation
//! `M(z-1, s) W(z, s) = W(z, s) M(z, s)` with `M_a = z^(1-q_a) (K_a + O(1/z))`.

pub mod checks;
pub mod closed_form;
pub mod equal_weights;
pub mod gamma;
pub mod linear;
pub mod structure;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::exact::MatSeries;
use crate::persist;

pub use checks::{
    check_annihilation, check_det, check_power_relation, check_reflection_symmetry, check_trace,
    check_transpose_symmetry, verify_tde, TdeReport,
};
pub use closed_form::{m_entry, m_matrix};
pub use equal_weights::m_matrix_equal_weights;
pub use gamma::{gamma_ratio_expansion, m_entry_via_gamma, m_matrix_via_gamma};
pub use linear::solve_tde_linear;
pub use structure::OrbifoldStructure;

/// `M_a` for one structure and sector, known to `order` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSolution {
    pub structure: OrbifoldStructure,
    pub a: usize,
    pub order: usize,
    pub m: MatSeries,
}

impl MSolution {
    pub fn truncated(&self, order: usize) -> MSolution {
        MSolution { order, m: self.m.with_order(order), ..self.clone() }
    }
}

type Key = (usize, usize, usize);

fn memo() -> &'static RwLock<HashMap<Key, Arc<MSolution>>> {
    static MEMO: OnceLock<RwLock<HashMap<Key, Arc<MSolution>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Memoized closed-form `M_a`. Consults the on-disk cache named by
/// `GW_CACHE_DIR` when set.
pub fn solution(st: &OrbifoldStructure, a: usize, order: usize) -> Result<MSolution> {
    st.check_sector(a)?;
    let key = (st.m1, st.m2, a);
    if let Some(hit) = memo().read().unwrap().get(&key) {
        if hit.order >= order {
            return Ok(hit.truncated(order));
        }
    }
    let dir = persist::cache_dir();
    let loaded = dir.as_deref().and_then(|d| persist::load(d, st, a).ok().flatten()).filter(|s| s.order >= order);
    let sol = match loaded {
        Some(s) => s,
        None => {
            let s = m_matrix(st, a, order)?;
            if let Some(d) = dir.as_deref() {
                // A failed write only loses the cache entry.
                let _ = persist::store(d, &s);
            }
            s
        }
    };
    let out = sol.truncated(order);
    let mut table = memo().write().unwrap();
    let slot = table.entry(key).or_insert_with(|| Arc::new(sol.clone()));
    if slot.order < sol.order {
        *slot = Arc::new(sol);
    }
    Ok(out)
}
