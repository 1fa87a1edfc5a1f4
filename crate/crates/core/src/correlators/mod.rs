//! Gromov-Witten invariants from the matrix solutions `M_a`: the resolvent
//! recursion, the two-point kernel, the 1-point formulas and a direct
//! evaluation of small-k generating functions.

pub mod kernel;
pub mod kpoint;
pub mod one_point;
pub mod resolvent;
pub mod tables;

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, int, rising, to_i64, Rational};
use crate::tde::OrbifoldStructure;

pub use kernel::{budget, extract_invariant, kernel_value, polygon_family, polygon_value, TwoPointKernel};
pub use kpoint::{kpoint_coefficient, kpoint_invariant};
pub use one_point::{degree_zero_one_point, one_point_closed, one_point_series};
pub use resolvent::{r_base, r_subset, RFamily, RSeries};

/// A descendant insertion `tau_i(phi_a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Insertion {
    pub a: usize,
    pub i: usize,
}

impl Insertion {
    pub fn new(a: usize, i: usize) -> Self {
        Insertion { a, i }
    }
}

/// One invariant `<tau_i1(phi_a1) ... >_(g,d)`. `d` is `None` when the
/// degree-dimension constraint has no nonnegative integer solution; the value
/// is then zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRecord {
    pub m1: usize,
    pub m2: usize,
    pub insertions: Vec<Insertion>,
    pub g: usize,
    pub d: Option<u64>,
    pub value: Rational,
}

impl InvariantRecord {
    pub fn new(st: &OrbifoldStructure, mut insertions: Vec<Insertion>, g: usize, value: Rational) -> Self {
        insertions.sort();
        let d = degree_from_dimension(st, g, &insertions);
        InvariantRecord { m1: st.m1, m2: st.m2, insertions, g, d, value }
    }

    pub fn vanishes(&self) -> bool {
        self.d.is_none()
    }
}

impl fmt::Display for InvariantRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (n, ins) in self.insertions.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "tau_{}(phi_{})", ins.i, ins.a)?;
        }
        match self.d {
            Some(d) => write!(f, ">_(g={},d={}) = {}", self.g, d, format_rational(&self.value)),
            None => write!(f, ">_(g={}) vanishes", self.g),
        }
    }
}

/// `q_(a,i) = (q_a)_(i+1)` times `m1`, `1` or `m2` below, at or above `m1`.
pub fn q_norm(st: &OrbifoldStructure, a: usize, i: usize) -> Rational {
    rising(st.q(a), i + 1) * int(st.sector_weight(a))
}

/// Solves `2g - 2 + d/rho + k = sum i + sum q` for a nonnegative integer `d`.
pub fn degree_from_dimension(st: &OrbifoldStructure, g: usize, insertions: &[Insertion]) -> Option<u64> {
    let mut rhs = Rational::zero();
    for ins in insertions {
        rhs += int(ins.i as i64) + st.q(ins.a);
    }
    let k = insertions.len() as i64;
    let d = &st.rho * (rhs - int(k) - int(2 * g as i64) + int(2));
    let d = to_i64(&d)?;
    u64::try_from(d).ok()
}

/// `<prod tau_i(phi_a)>_g` for any insertion list in which at most two
/// insertions differ from the most frequent one. One insertion goes through
/// the operator 1-point formula, more through the two-point kernel with the
/// repeated insertion applied `k - 2` times. `order` overrides the lambda
/// budget; a budget that is too small surfaces as a truncation error.
pub fn invariant(st: &OrbifoldStructure, insertions: &[Insertion], g: usize, order: Option<usize>) -> Result<InvariantRecord> {
    for x in insertions {
        st.check_sector(x.a)?;
    }
    let k = insertions.len();
    if k == 0 {
        return Err(Error::Precondition("no insertions".into()));
    }
    if degree_from_dimension(st, g, insertions).is_none() {
        return Ok(InvariantRecord::new(st, insertions.to_vec(), g, Rational::zero()));
    }
    if k == 1 {
        let x = insertions[0];
        let table = one_point::one_point_operator_table(st, x.a, x.i, g)?;
        return Ok(InvariantRecord::new(st, insertions.to_vec(), g, table[x.i][g].clone()));
    }
    let mut sorted = insertions.to_vec();
    sorted.sort();
    let fixed = *sorted
        .iter()
        .max_by_key(|x| (sorted.iter().filter(|y| y == x).count(), std::cmp::Reverse(**x)))
        .expect("nonempty");
    let mut rest: Vec<Insertion> = sorted.iter().copied().filter(|x| *x != fixed).collect();
    if rest.len() > 2 {
        return Err(Error::Precondition(
            "at most two insertions may differ from the repeated one".into(),
        ));
    }
    while rest.len() < 2 {
        rest.push(fixed);
    }
    let m = k - 2;
    let (b, c) = (rest[0], rest[1]);
    let order = order.unwrap_or_else(|| kernel::budget(b.i, c.i, m, fixed.i));
    let mut family = RFamily::new(st, fixed, order, (2 * g + m) as i64)?;
    let value = kernel_value(&mut family, m, b, c, g)?;
    Ok(InvariantRecord::new(st, insertions.to_vec(), g, value))
}
