//! Square matrices of truncated Puiseux series on one shared exponent grid.

use std::fmt;

use num_traits::Zero;

use super::laurent::{LaurentPoly, Var};
use super::rational::{int, Rational};
use super::series::{grid_distance, PuiseuxSeries};
use crate::error::{Error, Result};

/// Constant integer matrix, row-major. Used for the sign/permutation
/// matrices of the difference equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub dim: usize,
    pub data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(dim: usize) -> Self {
        IntMatrix { dim, data: vec![0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, 1);
        }
        m
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        IntMatrix { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        IntMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Inverse of a signed permutation matrix (its transpose).
    pub fn signed_permutation_inverse(&self) -> Option<Self> {
        let t = self.transpose();
        (self.mul(&t) == Self::identity(self.dim)).then_some(t)
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Rational>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| int(self.get(i, j))).collect())
            .collect();
        rank_of(rows)
    }
}

fn rank_of(mut rows: Vec<Vec<Rational>>) -> usize {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..m {
        let Some(p) = (rank..n).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for r in 0..n {
            if r != rank && !rows[r][col].is_zero() {
                let f = &rows[r][col] / &pivot;
                for c in col..m {
                    let v = &rows[rank][c] * &f;
                    rows[r][c] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, PartialEq, Eq)]
pub struct MatSeries {
    dim: usize,
    entries: Vec<PuiseuxSeries>,
}

impl MatSeries {
    /// Builds from row-major entries, aligning them to the highest offset and
    /// the common known window.
    pub fn from_entries(dim: usize, entries: Vec<PuiseuxSeries>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::DimensionMismatch(dim * dim, entries.len()));
        }
        let mut top = entries[0].offset().clone();
        for e in &entries[1..] {
            if grid_distance(e.offset(), &top)? > 0 {
                top = e.offset().clone();
            }
        }
        let mut aligned = Vec::with_capacity(entries.len());
        for e in &entries {
            aligned.push(e.reoffset(&top)?);
        }
        let order = aligned.iter().map(PuiseuxSeries::order).min().unwrap_or(0);
        let entries = aligned.into_iter().map(|e| e.with_order(order)).collect();
        Ok(MatSeries { dim, entries })
    }

    pub fn zero(dim: usize, var: Var, offset: Rational, order: usize) -> Self {
        MatSeries { dim, entries: vec![PuiseuxSeries::zero(var, offset, order); dim * dim] }
    }

    /// `sum_n coeffs[n] z^(offset - n)` for constant integer matrices.
    pub fn from_int_matrices(var: Var, offset: Rational, order: usize, terms: &[IntMatrix]) -> Self {
        let dim = terms[0].dim;
        let entries = (0..dim * dim)
            .map(|k| {
                PuiseuxSeries::from_fn(var, offset.clone(), order, |n| match terms.get(n) {
                    Some(m) => LaurentPoly::constant(var, int(m.data[k])),
                    None => LaurentPoly::zero(var),
                })
            })
            .collect();
        MatSeries { dim, entries }
    }

    /// Builds `sum_n z^(offset-n) C_n` from coefficient matrices `C_n` (row-major).
    pub fn from_coeff_matrices(
        dim: usize,
        var: Var,
        offset: Rational,
        coeffs: Vec<Vec<LaurentPoly>>,
    ) -> Self {
        let order = coeffs.len();
        let entries = (0..dim * dim)
            .map(|k| PuiseuxSeries::from_fn(var, offset.clone(), order, |n| coeffs[n][k].clone()))
            .collect();
        MatSeries { dim, entries }
    }

    pub fn identity(dim: usize, var: Var, order: usize) -> Self {
        Self::from_int_matrices(var, Rational::zero(), order, &[IntMatrix::identity(dim)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn offset(&self) -> &Rational {
        self.entries[0].offset()
    }

    pub fn order(&self) -> usize {
        self.entries[0].order()
    }

    pub fn var(&self) -> Var {
        self.entries[0].var()
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &PuiseuxSeries {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[PuiseuxSeries] {
        &self.entries
    }

    /// The `n`-th coefficient matrix (row-major).
    pub fn coeff_matrix(&self, n: usize) -> Result<Vec<LaurentPoly>> {
        self.entries.iter().map(|e| e.tail_coeff(n).cloned()).collect()
    }

    pub fn map_entries(&self, f: impl Fn(&PuiseuxSeries) -> PuiseuxSeries) -> Self {
        MatSeries { dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }

    pub fn with_order(&self, order: usize) -> Self {
        self.map_entries(|e| e.with_order(order))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Ok(MatSeries { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_>>()?;
        Ok(MatSeries { dim: self.dim, entries })
    }

    pub fn neg(&self) -> Self {
        self.map_entries(PuiseuxSeries::neg)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        let offset = self.offset() + other.offset();
        let var = self.var();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<PuiseuxSeries> = None;
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let p = a.mul(b)?;
                    acc = Some(match acc {
                        Some(x) => x.add(&p)?,
                        None => p,
                    });
                }
                entries.push(acc.unwrap_or_else(|| {
                    PuiseuxSeries::zero(var, offset.clone(), self.order() + other.order())
                }));
            }
        }
        Self::from_entries(n, entries)
    }

    /// Drops coefficient matrices that vanish at the top of the expansion.
    pub fn drop_leading_zeros(&self) -> Self {
        let z = self.leading_zeros();
        if z == 0 || z == self.order() {
            return self.clone();
        }
        self.map_entries(|e| e.drop_top(z))
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = MatSeries::identity(self.dim, self.var(), self.order());
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_entries(|e| e.scale(c))
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        self.map_entries(|e| e.mul_poly(p))
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let entries = (0..n * n).map(|k| self.get(k % n, k / n).clone()).collect();
        MatSeries { dim: n, entries }
    }

    /// `left * self * right` for constant integer matrices.
    pub fn sandwich(&self, left: &IntMatrix, right: &IntMatrix) -> Result<Self> {
        let n = self.dim;
        if left.dim != n || right.dim != n {
            return Err(Error::DimensionMismatch(n, left.dim));
        }
        let zero = PuiseuxSeries::zero(self.var(), self.offset().clone(), self.order());
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = zero.clone();
                for k in 0..n {
                    let l = left.get(i, k);
                    if l == 0 {
                        continue;
                    }
                    for m in 0..n {
                        let r = right.get(m, j);
                        if r != 0 {
                            acc = acc.add(&self.get(k, m).scale(&int(l * r)))?;
                        }
                    }
                }
                entries.push(acc);
            }
        }
        Ok(MatSeries { dim: n, entries })
    }

    /// `self * p` for a constant matrix `p` with polynomial entries (row-major).
    pub fn mul_const_right(&self, p: &[LaurentPoly]) -> Self {
        let n = self.dim;
        let zero = PuiseuxSeries::zero(self.var(), self.offset().clone(), self.order());
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = zero.clone();
                for k in 0..n {
                    let c = &p[k * n + j];
                    if !c.is_zero() && !self.get(i, k).is_zero() {
                        acc = acc.add(&self.get(i, k).mul_poly(c)).expect("shared grid");
                    }
                }
                acc
            })
            .collect();
        MatSeries { dim: n, entries }
    }

    /// `p * self` for a constant matrix `p` with polynomial entries (row-major).
    pub fn mul_const_left(&self, p: &[LaurentPoly]) -> Self {
        let n = self.dim;
        let zero = PuiseuxSeries::zero(self.var(), self.offset().clone(), self.order());
        let entries = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = zero.clone();
                for k in 0..n {
                    let c = &p[i * n + k];
                    if !c.is_zero() && !self.get(k, j).is_zero() {
                        acc = acc.add(&self.get(k, j).mul_poly(c)).expect("shared grid");
                    }
                }
                acc
            })
            .collect();
        MatSeries { dim: n, entries }
    }

    /// `z^e * self`.
    pub fn mul_power(&self, e: &Rational) -> Self {
        self.map_entries(|x| x.mul_power(e))
    }

    pub fn trace(&self) -> Result<PuiseuxSeries> {
        let mut acc = self.get(0, 0).clone();
        for i in 1..self.dim {
            acc = acc.add(self.get(i, i))?;
        }
        Ok(acc)
    }

    /// Determinant over the (commutative) series ring: Laplace expansion up to
    /// dimension 6, the division-free Berkowitz recurrence above.
    pub fn det(&self) -> Result<PuiseuxSeries> {
        if self.dim <= 6 {
            self.det_cofactor()
        } else {
            self.det_berkowitz()
        }
    }

    pub fn det_cofactor(&self) -> Result<PuiseuxSeries> {
        let idx: Vec<usize> = (0..self.dim).collect();
        self.minor(0, &idx)
    }

    fn minor(&self, row: usize, cols: &[usize]) -> Result<PuiseuxSeries> {
        if cols.len() == 1 {
            return Ok(self.get(row, cols[0]).clone());
        }
        let mut acc: Option<PuiseuxSeries> = None;
        for (k, &c) in cols.iter().enumerate() {
            let entry = self.get(row, c);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let mut term = entry.mul(&self.minor(row + 1, &rest)?)?;
            if k % 2 == 1 {
                term = term.neg();
            }
            acc = Some(match acc {
                Some(a) => a.add(&term)?,
                None => term,
            });
        }
        let offset = self.offset() * int(cols.len() as i64);
        Ok(acc.unwrap_or_else(|| PuiseuxSeries::zero(self.var(), offset, self.order())))
    }

    /// Berkowitz: the characteristic polynomial via Toeplitz products, no division.
    pub fn det_berkowitz(&self) -> Result<PuiseuxSeries> {
        let n = self.dim;
        let var = self.var();
        let order = self.order();
        let unit = |offset: Rational| PuiseuxSeries::monomial(LaurentPoly::one(var), offset, order);
        // Characteristic coefficients c_0..c_k of the leading k x k block, with
        // c_j homogeneous of offset j * offset(self).
        let step = self.offset().clone();
        let deg = |j: usize| &step * int(j as i64);
        let mut poly: Vec<PuiseuxSeries> = vec![unit(Rational::zero()), self.get(0, 0).neg()];
        for k in 1..n {
            // A = leading k x k block, R = row k (cols < k), C = col k (rows < k), a = entry (k, k)
            let a = self.get(k, k);
            // powers: R A^j C for j = 0..k-1
            let mut vec_c: Vec<PuiseuxSeries> = (0..k).map(|i| self.get(i, k).clone()).collect();
            let mut rac = Vec::with_capacity(k);
            for _ in 0..k {
                let mut dot: Option<PuiseuxSeries> = None;
                for (i, ci) in vec_c.iter().enumerate() {
                    let t = self.get(k, i).mul(ci)?;
                    dot = Some(match dot {
                        Some(d) => d.add(&t)?,
                        None => t,
                    });
                }
                rac.push(dot.unwrap());
                let mut next = Vec::with_capacity(k);
                for i in 0..k {
                    let mut acc: Option<PuiseuxSeries> = None;
                    for (j, cj) in vec_c.iter().enumerate() {
                        let t = self.get(i, j).mul(cj)?;
                        acc = Some(match acc {
                            Some(x) => x.add(&t)?,
                            None => t,
                        });
                    }
                    next.push(acc.unwrap());
                }
                vec_c = next;
            }
            // Toeplitz column: [1, -a, -R C, -R A C, ...]
            let mut col = vec![unit(Rational::zero()), a.neg()];
            col.extend(rac.iter().map(PuiseuxSeries::neg));
            let mut new_poly = Vec::with_capacity(k + 2);
            for j in 0..k + 2 {
                let mut acc = PuiseuxSeries::zero(var, deg(j), order);
                for (t, p) in poly.iter().enumerate() {
                    if t <= j && j - t < col.len() {
                        acc = acc.add(&col[j - t].mul(p)?)?;
                    }
                }
                new_poly.push(acc);
            }
            poly = new_poly;
        }
        let last = poly.pop().unwrap();
        Ok(if n % 2 == 1 { last.neg() } else { last })
    }

    /// `f(z + c)` entrywise.
    pub fn shift_z(&self, c: i64) -> Self {
        self.map_entries(|e| e.shift_z(c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(PuiseuxSeries::is_zero)
    }

    /// Number of leading coefficient matrices that vanish identically.
    pub fn leading_zeros(&self) -> usize {
        self.entries.iter().map(PuiseuxSeries::leading_zeros).min().unwrap_or(0)
    }

    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }

    /// Replaces one coefficient; used to build controlled corruptions in tests
    /// and verification reports.
    pub fn with_coefficient(&self, i: usize, j: usize, n: usize, value: LaurentPoly) -> Self {
        let mut out = self.clone();
        let e = &mut out.entries[i * self.dim + j];
        let mut tail = e.tail().to_vec();
        tail[n] = value;
        *e = PuiseuxSeries::new(e.var(), e.offset().clone(), tail);
        out
    }
}

impl fmt::Debug for MatSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            for j in 0..self.dim {
                writeln!(f, "({}, {}): {}", i + 1, j + 1, self.get(i, j))?;
            }
        }
        Ok(())
    }
}
