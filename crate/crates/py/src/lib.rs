//! Python bindings. Rationals cross the boundary as `p/q` strings, which
//! `fractions.Fraction` parses directly.

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orbigw::correlators::one_point::{one_point_closed, one_point_series};
use orbigw::correlators::tables::{compute_table, CellValue, TableRequest};
use orbigw::correlators::{self, Insertion};
use orbigw::exact::rational::format_rational;
use orbigw::golden;
use orbigw::tde;
use orbigw::Error;

create_exception!(orbigw, TruncationError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Truncation { .. } | Error::InsufficientBuffer { .. } => TruncationError::new_err(e.to_string()),
        Error::Precondition(_) | Error::Parse(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

#[pyclass(name = "OrbifoldStructure", module = "orbigw", frozen)]
struct PyStructure {
    inner: tde::OrbifoldStructure,
}

#[pymethods]
impl PyStructure {
    #[new]
    fn new(m1: usize, m2: usize) -> PyResult<Self> {
        Ok(PyStructure { inner: tde::OrbifoldStructure::new(m1, m2).map_err(to_py)? })
    }

    #[getter]
    fn m1(&self) -> usize {
        self.inner.m1
    }

    #[getter]
    fn m2(&self) -> usize {
        self.inner.m2
    }

    #[getter]
    fn l(&self) -> usize {
        self.inner.l
    }

    #[getter]
    fn rho(&self) -> String {
        format_rational(&self.inner.rho)
    }

    fn q(&self, a: usize) -> PyResult<String> {
        self.inner.check_sector(a).map_err(to_py)?;
        Ok(format_rational(self.inner.q(a)))
    }

    /// Coefficients of `s` in the tail term `n` of entry `(i, j)` (1-based)
    /// of `M_a`, as `(exponent, "p/q")` pairs.
    fn m_coefficient(&self, a: usize, i: usize, j: usize, n: usize) -> PyResult<Vec<(i64, String)>> {
        let l = self.inner.l;
        if i == 0 || j == 0 || i > l || j > l {
            return Err(PyValueError::new_err(format!("entry ({i}, {j}) outside 1..={l}")));
        }
        let sol = tde::solution(&self.inner, a, n + 1).map_err(to_py)?;
        let c = &sol.m.get(i - 1, j - 1).tail()[n];
        Ok(c.terms().map(|(e, x)| (e, format_rational(x))).collect())
    }

    /// `(passes, vanishing order)` of the difference-equation residual.
    fn verify_tde(&self, a: usize, order: usize) -> PyResult<(bool, usize)> {
        let sol = tde::solution(&self.inner, a, order).map_err(to_py)?;
        let rep = tde::verify_tde(&sol).map_err(to_py)?;
        Ok((rep.pass, rep.vanishing_order))
    }

    fn __repr__(&self) -> String {
        format!("OrbifoldStructure({}, {})", self.inner.m1, self.inner.m2)
    }
}

#[pyclass(name = "InvariantRecord", module = "orbigw", frozen)]
struct PyRecord {
    inner: correlators::InvariantRecord,
}

#[pymethods]
impl PyRecord {
    #[getter]
    fn insertions(&self) -> Vec<(usize, usize)> {
        self.inner.insertions.iter().map(|x| (x.a, x.i)).collect()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.g
    }

    /// `None` when the degree-dimension rule has no solution.
    #[getter]
    fn degree(&self) -> Option<u64> {
        self.inner.d
    }

    #[getter]
    fn value(&self) -> String {
        format_rational(&self.inner.value)
    }

    fn vanishes(&self) -> bool {
        self.inner.vanishes()
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

/// `(k, g, d, value)` for one table cell.
type TableCell = (usize, usize, Option<u64>, Option<String>);

fn structure(m1: usize, m2: usize) -> PyResult<tde::OrbifoldStructure> {
    tde::OrbifoldStructure::new(m1, m2).map_err(to_py)
}

/// `<tau_i1(phi_a1) ...>_g` from `[(a, i), ...]`.
#[pyfunction]
#[pyo3(signature = (m1, m2, insertions, genus, order=None))]
fn invariant(m1: usize, m2: usize, insertions: Vec<(usize, usize)>, genus: usize, order: Option<usize>) -> PyResult<PyRecord> {
    let st = structure(m1, m2)?;
    let ins: Vec<Insertion> = insertions.into_iter().map(|(a, i)| Insertion::new(a, i)).collect();
    let inner = correlators::invariant(&st, &ins, genus, order).map_err(to_py)?;
    Ok(PyRecord { inner })
}

/// Cells `(k, g, d, value)` of `<tau_i(phi_a)^k>_g`; `value` is `None` where
/// the invariant vanishes by degree-dimension and `"TRUNC"` past the budget.
#[pyfunction]
#[pyo3(signature = (m1, m2, a, i, kmax, gmax, order=None))]
fn table(
    m1: usize,
    m2: usize,
    a: usize,
    i: usize,
    kmax: usize,
    gmax: usize,
    order: Option<usize>,
) -> PyResult<Vec<TableCell>> {
    let req = TableRequest {
        structure: structure(m1, m2)?,
        fixed: Insertion::new(a, i),
        ks: (1..=kmax).collect(),
        gs: (0..=gmax).collect(),
        order,
    };
    let cells = compute_table(&req).map_err(to_py)?;
    Ok(cells
        .into_iter()
        .map(|c| {
            let v = match (&c.value, c.d) {
                (CellValue::Trunc, _) => Some("TRUNC".to_string()),
                (CellValue::Value(_), None) => None,
                (CellValue::Value(v), Some(_)) => Some(format_rational(v)),
            };
            (c.k, c.g, c.d, v)
        })
        .collect())
}

/// 1-point records `<tau_i(phi_a)>_g` for `i <= imax`, `g <= gmax`.
#[pyfunction]
#[pyo3(signature = (m1, m2, a, imax, gmax, method="operator"))]
fn one_point(m1: usize, m2: usize, a: usize, imax: usize, gmax: usize, method: &str) -> PyResult<Vec<PyRecord>> {
    let st = structure(m1, m2)?;
    let records = match method {
        "operator" => one_point_series(&st, a, imax, gmax),
        "closed" => one_point_closed(&st, a, imax, gmax),
        other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
    }
    .map_err(to_py)?;
    Ok(records.into_iter().map(|inner| PyRecord { inner }).collect())
}

/// The embedded table `id` as `(k, g, value)` triples.
#[pyfunction]
fn golden_table(id: &str) -> PyResult<Vec<(usize, usize, String)>> {
    let t = golden::golden_table(id).ok_or_else(|| PyValueError::new_err(format!("unknown table id {id:?}")))?;
    Ok(t.cells.iter().map(|(k, g, v)| (*k, *g, format_rational(v))).collect())
}

#[pyfunction]
fn golden_table_ids() -> Vec<String> {
    golden::golden_tables().into_iter().map(|t| t.id).collect()
}

#[pymodule]
#[pyo3(name = "orbigw")]
fn orbigw_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyStructure>()?;
    m.add_class::<PyRecord>()?;
    m.add_function(wrap_pyfunction!(invariant, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(one_point, m)?)?;
    m.add_function(wrap_pyfunction!(golden_table, m)?)?;
    m.add_function(wrap_pyfunction!(golden_table_ids, m)?)?;
    m.add("TruncationError", m.py().get_type::<TruncationError>())?;
    Ok(())
}
